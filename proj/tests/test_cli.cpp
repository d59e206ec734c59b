#include <gtest/gtest.h>
#include <sys/wait.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "posetbal/posetbal.hpp"

using namespace posetbal;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code = -1;
  std::string out, err;
};

fs::path scratch() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("posetbal-cli-" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path write_file(const std::string& name, const std::string& text) {
  fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p;
}

CliResult cli(const std::string& args, const std::string& env = {}) {
  const fs::path out = scratch() / "stdout", err = scratch() / "stderr";
  const std::string cmd =
      env + " " + POSETBAL_CLI + " " + args + " >" + out.string() + " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(Cli, AnalyzeReportsExactValues) {
  const auto p3 = write_file("p3.poset", "3\n0 1\n");
  CliResult r = cli("analyze " + p3.string());
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["balance"]["delta"], "1/3");
  EXPECT_EQ(j["stats"]["e"], "3");
  EXPECT_EQ(j["geometry"]["d"], nlohmann::json({"1/2", "1/2", "1/1"}));

  CliResult c = cli("analyze " + write_file("chain.poset", to_text(chain(4))).string());
  ASSERT_EQ(c.code, 0);
  EXPECT_EQ(nlohmann::json::parse(c.out)["balance"]["delta"], "0/1");

  // stdin works too
  CliResult s = cli("analyze < " + p3.string());
  EXPECT_EQ(s.code, 0);
  EXPECT_EQ(s.out, r.out);
}

TEST(Cli, ExitCodes) {
  CliResult cyc = cli("analyze " + write_file("cyc.poset", "3\n0 1\n1 2\n2 0\n").string());
  EXPECT_EQ(cyc.code, 2);
  EXPECT_NE(cyc.err.find("line 4"), std::string::npos) << cyc.err;
  EXPECT_EQ(cli("analyze /nonexistent/file").code, 2);
  EXPECT_EQ(cli("--ideal-cap 10 analyze " + write_file("a6.poset", to_text(antichain(6))).string()).code, 3);
  EXPECT_EQ(cli("verify --n 3 --checks bogus").code, 2);
  EXPECT_EQ(cli("verify --n 9").code, 2);
  EXPECT_EQ(cli("frobnicate").code, 2);
  EXPECT_EQ(cli("family nope").code, 2);
}

TEST(Cli, VerifySweep) {
  CliResult r = cli("verify --n 5 --checks all");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("hard failures 0"), std::string::npos) << r.err;
  // 87 classes for n <= 5, 21 checks each
  EXPECT_EQ(count_lines(r.out), 87u * 21u);
  auto first = nlohmann::json::parse(r.out.substr(0, r.out.find('\n')));
  EXPECT_EQ(first["check"], "xyz");

  CliResult o = cli("verify --n 3 --min-n 3 --checks one-third");
  ASSERT_EQ(o.code, 0);
  std::size_t checked = 0;
  std::istringstream lines(o.out);
  for (std::string line; std::getline(lines, line);)
    if (nlohmann::json::parse(line)["status"] == "pass") ++checked;
  EXPECT_EQ(checked, 4u);

  const auto out = scratch() / "sweep.jsonl";
  CliResult f = cli("verify --n 4 --checks theorems --out " + out.string() + " --summary-json " +
              (scratch() / "summary.jsonl").string());
  EXPECT_EQ(f.code, 0);
  EXPECT_EQ(count_lines(slurp(out)), 24u * 13u);
  EXPECT_EQ(count_lines(slurp(scratch() / "summary.jsonl")), 13u);
}

TEST(Cli, VerifyAcceptsWitnessForms) {
  CliResult r = cli("verify --poset " + matrix_form(fixture::vee()) + " --checks xyz,winh");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(count_lines(r.out), 2u);
  EXPECT_NE(r.out.find(matrix_form(fixture::vee())), std::string::npos);
}

TEST(Cli, FamilyRoundTrip) {
  CliResult k = cli("family komlos --t 3");
  ASSERT_EQ(k.code, 0) << k.err;
  Poset p = parse_poset(k.out);
  EXPECT_EQ(p.size(), 14u);
  // labels survive the round trip, so the posets are equal, not just isomorphic
  EXPECT_EQ(p, komlos_chains(3));
  CliResult small = cli("family komlos --t 2");
  EXPECT_EQ(canonical_form(parse_poset(small.out)), canonical_form(komlos_chains(2)));

  const auto file = scratch() / "bit.poset";
  ASSERT_EQ(cli("family bit --t 2 --emit " + file.string()).code, 0);
  EXPECT_EQ(read_poset_file(file.string()), bit_example(2));

  CliResult s = cli("family example-11-2 --r 1 --a 1 --k 1 --l 1");
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_EQ(parse_poset(s.out), example_11_2(1, 1, 1, 1).poset);
  EXPECT_EQ(cli("family random --n 6 --p 0.3 --seed 4").out, cli("family random --n 6 --p 0.3 --seed 4").out);
  EXPECT_EQ(cli("family chain --k 0").code, 2);
}

TEST(Cli, SampleIsReproducible) {
  const auto p3 = write_file("p3s.poset", "3\n0 1\n").string();
  CliResult a = cli("sample " + p3 + " --what extension --samples 3 --seed 7");
  CliResult b = cli("sample " + p3 + " --what extension --samples 3 --seed 7");
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(count_lines(a.out), 3u);
  std::istringstream lines(a.out);
  for (std::string line; std::getline(lines, line);) {
    std::istringstream in(line);
    std::vector<Element> order;
    for (Element x; in >> x;) order.push_back(x);
    EXPECT_TRUE(is_linear_extension(fixture::p3(), order)) << line;
  }
  CliResult pts = cli("sample " + p3 + " --what point --samples 4 --seed 1");
  EXPECT_EQ(count_lines(pts.out), 4u);
  CliResult w = cli("sample " + p3 + " --what win --element 2 --samples 1000 --seed 1");
  ASSERT_EQ(w.code, 0);
  EXPECT_EQ(nlohmann::json::parse(w.out)["mean"], 4.0);
  EXPECT_EQ(cli("sample " + p3 + " --what win --element 2 --samples 5").code, 2);
}

TEST(Cli, TrendAndCatalog) {
  CliResult t = cli("trend antichain --n-list 2,3,4");
  ASSERT_EQ(t.code, 0) << t.err;
  std::istringstream lines(t.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "family,n,delta,delta3,winP,gap,width");
  std::size_t rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    std::vector<std::string> cells;
    std::istringstream in(line);
    for (std::string cell; std::getline(in, cell, ',');) cells.push_back(cell);
    ASSERT_GE(cells.size(), 3u);
    EXPECT_EQ(cells[2], "1/2") << line;
  }
  EXPECT_EQ(rows, 3u);

  CliResult c = cli("catalog --n 5 --count");
  EXPECT_EQ(c.out, "63\n");
  CliResult forms = cli("catalog --n 3");
  EXPECT_EQ(count_lines(forms.out), 5u);
  const auto dir = scratch() / "cat4";
  ASSERT_EQ(cli("catalog --n 4 --out-dir " + dir.string()).code, 0);
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(dir)) {
    ++files;
    EXPECT_EQ(read_poset_file(e.path().string()).size(), 4u);
  }
  EXPECT_EQ(files, 16u);
}

TEST(Cli, ConfigFileAndEnvironment) {
  const auto a6 = write_file("a6c.poset", to_text(antichain(6))).string();
  const auto cfg = write_file("small.cfg", "# caps\n[caps]\nideal_cap = 10\n");
  EXPECT_EQ(cli("--config " + cfg.string() + " analyze " + a6).code, 3);
  EXPECT_EQ(cli("analyze " + a6, "POSET_BALANCE_CONFIG=" + cfg.string()).code, 3);
  // flags override the file
  EXPECT_EQ(cli("--config " + cfg.string() + " --ideal-cap 100 analyze " + a6).code, 0);
  const auto bad = write_file("bad.cfg", "no_such_key = 1\n");
  EXPECT_EQ(cli("--config " + bad.string() + " analyze " + a6).code, 2);
}
