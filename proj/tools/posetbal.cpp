// posetbal: command-line front end.
//
//   posetbal analyze [FILE]
//   posetbal verify --n N [--checks LIST] [--parallel K]
//   posetbal family NAME [params] [--emit FILE]
//   posetbal sample FILE --what extension|mcmc|point|transfer|win
//   posetbal trend FAMILY --n-list 2,3,4
//   posetbal catalog --n N
//
// Exit codes: 0 ok, 1 proved-theorem violation, 2 usage/parse error, 3 cap.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "posetbal/posetbal.hpp"

using namespace posetbal;
using nlohmann::json;

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;

std::string fmt10(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

json num10(double v) { return json(std::stod(fmt10(v))); }

json estimate_json(const Estimate& e) {
  return {{"mean", num10(e.mean)}, {"std_error", num10(e.std_error)}, {"samples", e.samples}, {"seed", e.seed}};
}

Poset load_poset(const std::string& path) {
  if (path.empty() || path == "-") return read_poset(std::cin);
  // a witness "n:0101..." can be passed as is
  if (path.find(':') != std::string::npos && !std::filesystem::exists(path)) return parse_poset(path);
  return read_poset_file(path);
}

/// Writes to the named file, or stdout when the name is empty.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw InvalidArgument("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

// ---------------------------------------------------------------------------

struct AnalyzeArgs {
  std::string file;
};

int cmd_analyze(const AnalyzeArgs& args, const Config& cfg) {
  const Poset p = load_poset(args.file);
  IdealLattice lat(p, cfg.ideal_cap);
  const ExtensionStats s = exact_stats(lat, cfg.enum_cap);
  std::vector<Count> without;
  for (Element x = 0; x < p.size(); ++x) without.push_back(count_extensions(delete_element(p, x), cfg.ideal_cap));
  const GeometryReport g = geometry_report(s, without);
  const BalanceReport b = balance_report(p, s, cfg.balance_options());

  json j;
  j["poset"] = to_json(p);
  if (p.size() <= kCanonicalMaxElements) j["canonical_form"] = canonical_form(p);
  j["ideals"] = lat.size();
  j["stats"] = to_json(s);
  j["geometry"] = to_json(g);
  j["balance"] = to_json(b);
  if (b.tau) j["balance"]["tau"]["value"] = num10(b.tau->value);
  j["balance"]["sigmaP"] = num10(b.sigmaP);

  if (cfg.format == "text") {
    std::cout << "n " << p.size() << "\n"
              << "e " << to_string(s.e) << "\n"
              << "delta " << to_string(b.delta) << "\n"
              << "gap " << to_string(b.gap) << "\n"
              << "width " << b.width << "\n"
              << "height " << b.height << "\n";
    for (Element x = 0; x < p.size(); ++x) {
      std::cout << "element " << x << " h " << to_string(s.h[x]) << " sigma2 " << to_string(s.sigma2[x]);
      if (s.win) std::cout << " win " << to_string((*s.win)[x]);
      std::cout << "\n";
    }
  } else {
    std::cout << j.dump(2) << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::size_t n = 0;
  std::size_t min_n = 1;
  std::string checks = "all";
  std::string poset_file;
  std::string out;
  std::string summary_json;
};

int cmd_verify(const VerifyArgs& args, const Config& cfg) {
  const auto checks = resolve_checks(args.checks);
  std::vector<Poset> posets;
  if (!args.poset_file.empty()) {
    posets.push_back(load_poset(args.poset_file));
  } else {
    if (args.n == 0) throw InvalidArgument("verify needs --n or --poset");
    if (args.n > kCatalogMaxElements) throw InvalidArgument("--n must be at most 8");
    if (args.min_n > args.n) throw InvalidArgument("--min-n exceeds --n");
    posets = catalog_range(args.min_n, args.n);
  }
  const SweepResult result = sweep(posets, checks, cfg.parallelism, cfg.verify_caps());
  Output out(args.out);
  write_jsonl(out.stream(), result.reports);
  write_summary(std::cerr, result.summary);
  std::size_t soft = 0;
  for (const auto& r : result.reports)
    if (r.status == CheckStatus::fail && r.severity == Severity::conjecture) ++soft;
  std::cerr << "posets " << posets.size() << ", hard failures " << result.hard_failures() << ", conjecture failures "
            << soft << "\n";
  std::size_t listed = 0;
  for (const auto& r : result.reports) {
    if (r.status != CheckStatus::fail || r.severity == Severity::report) continue;
    if (listed++ == 20) {
      std::cerr << "(further failures in the JSON-lines output)\n";
      break;
    }
    std::cerr << to_string(r.severity) << " failure: " << r.check << " " << r.poset << "\n";
  }
  if (!args.summary_json.empty()) {
    std::ofstream sj(args.summary_json);
    for (const auto& row : result.summary) sj << to_json(row).dump() << "\n";
  }
  return result.hard_failures() > 0 ? kExitViolation : 0;
}

// ---------------------------------------------------------------------------

struct FamilyArgs {
  std::string name;
  std::size_t k = 0, t = 0, r = 0, a = 0, l = 0, n = 0, levels = 1;
  std::string eps = "1";
  double p = 0.5;
  std::uint64_t samples = 0;
  std::string emit;
};

std::size_t need(std::size_t v, const char* flag) {
  if (v == 0) throw InvalidArgument(std::string("missing ") + flag);
  return v;
}

int cmd_family(const FamilyArgs& args, const Config& cfg) {
  Poset p;
  std::vector<std::string> notes;
  const std::string& name = args.name;
  if (name == "chain") {
    p = chain(need(args.k, "--k"));
  } else if (name == "antichain") {
    p = antichain(need(args.k, "--k"));
  } else if (name == "komlos") {
    p = komlos_chains(need(args.t, "--t"));
  } else if (name == "bit") {
    p = bit_example(need(args.t, "--t"));
    const std::size_t m = std::size_t{1} << args.t;
    notes.push_back("chain y_1..y_" + std::to_string(m) + " = elements 0.." + std::to_string(m - 1) + "; x_i = element " +
                    std::to_string(m) + "+i-1");
  } else if (name == "random") {
    p = random_poset(need(args.n, "--n"), args.p, cfg.seed);
  } else if (name == "example-11-1") {
    const Rational eps = parse_rational(args.eps);
    GoodPair g = example_11_1(eps, args.levels, chain(1), ElementSet::singleton(0), cfg.ideal_cap, cfg.seed);
    p = g.poset;
    notes.push_back("antichain " + g.antichain.to_string());
    notes.push_back(std::string("goodness ") + to_string(g.goodness));
    if (g.max_delta) notes.push_back("max delta on antichain " + to_string(*g.max_delta));
    if (g.sampled_max_delta) notes.push_back("sampled max delta on antichain " + fmt10(*g.sampled_max_delta));
  } else if (name == "example-11-2") {
    const std::size_t r = need(args.r, "--r"), a = need(args.a, "--a");
    std::size_t k = args.k, l = args.l;
    if (k == 0 || l == 0) std::tie(k, l) = solve_11_2(r, a);
    ShiftedChain sc = example_11_2(r, a, k, l);
    p = sc.poset;
    const Rational H = example_11_2_H(r, a, k, l);
    notes.push_back("r " + std::to_string(r) + " a " + std::to_string(a) + " k " + std::to_string(k) + " l " +
                    std::to_string(l));
    notes.push_back("x " + std::to_string(sc.x));
    notes.push_back("h(x) " + to_string(example_11_2_height(r, a, k)) + " H(x) " + to_string(H));
    if (args.samples > 0) {
      const double delta = 1.0 / std::sqrt(static_cast<double>(a * r));
      const Element x = sc.x;
      Estimate est = estimate_point_event(
          p, [&](const PolytopePoint& pt) { return pt.coords[x] > 0.5 - delta; }, args.samples, cfg.seed,
          cfg.ideal_cap);
      notes.push_back("Pr(F(x) > 1/2 - delta) " + fmt10(est.mean) + " +- " + fmt10(est.std_error) + " (delta " +
                      fmt10(delta) + ", 1/e " + fmt10(std::exp(-1.0)) + ")");
    }
  } else {
    throw InvalidArgument("unknown family '" + name +
                          "' (chain, antichain, komlos, bit, random, example-11-1, example-11-2)");
  }
  std::string text;
  text += "# family " + name + "\n";
  for (const auto& note : notes) text += "# " + note + "\n";
  text += to_text(p);
  Output out(args.emit);
  out.stream() << text;
  return 0;
}

// ---------------------------------------------------------------------------

struct SampleArgs {
  std::string file;
  std::string what = "extension";
  std::uint64_t samples = 1;
  std::uint64_t steps = 10000;
  long element = -1;
};

int cmd_sample(const SampleArgs& args, const Config& cfg) {
  const Poset p = load_poset(args.file);
  const std::uint64_t seed = cfg.seed;
  auto print_point = [](const PolytopePoint& pt) {
    for (std::size_t i = 0; i < pt.coords.size(); ++i) std::cout << (i ? " " : "") << fmt10(pt.coords[i]);
    std::cout << "\n";
  };
  auto print_ext = [](const LinearExtension& e) {
    for (std::size_t i = 0; i < e.order.size(); ++i) std::cout << (i ? " " : "") << e.order[i];
    std::cout << "\n";
  };
  if (args.what == "extension") {
    IdealLattice lat(p, cfg.ideal_cap);
    ExtensionSampler draw(lat, seed);
    for (std::uint64_t i = 0; i < args.samples; ++i) print_ext(draw());
  } else if (args.what == "mcmc") {
    for (std::uint64_t i = 0; i < args.samples; ++i) print_ext(sample_extension_mcmc(p, args.steps, derive_seed(seed, i)));
  } else if (args.what == "point" || args.what == "transfer") {
    IdealLattice lat(p, cfg.ideal_cap);
    OrderPolytopeSampler draw(lat, seed);
    for (std::uint64_t i = 0; i < args.samples; ++i) {
      PolytopePoint pt = draw();
      print_point(args.what == "point" ? pt : transfer_map(p, pt));
    }
  } else if (args.what == "win") {
    if (args.element < 0) throw InvalidArgument("--what win needs --element");
    std::cout << estimate_json(estimate_win(p, static_cast<Element>(args.element), args.samples, seed, cfg.ideal_cap))
                     .dump()
              << "\n";
  } else {
    throw InvalidArgument("--what must be extension, mcmc, point, transfer or win");
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct TrendArgs {
  std::string family;
  std::vector<std::size_t> values;
};

int cmd_trend(const TrendArgs& args, const Config& cfg) {
  TrendOptions opt;
  opt.ideal_cap = cfg.ideal_cap;
  opt.enum_cap = cfg.enum_cap;
  generate_family(args.family, 1);  // validates the name before any work
  write_trend_csv(std::cout, trend_report(args.family, args.values, opt));
  return 0;
}

// ---------------------------------------------------------------------------

struct CatalogArgs {
  std::size_t n = 0;
  std::string out_dir;
  bool count_only = false;
};

int cmd_catalog(const CatalogArgs& args) {
  if (args.n > kCatalogMaxElements) throw InvalidArgument("--n must be at most 8");
  const auto& c = catalog(args.n);
  if (args.count_only) {
    std::cout << c.size() << "\n";
    return 0;
  }
  if (!args.out_dir.empty()) {
    std::filesystem::create_directories(args.out_dir);
    for (std::size_t i = 0; i < c.size(); ++i) {
      char name[64];
      std::snprintf(name, sizeof name, "n%zu_%05zu.poset", args.n, i);
      std::ofstream f(std::filesystem::path(args.out_dir) / name);
      f << to_text(c[i], canonical_form(c[i]));
    }
    return 0;
  }
  for (const auto& p : c) {
    json j = to_json(p);
    j["form"] = canonical_form(p);
    std::cout << j.dump() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Statistics of uniform linear extensions of finite posets"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand

  std::string config_file;
  std::uint64_t seed = 0;
  std::size_t ideal_cap = 0, parallel = 0;
  std::uint64_t enum_cap = 0;
  std::string format;
  app.add_option("--config", config_file, "key = value config file (default: $POSET_BALANCE_CONFIG)");
  app.add_option("--seed", seed, "random seed");
  app.add_option("--ideal-cap", ideal_cap, "maximum number of order ideals");
  app.add_option("--enum-cap", enum_cap, "maximum number of enumerated extensions");
  app.add_option("--format", format, "json | csv | text");

  AnalyzeArgs analyze;
  auto* a = app.add_subcommand("analyze", "exact statistics of one poset");
  a->add_option("file", analyze.file, "poset file (stdin if omitted)");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "check theorems and conjectures over the catalog");
  v->add_option("--n", verify.n, "largest catalog size (<= 8)");
  v->add_option("--min-n", verify.min_n, "smallest catalog size");
  v->add_option("--checks", verify.checks, "comma-separated checks, or all/theorems/conjectures/reports");
  v->add_option("--parallel", parallel, "worker threads");
  v->add_option("--poset", verify.poset_file, "verify a single poset file or matrix form instead");
  v->add_option("--out", verify.out, "JSON-lines output file (stdout if omitted)");
  v->add_option("--summary-json", verify.summary_json, "also write the summary as JSON lines");

  FamilyArgs family;
  auto* f = app.add_subcommand("family", "generate a named construction");
  f->add_option("name", family.name, "chain, antichain, komlos, bit, random, example-11-1, example-11-2")->required();
  f->add_option("--k", family.k, "size (chain/antichain) or k (example-11-2)");
  f->add_option("--t", family.t, "t (komlos, bit)");
  f->add_option("--r", family.r, "r (example-11-2)");
  f->add_option("--a", family.a, "a (example-11-2)");
  f->add_option("--l", family.l, "l (example-11-2)");
  f->add_option("--n", family.n, "size (random)");
  f->add_option("--p", family.p, "edge probability (random)");
  f->add_option("--eps", family.eps, "eps as p/q (example-11-1)");
  f->add_option("--levels", family.levels, "recursion levels (example-11-1)");
  f->add_option("--samples", family.samples, "Monte Carlo draws for the example-11-2 report");
  f->add_option("--emit", family.emit, "output file (stdout if omitted)");

  SampleArgs sample;
  auto* s = app.add_subcommand("sample", "draw extensions, polytope points or estimates");
  s->add_option("file", sample.file, "poset file")->required();
  s->add_option("--what", sample.what, "extension | mcmc | point | transfer | win");
  s->add_option("--samples", sample.samples, "number of draws");
  s->add_option("--steps", sample.steps, "steps per MCMC draw");
  s->add_option("--element", sample.element, "element for --what win");

  TrendArgs trend;
  auto* t = app.add_subcommand("trend", "CSV of balance parameters along a family");
  t->add_option("family", trend.family, "chain, antichain, komlos, bit")->required();
  t->add_option("--n-list", trend.values, "size parameters")->delimiter(',')->required();

  CatalogArgs cat;
  auto* c = app.add_subcommand("catalog", "one poset per isomorphism class");
  c->add_option("--n", cat.n, "size (<= 8)")->required();
  c->add_option("--out-dir", cat.out_dir, "write one file per class");
  c->add_flag("--count", cat.count_only, "print the number of classes only");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    Config cfg;
    if (config_file.empty())
      if (const char* env = std::getenv("POSET_BALANCE_CONFIG")) config_file = env;
    if (!config_file.empty()) cfg = load_config_file(config_file);
    if (app.count("--seed")) cfg.seed = seed;
    if (app.count("--ideal-cap")) cfg.ideal_cap = ideal_cap;
    if (app.count("--enum-cap")) cfg.enum_cap = enum_cap;
    if (app.count("--format")) set_config_value(cfg, "format", format);
    if (v->count("--parallel")) {
      if (parallel == 0) throw InvalidArgument("--parallel must be at least 1");
      cfg.parallelism = parallel;
    }

    if (*a) return cmd_analyze(analyze, cfg);
    if (*v) return cmd_verify(verify, cfg);
    if (*f) return cmd_family(family, cfg);
    if (*s) return cmd_sample(sample, cfg);
    if (*t) return cmd_trend(trend, cfg);
    if (*c) return cmd_catalog(cat);
  } catch (const CapError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const StatUnavailable& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const PosetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
