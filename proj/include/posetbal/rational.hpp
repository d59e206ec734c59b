#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace posetbal {

using Count = mpz_class;
using Rational = mpq_class;
using RationalMatrix = std::vector<std::vector<Rational>>;

/// "p/q" in lowest terms; integers keep the "/1" so every exact value has
/// one textual shape.
inline std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline std::string to_string(const Count& c) { return c.get_str(); }

inline Rational parse_rational(const std::string& text) {
  Rational q(text, 10);
  q.canonicalize();
  return q;
}

inline Rational make_rational(long num, unsigned long den = 1) {
  Rational q{Count(num), Count(den)};
  q.canonicalize();
  return q;
}

inline Rational ratio(const Count& num, const Count& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Count count_of(std::uint64_t v) {
  static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
  return Count(static_cast<unsigned long>(v));
}

inline Count factorial(std::size_t n) {
  Count f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

/// Lower rational bound on 1/e, used where a lower threshold of 1/e must be
/// met.
inline const Rational& inv_e_lower() {
  static const Rational q = make_rational(367879441, 1000000000);
  return q;
}

/// Upper rational bound on e, used inside upper bounds containing e.
inline const Rational& e_upper() {
  static const Rational q = make_rational(27182818285L, 10000000000UL);
  return q;
}

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace posetbal
