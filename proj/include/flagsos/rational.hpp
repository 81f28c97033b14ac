#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace flagsos {

using Rational = mpq_class;
using Integer = mpz_class;

// Canonical "p/q" form; integers print without a denominator.
std::string to_string(const Rational& q);

// Accepts "p", "-p", "p/q". Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

// Best rational approximation of x with denominator <= max_denominator
// (continued-fraction convergents and semiconvergents).
Rational rationalize(double x, long max_denominator);

// p/q reduced to lowest terms (the two-argument mpq constructor does not
// reduce).
inline Rational frac(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace flagsos
