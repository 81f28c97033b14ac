#include "flagsos/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace flagsos {

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  const auto slash = text.find('/');
  auto valid_int = [](std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw std::invalid_argument("malformed rational: " + std::string(text));
  Integer n(std::string(num[0] == '+' ? num.substr(1) : num));
  Integer d{std::string(den)};
  if (d == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
  Rational q(n, d);
  q.canonicalize();
  return q;
}

Rational rationalize(double x, long max_denominator) {
  if (!std::isfinite(x)) throw std::invalid_argument("cannot rationalize a non-finite value");
  if (max_denominator < 1) throw std::invalid_argument("denominator bound must be positive");
  const bool negative = x < 0;
  double r = std::fabs(x);
  // Convergents p/q of the continued fraction of r.
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = r;
  for (int iter = 0; iter < 64; ++iter) {
    const double a_d = std::floor(frac);
    if (a_d > 1e15) break;
    const Integer a(static_cast<long>(a_d));
    Integer p2 = a * p1 + p0;
    Integer q2 = a * q1 + q0;
    if (q2 > max_denominator) {
      // Best semiconvergent that still respects the bound.
      Integer k = (Integer(max_denominator) - q0) / q1;
      Integer ps = k * p1 + p0, qs = k * q1 + q0;
      Rational semi(ps, qs), conv(p1, q1);
      const Rational target(r);
      Rational best = abs(semi - target) < abs(conv - target) ? semi : conv;
      best.canonicalize();
      return negative ? Rational(-best) : best;
    }
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    const double rem = frac - a_d;
    if (rem < 1e-300) break;
    frac = 1.0 / rem;
    // Stop once the convergent reproduces x to double precision.
    if (std::fabs(Rational(p1, q1).get_d() - r) <= 4e-16 * std::max(1.0, r)) break;
  }
  Rational out(p1, q1);
  out.canonicalize();
  return negative ? Rational(-out) : out;
}

}  // namespace flagsos
