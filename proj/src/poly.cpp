#include "flagsos/poly.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "flagsos/errors.hpp"

namespace flagsos {

bool monomial_less(Monomial a, Monomial b) {
  const int da = std::popcount(a), db = std::popcount(b);
  if (da != db) return da < db;
  const Monomial diff = a ^ b;
  if (diff == 0) return false;
  return (a >> std::countr_zero(diff)) & 1U;
}

int degree(Monomial m) { return std::popcount(m); }

namespace {

void check_n(int n) {
  if (n < 1 || n > kMaxVertices)
    throw BudgetExceeded("polynomials support 1.." + std::to_string(kMaxVertices) + " vertices");
}

void check_same_n(const MultilinearPoly& a, const MultilinearPoly& b) {
  if (a.n() != b.n()) throw std::invalid_argument("polynomials over different vertex counts");
}

std::vector<MultilinearPoly::Term> normalize(std::vector<MultilinearPoly::Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const auto& x, const auto& y) { return monomial_less(x.first, y.first); });
  std::vector<MultilinearPoly::Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().first == t.first) {
      out.back().second += t.second;
    } else {
      if (!out.empty() && out.back().second == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().second == 0) out.pop_back();
  return out;
}

std::vector<MultilinearPoly::Term> drain(std::unordered_map<Monomial, Rational>& acc) {
  std::vector<MultilinearPoly::Term> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) terms.emplace_back(m, std::move(c));
  std::sort(terms.begin(), terms.end(),
            [](const auto& x, const auto& y) { return monomial_less(x.first, y.first); });
  return terms;
}

}  // namespace

MultilinearPoly::MultilinearPoly(int n) : n_(n) { check_n(n); }

MultilinearPoly MultilinearPoly::constant(int n, const Rational& c) {
  MultilinearPoly p(n);
  if (c != 0) p.terms_.emplace_back(0, c);
  return p;
}

MultilinearPoly MultilinearPoly::variable(int n, int i, int j) {
  return monomial(n, Monomial{1} << pair_index(n, i, j));
}

MultilinearPoly MultilinearPoly::monomial(int n, Monomial m, const Rational& c) {
  MultilinearPoly p(n);
  const int pairs = pair_count(n);
  if (pairs < 64 && (m >> pairs) != 0) throw std::invalid_argument("monomial uses a missing variable");
  if (c != 0) p.terms_.emplace_back(m, c);
  return p;
}

MultilinearPoly MultilinearPoly::from_terms(int n, std::vector<Term> terms) {
  MultilinearPoly p(n);
  p.terms_ = normalize(std::move(terms));
  return p;
}

int MultilinearPoly::degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, std::popcount(m));
  return d;
}

Rational MultilinearPoly::coefficient(Monomial m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, Monomial key) { return monomial_less(t.first, key); });
  if (it != terms_.end() && it->first == m) return it->second;
  return 0;
}

MultilinearPoly& MultilinearPoly::operator+=(const MultilinearPoly& other) {
  check_same_n(*this, other);
  if (&other == this) return *this *= 2;
  std::vector<Term> merged;
  merged.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end() || (a != terms_.end() && monomial_less(a->first, b->first))) {
      merged.push_back(std::move(*a++));
    } else if (a == terms_.end() || monomial_less(b->first, a->first)) {
      merged.push_back(*b++);
    } else {
      Rational s = a->second + b->second;
      if (s != 0) merged.emplace_back(a->first, std::move(s));
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

MultilinearPoly& MultilinearPoly::operator-=(const MultilinearPoly& other) { return *this += -other; }

MultilinearPoly& MultilinearPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.second *= c;
  }
  return *this;
}

MultilinearPoly MultilinearPoly::operator-() const {
  MultilinearPoly p = *this;
  for (auto& t : p.terms_) t.second = -t.second;
  return p;
}

MultilinearPoly operator*(const MultilinearPoly& a, const MultilinearPoly& b) {
  check_same_n(a, b);
  std::unordered_map<Monomial, Rational> acc;
  acc.reserve(a.terms().size() * b.terms().size());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) acc[ma | mb] += ca * cb;
  MultilinearPoly p(a.n());
  p.terms_ = drain(acc);
  return p;
}

MultilinearPoly reduce_boolean(int n, const RawPoly& raw) {
  const int pairs = pair_count(n);
  std::vector<MultilinearPoly::Term> terms;
  terms.reserve(raw.size());
  for (const auto& t : raw) {
    Monomial m = 0;
    for (int v : t.variables) {
      if (v < 0 || v >= pairs) throw std::out_of_range("reduce_boolean: variable index out of range");
      m |= Monomial{1} << v;
    }
    terms.emplace_back(m, t.coeff);
  }
  return MultilinearPoly::from_terms(n, std::move(terms));
}

Rational evaluate(const MultilinearPoly& p, const CharVector& v) {
  if (p.n() != v.n) throw std::invalid_argument("evaluate: dimension mismatch");
  Rational s = 0;
  for (const auto& [m, c] : p.terms())
    if ((m & v.bits) == m) s += c;
  return s;
}

std::vector<Rational> evaluate_all(const MultilinearPoly& p, const std::vector<CharVector>& points) {
  for (const auto& v : points)
    if (v.n != p.n()) throw std::invalid_argument("evaluate_all: dimension mismatch");
  Integer denom = 1;
  for (const auto& [m, c] : p.terms()) mpz_lcm(denom.get_mpz_t(), denom.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> nums;
  nums.reserve(p.terms().size());
  bool small = p.terms().size() < (1U << 20);
  for (const auto& [m, c] : p.terms()) {
    Integer num = c.get_num() * (denom / c.get_den());
    small = small && mpz_sizeinbase(num.get_mpz_t(), 2) <= 40;
    nums.push_back(std::move(num));
  }
  std::vector<Rational> out;
  out.reserve(points.size());
  if (small) {
    std::vector<long> fast(nums.size());
    for (std::size_t k = 0; k < nums.size(); ++k) fast[k] = nums[k].get_si();
    for (const auto& v : points) {
      long s = 0;
      for (std::size_t k = 0; k < fast.size(); ++k)
        if ((p.terms()[k].first & v.bits) == p.terms()[k].first) s += fast[k];
      Rational r(Integer(s), denom);
      r.canonicalize();
      out.push_back(std::move(r));
    }
  } else {
    for (const auto& v : points) {
      Integer s = 0;
      for (std::size_t k = 0; k < nums.size(); ++k)
        if ((p.terms()[k].first & v.bits) == p.terms()[k].first) s += nums[k];
      Rational r(s, denom);
      r.canonicalize();
      out.push_back(std::move(r));
    }
  }
  return out;
}

EdgePermAction::EdgePermAction(const Permutation& sigma) : n_(static_cast<int>(sigma.size())), sigma_(sigma) {
  if (!is_permutation(sigma)) throw std::invalid_argument("EdgePermAction: not a permutation");
  const int pairs = pair_count(n_);
  pair_image_.resize(pairs);
  for (int k = 0; k < pairs; ++k) {
    auto [i, j] = pair_at(n_, k);
    pair_image_[k] = pair_index(n_, sigma[i], sigma[j]);
  }
}

Monomial EdgePermAction::apply(Monomial m) const {
  Monomial out = 0;
  for (; m; m &= m - 1) out |= Monomial{1} << pair_image_[std::countr_zero(m)];
  return out;
}

MultilinearPoly act(const EdgePermAction& sigma, const MultilinearPoly& p) {
  if (sigma.n() != p.n()) throw std::invalid_argument("act: permutation size differs from n");
  std::vector<MultilinearPoly::Term> terms;
  terms.reserve(p.terms().size());
  for (const auto& [m, c] : p.terms()) terms.emplace_back(sigma.apply(m), c);
  return MultilinearPoly::from_terms(p.n(), std::move(terms));
}

MultilinearPoly act(const Permutation& sigma, const MultilinearPoly& p) { return act(EdgePermAction(sigma), p); }

PermutationGroup::PermutationGroup(int n, std::vector<Permutation> generators)
    : n_(n), generators_(std::move(generators)) {
  for (const auto& g : generators_)
    if (static_cast<int>(g.size()) != n || !is_permutation(g))
      throw std::invalid_argument("PermutationGroup: bad generator");
}

PermutationGroup PermutationGroup::symmetric(int n) {
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  return young_subgroup(n, {all});
}

PermutationGroup PermutationGroup::young_subgroup(int n, const std::vector<std::vector<int>>& blocks) {
  std::vector<Permutation> gens;
  Integer order = 1;
  for (const auto& block : blocks) {
    for (std::size_t k = 0; k + 1 < block.size(); ++k) gens.push_back(transposition(n, block[k], block[k + 1]));
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), block.size());
    order *= f;
  }
  PermutationGroup g(n, std::move(gens));
  g.known_order_ = order;
  return g;
}

std::vector<Permutation> PermutationGroup::elements(std::size_t limit) const {
  std::vector<Permutation> out{identity_permutation(n_)};
  std::unordered_set<std::string> seen;
  auto key = [](const Permutation& p) { return std::string(p.begin(), p.end()); };
  seen.insert(key(out[0]));
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (const auto& g : generators_) {
      Permutation q = compose(g, out[head]);
      if (seen.insert(key(q)).second) {
        out.push_back(std::move(q));
        if (out.size() > limit) throw BudgetExceeded("permutation group exceeds the element budget");
      }
    }
  }
  return out;
}

Integer PermutationGroup::order() const {
  if (known_order_ != 0) return known_order_;
  return Integer(static_cast<unsigned long>(elements().size()));
}

MultilinearPoly symmetrize(const MultilinearPoly& p, const std::vector<Permutation>& group_elements) {
  if (group_elements.empty()) throw std::invalid_argument("symmetrize: empty group");
  std::unordered_map<Monomial, Rational> acc;
  for (const auto& g : group_elements) {
    EdgePermAction a(g);
    for (const auto& [m, c] : p.terms()) acc[a.apply(m)] += c;
  }
  MultilinearPoly out = MultilinearPoly::from_terms(p.n(), drain(acc));
  out *= Rational(1, static_cast<long>(group_elements.size()));
  return out;
}

MultilinearPoly symmetrize(const MultilinearPoly& p, const PermutationGroup& group) {
  if (group.n() != p.n()) throw std::invalid_argument("symmetrize: group acts on a different n");
  // The group average of a monomial is the uniform average over its orbit.
  std::vector<EdgePermAction> gens;
  for (const auto& g : group.generators()) gens.emplace_back(g);
  std::unordered_map<Monomial, Rational> remaining;
  for (const auto& [m, c] : p.terms()) remaining[m] = c;
  std::unordered_set<Monomial> done;
  std::unordered_map<Monomial, Rational> acc;
  for (const auto& [m0, c0] : p.terms()) {
    if (done.count(m0)) continue;
    std::vector<Monomial> orbit{m0};
    done.insert(m0);
    for (std::size_t head = 0; head < orbit.size(); ++head)
      for (const auto& g : gens) {
        const Monomial img = g.apply(orbit[head]);
        if (done.insert(img).second) orbit.push_back(img);
      }
    Rational total = 0;
    for (Monomial m : orbit) {
      auto it = remaining.find(m);
      if (it != remaining.end()) total += it->second;
    }
    if (total == 0) continue;
    total /= static_cast<long>(orbit.size());
    for (Monomial m : orbit) acc[m] += total;
  }
  return MultilinearPoly::from_terms(p.n(), drain(acc));
}

MultilinearPoly symmetrize_full(const MultilinearPoly& p) { return symmetrize(p, PermutationGroup::symmetric(p.n())); }

bool coeff_equal(const MultilinearPoly& p, const MultilinearPoly& q) {
  check_same_n(p, q);
  return p == q;
}

Rational inner_product(const MultilinearPoly& p, const MultilinearPoly& q) {
  check_same_n(p, q);
  Rational s = 0;
  auto a = p.terms().begin(), b = q.terms().begin();
  while (a != p.terms().end() && b != q.terms().end()) {
    if (a->first == b->first) {
      s += a->second * b->second;
      ++a;
      ++b;
    } else if (monomial_less(a->first, b->first)) {
      ++a;
    } else {
      ++b;
    }
  }
  return s;
}

MultilinearPoly primitive_part(const MultilinearPoly& p) {
  if (p.is_zero()) return p;
  Integer num_gcd = 0, den_lcm = 1;
  for (const auto& [m, c] : p.terms()) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  }
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  return p * scale;
}

MultilinearPoly edge_density(int n) {
  check_n(n);
  MultilinearPoly d(n);
  if (n < 2) return d;
  std::vector<MultilinearPoly::Term> terms;
  const Rational w(1, pair_count(n));
  for (int k = 0; k < pair_count(n); ++k) terms.emplace_back(Monomial{1} << k, w);
  return MultilinearPoly::from_terms(n, std::move(terms));
}

std::string to_string(const MultilinearPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = mag == 1;
    if (!unit || m == 0) os << mag.get_str();
    bool need_star = !unit;
    for (Monomial r = m; r; r &= r - 1) {
      auto [i, j] = pair_at(p.n(), std::countr_zero(r));
      if (need_star) os << "*";
      os << "x" << i + 1 << "_" << j + 1;
      need_star = true;
    }
  }
  return os.str();
}

}  // namespace flagsos
