#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "flagsos/graph.hpp"
#include "flagsos/permutation.hpp"
#include "flagsos/rational.hpp"

namespace flagsos {

// Squarefree monomial over the edge variables x_ij: bit k set means the
// variable of pair k (pair_index order) occurs.
using Monomial = std::uint64_t;

// Graded lexicographic order on sorted edge-index lists.
bool monomial_less(Monomial a, Monomial b);
int degree(Monomial m);

// Polynomial before Boolean reduction: each term lists its variables with
// repetition allowed (x_12^2 is {p, p}).
struct RawTerm {
  Rational coeff;
  std::vector<int> variables;
};
using RawPoly = std::vector<RawTerm>;

// Exact-rational polynomial in the C(n,2) edge variables, kept in normal form
// modulo x_ij^2 = x_ij: squarefree monomials, no zero coefficients, terms
// sorted by monomial_less.
class MultilinearPoly {
 public:
  using Term = std::pair<Monomial, Rational>;

  MultilinearPoly() = default;
  explicit MultilinearPoly(int n);
  static MultilinearPoly constant(int n, const Rational& c);
  static MultilinearPoly variable(int n, int i, int j);
  static MultilinearPoly monomial(int n, Monomial m, const Rational& c = 1);
  // Builds from unsorted terms that may repeat monomials.
  static MultilinearPoly from_terms(int n, std::vector<Term> terms);

  int n() const { return n_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;
  Rational coefficient(Monomial m) const;

  MultilinearPoly& operator+=(const MultilinearPoly& other);
  MultilinearPoly& operator-=(const MultilinearPoly& other);
  MultilinearPoly& operator*=(const Rational& c);
  friend MultilinearPoly operator+(MultilinearPoly a, const MultilinearPoly& b) { return a += b; }
  friend MultilinearPoly operator-(MultilinearPoly a, const MultilinearPoly& b) { return a -= b; }
  friend MultilinearPoly operator*(MultilinearPoly a, const Rational& c) { return a *= c; }
  friend MultilinearPoly operator*(const Rational& c, MultilinearPoly a) { return a *= c; }
  // Product followed by Boolean reduction (monomial product is a union).
  friend MultilinearPoly operator*(const MultilinearPoly& a, const MultilinearPoly& b);
  MultilinearPoly operator-() const;

  friend bool operator==(const MultilinearPoly& a, const MultilinearPoly& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

 private:
  int n_ = 0;
  std::vector<Term> terms_;
};

MultilinearPoly reduce_boolean(int n, const RawPoly& p);

Rational evaluate(const MultilinearPoly& p, const CharVector& v);

// Evaluates p at many 0/1 points with a common-denominator integer fast path.
std::vector<Rational> evaluate_all(const MultilinearPoly& p, const std::vector<CharVector>& points);

// Image of a monomial under the vertex permutation sigma: x_ij -> x_{s(i)s(j)}.
class EdgePermAction {
 public:
  EdgePermAction(const Permutation& sigma);
  int n() const { return n_; }
  const Permutation& permutation() const { return sigma_; }
  Monomial apply(Monomial m) const;
  CharVector apply(const CharVector& v) const { return CharVector{v.n, apply(v.bits)}; }

 private:
  int n_;
  Permutation sigma_;
  std::vector<int> pair_image_;
};

MultilinearPoly act(const EdgePermAction& sigma, const MultilinearPoly& p);
MultilinearPoly act(const Permutation& sigma, const MultilinearPoly& p);

// A permutation group given by generators; elements are materialised on
// demand.
class PermutationGroup {
 public:
  PermutationGroup(int n, std::vector<Permutation> generators);
  static PermutationGroup symmetric(int n);
  // Direct product of the symmetric groups on each block.
  static PermutationGroup young_subgroup(int n, const std::vector<std::vector<int>>& blocks);

  int n() const { return n_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  // Closure of the generators; throws BudgetExceeded past `limit` elements.
  std::vector<Permutation> elements(std::size_t limit = 1'000'000) const;
  // Group order for symmetric/Young subgroups (known in closed form),
  // otherwise by closure.
  Integer order() const;

 private:
  int n_;
  std::vector<Permutation> generators_;
  Integer known_order_ = 0;
};

// |G|^{-1} sum_{g in G} g.p over an explicit list of group elements.
MultilinearPoly symmetrize(const MultilinearPoly& p, const std::vector<Permutation>& group_elements);
// Same average computed through monomial orbits under the generators; never
// iterates group elements.
MultilinearPoly symmetrize(const MultilinearPoly& p, const PermutationGroup& group);
// Full S_n symmetrization by monomial orbits.
MultilinearPoly symmetrize_full(const MultilinearPoly& p);

bool coeff_equal(const MultilinearPoly& p, const MultilinearPoly& q);

// Monomial inner product sum_m p_m q_m.
Rational inner_product(const MultilinearPoly& p, const MultilinearPoly& q);

// Multiplies by the positive rational that makes the coefficients coprime
// integers (zero stays zero).
MultilinearPoly primitive_part(const MultilinearPoly& p);

// Edge density sum x_ij / C(n,2).
MultilinearPoly edge_density(int n);

// Readable form such as "1 - x2_3 + 1/2*x1_2*x1_3" (1-based vertices, terms
// in monomial order).
std::string to_string(const MultilinearPoly& p);

}  // namespace flagsos
