#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "flagsos/permutation.hpp"
#include "flagsos/poly.hpp"
#include "flagsos/ratmatrix.hpp"

namespace flagsos {

// Parts in non-increasing order.
using Partition = std::vector<int>;

int size_of(const Partition& p);
std::string to_string(const Partition& p);

// All partitions of n in descending lexicographic order.
std::vector<Partition> partitions_of(int n);

bool lex_geq(const Partition& a, const Partition& b);
Partition hook_partition(int n, int t);  // (n - t, 1^t)

// Partitions of n that are lexicographically >= (n - t, 1^t), descending.
std::vector<Partition> partitions_lex_geq(int n, int hook_t);

// mu >=_lex lambda and mu has at most as many parts as lambda.
bool dominance_geq(const Partition& mu, const Partition& lambda);

// Classical dominance order by partial sums.
bool dominates(const Partition& mu, const Partition& lambda);

// Semistandard tableaux of shape mu and content lambda.
Integer kostka(const Partition& mu, const Partition& lambda);

// Number of standard tableaux (hook length formula).
long dimension(const Partition& lambda);

// chi_lambda on the class of the given cycle type (Murnaghan-Nakayama).
long character(const Partition& lambda, const Partition& cycle_type);

// Number of permutations with the given cycle type.
Integer class_size(const Partition& cycle_type);

// Multiplicity of S^lambda in the squarefree polynomials of degree <= d in
// the C(n,2) edge variables. Budget: n <= 8, d <= 2.
long multiplicity(const Partition& lambda, int n, int d);

// Squarefree monomials of degree <= d in monomial_less order.
std::vector<Monomial> monomial_basis(int n, int d);

// Filling by the vertices 0..n-1; rows[r][c].
struct Tableau {
  std::vector<std::vector<int>> rows;

  Partition shape() const;
  int size() const;
  bool is_standard() const;
  // Columns read top to bottom, left to right.
  std::vector<int> column_word() const;
  friend bool operator==(const Tableau&, const Tableau&) = default;
};

Tableau superstandard_tableau(const Partition& lambda);

// Standard tableaux in descending lexicographic order of the column word;
// the first one is the superstandard (row-filled) tableau.
std::vector<Tableau> standard_tableaux(const Partition& lambda);

// Irreducible representation of S_n for lambda over its standard tableaux.
// The seminormal form is rational; the orthogonal form (double) is its
// conjugate by a positive diagonal matrix, so the two share every diagonal
// entry.
class YoungRepresentation {
 public:
  explicit YoungRepresentation(Partition lambda);

  const Partition& partition() const { return lambda_; }
  int n() const { return n_; }
  int dimension() const { return static_cast<int>(tableaux_.size()); }
  const std::vector<Tableau>& tableaux() const { return tableaux_; }

  // Generators for s_i = (i, i+1), 0 <= i < n-1.
  const RatMatrix& seminormal_generator(int i) const { return seminormal_gens_.at(i); }
  const Eigen::MatrixXd& orthogonal_generator(int i) const { return orthogonal_gens_.at(i); }

  RatMatrix seminormal(const Permutation& g) const;
  Eigen::MatrixXd orthogonal(const Permutation& g) const;

 private:
  Partition lambda_;
  int n_;
  std::vector<Tableau> tableaux_;
  std::vector<RatMatrix> seminormal_gens_;
  std::vector<Eigen::MatrixXd> orthogonal_gens_;
};

// Every element of S_n paired with the first column of its seminormal
// matrix, generated breadth-first through c(s_i g) = B(s_i) c(g).
struct FirstColumns {
  std::vector<Permutation> elements;
  std::vector<std::vector<Rational>> columns;
};
FirstColumns first_columns(const YoungRepresentation& rep);

// Sums of sigma.p over each conjugacy class; classes follow partitions_of(n).
struct ClassSums {
  int n = 0;
  std::vector<Partition> classes;
  std::vector<MultilinearPoly> sums;
};
ClassSums class_sums(const MultilinearPoly& p);

// (n_mu / n!) sum_sigma chi_mu(sigma) sigma.p. Budget: n <= 7.
MultilinearPoly isotypic_projection(const ClassSums& sums, const Partition& mu);
MultilinearPoly isotypic_projection(const MultilinearPoly& p, const Partition& mu);

enum class TableauScope { kFirst, kAll };

struct SabBlock {
  Partition partition;
  int tableau_index = 0;
  Tableau tableau;
  // Mutually orthogonal, integer coefficients; blocks of later tableaux
  // are shifted images of the first block scaled by one common factor.
  std::vector<MultilinearPoly> polys;
  std::vector<Rational> norm2;
};

struct SabBasis {
  int n = 0;
  int d = 0;
  std::vector<SabBlock> blocks;

  // Block of the first tableau for lambda, or nullptr when absent.
  const SabBlock* first_block(const Partition& lambda) const;
};

// Symmetry-adapted basis of the squarefree polynomials of degree <= d.
// Partitions with multiplicity zero contribute no block. Budget: n <= 7,
// d <= 2.
SabBasis symmetry_adapted_basis(int n, int d, const std::vector<Partition>& restrict_to,
                                TableauScope scope = TableauScope::kFirst);

struct YMatrix {
  Partition partition;
  std::vector<std::vector<MultilinearPoly>> entries;

  int size() const { return static_cast<int>(entries.size()); }
};

// Y[k][l] = S_n-average of b_k b_l over one block.
YMatrix y_matrix(const SabBlock& block, int n);

// Coefficient vectors (rows follow `monomials`) of the given polynomials as
// matrix columns.
RatMatrix coefficient_matrix(const std::vector<MultilinearPoly>& polys, const std::vector<Monomial>& monomials);

// Matrix of the edge action of sigma on the span of `monomials` (which must
// be closed under the action).
RatMatrix action_matrix(const Permutation& sigma, const std::vector<Monomial>& monomials);

}  // namespace flagsos
