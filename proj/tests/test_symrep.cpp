#include <gtest/gtest.h>

#include <map>
#include <optional>

#include "flagsos/errors.hpp"
#include "flagsos/flags.hpp"
#include "flagsos/symrep.hpp"

using namespace flagsos;

namespace {

Integer factorial(int n) {
  Integer r = 1;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

// Basis polynomials ordered by (partition, tableau, index), with the
// partition and tableau of every column.
struct Layout {
  std::vector<MultilinearPoly> polys;
  std::vector<int> part;
  std::vector<int> tab;
  std::vector<int> idx;
};

Layout full_layout(const SabBasis& b) {
  Layout l;
  std::map<Partition, int> ids;
  for (const auto& blk : b.blocks) {
    const int id = ids.emplace(blk.partition, static_cast<int>(ids.size())).first->second;
    for (std::size_t k = 0; k < blk.polys.size(); ++k) {
      l.polys.push_back(blk.polys[k]);
      l.part.push_back(id);
      l.tab.push_back(blk.tableau_index);
      l.idx.push_back(static_cast<int>(k));
    }
  }
  return l;
}

}  // namespace

TEST(Partitions, Enumeration) {
  EXPECT_EQ(partitions_of(5).size(), 7u);
  EXPECT_EQ(partitions_of(7).size(), 15u);
  EXPECT_EQ(partitions_of(4).front(), (Partition{4}));
  EXPECT_EQ(partitions_of(4).back(), (Partition{1, 1, 1, 1}));
}

TEST(Partitions, LexGeqHook) {
  EXPECT_EQ(partitions_lex_geq(5, 1), (std::vector<Partition>{{5}, {4, 1}}));
  EXPECT_EQ(partitions_lex_geq(7, 2), (std::vector<Partition>{{7}, {6, 1}, {5, 2}, {5, 1, 1}}));
  EXPECT_EQ(partitions_lex_geq(20, 1).size(), 2u);
}

TEST(Partitions, DominanceAgainstHooks) {
  EXPECT_TRUE(dominance_geq({6}, {3, 2, 1}));
  EXPECT_FALSE(dominance_geq({4, 3}, {5, 1, 1}));
  for (int n = 2; n <= 9; ++n)
    for (int t = 0; t < n; ++t) {
      const Partition hook = hook_partition(n, t);
      for (const auto& mu : partitions_of(n)) EXPECT_EQ(dominates(mu, hook), lex_geq(mu, hook)) << to_string(mu);
    }
}

TEST(Kostka, GoldenExample) {
  const Partition lambda{4, 2, 1};
  const std::map<Partition, long> expected{{{7}, 1}, {{6, 1}, 2}, {{5, 2}, 2}, {{5, 1, 1}, 1}, {{4, 3}, 1}, {{4, 2, 1}, 1}};
  for (const auto& mu : partitions_of(7)) {
    auto it = expected.find(mu);
    EXPECT_EQ(kostka(mu, lambda), it == expected.end() ? 0 : it->second) << to_string(mu);
  }
}

TEST(Kostka, VanishesBelowContent) {
  for (int n = 1; n <= 7; ++n)
    for (const auto& mu : partitions_of(n)) {
      EXPECT_EQ(kostka(mu, mu), 1);
      for (const auto& lambda : partitions_of(n))
        if (lex_geq(lambda, mu) && lambda != mu) {
          EXPECT_EQ(kostka(mu, lambda), 0);
        }
    }
}

TEST(Characters, Basics) {
  for (int n = 2; n <= 7; ++n) {
    for (const auto& c : partitions_of(n)) EXPECT_EQ(character({n}, c), 1);
    Partition hook{n - 1, 1};
    Partition ident(n, 1);
    EXPECT_EQ(character(hook, ident), n - 1);
    for (const auto& lambda : partitions_of(n)) EXPECT_EQ(character(lambda, ident), dimension(lambda));
  }
}

TEST(Characters, Orthogonality) {
  for (int n = 3; n <= 7; ++n) {
    const auto parts = partitions_of(n);
    Integer total = 0;
    for (const auto& c : parts) total += class_size(c);
    EXPECT_EQ(total, factorial(n));
    for (const auto& a : parts)
      for (const auto& b : parts) {
        Integer s = 0;
        for (const auto& c : parts) s += class_size(c) * character(a, c) * character(b, c);
        EXPECT_EQ(s, a == b ? factorial(n) : Integer(0));
      }
  }
}

TEST(Multiplicity, DegreeOneAndZero) {
  for (int n = 4; n <= 7; ++n) {
    long dim_sum = 0;
    for (const auto& lambda : partitions_of(n)) {
      const long m1 = multiplicity(lambda, n, 1);
      long expected = 0;
      if (lambda == Partition{n}) expected = 2;
      if (lambda == (Partition{n - 1, 1}) || lambda == (Partition{n - 2, 2})) expected = 1;
      EXPECT_EQ(m1, expected) << to_string(lambda);
      EXPECT_EQ(multiplicity(lambda, n, 0), lambda == Partition{n} ? 1 : 0);
      dim_sum += dimension(lambda) * m1;
    }
    EXPECT_EQ(dim_sum, 1 + pair_count(n));
  }
  EXPECT_THROW(multiplicity({9}, 9, 1), BudgetExceeded);
}

TEST(Multiplicity, DegreeTwoDimension) {
  for (int n = 4; n <= 6; ++n) {
    long dim_sum = 0;
    for (const auto& lambda : partitions_of(n)) dim_sum += dimension(lambda) * multiplicity(lambda, n, 2);
    EXPECT_EQ(dim_sum, static_cast<long>(monomial_basis(n, 2).size()));
  }
}

TEST(Tableaux, OrderAndCount) {
  for (const auto& lambda : partitions_of(5)) {
    auto ts = standard_tableaux(lambda);
    EXPECT_EQ(static_cast<long>(ts.size()), dimension(lambda));
    EXPECT_EQ(ts.front(), superstandard_tableau(lambda));
    for (std::size_t k = 0; k < ts.size(); ++k) {
      EXPECT_TRUE(ts[k].is_standard());
      if (k > 0) {
        EXPECT_GT(ts[k - 1].column_word(), ts[k].column_word());
      }
    }
  }
}

TEST(YoungRep, TrivialAndInvolutions) {
  YoungRepresentation triv({5});
  EXPECT_EQ(triv.dimension(), 1);
  std::mt19937_64 rng(8);
  EXPECT_EQ(triv.seminormal(random_permutation(5, rng)), RatMatrix::identity(1));
  for (const auto& lambda : partitions_of(5)) {
    YoungRepresentation rep(lambda);
    const int dim = rep.dimension();
    for (int i = 0; i + 1 < 5; ++i) {
      const RatMatrix& b = rep.seminormal_generator(i);
      EXPECT_EQ(b * b, RatMatrix::identity(dim));
      const Eigen::MatrixXd& o = rep.orthogonal_generator(i);
      EXPECT_LT((o * o - Eigen::MatrixXd::Identity(dim, dim)).norm(), 1e-12);
      EXPECT_LT((o * o.transpose() - Eigen::MatrixXd::Identity(dim, dim)).norm(), 1e-12);
      for (int k = 0; k < dim; ++k) EXPECT_NEAR(o(k, k), b(k, k).get_d(), 1e-12);
    }
  }
}

TEST(YoungRep, BraidRelations) {
  for (const auto& lambda : partitions_of(6)) {
    YoungRepresentation rep(lambda);
    for (int i = 0; i + 2 < 6; ++i) {
      const auto& a = rep.seminormal_generator(i);
      const auto& b = rep.seminormal_generator(i + 1);
      EXPECT_EQ(a * b * a, b * a * b);
      for (int j = i + 2; j + 1 < 6; ++j) {
        const auto& c = rep.seminormal_generator(j);
        EXPECT_EQ(a * c, c * a);
      }
    }
  }
}

TEST(YoungRep, HomomorphismAndCharacter) {
  std::mt19937_64 rng(12);
  for (const auto& lambda : partitions_of(5)) {
    YoungRepresentation rep(lambda);
    for (int rep_i = 0; rep_i < 10; ++rep_i) {
      auto g = random_permutation(5, rng);
      auto h = random_permutation(5, rng);
      EXPECT_EQ(rep.seminormal(compose(g, h)), rep.seminormal(g) * rep.seminormal(h));
      Rational tr = 0;
      RatMatrix m = rep.seminormal(g);
      for (int k = 0; k < m.rows(); ++k) tr += m(k, k);
      EXPECT_EQ(tr, character(lambda, cycle_type(g)));
      EXPECT_LT((rep.orthogonal(compose(g, h)) - rep.orthogonal(g) * rep.orthogonal(h)).norm(), 1e-10);
    }
  }
  // (n-1,1): trace = fixed points - 1.
  YoungRepresentation hook({4, 1});
  for (const auto& g : all_permutations(5)) {
    RatMatrix m = hook.seminormal(g);
    Rational tr = 0;
    for (int k = 0; k < m.rows(); ++k) tr += m(k, k);
    int fixed = 0;
    for (int i = 0; i < 5; ++i) fixed += g[i] == i;
    EXPECT_EQ(tr, fixed - 1);
  }
}

TEST(Sab, MantelBlocksAtDegreeOne) {
  const int n = 5;
  auto basis = symmetry_adapted_basis(n, 1, partitions_of(n));
  const SabBlock* top = basis.first_block({5});
  const SabBlock* hook = basis.first_block({4, 1});
  ASSERT_TRUE(top && hook);
  ASSERT_EQ(top->polys.size(), 2u);
  ASSERT_EQ(hook->polys.size(), 1u);
  // Span of {1, sum x_ij}.
  MultilinearPoly s(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) s += MultilinearPoly::variable(n, i, j);
  auto mons = monomial_basis(n, 1);
  auto m = coefficient_matrix({top->polys[0], top->polys[1], MultilinearPoly::constant(n, 1), s}, mons);
  EXPECT_EQ(rank(m), 2);
  // Tableau with n alone in the second row: sum_{i<j<n} x_ij - (n-2)/2 sum_i x_in.
  MultilinearPoly p(n);
  for (int i = 0; i < n - 1; ++i) {
    for (int j = i + 1; j < n - 1; ++j) p += MultilinearPoly::variable(n, i, j);
    p -= MultilinearPoly::variable(n, i, n - 1) * frac(n - 2, 2);
  }
  EXPECT_EQ(rank(coefficient_matrix({hook->polys[0], p}, mons)), 1);
}

TEST(Sab, OrthogonalityAndIsotypicMembership) {
  for (int n = 4; n <= 5; ++n)
    for (int d = 1; d <= 2; ++d) {
      auto basis = symmetry_adapted_basis(n, d, partitions_of(n), TableauScope::kAll);
      long total = 0;
      for (const auto& blk : basis.blocks) {
        total += static_cast<long>(blk.polys.size());
        for (std::size_t k = 0; k < blk.polys.size(); ++k)
          for (std::size_t l = k + 1; l < blk.polys.size(); ++l) EXPECT_EQ(inner_product(blk.polys[k], blk.polys[l]), 0);
      }
      EXPECT_EQ(total, static_cast<long>(monomial_basis(n, d).size()));
      if (d == 1) {
        for (const auto& blk : basis.blocks) {
          if (blk.tableau_index != 0) continue;
          auto sums = class_sums(blk.polys[0]);
          for (const auto& mu : partitions_of(n)) {
            auto proj = isotypic_projection(sums, mu);
            if (mu == blk.partition) EXPECT_EQ(proj, blk.polys[0]);
            else EXPECT_TRUE(proj.is_zero());
          }
        }
      }
    }
  // n=4, d=1: (2,2) has one block orthogonal to (4) and (3,1).
  auto basis = symmetry_adapted_basis(4, 1, partitions_of(4));
  const SabBlock* b22 = basis.first_block({2, 2});
  ASSERT_TRUE(b22);
  EXPECT_EQ(b22->polys.size(), 1u);
  for (const auto& blk : basis.blocks)
    if (blk.partition != Partition{2, 2}) {
      for (const auto& p : blk.polys) EXPECT_EQ(inner_product(p, b22->polys[0]), 0);
    }
}

TEST(Sab, CrossTermsVanish) {
  for (int n = 3; n <= 5; ++n)
    for (int d = 1; d <= 2; ++d) {
      auto basis = symmetry_adapted_basis(n, d, partitions_of(n), TableauScope::kAll);
      auto l = full_layout(basis);
      for (std::size_t a = 0; a < l.polys.size(); ++a)
        for (std::size_t b = a + 1; b < l.polys.size(); ++b)
          if (l.part[a] != l.part[b]) {
            EXPECT_TRUE(symmetrize_full(l.polys[a] * l.polys[b]).is_zero());
          }
    }
}

TEST(Sab, YMatrices) {
  const int n = 5;
  auto basis = symmetry_adapted_basis(n, 1, {{5}, {4, 1}});
  std::mt19937_64 rng(21);
  for (const auto& blk : basis.blocks) {
    auto y = y_matrix(blk, n);
    for (const auto& row : y.entries)
      for (const auto& e : row)
        for (int rep = 0; rep < 20; ++rep) EXPECT_EQ(act(random_permutation(n, rng), e), e);
  }
  // Y_(n-1,1) is the average of the squares of the n shifted hook polynomials.
  const SabBlock* hook = basis.first_block({4, 1});
  ASSERT_TRUE(hook);
  MultilinearPoly avg(n);
  for (int v = 0; v < n; ++v) {
    auto p = act(transposition(n, v, n - 1), hook->polys[0]);
    avg += p * p;
  }
  EXPECT_EQ(y_matrix(*hook, n).entries[0][0], avg * frac(1, n));
}

TEST(Sab, YIndependentOfTableau) {
  const int n = 5;
  auto basis = symmetry_adapted_basis(n, 2, {{4, 1}, {3, 2}}, TableauScope::kAll);
  std::map<Partition, YMatrix> first;
  for (const auto& blk : basis.blocks) {
    auto y = y_matrix(blk, n);
    if (blk.tableau_index == 0) {
      first.emplace(blk.partition, y);
      continue;
    }
    const YMatrix& y0 = first.at(blk.partition);
    // Proportional with one positive factor.
    std::optional<Rational> ratio;
    for (int k = 0; k < y.size(); ++k)
      for (int l = 0; l < y.size(); ++l) {
        for (const auto& [m, c] : y.entries[k][l].terms()) {
          const Rational r = c / y0.entries[k][l].coefficient(m);
          if (!ratio) ratio = r;
          EXPECT_EQ(r, *ratio);
        }
        EXPECT_EQ(y.entries[k][l].terms().size(), y0.entries[k][l].terms().size());
      }
    ASSERT_TRUE(ratio);
    EXPECT_GT(*ratio, 0);
  }
}

// Row-group-invariant part of the mu-isotypic at d=1 has dimension
// m_mu * K(mu, hook).
TEST(Sab, YoungsRuleWithMultiplicity) {
  for (int n = 4; n <= 6; ++n)
    for (int t = 1; t <= 2; ++t) {
      const Labeling theta{n, [&] {
                             std::vector<int> v;
                             for (int k = 0; k < t; ++k) v.push_back(n - 1 - k);
                             return v;
                           }()};
      const auto group = row_group(theta);
      const auto mons = monomial_basis(n, 1);
      for (const auto& mu : partitions_of(n)) {
        std::vector<MultilinearPoly> inv;
        for (Monomial m : mons) inv.push_back(symmetrize(isotypic_projection(MultilinearPoly::monomial(n, m), mu), group));
        const Integer expected = kostka(mu, hook_partition(n, t)) * multiplicity(mu, n, 1);
        EXPECT_EQ(rank(coefficient_matrix(inv, mons)), expected.get_si()) << to_string(mu);
      }
    }
}

TEST(BlockStructure, RepresentingMatricesExact) {
  std::mt19937_64 rng(31);
  for (int n = 4; n <= 5; ++n) {
    auto basis = symmetry_adapted_basis(n, 1, partitions_of(n), TableauScope::kAll);
    auto l = full_layout(basis);
    const auto mons = monomial_basis(n, 1);
    const RatMatrix m = coefficient_matrix(l.polys, mons);
    const RatMatrix minv = inverse(m);
    const int dim = m.rows();
    for (int rep = 0; rep < 20; ++rep) {
      const auto sigma = random_permutation(n, rng);
      const RatMatrix r = minv * action_matrix(sigma, mons) * m;
      const Eigen::MatrixXd rd = m.to_double().inverse() * action_matrix(sigma, mons).to_double() * m.to_double();
      for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) {
          EXPECT_NEAR(rd(a, b), r(a, b).get_d(), 1e-9);
          if (l.part[a] != l.part[b] || l.idx[a] != l.idx[b]) {
            EXPECT_EQ(r(a, b), 0);
            continue;
          }
          // Same tableau-indexed entry for every copy k.
          for (int c = 0; c < dim; ++c)
            for (int e = 0; e < dim; ++e)
              if (l.part[c] == l.part[a] && l.part[e] == l.part[a] && l.idx[c] == l.idx[e] && l.tab[c] == l.tab[a] && l.tab[e] == l.tab[b]) {
                EXPECT_EQ(r(c, e), r(a, b));
              }
        }
    }
  }
}

TEST(BlockStructure, CommutantIsBlockDiagonal) {
  std::mt19937_64 rng(41);
  for (int n = 4; n <= 5; ++n) {
    auto basis = symmetry_adapted_basis(n, 1, partitions_of(n), TableauScope::kAll);
    auto l = full_layout(basis);
    const auto mons = monomial_basis(n, 1);
    const int dim = static_cast<int>(mons.size());
    RatMatrix x(dim, dim);
    for (int a = 0; a < dim; ++a)
      for (int b = a; b < dim; ++b) x(a, b) = x(b, a) = static_cast<long>(rng() % 21) - 10;
    RatMatrix avg(dim, dim);
    const auto perms = all_permutations(n);
    for (const auto& s : perms) {
      const RatMatrix p = action_matrix(s, mons);
      avg = avg + p * x * p.transpose();
    }
    avg = frac(1, static_cast<long>(perms.size())) * avg;
    const RatMatrix m = coefficient_matrix(l.polys, mons);
    const RatMatrix r = inverse(m) * avg * m;
    const Eigen::MatrixXd rd = m.to_double().inverse() * avg.to_double() * m.to_double();
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) {
        EXPECT_NEAR(rd(a, b), r(a, b).get_d(), 1e-9);
        if (l.part[a] != l.part[b] || l.tab[a] != l.tab[b]) {
          EXPECT_EQ(r(a, b), 0);
          continue;
        }
        // Q_lambda repeated on every tableau.
        for (int c = 0; c < dim; ++c)
          for (int e = 0; e < dim; ++e)
            if (l.part[c] == l.part[a] && l.part[e] == l.part[a] && l.tab[c] == l.tab[e] && l.idx[c] == l.idx[a] && l.idx[e] == l.idx[b]) {
              EXPECT_EQ(r(c, e), r(a, b));
            }
      }
  }
}
