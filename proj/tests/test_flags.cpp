#include <gtest/gtest.h>

#include "flagsos/flags.hpp"

using namespace flagsos;

namespace {

MultilinearPoly x(int n, int i, int j) { return MultilinearPoly::variable(n, i, j); }
MultilinearPoly one(int n) { return MultilinearPoly::constant(n, 1); }
MultilinearPoly nx(int n, int i, int j) { return one(n) - x(n, i, j); }

const Graph kK3 = Graph::complete(3);

std::vector<Flag> mantel_flags() { return enumerate_flags(IntersectionType::of(Graph(1)), 2, kK3); }

// Claw flag over the labeled cherry centred at label 1.
Flag claw_flag() { return Flag{Graph(4, {{0, 1}, {0, 2}, {0, 3}}), 3}; }

}  // namespace

TEST(FlagCalculus, PatternPoly) {
  EXPECT_EQ(pattern_poly(3, 1, 0), x(3, 0, 1));
  EXPECT_TRUE(pattern_poly(3, 1, 1).is_zero());
  EXPECT_EQ(pattern_poly(3, 0, 3), nx(3, 0, 1) * nx(3, 0, 2));
}

TEST(FlagCalculus, PhOfClaw) {
  const int n = 5;
  auto p = p_h(claw_flag().graph, {0, 1, 2, 3}, n);
  auto expected = x(n, 0, 1) * x(n, 0, 2) * x(n, 0, 3) * nx(n, 1, 2) * nx(n, 1, 3) * nx(n, 2, 3);
  EXPECT_EQ(p, expected);
  EXPECT_EQ(p_h(Graph(1), {2}, n), one(n));
  EXPECT_EQ(p_h(Graph(2, {{0, 1}}), {0, 1}, 2), x(2, 0, 1));
}

TEST(FlagCalculus, ThetaDensityOfClaw) {
  const int n = 5;
  const Flag f = claw_flag();
  const Labeling theta{n, {0, 1, 2}};
  auto ph = p_h(f.graph, {0, 1, 2, 3}, n);
  auto ph2 = p_h(f.graph, {0, 1, 2, 4}, n);
  auto d = d_theta_F(f, theta);
  EXPECT_EQ(d, (ph + ph2) * frac(1, 2));
  EXPECT_EQ(act(transposition(n, 3, 4), ph), ph2);
  EXPECT_EQ(symmetrize(ph, row_group(theta)), d);
}

TEST(FlagCalculus, ThetaDensityOfEdgeFlag) {
  const auto flags = mantel_flags();
  EXPECT_EQ(d_theta_F(flags[1], Labeling{3, {0}}), (x(3, 0, 1) + x(3, 0, 2)) * frac(1, 2));
  // f = t: a single placement.
  Flag type_only{Graph(2, {{0, 1}}), 2};
  EXPECT_EQ(d_theta_F(type_only, Labeling{4, {2, 1}}), x(4, 1, 2));
}

TEST(FlagCalculus, InducedDensityPolynomials) {
  const int n = 3;
  auto hosts = enumerate_a_free(3, Graph::complete(4));
  EXPECT_EQ(d_H(hosts[0], n), nx(n, 0, 1) * nx(n, 0, 2) * nx(n, 1, 2));
  MultilinearPoly sum(n);
  for (const auto& h : hosts) sum += d_H(h, n);
  EXPECT_EQ(sum, one(n));
  // At n=4: value equals the induced density by counting.
  for (const auto& h : hosts)
    for (const auto& g : enumerate_a_free(4, Graph::complete(5)))
      EXPECT_EQ(evaluate(d_H(h, 4), char_vector(g, 4)), induced_density(h, g));
  EXPECT_EQ(induced_density(Graph(3, {{0, 1}}), Graph::cycle(4)), 0);
  EXPECT_EQ(induced_density(Graph::path(3), Graph::cycle(4)), 1);
}

TEST(FlagCalculus, MantelPairDensities) {
  const auto flags = mantel_flags();
  auto hosts = enumerate_a_free(3, kK3);
  auto eval = [&](int i, int j, int h) { return evaluate(d_pair(flags[i], flags[j], 3), char_vector(hosts[h], 3)); };
  EXPECT_EQ(eval(0, 0, 0), 1);
  EXPECT_EQ(eval(0, 1, 1), frac(1, 3));
  EXPECT_EQ(eval(1, 1, 2), frac(1, 3));
  EXPECT_EQ(eval(1, 0, 1), frac(1, 3));
}

TEST(FlagCalculus, MantelTable) {
  const auto flags = mantel_flags();
  auto table = pair_density_table(flags, enumerate_a_free(3, kK3));
  const std::vector<std::vector<std::vector<Rational>>> expected{
      {{1, frac(1, 3), 0}, {0, frac(1, 3), frac(1, 3)}},
      {{0, frac(1, 3), frac(1, 3)}, {0, 0, frac(1, 3)}}};
  EXPECT_EQ(table.entries, expected);
}

TEST(FlagCalculus, TableSymmetricAndBounded) {
  for (int f = 2; f <= 3; ++f) {
    const int m = 2 * f - 1 + 1;
    auto flags = enumerate_flags(IntersectionType::of(Graph(1)), f, kK3);
    auto hosts = enumerate_a_free(m, kK3);
    auto table = pair_density_table(flags, hosts);
    for (std::size_t h = 0; h < hosts.size(); ++h) {
      Rational total = 0;
      for (std::size_t i = 0; i < flags.size(); ++i)
        for (std::size_t j = 0; j < flags.size(); ++j) {
          const Rational& v = table.entries[i][j][h];
          EXPECT_EQ(v, table.entries[j][i][h]);
          EXPECT_GE(v, 0);
          EXPECT_LE(v, 1);
          total += v;
          EXPECT_EQ(v, pair_density_by_counting(flags[i], flags[j], hosts[h]));
        }
      // Placements are ordered, so flags whose unlabeled vertices can be
      // permuted nontrivially are counted once per ordering: total <= 1.
      EXPECT_LE(total, 1);
      if (f == 2) {
        EXPECT_EQ(total, 1);
      }
    }
  }
}

TEST(FlagCalculus, TableRejectsSmallHosts) {
  auto flags = enumerate_flags(IntersectionType::of(Graph(1)), 3, kK3);
  EXPECT_THROW(pair_density_table(flags, enumerate_a_free(4, kK3)), std::invalid_argument);
}

TEST(FlagCalculus, ErrPolynomial) {
  Flag type_only{Graph(1), 1};
  EXPECT_TRUE(err_poly(type_only, type_only, Labeling{4, {0}}).is_zero());
  // Mantel F1,F1 at n=4: exhaustive maximum of |err| over triangle-free graphs.
  const auto flags = mantel_flags();
  auto err = err_poly(flags[1], flags[1], Labeling{4, {0}});
  Rational worst = 0;
  for (std::uint64_t bits = 0; bits < 64; ++bits) {
    Graph g = Graph::from_mask(4, bits);
    if (contains_induced(g, kK3)) continue;
    worst = std::max(worst, Rational(abs(evaluate(err, char_vector(g, 4)))));
  }
  // s neighbours of the root among 3: err = s^2/9 - s(s-1)/6, largest at s = 1, 2.
  EXPECT_EQ(worst, frac(1, 9));
}

TEST(FlagCalculus, ExpectationOverLabelings) {
  EXPECT_EQ(all_labelings(2, 4).size(), 12u);
  auto e = expectation_over_labelings(1, 4, [](const Labeling& th) { return x(4, th.theta[0], (th.theta[0] + 1) % 4); });
  EXPECT_EQ(e, (x(4, 0, 1) + x(4, 1, 2) + x(4, 2, 3) + x(4, 0, 3)) * frac(1, 4));
}

TEST(FlagCalculus, PairDensityMatchesExpectation) {
  const auto flags = mantel_flags();
  const int n = 4;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      auto direct = expectation_over_labelings(1, n, [&](const Labeling& th) { return d_theta_pair(flags[i], flags[j], th); });
      EXPECT_EQ(d_pair(flags[i], flags[j], n), direct);
    }
}

TEST(FlagCalculus, RowGroupInvariance) {
  std::mt19937_64 rng(9);
  auto flags = enumerate_flags(IntersectionType{Graph(2, {{0, 1}}), {0, 1}}, 4, kK3);
  const int n = 6;
  const Labeling theta{n, {4, 1}};
  const auto g = row_group(theta);
  EXPECT_EQ(g.order(), 24);
  for (const auto& f : flags) {
    auto d = d_theta_F(f, theta);
    for (int rep = 0; rep < 5; ++rep)
      EXPECT_EQ(act(random_permutation_of(n, {0, 2, 3, 5}, rng), d), d);
  }
}
