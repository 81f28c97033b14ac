#include <gtest/gtest.h>

#include <set>

#include "flagsos/errors.hpp"
#include "flagsos/graph.hpp"
#include "flagsos/permutation.hpp"

using namespace flagsos;

namespace {

// Brute-force class count: bucket all labeled A-free graphs by the minimum
// lex key over every relabeling.
std::size_t brute_force_classes(int m, const Graph& a) {
  std::set<std::uint64_t> keys;
  const auto perms = all_permutations(m);
  for (std::uint64_t mask = 0; mask < (1ULL << pair_count(m)); ++mask) {
    Graph g = Graph::from_mask(m, mask);
    if (contains_induced(g, a)) continue;
    std::uint64_t best = ~0ULL;
    for (const auto& p : perms) best = std::min(best, lex_key(g.relabeled(p)));
    keys.insert(best);
  }
  return keys.size();
}

}  // namespace

TEST(Permutation, ComposeAndInverse) {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 20; ++rep) {
    auto p = random_permutation(6, rng);
    auto q = random_permutation(6, rng);
    EXPECT_TRUE(is_permutation(compose(p, q)));
    EXPECT_EQ(compose(p, inverse(p)), identity_permutation(6));
    EXPECT_EQ(compose(inverse(q), inverse(p)), inverse(compose(p, q)));
  }
}

TEST(Permutation, AdjacentWordRebuildsPermutation) {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 20; ++rep) {
    auto p = random_permutation(6, rng);
    Permutation acc = identity_permutation(6);
    for (int i : adjacent_transposition_word(p)) acc = compose(acc, transposition(6, i, i + 1));
    EXPECT_EQ(acc, p);
  }
}

TEST(Permutation, CycleType) {
  EXPECT_EQ(cycle_type(identity_permutation(4)), (std::vector<int>{1, 1, 1, 1}));
  EXPECT_EQ(cycle_type(Permutation{1, 2, 0, 4, 3}), (std::vector<int>{3, 2}));
  EXPECT_EQ(all_permutations(5).size(), 120u);
}

TEST(Graph, PairIndexRoundTrip) {
  for (int n = 2; n <= 8; ++n)
    for (int k = 0; k < pair_count(n); ++k) {
      auto [i, j] = pair_at(n, k);
      EXPECT_EQ(pair_index(n, i, j), k);
      EXPECT_EQ(pair_index(n, j, i), k);
    }
  EXPECT_EQ(pair_index(4, 0, 1), 0);
  EXPECT_EQ(pair_index(4, 1, 2), 3);
}

TEST(Graph, RejectsLoopsAndOutOfRange) {
  Graph g(3);
  EXPECT_THROW(g.add_edge(1, 1), std::invalid_argument);
  EXPECT_THROW(g.add_edge(0, 3), std::out_of_range);
  EXPECT_THROW(Graph(kMaxVertices + 1), BudgetExceeded);
}

TEST(Graph, CharVectors) {
  EXPECT_EQ(char_vector(Graph::empty(3), 3).bits, 0u);
  CharVector k3 = char_vector(Graph::complete(3), 3);
  EXPECT_TRUE(k3[0] && k3[1] && k3[2]);
  CharVector path = char_vector(Graph(3, {{0, 1}, {1, 2}}), 3);
  EXPECT_TRUE(path[0]);
  EXPECT_FALSE(path[1]);
  EXPECT_TRUE(path[2]);
  EXPECT_EQ(graph_of(path), Graph(3, {{0, 1}, {1, 2}}));
}

TEST(Graph, CanonicalFormOfIsomorphicInputs) {
  Graph a(3, {{0, 1}, {1, 2}});
  Graph b(3, {{0, 2}, {2, 1}});
  EXPECT_EQ(canonical_form(a), canonical_form(b));
  EXPECT_EQ(canonical_form(Graph::empty(3)), Graph::empty(3));
  Graph one_edge(3, {{0, 1}});
  for (const auto& p : all_permutations(3)) EXPECT_EQ(canonical_form(one_edge.relabeled(p)), canonical_form(one_edge));
}

TEST(Graph, CanonicalFormIsMinimalLexKey) {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 30; ++rep) {
    const int n = 5;
    Graph g = Graph::from_mask(n, rng() & ((1ULL << pair_count(n)) - 1));
    std::uint64_t best = ~0ULL;
    for (const auto& p : all_permutations(n)) best = std::min(best, lex_key(g.relabeled(p)));
    EXPECT_EQ(lex_key(canonical_form(g)), best);
    EXPECT_TRUE(are_isomorphic(g, g.relabeled(random_permutation(n, rng))));
  }
  EXPECT_THROW(canonical_form(Graph(kMaxCanonicalVertices + 1)), BudgetExceeded);
}

TEST(Graph, ContainsInduced) {
  const Graph k3 = Graph::complete(3);
  EXPECT_TRUE(contains_induced(k3, k3));
  EXPECT_FALSE(contains_induced(Graph::cycle(5), k3));
  EXPECT_FALSE(contains_induced(Graph::complete_bipartite(2, 3), k3));
  EXPECT_TRUE(contains_induced(Graph::cycle(5), Graph::path(3)));
  EXPECT_FALSE(contains_induced(Graph::complete(4), Graph::path(3)));
}

TEST(Graph, InducedEmbeddingCounts) {
  EXPECT_EQ(count_induced_embeddings(Graph::complete(3), Graph::complete(3)), 6);
  EXPECT_EQ(count_induced_embeddings(Graph::cycle(4), Graph::path(3)), 8);
  EXPECT_EQ(count_induced_embeddings(Graph::cycle(5), Graph::complete(3)), 0);
}

TEST(Graph, TriangleFreeClassCounts) {
  const Graph k3 = Graph::complete(3);
  const std::vector<std::size_t> expected{1, 2, 3, 7, 14, 38};
  for (int m = 1; m <= 6; ++m) EXPECT_EQ(enumerate_a_free(m, k3).size(), expected[m - 1]) << "m=" << m;
  for (int m = 3; m <= 5; ++m) EXPECT_EQ(enumerate_a_free(m, k3).size(), brute_force_classes(m, k3));
}

TEST(Graph, ForbiddenLargerThanHost) {
  EXPECT_EQ(enumerate_a_free(3, Graph::complete(4)).size(), 4u);
  EXPECT_EQ(enumerate_a_free(4, Graph::empty(5)).size(), 11u);
}

TEST(Graph, HostsAreSortedAndCanonical) {
  auto hosts = enumerate_a_free(3, Graph::complete(3));
  ASSERT_EQ(hosts.size(), 3u);
  for (int e = 0; e < 3; ++e) EXPECT_EQ(hosts[e].edge_count(), e);
  for (const auto& h : enumerate_a_free(5, Graph::complete(3))) EXPECT_EQ(canonical_form(h), h);
}

TEST(Flags, MantelFlags) {
  const auto type = IntersectionType::of(Graph(1));
  auto flags = enumerate_flags(type, 2, Graph::complete(3));
  ASSERT_EQ(flags.size(), 2u);
  EXPECT_EQ(flags[0].graph.edge_count(), 0);
  EXPECT_EQ(flags[1].graph.edge_count(), 1);
  EXPECT_EQ(enumerate_flags(type, 1, Graph::complete(3)).size(), 1u);
}

TEST(Flags, LabeledPathTypeMatchesBruteForce) {
  // Type: path 1-2-3 with the middle vertex labeled 1; two unlabeled
  // vertices are added with every edge pattern.
  IntersectionType type{Graph(3, {{0, 1}, {1, 2}}), {1, 0, 2}};
  const Graph k3 = Graph::complete(3);
  const auto norm = type.normalized();
  std::set<std::uint64_t> seen;
  for (std::uint64_t ext = 0; ext < (1ULL << 7); ++ext) {
    Graph g(5, norm.graph.edges());
    int bit = 0;
    for (int u = 3; u < 5; ++u)
      for (int v = 0; v < u; ++v)
        if ((ext >> bit++) & 1U) g.add_edge(u, v);
    if (contains_induced(g, k3)) continue;
    seen.insert(lex_key(canonical_flag(Flag{g, 3}).graph));
  }
  EXPECT_EQ(enumerate_flags(type, 5, k3).size(), seen.size());
}

TEST(Flags, TypeIsInducedOnLabels) {
  IntersectionType type{Graph(2, {{0, 1}}), {0, 1}};
  for (const auto& f : enumerate_flags(type, 4, Graph::complete(3))) {
    EXPECT_EQ(f.type_graph(), type.graph);
    EXPECT_EQ(canonical_flag(f), f);
  }
}
