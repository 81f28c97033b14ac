#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "flagsos/permutation.hpp"

namespace flagsos {

// Hosts and flags never exceed this many vertices; 11 vertices give 55
// vertex pairs, which still fit one 64-bit mask.
inline constexpr int kMaxVertices = 11;
// Exhaustive canonical labeling is only offered up to this size.
inline constexpr int kMaxCanonicalVertices = 10;

inline constexpr int pair_count(int n) { return n * (n - 1) / 2; }

// Index of the pair {i, j} (0-based, i != j) in lexicographic pair order
// (01, 02, ..., 0(n-1), 12, ...).
int pair_index(int n, int i, int j);
std::pair<int, int> pair_at(int n, int index);

// Simple undirected graph on vertices 0..n-1. Edges are a bitmask over
// pair_index.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int vertex_count);
  Graph(int vertex_count, const std::vector<std::pair<int, int>>& edges);
  static Graph from_mask(int vertex_count, std::uint64_t edge_mask);

  static Graph complete(int n);
  static Graph empty(int n) { return Graph(n); }
  static Graph path(int n);
  static Graph cycle(int n);
  static Graph complete_bipartite(int a, int b);

  int vertex_count() const { return n_; }
  std::uint64_t edge_mask() const { return edges_; }
  int edge_count() const;
  bool has_edge(int i, int j) const;
  void add_edge(int i, int j);
  void remove_edge(int i, int j);
  std::vector<std::pair<int, int>> edges() const;
  int degree(int v) const;
  // Neighbourhood of v as a vertex bitmask.
  std::uint32_t neighbours(int v) const;

  // Graph whose vertex p is vertex perm^{-1}(p) of this graph, i.e. every
  // edge {i, j} becomes {perm(i), perm(j)}.
  Graph relabeled(const Permutation& perm) const;
  Graph induced(const std::vector<int>& vertices) const;
  // Adds one isolated vertex with the given neighbourhood (vertex bitmask).
  Graph with_vertex(std::uint32_t neighbourhood) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  void check_vertex(int v) const;

  int n_ = 0;
  std::uint64_t edges_ = 0;
};

// 0/1 assignment to the pairs {i, j} of [n] in lexicographic pair order.
struct CharVector {
  int n = 0;
  std::uint64_t bits = 0;

  bool operator[](int pair) const { return (bits >> pair) & 1U; }
  friend bool operator==(const CharVector&, const CharVector&) = default;
};

CharVector char_vector(const Graph& g, int n);
Graph graph_of(const CharVector& v);

// Bitstring of the edge set with pair 0 most significant, so that integer
// order equals lexicographic order of the bitstring.
std::uint64_t lex_key(const Graph& g);

// Isomorph of g with the lexicographically smallest edge bitstring.
// Throws BudgetExceeded above kMaxCanonicalVertices.
Graph canonical_form(const Graph& g);

// Canonical form restricted to relabelings that respect an ordered partition
// of the vertices: cell k occupies the next |cell k| positions. Used for
// flags, where each labeled vertex is its own leading cell. `order`
// receives position -> original vertex.
Graph canonical_form(const Graph& g, const std::vector<std::vector<int>>& cells,
                     std::vector<int>* order = nullptr);

bool are_isomorphic(const Graph& a, const Graph& b);

// True iff some injective vertex map embeds `a` into `g` as an induced
// subgraph.
bool contains_induced(const Graph& g, const Graph& a);

// Number of injective maps V(a) -> V(g) whose image induces `a` (labeled
// induced copies).
long count_induced_embeddings(const Graph& g, const Graph& a);

// One canonical representative per isomorphism class of A-free graphs on m
// vertices, sorted by (edge count, canonical bitstring).
std::vector<Graph> enumerate_a_free(int m, const Graph& forbidden);

// A fully labeled graph: labels[k] is the vertex carrying label k+1.
struct IntersectionType {
  Graph graph;
  std::vector<int> labels;

  int size() const { return graph.vertex_count(); }
  // Same type with vertex k carrying label k+1.
  IntersectionType normalized() const;
  static IntersectionType of(const Graph& g);  // identity labeling
};

// A T-flag: vertices 0..t-1 carry labels 1..t and induce the type; the rest
// are unlabeled.
struct Flag {
  Graph graph;
  int type_size = 0;

  int size() const { return graph.vertex_count(); }
  Graph type_graph() const;
  friend bool operator==(const Flag&, const Flag&) = default;
};

// Canonical representative of a flag up to isomorphisms fixing every
// labeled vertex.
Flag canonical_flag(const Flag& f);

// One representative per flag-isomorphism class of A-free T-flags of size f,
// sorted by (edge count, canonical bitstring).
std::vector<Flag> enumerate_flags(const IntersectionType& type, int f, const Graph& forbidden);

// Human-readable edge list like "{1-2,2-3}" with 1-based vertices.
std::string describe(const Graph& g);

}  // namespace flagsos
