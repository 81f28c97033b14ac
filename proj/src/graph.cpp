#include "flagsos/graph.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "flagsos/errors.hpp"

namespace flagsos {

int pair_index(int n, int i, int j) {
  if (i == j || i < 0 || j < 0 || i >= n || j >= n) throw std::out_of_range("pair_index: bad pair");
  if (i > j) std::swap(i, j);
  return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

std::pair<int, int> pair_at(int n, int index) {
  for (int i = 0; i < n; ++i) {
    const int row = n - i - 1;
    if (index < row) return {i, i + 1 + index};
    index -= row;
  }
  throw std::out_of_range("pair_at: index out of range");
}

Graph::Graph(int vertex_count) : n_(vertex_count) {
  if (vertex_count < 0 || vertex_count > kMaxVertices)
    throw BudgetExceeded("graphs are limited to " + std::to_string(kMaxVertices) + " vertices");
}

Graph::Graph(int vertex_count, const std::vector<std::pair<int, int>>& edges) : Graph(vertex_count) {
  for (auto [i, j] : edges) {
    if (i == j) throw std::invalid_argument("self-loop on vertex " + std::to_string(i + 1));
    if (has_edge(i, j)) throw std::invalid_argument("duplicate edge");
    add_edge(i, j);
  }
}

Graph Graph::from_mask(int vertex_count, std::uint64_t edge_mask) {
  Graph g(vertex_count);
  const int p = pair_count(vertex_count);
  if (p < 64 && (edge_mask >> p) != 0) throw std::invalid_argument("edge mask out of range");
  g.edges_ = edge_mask;
  return g;
}

Graph Graph::complete(int n) {
  Graph g(n);
  const int p = pair_count(n);
  g.edges_ = p == 64 ? ~0ULL : ((1ULL << p) - 1);
  return g;
}

Graph Graph::path(int n) {
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph Graph::cycle(int n) {
  Graph g = path(n);
  if (n >= 3) g.add_edge(n - 1, 0);
  return g;
}

Graph Graph::complete_bipartite(int a, int b) {
  Graph g(a + b);
  for (int i = 0; i < a; ++i)
    for (int j = a; j < a + b; ++j) g.add_edge(i, j);
  return g;
}

void Graph::check_vertex(int v) const {
  if (v < 0 || v >= n_) throw std::out_of_range("vertex " + std::to_string(v + 1) + " out of range");
}

int Graph::edge_count() const { return std::popcount(edges_); }

bool Graph::has_edge(int i, int j) const {
  check_vertex(i);
  check_vertex(j);
  if (i == j) return false;
  return (edges_ >> pair_index(n_, i, j)) & 1U;
}

void Graph::add_edge(int i, int j) {
  check_vertex(i);
  check_vertex(j);
  if (i == j) throw std::invalid_argument("self-loop");
  edges_ |= 1ULL << pair_index(n_, i, j);
}

void Graph::remove_edge(int i, int j) {
  check_vertex(i);
  check_vertex(j);
  edges_ &= ~(1ULL << pair_index(n_, i, j));
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (std::uint64_t m = edges_; m; m &= m - 1) out.push_back(pair_at(n_, std::countr_zero(m)));
  return out;
}

int Graph::degree(int v) const { return std::popcount(neighbours(v)); }

std::uint32_t Graph::neighbours(int v) const {
  check_vertex(v);
  std::uint32_t nb = 0;
  for (int u = 0; u < n_; ++u)
    if (u != v && ((edges_ >> pair_index(n_, u, v)) & 1U)) nb |= 1U << u;
  return nb;
}

Graph Graph::relabeled(const Permutation& perm) const {
  if (static_cast<int>(perm.size()) != n_ || !is_permutation(perm))
    throw std::invalid_argument("relabeled: not a permutation of the vertex set");
  Graph g(n_);
  for (auto [i, j] : edges()) g.add_edge(perm[i], perm[j]);
  return g;
}

Graph Graph::induced(const std::vector<int>& vertices) const {
  Graph g(static_cast<int>(vertices.size()));
  for (std::size_t a = 0; a < vertices.size(); ++a)
    for (std::size_t b = a + 1; b < vertices.size(); ++b)
      if (has_edge(vertices[a], vertices[b])) g.add_edge(static_cast<int>(a), static_cast<int>(b));
  return g;
}

Graph Graph::with_vertex(std::uint32_t neighbourhood) const {
  Graph g(n_ + 1);
  for (auto [i, j] : edges()) g.add_edge(i, j);
  for (int u = 0; u < n_; ++u)
    if ((neighbourhood >> u) & 1U) g.add_edge(u, n_);
  return g;
}

CharVector char_vector(const Graph& g, int n) {
  if (g.vertex_count() != n)
    throw std::invalid_argument("char_vector: graph has " + std::to_string(g.vertex_count()) +
                                " vertices, expected " + std::to_string(n));
  return CharVector{n, g.edge_mask()};
}

Graph graph_of(const CharVector& v) { return Graph::from_mask(v.n, v.bits); }

std::uint64_t lex_key(const Graph& g) {
  const int p = pair_count(g.vertex_count());
  std::uint64_t key = 0;
  for (std::uint64_t m = g.edge_mask(); m; m &= m - 1) key |= 1ULL << (p - 1 - std::countr_zero(m));
  return key;
}

namespace {

// Individualise-and-refine search for the lexicographically smallest
// adjacency bitstring. Row r of the bitstring (pairs {r, r+1..n-1}) is fixed
// as soon as position r is filled, because every later cell is split into
// non-neighbours then neighbours of the vertex at r.
class CanonicalSearch {
 public:
  explicit CanonicalSearch(const Graph& g) : n_(g.vertex_count()), pairs_(pair_count(n_)) {
    for (int v = 0; v < n_; ++v) adj_[v] = g.neighbours(v);
  }

  void run(std::vector<std::vector<int>> cells) {
    std::vector<int> order;
    search(cells, order, 0, 0);
  }

  const std::vector<int>& best_order() const { return best_order_; }

 private:
  // Bits of row `pos` occupy key bits [pairs-1-start, pairs-1-start-len+1].
  void search(const std::vector<std::vector<int>>& cells, std::vector<int>& order, std::uint64_t prefix,
              int bits_done) {
    const int pos = static_cast<int>(order.size());
    if (pos == n_) {
      if (!have_best_ || prefix < best_key_) {
        best_key_ = prefix;
        best_order_ = order;
        have_best_ = true;
      }
      return;
    }
    const std::vector<int>& first = cells.front();
    std::vector<int> explored;
    for (int v : first) {
      bool twin = false;
      for (int u : explored) {
        if ((adj_[u] & ~(1U << v)) == (adj_[v] & ~(1U << u))) {
          twin = true;
          break;
        }
      }
      if (twin) continue;
      explored.push_back(v);

      std::vector<std::vector<int>> next;
      next.reserve(cells.size() + 4);
      std::uint64_t row = 0;
      int column = 0;
      const int row_len = n_ - pos - 1;
      auto split = [&](const std::vector<int>& cell) {
        std::vector<int> off, on;
        for (int u : cell) {
          if (u == v) continue;
          ((adj_[v] >> u) & 1U ? on : off).push_back(u);
        }
        column += static_cast<int>(off.size());
        for (std::size_t k = 0; k < on.size(); ++k) {
          row |= 1ULL << (row_len - 1 - column);
          ++column;
        }
        if (!off.empty()) next.push_back(std::move(off));
        if (!on.empty()) next.push_back(std::move(on));
      };
      for (const auto& cell : cells) split(cell);

      const int new_bits = bits_done + row_len;
      const std::uint64_t new_prefix = prefix | (row_len > 0 ? row << (pairs_ - new_bits) : 0);
      if (have_best_ && new_bits > 0) {
        const std::uint64_t mask = new_bits >= 64 ? ~0ULL : (~0ULL << (pairs_ - new_bits)) & low_mask();
        if ((new_prefix & mask) > (best_key_ & mask)) continue;
      }
      order.push_back(v);
      search(next, order, new_prefix, new_bits);
      order.pop_back();
    }
  }

  std::uint64_t low_mask() const { return pairs_ >= 64 ? ~0ULL : ((1ULL << pairs_) - 1); }

  int n_;
  int pairs_;
  std::uint32_t adj_[kMaxVertices] = {};
  bool have_best_ = false;
  std::uint64_t best_key_ = 0;
  std::vector<int> best_order_;
};

}  // namespace

Graph canonical_form(const Graph& g, const std::vector<std::vector<int>>& cells, std::vector<int>* order) {
  const int n = g.vertex_count();
  if (n > kMaxCanonicalVertices)
    throw BudgetExceeded("canonical_form supports at most " + std::to_string(kMaxCanonicalVertices) +
                         " vertices");
  if (n == 0) {
    if (order) order->clear();
    return g;
  }
  std::vector<char> seen(n, 0);
  std::vector<std::vector<int>> nonempty;
  for (const auto& cell : cells) {
    for (int v : cell) {
      if (v < 0 || v >= n || seen[v]) throw std::invalid_argument("canonical_form: cells must partition V");
      seen[v] = 1;
    }
    if (!cell.empty()) nonempty.push_back(cell);
  }
  if (std::count(seen.begin(), seen.end(), 1) != n)
    throw std::invalid_argument("canonical_form: cells must partition V");

  CanonicalSearch search(g);
  search.run(nonempty);
  const std::vector<int>& pos_to_vertex = search.best_order();
  if (order) *order = pos_to_vertex;
  return g.relabeled(inverse(pos_to_vertex));
}

Graph canonical_form(const Graph& g) {
  std::vector<int> all(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) all[v] = v;
  return canonical_form(g, {all});
}

bool are_isomorphic(const Graph& a, const Graph& b) {
  return a.vertex_count() == b.vertex_count() && a.edge_count() == b.edge_count() &&
         canonical_form(a) == canonical_form(b);
}

namespace {

template <typename Visit>
void for_each_induced_embedding(const Graph& g, const Graph& a, Visit&& visit) {
  const int k = a.vertex_count();
  const int n = g.vertex_count();
  if (k > n) return;
  std::vector<std::uint32_t> g_adj(n), a_adj(k);
  for (int v = 0; v < n; ++v) g_adj[v] = g.neighbours(v);
  for (int v = 0; v < k; ++v) a_adj[v] = a.neighbours(v);
  std::vector<int> image(k, -1);
  std::uint32_t used = 0;
  auto rec = [&](auto&& self, int depth) -> bool {
    if (depth == k) return visit(image);
    for (int v = 0; v < n; ++v) {
      if ((used >> v) & 1U) continue;
      bool ok = true;
      for (int u = 0; u < depth && ok; ++u) {
        const bool want = (a_adj[depth] >> u) & 1U;
        const bool have = (g_adj[v] >> image[u]) & 1U;
        ok = want == have;
      }
      if (!ok) continue;
      image[depth] = v;
      used |= 1U << v;
      const bool stop = self(self, depth + 1);
      used &= ~(1U << v);
      if (stop) return true;
    }
    return false;
  };
  rec(rec, 0);
}

}  // namespace

bool contains_induced(const Graph& g, const Graph& a) {
  if (a.vertex_count() > g.vertex_count()) return false;
  bool found = false;
  for_each_induced_embedding(g, a, [&](const std::vector<int>&) {
    found = true;
    return true;
  });
  return found;
}

long count_induced_embeddings(const Graph& g, const Graph& a) {
  long count = 0;
  for_each_induced_embedding(g, a, [&](const std::vector<int>&) {
    ++count;
    return false;
  });
  return count;
}

namespace {

bool is_triangle(const Graph& a) { return a.vertex_count() == 3 && a.edge_count() == 3; }

template <typename T, typename Key>
void sort_by_edges_then_key(std::vector<T>& items, Key key) {
  std::sort(items.begin(), items.end(), [&](const T& x, const T& y) {
    const Graph& gx = key(x);
    const Graph& gy = key(y);
    if (gx.edge_count() != gy.edge_count()) return gx.edge_count() < gy.edge_count();
    return lex_key(gx) < lex_key(gy);
  });
}

}  // namespace

std::vector<Graph> enumerate_a_free(int m, const Graph& forbidden) {
  if (m < 1) throw std::invalid_argument("enumerate_a_free: m must be positive");
  const int budget = is_triangle(forbidden) ? 8 : 7;
  if (m > budget)
    throw BudgetExceeded("enumerate_a_free: m=" + std::to_string(m) + " exceeds the budget of " +
                         std::to_string(budget) + " vertices");
  // A-freeness is hereditary, so every A-free graph on k+1 vertices extends
  // an A-free graph on k vertices by one vertex.
  std::vector<Graph> level{Graph(1)};
  if (contains_induced(level[0], forbidden)) level.clear();
  for (int k = 1; k < m; ++k) {
    std::unordered_set<std::uint64_t> seen;
    std::vector<Graph> next;
    for (const Graph& g : level) {
      for (std::uint32_t nb = 0; nb < (1U << k); ++nb) {
        Graph h = g.with_vertex(nb);
        if (contains_induced(h, forbidden)) continue;
        Graph c = canonical_form(h);
        if (seen.insert(c.edge_mask()).second) next.push_back(c);
      }
    }
    level = std::move(next);
  }
  sort_by_edges_then_key(level, [](const Graph& g) -> const Graph& { return g; });
  return level;
}

IntersectionType IntersectionType::normalized() const {
  const int t = graph.vertex_count();
  if (static_cast<int>(labels.size()) != t || !is_permutation(labels))
    throw std::invalid_argument("intersection type labels must be a bijection with [t]");
  // Vertex labels[k] moves to position k.
  return IntersectionType{graph.relabeled(inverse(labels)), identity_permutation(t)};
}

IntersectionType IntersectionType::of(const Graph& g) {
  return IntersectionType{g, identity_permutation(g.vertex_count())};
}

Graph Flag::type_graph() const {
  std::vector<int> labeled(type_size);
  for (int k = 0; k < type_size; ++k) labeled[k] = k;
  return graph.induced(labeled);
}

Flag canonical_flag(const Flag& f) {
  std::vector<std::vector<int>> cells;
  for (int k = 0; k < f.type_size; ++k) cells.push_back({k});
  std::vector<int> rest;
  for (int v = f.type_size; v < f.size(); ++v) rest.push_back(v);
  cells.push_back(rest);
  return Flag{canonical_form(f.graph, cells), f.type_size};
}

std::vector<Flag> enumerate_flags(const IntersectionType& type, int f, const Graph& forbidden) {
  const int t = type.size();
  if (f > 7) throw BudgetExceeded("enumerate_flags: flag size " + std::to_string(f) + " exceeds 7");
  if (f < t) throw std::invalid_argument("enumerate_flags: flag size below type size");
  const IntersectionType norm = type.normalized();
  if (contains_induced(norm.graph, forbidden))
    throw std::invalid_argument("enumerate_flags: the intersection type itself contains the forbidden graph");
  std::vector<Flag> level{Flag{norm.graph, t}};
  for (int k = t; k < f; ++k) {
    std::unordered_set<std::uint64_t> seen;
    std::vector<Flag> next;
    for (const Flag& fl : level) {
      for (std::uint32_t nb = 0; nb < (1U << k); ++nb) {
        Flag ext{fl.graph.with_vertex(nb), t};
        if (contains_induced(ext.graph, forbidden)) continue;
        Flag c = canonical_flag(ext);
        if (seen.insert(c.graph.edge_mask()).second) next.push_back(c);
      }
    }
    level = std::move(next);
  }
  sort_by_edges_then_key(level, [](const Flag& fl) -> const Graph& { return fl.graph; });
  return level;
}

std::string describe(const Graph& g) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (auto [i, j] : g.edges()) {
    if (!first) os << ",";
    os << i + 1 << "-" << j + 1;
    first = false;
  }
  os << "}";
  return os.str();
}

}  // namespace flagsos
