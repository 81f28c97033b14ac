#include "flagsos/flags.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace flagsos {

namespace {

using Accumulator = std::unordered_map<Monomial, Rational>;

void add_pattern(Accumulator& acc, std::uint64_t edges, std::uint64_t non_edges, const Rational& weight) {
  if (edges & non_edges) return;
  // x^E prod_{N}(1 - x) = sum over subsets S of N of (-1)^|S| x^{E u S}.
  std::uint64_t s = 0;
  do {
    const bool odd = std::popcount(s) & 1;
    Rational& c = acc[edges | s];
    if (odd) {
      c -= weight;
    } else {
      c += weight;
    }
    s = (s - non_edges) & non_edges;
  } while (s != 0);
}

MultilinearPoly from_accumulator(int n, Accumulator& acc) {
  std::vector<MultilinearPoly::Term> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) terms.emplace_back(m, std::move(c));
  return MultilinearPoly::from_terms(n, std::move(terms));
}

void check_map(const std::vector<int>& h, int n) {
  std::vector<char> used(n, 0);
  for (int v : h) {
    if (v < 0 || v >= n) throw std::out_of_range("vertex map leaves [n]");
    if (used[v]) throw std::invalid_argument("vertex map is not injective");
    used[v] = 1;
  }
}

// Host edge and non-edge masks of the copy of g placed by h.
std::pair<std::uint64_t, std::uint64_t> placed_masks(const Graph& g, const std::vector<int>& h, int n) {
  std::uint64_t e = 0, ne = 0;
  const int k = g.vertex_count();
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) {
      const std::uint64_t bit = std::uint64_t{1} << pair_index(n, h[a], h[b]);
      if (g.has_edge(a, b)) {
        e |= bit;
      } else {
        ne |= bit;
      }
    }
  return {e, ne};
}

// Calls fn(ext) for every injective ordered choice of `count` vertices from
// `pool`.
template <typename Fn>
void for_each_arrangement(const std::vector<int>& pool, int count, Fn&& fn) {
  std::vector<int> ext(count);
  std::vector<char> used(pool.size(), 0);
  auto rec = [&](auto&& self, int depth) -> void {
    if (depth == count) {
      fn(ext);
      return;
    }
    for (std::size_t k = 0; k < pool.size(); ++k) {
      if (used[k]) continue;
      used[k] = 1;
      ext[depth] = pool[k];
      self(self, depth + 1);
      used[k] = 0;
    }
  };
  rec(rec, 0);
}

void check_labeling(const Labeling& theta) {
  check_map(theta.theta, theta.n);
}

void check_same_type(const Flag& f, const Flag& g) {
  if (f.type_size != g.type_size || !(f.type_graph() == g.type_graph()))
    throw std::invalid_argument("flags have different types");
}

std::vector<int> complement(const std::vector<int>& used, int n) {
  std::vector<char> mark(n, 0);
  for (int v : used) mark[v] = 1;
  std::vector<int> out;
  for (int v = 0; v < n; ++v)
    if (!mark[v]) out.push_back(v);
  return out;
}

}  // namespace

std::vector<Labeling> all_labelings(int t, int n) {
  std::vector<Labeling> out;
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  for_each_arrangement(pool, t, [&](const std::vector<int>& ext) { out.push_back(Labeling{n, ext}); });
  return out;
}

MultilinearPoly pattern_poly(int n, std::uint64_t edges, std::uint64_t non_edges) {
  Accumulator acc;
  add_pattern(acc, edges, non_edges, 1);
  return from_accumulator(n, acc);
}

MultilinearPoly p_h(const Graph& f, const std::vector<int>& h, int n) {
  if (static_cast<int>(h.size()) != f.vertex_count()) throw std::invalid_argument("p_h: map size differs from graph");
  check_map(h, n);
  auto [e, ne] = placed_masks(f, h, n);
  return pattern_poly(n, e, ne);
}

MultilinearPoly d_H(const Graph& h, int n) {
  if (h.vertex_count() > n) throw std::invalid_argument("d_H: graph larger than the host");
  std::vector<int> id(h.vertex_count());
  std::iota(id.begin(), id.end(), 0);
  // The plain injection average counts labeled copies; m!/|Aut(H)| turns it
  // into the induced density (probability over m-subsets).
  Integer scale;
  mpz_fac_ui(scale.get_mpz_t(), static_cast<unsigned long>(h.vertex_count()));
  Rational factor(scale, Integer(count_induced_embeddings(h, h)));
  factor.canonicalize();
  return symmetrize_full(p_h(h, id, n)) * factor;
}

MultilinearPoly d_theta_F(const Flag& f, const Labeling& theta) {
  check_labeling(theta);
  const int t = f.type_size, size = f.size();
  if (theta.size() != t) throw std::invalid_argument("labeling size differs from the flag type");
  if (size > theta.n) throw std::invalid_argument("flag larger than the host");
  const std::vector<int> pool = complement(theta.theta, theta.n);
  Accumulator acc;
  std::vector<int> h = theta.theta;
  h.resize(size);
  long count = 0;
  for_each_arrangement(pool, size - t, [&](const std::vector<int>& ext) {
    std::copy(ext.begin(), ext.end(), h.begin() + t);
    auto [e, ne] = placed_masks(f.graph, h, theta.n);
    add_pattern(acc, e, ne, 1);
    ++count;
  });
  MultilinearPoly p = from_accumulator(theta.n, acc);
  return p * Rational(1, count);
}

MultilinearPoly d_theta_pair(const Flag& f, const Flag& g, const Labeling& theta) {
  check_same_type(f, g);
  check_labeling(theta);
  const int t = f.type_size;
  if (theta.size() != t) throw std::invalid_argument("labeling size differs from the flag type");
  if (f.size() + g.size() - t > theta.n)
    throw std::invalid_argument("host too small for two disjoint extensions (need n >= 2f - t)");
  const int n = theta.n;
  const std::vector<int> pool = complement(theta.theta, n);
  Accumulator acc;
  std::vector<int> h1 = theta.theta, h2 = theta.theta;
  h1.resize(f.size());
  h2.resize(g.size());
  long count = 0;
  for_each_arrangement(pool, f.size() - t, [&](const std::vector<int>& ext1) {
    std::copy(ext1.begin(), ext1.end(), h1.begin() + t);
    auto [e1, ne1] = placed_masks(f.graph, h1, n);
    const std::vector<int> rest = complement(h1, n);
    for_each_arrangement(rest, g.size() - t, [&](const std::vector<int>& ext2) {
      std::copy(ext2.begin(), ext2.end(), h2.begin() + t);
      auto [e2, ne2] = placed_masks(g.graph, h2, n);
      add_pattern(acc, e1 | e2, ne1 | ne2, 1);
      ++count;
    });
  });
  MultilinearPoly p = from_accumulator(n, acc);
  return p * Rational(1, count);
}

MultilinearPoly d_pair(const Flag& f, const Flag& g, int n) {
  std::vector<int> theta(f.type_size);
  std::iota(theta.begin(), theta.end(), 0);
  // Theta is uniform over Inj([t],[n]) and d^{s.Theta} = s.d^Theta, so the
  // expectation is the full S_n average of one term.
  return symmetrize_full(d_theta_pair(f, g, Labeling{n, theta}));
}

MultilinearPoly err_poly(const Flag& f, const Flag& g, const Labeling& theta) {
  return d_theta_F(f, theta) * d_theta_F(g, theta) - d_theta_pair(f, g, theta);
}

MultilinearPoly expectation_over_labelings(int t, int n, const std::function<MultilinearPoly(const Labeling&)>& fn) {
  const auto labelings = all_labelings(t, n);
  MultilinearPoly sum(n);
  for (const auto& theta : labelings) sum += fn(theta);
  return sum * Rational(1, static_cast<long>(labelings.size()));
}

Rational pair_density_by_counting(const Flag& f, const Flag& g, const Graph& host) {
  check_same_type(f, g);
  const int n = host.vertex_count(), t = f.type_size;
  if (f.size() + g.size() - t > n) throw std::invalid_argument("host too small for two disjoint extensions");
  auto matches = [&](const Graph& pattern, const std::vector<int>& h) {
    for (int a = 0; a < pattern.vertex_count(); ++a)
      for (int b = a + 1; b < pattern.vertex_count(); ++b)
        if (pattern.has_edge(a, b) != host.has_edge(h[a], h[b])) return false;
    return true;
  };
  long hits = 0, total = 0;
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  for_each_arrangement(all, f.size() + g.size() - t, [&](const std::vector<int>& seq) {
    std::vector<int> h1(seq.begin(), seq.begin() + f.size());
    std::vector<int> h2(seq.begin(), seq.begin() + t);
    h2.insert(h2.end(), seq.begin() + f.size(), seq.end());
    ++total;
    if (matches(f.graph, h1) && matches(g.graph, h2)) ++hits;
  });
  Rational r(hits, total);
  r.canonicalize();
  return r;
}

Rational induced_density(const Graph& h, const Graph& g) {
  const int m = h.vertex_count(), n = g.vertex_count();
  if (m > n) throw std::invalid_argument("induced_density: pattern larger than graph");
  const Graph target = canonical_form(h);
  long hits = 0, total = 0;
  for (std::uint32_t s = 0; s < (1U << n); ++s) {
    if (std::popcount(s) != m) continue;
    std::vector<int> vs;
    for (int v = 0; v < n; ++v)
      if ((s >> v) & 1U) vs.push_back(v);
    ++total;
    if (canonical_form(g.induced(vs)) == target) ++hits;
  }
  Rational r(hits, total);
  r.canonicalize();
  return r;
}

Rational edge_density_of(const Graph& g) {
  const int p = pair_count(g.vertex_count());
  if (p == 0) return 0;
  Rational r(g.edge_count(), p);
  r.canonicalize();
  return r;
}

PermutationGroup row_group(const Labeling& theta) {
  check_labeling(theta);
  return PermutationGroup::young_subgroup(theta.n, {complement(theta.theta, theta.n)});
}

PairDensityTable pair_density_table(const std::vector<Flag>& flags, const std::vector<Graph>& hosts) {
  PairDensityTable table{flags, hosts, {}};
  const std::size_t nf = flags.size(), nh = hosts.size();
  for (std::size_t i = 1; i < nf; ++i) check_same_type(flags[0], flags[i]);
  table.entries.assign(nf, std::vector<std::vector<Rational>>(nf, std::vector<Rational>(nh)));
  for (std::size_t i = 0; i < nf; ++i)
    for (std::size_t j = i; j < nf; ++j) {
      std::unordered_map<int, MultilinearPoly> by_size;
      for (std::size_t k = 0; k < nh; ++k) {
        const int m = hosts[k].vertex_count();
        if (flags[i].size() + flags[j].size() - flags[i].type_size > m)
          throw std::invalid_argument("host size m must satisfy m >= 2f - t");
        auto it = by_size.find(m);
        if (it == by_size.end()) it = by_size.emplace(m, d_pair(flags[i], flags[j], m)).first;
        table.entries[i][j][k] = evaluate(it->second, char_vector(hosts[k], m));
        table.entries[j][i][k] = table.entries[i][j][k];
      }
    }
  return table;
}

}  // namespace flagsos
