#pragma once

#include <functional>
#include <vector>

#include "flagsos/graph.hpp"
#include "flagsos/poly.hpp"

namespace flagsos {

// Theta: label k+1 sits on host vertex theta[k] (0-based, injective).
struct Labeling {
  int n = 0;
  std::vector<int> theta;

  int size() const { return static_cast<int>(theta.size()); }
};

// All |Inj([t],[n])| labelings in lexicographic order of theta.
std::vector<Labeling> all_labelings(int t, int n);

// Edge pattern x^E (1-x)^N over host pairs; zero when E and N overlap.
MultilinearPoly pattern_poly(int n, std::uint64_t edges, std::uint64_t non_edges);

// p^h_F: edges of F mapped through h become x, non-edges become (1 - x).
MultilinearPoly p_h(const Graph& f, const std::vector<int>& h, int n);

// Induced density of H: (m!/|Aut H|) times the average of p^h_H over all
// injections V(H) -> [n], so that sum_H d_H = 1 over all m-vertex graphs.
MultilinearPoly d_H(const Graph& h, int n);

// Average of p^h_F over injections that put label k on theta[k].
MultilinearPoly d_theta_F(const Flag& f, const Labeling& theta);

// d^Theta_{F,F'}: the labeled vertices are shared, the two unlabeled parts
// are disjoint; average over all such pairs of extensions.
MultilinearPoly d_theta_pair(const Flag& f, const Flag& g, const Labeling& theta);

// d_{F,F'} = E_Theta d^Theta_{F,F'} (normalised to a probability, no extra
// factor 2).
MultilinearPoly d_pair(const Flag& f, const Flag& g, int n);

// d^Theta_F d^Theta_F' - d^Theta_{F,F'}.
MultilinearPoly err_poly(const Flag& f, const Flag& g, const Labeling& theta);

// E_Theta of fn(Theta) as an exact average over every labeling.
MultilinearPoly expectation_over_labelings(int t, int n, const std::function<MultilinearPoly(const Labeling&)>& fn);

// d_{F,F'}(1_H) by counting labeled configurations in H (independent of the
// polynomial path).
Rational pair_density_by_counting(const Flag& f, const Flag& g, const Graph& host);

// Induced density of h in g by counting vertex subsets.
Rational induced_density(const Graph& h, const Graph& g);

// |E| / C(m,2).
Rational edge_density_of(const Graph& g);

// Row group of the hook tableau built from theta: permutations of the
// unlabeled host vertices.
PermutationGroup row_group(const Labeling& theta);

struct PairDensityTable {
  std::vector<Flag> flags;
  std::vector<Graph> hosts;
  // entries[i][j][k] = d_{F_i,F_j}(1_{H_k}).
  std::vector<std::vector<std::vector<Rational>>> entries;
};

// Throws std::invalid_argument unless every host has m >= 2f - t vertices
// and all flags share one type.
PairDensityTable pair_density_table(const std::vector<Flag>& flags, const std::vector<Graph>& hosts);

}  // namespace flagsos
