#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flagsos/flags.hpp"
#include "flagsos/sdp.hpp"
#include "flagsos/symrep.hpp"

namespace flagsos {

// E_Theta sum_{i,j} Q_ij d^Theta_{F_i} d^Theta_{F_j} at host size n.
MultilinearPoly flag_sos_polynomial(const std::vector<Flag>& flags, const RatMatrix& q, int n);

// True iff sigma.p == p for `probes` random sigma (and every adjacent
// transposition).
bool is_symmetric_invariant(const MultilinearPoly& p, int probes, std::uint64_t seed = 1);

// Restricted Gatermann-Parrilo data. Both sides of every identity are
// S_n-invariant, so equality on the zero set reduces to equality on one
// graph per isomorphism class of A-free n-vertex graphs.
struct GpSdpInstance {
  int n = 0;
  int d = 0;
  MultilinearPoly target;
  Graph forbidden;
  std::vector<Partition> partitions;  // those with a nonempty block
  std::vector<YMatrix> y;
  std::vector<long> n_lambda;
  std::vector<Graph> graphs;  // isomorphism classes of A-free n-vertex graphs
  // y_values[l][g] = Y_lambda evaluated at graphs[g].
  std::vector<std::vector<RatMatrix>> y_values;
};

// Throws std::invalid_argument for a non-invariant target or a partition
// whose block is missing from the basis (multiplicity-zero partitions are
// skipped).
GpSdpInstance assemble_gp_sdp(const MultilinearPoly& target, const std::vector<Partition>& partitions,
                              const SabBasis& basis, const Graph& forbidden);
GpSdpInstance assemble_gp_sdp(const MultilinearPoly& target, int hook_t, const SabBasis& basis,
                              const Graph& forbidden);

// sum_lambda n_lambda <Q_lambda, Y_lambda(G)>.
Rational gp_value(const GpSdpInstance& inst, const std::vector<RatMatrix>& q, std::size_t graph);

// Target mode: target(G) = sum n_lambda <Q_lambda, Y_lambda(G)> for every G,
// minimising sum of traces.
SdpProblem gp_target_problem(const GpSdpInstance& inst);

struct GpTargetResult {
  SdpSolution numeric;
  std::vector<RatMatrix> q;  // rounded blocks (empty when rounding failed)
  bool exact = false;        // rounded blocks reproduce the target on every G
  Rational max_residual;     // max_G |target(G) - value(G)| of the rounded blocks
  std::string failure;
};
GpTargetResult solve_gp_target(const GpSdpInstance& inst, const SolverOptions& options, long max_denominator);

// Bound mode: alpha - d(G) = sum n_lambda <Q_lambda, Y_lambda(G)> + sum_H c_H d_H(G)
// with c_H >= 0 over the A-free hosts of size m; minimise alpha.
struct GpBoundInstance {
  GpSdpInstance base;
  int m = 0;
  std::vector<Graph> hosts;
  std::vector<std::vector<Rational>> host_values;  // [H][G] = d_H(1_G)
  std::vector<Rational> density;                   // d(1_G)
};
GpBoundInstance assemble_gp_bound(GpSdpInstance base, int m);
SdpProblem gp_bound_problem(const GpBoundInstance& inst);

struct GpBoundResult {
  SdpSolution numeric;
  std::vector<RatMatrix> q;
  std::vector<Rational> c;
  // Smallest alpha for which the rounded Q and c satisfy
  // alpha - d(G) >= SOS(G) + sum c_H d_H(G) on every G; an exact bound on
  // the maximum density over the zero set.
  std::optional<Rational> certified_alpha;
  std::string failure;
};
GpBoundResult solve_gp_bound(const GpBoundInstance& inst, const SolverOptions& options, long max_denominator);

}  // namespace flagsos
