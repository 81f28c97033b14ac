#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flagsos/flags.hpp"
#include "flagsos/sdp.hpp"

namespace flagsos {

struct FlagBlockSpec {
  IntersectionType type;
  int f = 0;
};

struct FlagBlockData {
  IntersectionType type;
  int f = 0;
  std::vector<Flag> flags;
  PairDensityTable table;
};

// Variables (alpha, Q_b PSD, s_H >= 0); one constraint per host H:
//   d(1_H) + sum_b <Q_b, C_b[H]> + s_H = alpha,  minimise alpha.
struct FlagSdpInstance {
  Graph forbidden;
  int m = 0;
  std::vector<Graph> hosts;
  std::vector<Rational> host_density;
  std::vector<FlagBlockData> blocks;
};

// Throws std::invalid_argument when m < 2f - t for some block.
FlagSdpInstance assemble_flag_sdp(const std::vector<FlagBlockSpec>& specs, int m, const Graph& forbidden);

// Problem layout: PSD block per flag block, then the nonnegative slack
// block; alpha is the single free variable.
SdpProblem flag_sdp_problem(const FlagSdpInstance& inst);

struct FlagCertificate {
  Graph forbidden;
  int m = 0;
  std::vector<FlagBlockSpec> specs;
  std::vector<RatMatrix> q;
  std::vector<Rational> a_h;
  Rational bound;
};

// a_H = sum_b <Q_b, C_b[H]>.
std::vector<Rational> compute_a_h(const FlagSdpInstance& inst, const std::vector<RatMatrix>& q);
// max_H (d(1_H) + a_H).
Rational compute_bound(const FlagSdpInstance& inst, const std::vector<Rational>& a_h);

FlagCertificate make_flag_certificate(const FlagSdpInstance& inst, std::vector<RatMatrix> q);

// d^Theta_{small_i} = sum_j L[i][j] d^Theta_{big_j} for flags one vertex
// apart; small must be canonical flags of the same type.
RatMatrix flag_lift_matrix(const std::vector<Flag>& small, const std::vector<Flag>& big);

struct FlagSolveResult {
  SdpSolution numeric;
  std::optional<FlagCertificate> certificate;
  std::string failure;
};

// Solves numerically and rounds every Q block to an exact PSD matrix; the
// exact bound is recomputed from the rounded blocks. The certificate one
// flag size down, lifted, competes as a further candidate.
FlagSolveResult solve_flag_sdp(const FlagSdpInstance& inst, const SolverOptions& options, long max_denominator);

}  // namespace flagsos
