#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

#include "flagsos/ratmatrix.hpp"

namespace flagsos {

enum class BlockKind { kPsd, kNonnegative };

struct BlockShape {
  BlockKind kind = BlockKind::kPsd;
  int size = 0;
};

// Exact problem data:
//   minimize   sum_b <C_b, X_b> + c^T z
//   subject to sum_b <A_ib, X_b> + f_i^T z = b_i,
// X_b PSD (or diagonal and nonnegative), z free. Nonnegative blocks only
// read the diagonal of their matrices.
struct SdpProblem {
  struct Constraint {
    std::vector<RatMatrix> a;
    std::vector<Rational> free;
    Rational rhs;
  };

  std::vector<BlockShape> blocks;
  int free_count = 0;
  std::vector<RatMatrix> objective;
  std::vector<Rational> free_objective;
  std::vector<Constraint> constraints;

  SdpProblem(std::vector<BlockShape> shapes, int free_variables);
  // Appends a zero constraint and returns it for filling.
  Constraint& add_constraint();
};

struct SolverOptions {
  double tol = 1e-9;
  int max_iters = 100;
};

enum class SdpStatus { kOptimal, kPrimalInfeasible, kDualInfeasible, kMaxIterations, kNumericalFailure };

std::string to_string(SdpStatus s);

struct SdpSolution {
  SdpStatus status = SdpStatus::kNumericalFailure;
  double primal_objective = 0;
  double dual_objective = 0;
  // |primal - dual| / (1 + |primal| + |dual|)
  double gap = 0;
  double primal_infeasibility = 0;
  double dual_infeasibility = 0;
  int iterations = 0;
  std::vector<Eigen::MatrixXd> x;
  std::vector<double> free_values;
  std::string message;
};

// Dense primal-dual interior-point method with Nesterov-Todd scaling and
// Mehrotra predictor-corrector steps. Free variables and linearly dependent
// constraints are eliminated exactly before the numeric phase; a linearly
// inconsistent system is reported as primal infeasible.
SdpSolution solve_sdp(const SdpProblem& problem, const SolverOptions& options = {});

// Eigenvalue floor, continued-fraction rounding of every entry, exact PSD
// check; falls back to adding eps*I for a few eps. nullopt when no nearby
// rational PSD matrix was found.
std::optional<RatMatrix> round_psd(const Eigen::MatrixXd& m, long max_denominator, double eig_floor = 1e-12);

// 10, 100, ... below max_denominator, then max_denominator itself. Rounding
// tries each in turn so that small-denominator certificates win when they
// are as good.
std::vector<long> denominator_ladder(long max_denominator);

}  // namespace flagsos
