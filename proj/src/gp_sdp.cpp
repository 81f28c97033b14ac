#include "flagsos/gp_sdp.hpp"

#include <random>
#include <stdexcept>

namespace flagsos {

MultilinearPoly flag_sos_polynomial(const std::vector<Flag>& flags, const RatMatrix& q, int n) {
  if (flags.empty()) return MultilinearPoly(n);
  const int t = flags.front().type_size;
  return expectation_over_labelings(t, n, [&](const Labeling& theta) {
    std::vector<MultilinearPoly> d;
    for (const auto& f : flags) d.push_back(d_theta_F(f, theta));
    MultilinearPoly acc(n);
    for (std::size_t i = 0; i < flags.size(); ++i) {
      MultilinearPoly row(n);
      for (std::size_t j = 0; j < flags.size(); ++j)
        if (q(i, j) != 0) row += d[j] * q(i, j);
      if (!row.is_zero()) acc += d[i] * row;
    }
    return acc;
  });
}

bool is_symmetric_invariant(const MultilinearPoly& p, int probes, std::uint64_t seed) {
  const int n = p.n();
  for (int i = 0; i + 1 < n; ++i)
    if (!(act(transposition(n, i, i + 1), p) == p)) return false;
  std::mt19937_64 rng(seed);
  for (int k = 0; k < probes; ++k)
    if (!(act(random_permutation(n, rng), p) == p)) return false;
  return true;
}

namespace {

RatMatrix evaluate_matrix(const YMatrix& y, const CharVector& v) {
  const int s = y.size();
  RatMatrix out(s, s);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) out(i, j) = evaluate(y.entries[i][j], v);
  return out;
}

Rational frobenius(const RatMatrix& a, const RatMatrix& b) {
  Rational s = 0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) s += a(i, j) * b(i, j);
  return s;
}

}  // namespace

GpSdpInstance assemble_gp_sdp(const MultilinearPoly& target, const std::vector<Partition>& partitions,
                              const SabBasis& basis, const Graph& forbidden) {
  GpSdpInstance inst;
  inst.n = basis.n;
  inst.d = basis.d;
  inst.forbidden = forbidden;
  if (target.n() != basis.n) throw std::invalid_argument("target and basis disagree on n");
  if (!is_symmetric_invariant(target, 20)) throw std::invalid_argument("target is not S_n-invariant");
  inst.target = target;
  for (const auto& lambda : partitions) {
    if (size_of(lambda) != basis.n) throw std::invalid_argument("partition " + to_string(lambda) + " is not of n");
    if (multiplicity(lambda, basis.n, basis.d) == 0) continue;
    const SabBlock* block = basis.first_block(lambda);
    if (!block) throw std::invalid_argument("basis has no block for " + to_string(lambda));
    inst.partitions.push_back(lambda);
    inst.y.push_back(y_matrix(*block, basis.n));
    inst.n_lambda.push_back(dimension(lambda));
  }
  inst.graphs = enumerate_a_free(inst.n, forbidden);
  inst.y_values.resize(inst.y.size());
  for (std::size_t l = 0; l < inst.y.size(); ++l)
    for (const auto& g : inst.graphs) inst.y_values[l].push_back(evaluate_matrix(inst.y[l], char_vector(g, inst.n)));
  return inst;
}

GpSdpInstance assemble_gp_sdp(const MultilinearPoly& target, int hook_t, const SabBasis& basis,
                              const Graph& forbidden) {
  return assemble_gp_sdp(target, partitions_lex_geq(basis.n, hook_t), basis, forbidden);
}

Rational gp_value(const GpSdpInstance& inst, const std::vector<RatMatrix>& q, std::size_t graph) {
  Rational s = 0;
  for (std::size_t l = 0; l < q.size(); ++l) s += inst.n_lambda[l] * frobenius(q[l], inst.y_values[l][graph]);
  return s;
}

namespace {

std::vector<BlockShape> psd_shapes(const GpSdpInstance& inst) {
  std::vector<BlockShape> shapes;
  for (const auto& y : inst.y) shapes.push_back({BlockKind::kPsd, y.size()});
  return shapes;
}

void add_block_terms(const GpSdpInstance& inst, std::size_t g, SdpProblem::Constraint& con) {
  for (std::size_t l = 0; l < inst.y.size(); ++l) con.a[l] = Rational(inst.n_lambda[l]) * inst.y_values[l][g];
}

std::optional<std::vector<RatMatrix>> round_blocks(const SdpSolution& sol, std::size_t count, long max_den) {
  std::vector<RatMatrix> q;
  for (std::size_t l = 0; l < count; ++l) {
    auto r = round_psd(sol.x[l], max_den);
    if (!r) return std::nullopt;
    q.push_back(std::move(*r));
  }
  return q;
}

}  // namespace

SdpProblem gp_target_problem(const GpSdpInstance& inst) {
  SdpProblem p(psd_shapes(inst), 0);
  for (std::size_t l = 0; l < inst.y.size(); ++l) p.objective[l] = RatMatrix::identity(inst.y[l].size());
  for (std::size_t g = 0; g < inst.graphs.size(); ++g) {
    auto& con = p.add_constraint();
    add_block_terms(inst, g, con);
    con.rhs = evaluate(inst.target, char_vector(inst.graphs[g], inst.n));
  }
  return p;
}

GpTargetResult solve_gp_target(const GpSdpInstance& inst, const SolverOptions& options, long max_denominator) {
  GpTargetResult out;
  out.numeric = solve_sdp(gp_target_problem(inst), options);
  if (out.numeric.status != SdpStatus::kOptimal) {
    out.failure = "solver stopped with status " + to_string(out.numeric.status);
    return out;
  }
  for (long den : denominator_ladder(max_denominator)) {
    auto q = round_blocks(out.numeric, inst.y.size(), den);
    if (!q) continue;
    Rational worst = 0;
    for (std::size_t g = 0; g < inst.graphs.size(); ++g) {
      Rational r = evaluate(inst.target, char_vector(inst.graphs[g], inst.n)) - gp_value(inst, *q, g);
      worst = std::max(worst, Rational(abs(r)));
    }
    if (out.q.empty() || worst < out.max_residual) {
      out.q = std::move(*q);
      out.max_residual = worst;
    }
    if (worst == 0) break;
  }
  if (out.q.empty() && !inst.y.empty()) {
    out.failure = "could not round the blocks to rational PSD matrices";
    return out;
  }
  out.exact = out.max_residual == 0;
  return out;
}

GpBoundInstance assemble_gp_bound(GpSdpInstance base, int m) {
  GpBoundInstance inst;
  if (m > base.n) throw std::invalid_argument("host size exceeds n");
  inst.m = m;
  inst.hosts = enumerate_a_free(m, base.forbidden);
  for (const auto& h : inst.hosts) {
    std::vector<Rational> row;
    for (const auto& g : base.graphs) row.push_back(induced_density(h, g));
    inst.host_values.push_back(std::move(row));
  }
  for (const auto& g : base.graphs) inst.density.push_back(edge_density_of(g));
  inst.base = std::move(base);
  return inst;
}

SdpProblem gp_bound_problem(const GpBoundInstance& inst) {
  auto shapes = psd_shapes(inst.base);
  shapes.push_back({BlockKind::kNonnegative, static_cast<int>(inst.hosts.size())});
  SdpProblem p(shapes, 1);
  p.free_objective[0] = 1;
  const std::size_t slack = inst.base.y.size();
  for (std::size_t g = 0; g < inst.base.graphs.size(); ++g) {
    auto& con = p.add_constraint();
    add_block_terms(inst.base, g, con);
    for (std::size_t h = 0; h < inst.hosts.size(); ++h) con.a[slack](h, h) = inst.host_values[h][g];
    con.free[0] = -1;
    con.rhs = -inst.density[g];
  }
  return p;
}

GpBoundResult solve_gp_bound(const GpBoundInstance& inst, const SolverOptions& options, long max_denominator) {
  GpBoundResult out;
  out.numeric = solve_sdp(gp_bound_problem(inst), options);
  if (out.numeric.status != SdpStatus::kOptimal) {
    out.failure = "solver stopped with status " + to_string(out.numeric.status);
    return out;
  }
  const auto& slack = out.numeric.x[inst.base.y.size()];
  auto consider = [&](std::vector<RatMatrix> q, long den) {
    std::vector<Rational> c;
    for (std::size_t h = 0; h < inst.hosts.size(); ++h) {
      Rational v = rationalize(slack(h, h), den);
      c.push_back(v < 0 ? Rational(0) : v);
    }
    Rational alpha;
    for (std::size_t g = 0; g < inst.base.graphs.size(); ++g) {
      Rational v = inst.density[g] + gp_value(inst.base, q, g);
      for (std::size_t h = 0; h < inst.hosts.size(); ++h) v += c[h] * inst.host_values[h][g];
      if (g == 0 || v > alpha) alpha = v;
    }
    if (!out.certified_alpha || alpha < *out.certified_alpha) {
      out.certified_alpha = alpha;
      out.q = std::move(q);
      out.c = std::move(c);
    }
  };
  for (long den : denominator_ladder(max_denominator)) {
    auto q = round_blocks(out.numeric, inst.base.y.size(), den);
    if (q) consider(std::move(*q), den);
    // Dropping the SOS part is always valid and often exact when Q is tiny.
    std::vector<RatMatrix> zero;
    for (const auto& y : inst.base.y) zero.push_back(RatMatrix(y.size(), y.size()));
    consider(std::move(zero), den);
  }
  if (!out.certified_alpha) out.failure = "could not round the blocks to rational PSD matrices";
  return out;
}

}  // namespace flagsos
