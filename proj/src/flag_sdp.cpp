#include "flagsos/flag_sdp.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace flagsos {

FlagSdpInstance assemble_flag_sdp(const std::vector<FlagBlockSpec>& specs, int m, const Graph& forbidden) {
  if (specs.empty()) throw std::invalid_argument("at least one flag block is required");
  FlagSdpInstance inst;
  inst.forbidden = forbidden;
  inst.m = m;
  for (const auto& s : specs)
    if (m < 2 * s.f - s.type.size())
      throw std::invalid_argument("host size m=" + std::to_string(m) + " is below 2f - t = " +
                                  std::to_string(2 * s.f - s.type.size()));
  inst.hosts = enumerate_a_free(m, forbidden);
  for (const auto& h : inst.hosts) inst.host_density.push_back(edge_density_of(h));
  for (const auto& s : specs) {
    FlagBlockData block{s.type, s.f, enumerate_flags(s.type, s.f, forbidden), {}};
    block.table = pair_density_table(block.flags, inst.hosts);
    inst.blocks.push_back(std::move(block));
  }
  return inst;
}

SdpProblem flag_sdp_problem(const FlagSdpInstance& inst) {
  std::vector<BlockShape> shapes;
  for (const auto& b : inst.blocks) shapes.push_back({BlockKind::kPsd, static_cast<int>(b.flags.size())});
  const int nh = static_cast<int>(inst.hosts.size());
  shapes.push_back({BlockKind::kNonnegative, nh});
  SdpProblem p(shapes, 1);
  p.free_objective[0] = 1;
  const std::size_t slack = inst.blocks.size();
  for (int h = 0; h < nh; ++h) {
    auto& con = p.add_constraint();
    for (std::size_t b = 0; b < inst.blocks.size(); ++b) {
      const auto& e = inst.blocks[b].table.entries;
      for (std::size_t i = 0; i < e.size(); ++i)
        for (std::size_t j = 0; j < e.size(); ++j) con.a[b](i, j) = e[i][j][h];
    }
    con.a[slack](h, h) = 1;
    con.free[0] = -1;
    con.rhs = -inst.host_density[h];
  }
  return p;
}

std::vector<Rational> compute_a_h(const FlagSdpInstance& inst, const std::vector<RatMatrix>& q) {
  if (q.size() != inst.blocks.size()) throw std::invalid_argument("certificate block count differs from the setup");
  std::vector<Rational> a(inst.hosts.size());
  for (std::size_t b = 0; b < q.size(); ++b) {
    const auto& e = inst.blocks[b].table.entries;
    if (q[b].rows() != static_cast<int>(e.size()) || q[b].cols() != static_cast<int>(e.size()))
      throw std::invalid_argument("certificate block " + std::to_string(b) + " has the wrong size");
    for (std::size_t h = 0; h < a.size(); ++h)
      for (std::size_t i = 0; i < e.size(); ++i)
        for (std::size_t j = 0; j < e.size(); ++j) a[h] += q[b](i, j) * e[i][j][h];
  }
  return a;
}

Rational compute_bound(const FlagSdpInstance& inst, const std::vector<Rational>& a_h) {
  Rational best = inst.host_density.at(0) + a_h.at(0);
  for (std::size_t h = 1; h < a_h.size(); ++h) best = std::max(best, Rational(inst.host_density[h] + a_h[h]));
  return best;
}

FlagCertificate make_flag_certificate(const FlagSdpInstance& inst, std::vector<RatMatrix> q) {
  FlagCertificate cert;
  cert.forbidden = inst.forbidden;
  cert.m = inst.m;
  for (const auto& b : inst.blocks) cert.specs.push_back({b.type, b.f});
  cert.a_h = compute_a_h(inst, q);
  cert.bound = compute_bound(inst, cert.a_h);
  cert.q = std::move(q);
  return cert;
}

RatMatrix flag_lift_matrix(const std::vector<Flag>& small, const std::vector<Flag>& big) {
  // d^Theta_F averages over ordered placements, so every distinct
  // relabeling of the unlabeled vertices of a big flag carries the same
  // weight; count those whose first f vertices spell out a small flag.
  RatMatrix l(static_cast<int>(small.size()), static_cast<int>(big.size()));
  for (std::size_t j = 0; j < big.size(); ++j) {
    const Flag& g = big[j];
    const int t = g.type_size, size = g.size();
    std::vector<int> keep(size - 1);
    std::iota(keep.begin(), keep.end(), 0);
    std::vector<int> perm(size);
    std::iota(perm.begin(), perm.end(), 0);
    std::set<std::uint64_t> seen;
    do {
      const Graph relabeled = g.graph.relabeled(perm);
      if (!seen.insert(relabeled.edge_mask()).second) continue;
      const Graph head = relabeled.induced(keep);
      auto it = std::find_if(small.begin(), small.end(), [&](const Flag& f) { return f.graph == head; });
      if (it != small.end()) l(static_cast<int>(it - small.begin()), static_cast<int>(j)) += 1;
    } while (std::next_permutation(perm.begin() + t, perm.end()));
  }
  return l;
}

FlagSolveResult solve_flag_sdp(const FlagSdpInstance& inst, const SolverOptions& options, long max_denominator) {
  FlagSolveResult out;
  out.numeric = solve_sdp(flag_sdp_problem(inst), options);
  if (out.numeric.status != SdpStatus::kOptimal) {
    out.failure = "solver stopped with status " + to_string(out.numeric.status);
    return out;
  }
  auto consider = [&](std::vector<RatMatrix> q) {
    auto cert = make_flag_certificate(inst, std::move(q));
    if (!out.certificate || cert.bound < out.certificate->bound) out.certificate = std::move(cert);
  };
  for (long den : denominator_ladder(max_denominator)) {
    std::vector<RatMatrix> q;
    for (std::size_t b = 0; b < inst.blocks.size(); ++b) {
      auto r = round_psd(out.numeric.x[b], den);
      if (!r) break;
      q.push_back(std::move(*r));
    }
    if (q.size() == inst.blocks.size()) consider(std::move(q));
  }

  // A certificate for flags one vertex smaller lifts exactly (Q -> L^T Q L),
  // so a larger f is never certified worse than f - 1 at the same host size.
  std::vector<FlagBlockSpec> smaller;
  bool any_shrunk = false;
  for (const auto& b : inst.blocks) {
    const bool shrink = b.f > b.type.size();
    smaller.push_back({b.type, shrink ? b.f - 1 : b.f});
    any_shrunk = any_shrunk || shrink;
  }
  if (any_shrunk) {
    const FlagSdpInstance sub = assemble_flag_sdp(smaller, inst.m, inst.forbidden);
    const FlagSolveResult inner = solve_flag_sdp(sub, options, max_denominator);
    if (inner.certificate) {
      std::vector<RatMatrix> q;
      for (std::size_t b = 0; b < inst.blocks.size(); ++b) {
        if (sub.blocks[b].f == inst.blocks[b].f) {
          q.push_back(inner.certificate->q[b]);
        } else {
          const RatMatrix l = flag_lift_matrix(sub.blocks[b].flags, inst.blocks[b].flags);
          q.push_back(l.transpose() * inner.certificate->q[b] * l);
        }
      }
      consider(std::move(q));
    }
  }
  if (!out.certificate) out.failure = "could not round the blocks to rational PSD matrices";
  return out;
}

}  // namespace flagsos
