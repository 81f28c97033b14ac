#include "flagsos/verify.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <unordered_map>

#include "flagsos/errors.hpp"
#include "flagsos/gp_sdp.hpp"

namespace flagsos {

namespace {

// Runs body(begin, end) over [0, count) split into contiguous chunks.
template <class Body>
void parallel_chunks(std::size_t count, int threads, Body body) {
  const std::size_t t = std::max(1, std::min<int>(threads, static_cast<int>(count / 256) + 1));
  if (t == 1) {
    body(std::size_t{0}, count);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t step = (count + t - 1) / t;
  for (std::size_t k = 0; k < t; ++k) {
    const std::size_t b = k * step, e = std::min(count, b + step);
    if (b < e) pool.emplace_back([&body, b, e] { body(b, e); });
  }
  for (auto& th : pool) th.join();
}

std::vector<Rational> evaluate_parallel(const MultilinearPoly& p, const std::vector<CharVector>& points,
                                        int threads) {
  std::vector<Rational> out(points.size());
  parallel_chunks(points.size(), threads, [&](std::size_t b, std::size_t e) {
    std::vector<CharVector> part(points.begin() + b, points.begin() + e);
    auto vals = evaluate_all(p, part);
    std::move(vals.begin(), vals.end(), out.begin() + b);
  });
  return out;
}

bool is_triangle(const Graph& g) { return g.vertex_count() == 3 && g.edge_count() == 3; }

bool has_triangle(int n, std::uint64_t bits) {
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (!((bits >> pair_index(n, i, j)) & 1U)) continue;
      for (int k = j + 1; k < n; ++k)
        if (((bits >> pair_index(n, i, k)) & 1U) && ((bits >> pair_index(n, j, k)) & 1U)) return true;
    }
  return false;
}

}  // namespace

int zero_set_budget(const Graph& forbidden) { return is_triangle(forbidden) ? 6 : 5; }

const std::vector<CharVector>& zero_set(int n, const Graph& forbidden, int threads) {
  if (n < 1) throw std::invalid_argument("zero_set: n must be positive");
  if (n > zero_set_budget(forbidden))
    throw BudgetExceeded("zero-set enumeration supports n <= " + std::to_string(zero_set_budget(forbidden)) +
                         " for this forbidden graph");
  static std::mutex mu;
  static std::map<std::tuple<int, int, std::uint64_t>, std::vector<CharVector>> cache;
  const auto key = std::make_tuple(n, forbidden.vertex_count(), forbidden.edge_mask());
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  const std::size_t total = std::size_t{1} << pair_count(n);
  std::vector<char> keep(total, 0);
  const bool triangle = is_triangle(forbidden);
  parallel_chunks(total, threads, [&](std::size_t b, std::size_t e) {
    for (std::size_t m = b; m < e; ++m)
      keep[m] = triangle ? !has_triangle(n, m) : !contains_induced(Graph::from_mask(n, m), forbidden);
  });
  std::vector<CharVector> points;
  for (std::size_t m = 0; m < total; ++m)
    if (keep[m]) points.push_back(CharVector{n, m});
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, std::move(points)).first->second;
}

IdentityResult verify_identity(const IdentityClaim& claim, int threads) {
  if (claim.lhs.n() != claim.rhs.n()) throw std::invalid_argument("identity sides live in different rings");
  IdentityResult out;
  if (claim.mode == IdentityMode::kExactCoefficient) {
    out.holds = coeff_equal(claim.lhs, claim.rhs);
    return out;
  }
  const auto& zs = zero_set(claim.lhs.n(), claim.forbidden, threads);
  const auto vals = evaluate_parallel(claim.lhs - claim.rhs, zs, threads);
  out.points_checked = zs.size();
  out.holds = true;
  for (std::size_t i = 0; i < vals.size(); ++i)
    if (vals[i] != 0) {
      out.holds = false;
      out.witness = zs[i];
      break;
    }
  return out;
}

ErrReport err_report(const MultilinearPoly& err, const Graph& forbidden, int threads) {
  const auto& zs = zero_set(err.n(), forbidden, threads);
  const auto vals = evaluate_parallel(err, zs, threads);
  ErrReport r{0, zs.front(), 0};
  for (std::size_t i = 0; i < vals.size(); ++i)
    if (abs(vals[i]) > r.max_abs) {
      r.max_abs = abs(vals[i]);
      r.attained_at = zs[i];
    }
  r.bound_constant = r.max_abs * err.n();
  return r;
}

MantelReport verify_mantel_flag_sos(int n, int threads) {
  if (n < 4 || n > 6) throw std::invalid_argument("Mantel verification needs 4 <= n <= 6");
  const Graph k3 = Graph::complete(3);
  const auto flags = enumerate_flags(IntersectionType::of(Graph(1)), 2, k3);
  const auto hosts = enumerate_a_free(3, k3);
  MantelReport rep;
  rep.n = n;
  rep.q = RatMatrix::from_rows({{frac(1, 2), frac(-1, 2)}, {frac(-1, 2), frac(1, 2)}});
  rep.q_psd = check_psd_rational(rep.q).psd;
  const auto dh0 = d_H(hosts[0], n), dh1 = d_H(hosts[1], n), dh2 = d_H(hosts[2], n);
  rep.lhs = frac(1, 2) * dh0 - frac(1, 6) * dh1 - frac(1, 6) * dh2;
  rep.rhs = flag_sos_polynomial(flags, rep.q, n);
  rep.err = rep.rhs - rep.lhs;
  rep.err_stats = err_report(rep.err, k3, threads);

  const auto d = edge_density(n);
  const MultilinearPoly half = MultilinearPoly::constant(n, frac(1, 2));
  rep.chain_holds = verify_identity({half - d + rep.err, rep.rhs + frac(1, 3) * dh1, k3}, threads).holds;

  const auto& zs = zero_set(n, k3, threads);
  const auto dv = evaluate_parallel(d, zs, threads);
  const auto ev = evaluate_parallel(rep.err, zs, threads);
  rep.bound_holds = true;
  rep.max_density = 0;
  for (std::size_t i = 0; i < zs.size(); ++i) {
    rep.max_density = std::max(rep.max_density, dv[i]);
    if (dv[i] > frac(1, 2) + ev[i]) rep.bound_holds = false;
  }
  return rep;
}

Surd Surd::sqrt_of(const Rational& s) {
  if (s < 0) throw std::domain_error("square root of a negative rational");
  return {1, s};
}

std::optional<Rational> Surd::to_rational() const {
  if (r == 0 || s == 0) return Rational(0);
  const Integer num = s.get_num(), den = s.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return std::nullopt;
  Integer a, b;
  mpz_sqrt(a.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(b.get_mpz_t(), den.get_mpz_t());
  Rational root(a, b);
  root.canonicalize();
  return Rational(r * root);
}

namespace {

int span_rank(const std::vector<MultilinearPoly>& polys, int n, int d) {
  return rank(coefficient_matrix(polys, monomial_basis(n, d)));
}

}  // namespace

SymmetricMantelReport verify_symmetric_mantel(int n) {
  if (n < 4 || n > 7) throw std::invalid_argument("symmetry-adapted Mantel check needs 4 <= n <= 7");
  SymmetricMantelReport rep;
  rep.n = n;
  const Graph k3 = Graph::complete(3);
  const auto flags = enumerate_flags(IntersectionType::of(Graph(1)), 2, k3);
  const RatMatrix q = RatMatrix::from_rows({{frac(1, 2), frac(-1, 2)}, {frac(-1, 2), frac(1, 2)}});
  const MultilinearPoly f = flag_sos_polynomial(flags, q, n);

  // Closed form via vertex degrees s_v.
  std::vector<MultilinearPoly> s(n, MultilinearPoly(n));
  MultilinearPoly total(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const auto x = MultilinearPoly::variable(n, i, j);
      s[i] += x;
      s[j] += x;
      total += x;
    }
  MultilinearPoly closed(n);
  const MultilinearPoly one = MultilinearPoly::constant(n, 1);
  for (int v = 0; v < n; ++v) {
    const auto g = one - frac(2, n - 1) * s[v];
    closed += g * g;
  }
  closed *= frac(1, 2 * n);
  rep.target_matches = coeff_equal(closed, f);

  // u_i = S - (n/2) s_i is the unnormalised p_{1,i}.
  std::vector<MultilinearPoly> u;
  for (int i = 0; i < n; ++i) u.push_back(total - frac(n, 2) * s[i]);
  const Partition top{n}, hook{n - 1, 1};
  const auto basis = symmetry_adapted_basis(n, 1, {top, hook});
  const SabBlock* bt = basis.first_block(top);
  const SabBlock* bh = basis.first_block(hook);
  Rational hook_avg_scale;  // Y computed = scale * (1/n) sum u_i^2
  MultilinearPoly y_tilde(n);
  for (const auto& ui : u) y_tilde += ui * ui;
  y_tilde *= frac(1, n);
  if (bt && bh && bt->polys.size() == 2 && bh->polys.size() == 1) {
    const bool top_ok = span_rank({bt->polys[0], bt->polys[1], one, total}, n, 1) == 2;
    const bool hook_ok = span_rank({bh->polys[0], u[n - 1]}, n, 1) == 1;
    const auto yh = y_matrix(*bh, n);
    const bool yh_ok = span_rank({yh.entries[0][0], y_tilde}, n, 2) == 1;
    rep.basis_matches = top_ok && hook_ok && yh_ok;
  }

  // Q_(n) as displayed, over the normalised basis (1, S / sqrt(C(n,2))).
  const Rational pairs = frac(n * (n - 1), 2);
  const Rational nn(n);
  const Surd q01{-1, 2 * Rational(n - 1) * (n - 1) * (n - 1) / nn};
  const Rational q00 = frac((n - 1) * (n - 1), 2);
  const Rational q11 = 4 * Rational(n - 1) / nn;
  const auto q01_sq = (q01 * q01).to_rational();
  rep.det_q_n = q00 * q11 - *q01_sq;
  const Surd norm1 = Surd{1, 1 / pairs};
  const auto q01_tilde = (q01 * norm1).to_rational();
  if (!q01_tilde) throw std::logic_error("symmetry-adapted Mantel check: off-diagonal surd did not cancel");
  rep.q_n = RatMatrix::from_rows({{q00, *q01_tilde}, {*q01_tilde, q11 / pairs}});
  const auto psd = check_psd_rational(rep.q_n);
  rep.q_n_psd = psd.psd;
  rep.rank_q_n = psd.rank;
  rep.q_hook = 2 * Rational(n - 1) * (n - 2) / nn;

  // <Q_(n), Y_(n)> with Y_(n) = (1, S)^T (1, S) in the unnormalised basis.
  const MultilinearPoly top_term = rep.q_n(0, 0) * one + (2 * rep.q_n(0, 1)) * total + rep.q_n(1, 1) * (total * total);
  const Rational hook_norm2 = frac((n - 1) * (n - 2), 2) + Rational(n - 1) * frac(n - 2, 2) * frac(n - 2, 2);
  const MultilinearPoly y_hook = y_tilde * (1 / hook_norm2);
  const Rational weight = n - 1;
  rep.displayed_identity = coeff_equal(f, top_term + (weight * rep.q_hook) * y_hook);
  const Rational corrected_hook = frac(2 * (n - 2), n);
  rep.corrected_identity =
      coeff_equal(Rational((n - 1) * (n - 1)) * f, top_term + (weight * corrected_hook) * y_hook);
  return rep;
}

IsotypicReport verify_isotypic_membership(const MultilinearPoly& p, int hook_t, int d) {
  const int n = p.n();
  if (n > 6) throw BudgetExceeded("isotypic membership supports n <= 6");
  if (p.degree() > d) throw std::invalid_argument("polynomial degree exceeds d");
  if (hook_t < 0 || hook_t >= n) throw std::invalid_argument("hook size must satisfy 0 <= t < n");
  IsotypicReport rep;
  const auto sums = class_sums(p);
  const Partition hook = hook_partition(n, hook_t);
  for (const auto& mu : partitions_of(n)) {
    if (isotypic_projection(sums, mu).is_zero()) continue;
    rep.nonzero.push_back(mu);
    if (!lex_geq(mu, hook)) rep.outside_nonzero.push_back(mu);
  }
  return rep;
}

DensityBoundReport verify_density_bound(const FlagCertificate& cert, int n, int threads) {
  DensityBoundReport rep;
  rep.n = n;
  if (n < cert.m) throw std::invalid_argument("verification size n must be at least the host size m");
  const FlagSdpInstance inst = assemble_flag_sdp(cert.specs, cert.m, cert.forbidden);
  if (cert.q.size() != inst.blocks.size()) {
    rep.failure = "certificate has " + std::to_string(cert.q.size()) + " blocks, setup needs " +
                  std::to_string(inst.blocks.size());
    return rep;
  }
  for (std::size_t b = 0; b < cert.q.size(); ++b) {
    const auto& q = cert.q[b];
    const int size = static_cast<int>(inst.blocks[b].flags.size());
    if (q.rows() != size || q.cols() != size || !q.is_symmetric() || !check_psd_rational(q).psd) {
      rep.failed_block = static_cast<int>(b);
      rep.failure = "block " + std::to_string(b) + " is not a symmetric PSD matrix of size " + std::to_string(size);
      return rep;
    }
  }
  rep.psd_ok = true;
  rep.a_h = compute_a_h(inst, cert.q);
  rep.bound = compute_bound(inst, rep.a_h);
  rep.a_h_match = rep.a_h == cert.a_h;
  rep.bound_match = rep.bound == cert.bound;
  if (!rep.a_h_match) rep.failure = "stored a_H differ from the recomputed values";
  else if (!rep.bound_match) rep.failure = "stored bound " + to_string(cert.bound) + " differs from the recomputed " + to_string(rep.bound);

  const auto& zs = zero_set(n, cert.forbidden, threads);
  MultilinearPoly sos(n);
  for (std::size_t b = 0; b < cert.q.size(); ++b) sos += flag_sos_polynomial(inst.blocks[b].flags, cert.q[b], n);
  const auto sos_vals = evaluate_parallel(sos, zs, threads);

  std::unordered_map<std::uint64_t, std::size_t> host_index;
  for (std::size_t h = 0; h < inst.hosts.size(); ++h) host_index[inst.hosts[h].edge_mask()] = h;
  std::vector<std::vector<int>> subsets;
  for (std::uint32_t s = 0; s < (1U << n); ++s) {
    if (std::popcount(s) != cert.m) continue;
    std::vector<int> vs;
    for (int v = 0; v < n; ++v)
      if ((s >> v) & 1U) vs.push_back(v);
    subsets.push_back(std::move(vs));
  }
  std::vector<Rational> ah_vals(zs.size());
  parallel_chunks(zs.size(), threads, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      const Graph g = graph_of(zs[i]);
      Rational acc = 0;
      for (const auto& vs : subsets) acc += rep.a_h[host_index.at(canonical_form(g.induced(vs)).edge_mask())];
      ah_vals[i] = acc / static_cast<long>(subsets.size());
    }
  });

  rep.chain_holds = true;
  rep.max_err = 0;
  rep.max_density = 0;
  for (std::size_t i = 0; i < zs.size(); ++i) {
    const Rational err = sos_vals[i] - ah_vals[i];
    const Rational dens = edge_density_of(graph_of(zs[i]));
    rep.max_err = std::max(rep.max_err, Rational(abs(err)));
    rep.max_density = std::max(rep.max_density, dens);
    if (rep.chain_holds && dens > rep.bound + err) {
      rep.chain_holds = false;
      rep.violating = zs[i];
      if (rep.failure.empty()) rep.failure = "density exceeds bound + err on a zero";
    }
  }
  return rep;
}

}  // namespace flagsos
