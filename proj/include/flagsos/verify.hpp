#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flagsos/flag_sdp.hpp"
#include "flagsos/flags.hpp"
#include "flagsos/symrep.hpp"

namespace flagsos {

// Characteristic vectors of every labeled A-free graph on n vertices, in
// increasing bit order. Cached per (n, A). Budget: n <= 6 for A = K3,
// n <= 5 otherwise.
const std::vector<CharVector>& zero_set(int n, const Graph& forbidden, int threads = 1);
int zero_set_budget(const Graph& forbidden);

enum class IdentityMode { kExactCoefficient, kModIdeal };

struct IdentityClaim {
  MultilinearPoly lhs;
  MultilinearPoly rhs;
  Graph forbidden;
  IdentityMode mode = IdentityMode::kModIdeal;
};

struct IdentityResult {
  bool holds = false;
  std::optional<CharVector> witness;  // first zero where the sides differ
  std::size_t points_checked = 0;
};

IdentityResult verify_identity(const IdentityClaim& claim, int threads = 1);

struct ErrReport {
  Rational max_abs;
  CharVector attained_at;
  Rational bound_constant;  // max_abs * n
};

ErrReport err_report(const MultilinearPoly& err, const Graph& forbidden, int threads = 1);

// Mantel reproduction at host size n: lhs = 1/2 d_H0 - 1/6 d_H1 - 1/6 d_H2,
// rhs = E_Theta[(d_F0, d_F1) Q (d_F0, d_F1)^T], err = rhs - lhs.
struct MantelReport {
  int n = 0;
  RatMatrix q;
  MultilinearPoly lhs;
  MultilinearPoly rhs;
  MultilinearPoly err;
  bool q_psd = false;
  ErrReport err_stats;
  // 1/2 - d + err == rhs + 1/3 d_H1 on every zero.
  bool chain_holds = false;
  // d(G) <= 1/2 + err(G) on every zero.
  bool bound_holds = false;
  Rational max_density;
  bool passed() const { return q_psd && chain_holds && bound_holds; }
};

MantelReport verify_mantel_flag_sos(int n, int threads = 1);

// r * sqrt(s) with s >= 0; enough to carry the square roots of the
// normalised basis and of Q_(n) through exact products.
struct Surd {
  Rational r;
  Rational s = 1;

  static Surd sqrt_of(const Rational& s);
  friend Surd operator*(const Surd& a, const Surd& b) { return {a.r * b.r, a.s * b.s}; }
  // nullopt unless the radicand is a rational square.
  std::optional<Rational> to_rational() const;
};

struct SymmetricMantelReport {
  int n = 0;
  // Flag target recomputed from the closed form (1/n) sum_v 1/2 (1 - 2 s_v/(n-1))^2.
  bool target_matches = false;
  // The computed basis spans p_{0,0}, p_{0,1} and p_{1,n}, and its Y matrices
  // are proportional to the displayed ones.
  bool basis_matches = false;
  // Q_(n) in the unnormalised basis (1, S): all surds cancel.
  RatMatrix q_n;
  Rational det_q_n;
  int rank_q_n = 0;
  bool q_n_psd = false;
  Rational q_hook;  // Q_(n-1,1) as displayed
  // (n-1)^2 f = <Q_(n), Y_(n)> + (n-1) <2(n-2)/n, Y_(n-1,1)>, coefficient-exact.
  bool corrected_identity = false;
  // f = <Q_(n), Y_(n)> + (n-1) <Q_(n-1,1), Y_(n-1,1)> exactly as displayed.
  bool displayed_identity = false;
  bool passed() const {
    return target_matches && basis_matches && det_q_n == 0 && q_n_psd && q_hook >= 0 && corrected_identity;
  }
};

SymmetricMantelReport verify_symmetric_mantel(int n);

struct IsotypicReport {
  std::vector<Partition> nonzero;        // mu with a nonzero projection
  std::vector<Partition> outside_nonzero;  // those not >=lex the hook
  bool confined() const { return outside_nonzero.empty(); }
};

// Projections are exact character sums over S_n. Budget: n <= 6; the
// polynomial must have degree <= d.
IsotypicReport verify_isotypic_membership(const MultilinearPoly& p, int hook_t, int d);

struct DensityBoundReport {
  int n = 0;
  bool psd_ok = false;
  int failed_block = -1;
  std::vector<Rational> a_h;  // recomputed
  Rational bound;             // recomputed
  bool a_h_match = false;
  bool bound_match = false;
  // d(G) <= bound + err(G) on every zero, err = E[d^T Q d] - sum a_H d_H.
  bool chain_holds = false;
  std::optional<CharVector> violating;
  Rational max_err;
  Rational max_density;
  std::string failure;
  bool passed() const { return psd_ok && a_h_match && bound_match && chain_holds; }
};

// Rebuilds the setup from the certificate, checks every block for exact PSD,
// recomputes a_H and the bound (both must match the stored values) and
// checks the bound chain on the zero set at host size n.
DensityBoundReport verify_density_bound(const FlagCertificate& cert, int n, int threads = 1);

}  // namespace flagsos
