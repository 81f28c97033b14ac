#include "flagsos/sdp.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace flagsos {

SdpProblem::SdpProblem(std::vector<BlockShape> shapes, int free_variables)
    : blocks(std::move(shapes)), free_count(free_variables), free_objective(free_variables) {
  for (const auto& b : blocks) objective.emplace_back(b.size, b.size);
}

SdpProblem::Constraint& SdpProblem::add_constraint() {
  Constraint c;
  for (const auto& b : blocks) c.a.emplace_back(b.size, b.size);
  c.free.assign(free_count, Rational(0));
  constraints.push_back(std::move(c));
  return constraints.back();
}

std::string to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::kOptimal:
      return "optimal";
    case SdpStatus::kPrimalInfeasible:
      return "primal_infeasible";
    case SdpStatus::kDualInfeasible:
      return "dual_infeasible";
    case SdpStatus::kMaxIterations:
      return "max_iterations";
    case SdpStatus::kNumericalFailure:
      return "numerical_failure";
  }
  return "unknown";
}

namespace {

using Mat = Eigen::MatrixXd;
using Blocks = std::vector<Mat>;

// Coordinates of the X variables: (block, i, j) with i <= j (only i == j for
// nonnegative blocks).
struct Coord {
  int block, i, j;
};

std::vector<Coord> coordinates(const std::vector<BlockShape>& shapes) {
  std::vector<Coord> out;
  for (int b = 0; b < static_cast<int>(shapes.size()); ++b)
    for (int i = 0; i < shapes[b].size; ++i)
      for (int j = i; j < shapes[b].size; ++j)
        if (shapes[b].kind == BlockKind::kPsd || i == j) out.push_back({b, i, j});
  return out;
}

// <A, X> as a linear form in the coordinates.
std::vector<Rational> vectorize(const std::vector<RatMatrix>& a, const std::vector<Coord>& coords) {
  std::vector<Rational> v(coords.size());
  for (std::size_t k = 0; k < coords.size(); ++k) {
    const auto& c = coords[k];
    v[k] = c.i == c.j ? a[c.block](c.i, c.i) : a[c.block](c.i, c.j) + a[c.block](c.j, c.i);
  }
  return v;
}

Blocks devectorize(const std::vector<Rational>& v, const std::vector<Coord>& coords, const std::vector<BlockShape>& shapes) {
  Blocks out;
  for (const auto& s : shapes) out.push_back(Mat::Zero(s.size, s.size));
  for (std::size_t k = 0; k < coords.size(); ++k) {
    const auto& c = coords[k];
    const double x = v[k].get_d();
    if (c.i == c.j) {
      out[c.block](c.i, c.i) = x;
    } else {
      out[c.block](c.i, c.j) = x / 2;
      out[c.block](c.j, c.i) = x / 2;
    }
  }
  return out;
}

double inner(const Blocks& a, const Blocks& b) {
  double s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k].cwiseProduct(b[k]).sum();
  return s;
}

double norm(const Blocks& a) { return std::sqrt(inner(a, a)); }

Mat sym(const Mat& m) { return 0.5 * (m + m.transpose()); }

// Largest step in [0, inf) keeping x + a*dx PSD; x must be positive definite.
double max_step(const Mat& x, const Mat& dx) {
  Eigen::LLT<Mat> llt(x);
  if (llt.info() != Eigen::Success) return 0;
  const Mat linv = llt.matrixL().solve(Mat::Identity(x.rows(), x.cols()));
  Eigen::SelfAdjointEigenSolver<Mat> es(sym(linv * dx * linv.transpose()), Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().minCoeff();
  return lmin < 0 ? -1.0 / lmin : std::numeric_limits<double>::infinity();
}

double max_step(const Blocks& x, const Blocks& dx) {
  double a = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < x.size(); ++k)
    if (x[k].rows() > 0) a = std::min(a, max_step(x[k], dx[k]));
  return a;
}

// Solves V D + D V = R for symmetric D, with V = U diag(l) U^T.
Mat lyapunov(const Mat& u, const Eigen::VectorXd& l, const Mat& r) {
  Mat rh = u.transpose() * r * u;
  for (int i = 0; i < rh.rows(); ++i)
    for (int j = 0; j < rh.cols(); ++j) rh(i, j) /= l(i) + l(j);
  return sym(u * rh * u.transpose());
}

struct Scaling {
  Mat w, g, ginv, v, vu;
  Eigen::VectorXd vl;
};

bool nt_scaling(const Mat& x, const Mat& z, Scaling& s) {
  const int n = static_cast<int>(x.rows());
  Eigen::LLT<Mat> llt(x);
  if (llt.info() != Eigen::Success) return false;
  const Mat l = llt.matrixL();
  Eigen::SelfAdjointEigenSolver<Mat> es(sym(l.transpose() * z * l));
  if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0) return false;
  const Eigen::VectorXd isq = es.eigenvalues().array().rsqrt();
  s.w = sym(l * es.eigenvectors() * isq.asDiagonal() * es.eigenvectors().transpose() * l.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> ew(s.w);
  if (ew.info() != Eigen::Success || ew.eigenvalues().minCoeff() <= 0) return false;
  const Eigen::VectorXd sq = ew.eigenvalues().array().sqrt();
  s.g = sym(ew.eigenvectors() * sq.asDiagonal() * ew.eigenvectors().transpose());
  s.ginv = sym(ew.eigenvectors() * sq.cwiseInverse().asDiagonal() * ew.eigenvectors().transpose());
  s.v = sym(s.g * z * s.g);
  Eigen::SelfAdjointEigenSolver<Mat> ev(s.v);
  if (ev.info() != Eigen::Success) return false;
  s.vu = ev.eigenvectors();
  s.vl = ev.eigenvalues().cwiseMax(1e-300);
  (void)n;
  return true;
}

struct Reduced {
  std::vector<BlockShape> shapes;
  std::vector<Coord> coords;
  std::vector<Blocks> a;
  Eigen::VectorXd b;
  Blocks c;
  double objective_constant = 0;
  // z_k = rhs - row . x for eliminated free variables (in recovery order).
  struct Pivot {
    int free_index;
    std::vector<Rational> x_row;
    Rational rhs;
  };
  std::vector<Pivot> pivots;
  std::vector<int> zero_free;
};

}  // namespace

SdpSolution solve_sdp(const SdpProblem& problem, const SolverOptions& options) {
  SdpSolution sol;
  const auto coords = coordinates(problem.blocks);
  const int nx = static_cast<int>(coords.size());
  const int nz = problem.free_count;
  for (const auto& b : problem.blocks)
    if (b.size < 0) throw std::invalid_argument("negative block size");

  // Exact rows [x coords | free vars] and right-hand sides.
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  for (const auto& con : problem.constraints) {
    if (con.a.size() != problem.blocks.size() || static_cast<int>(con.free.size()) != nz)
      throw std::invalid_argument("constraint shape does not match the problem");
    auto r = vectorize(con.a, coords);
    r.insert(r.end(), con.free.begin(), con.free.end());
    rows.push_back(std::move(r));
    rhs.push_back(con.rhs);
  }
  std::vector<Rational> cost = vectorize(problem.objective, coords);
  cost.insert(cost.end(), problem.free_objective.begin(), problem.free_objective.end());
  Rational cost_constant = 0;

  Reduced red;
  red.shapes = problem.blocks;
  red.coords = coords;
  std::vector<char> used(rows.size(), 0);
  std::vector<std::pair<int, int>> free_pivots;  // (free index, row)
  for (int k = 0; k < nz; ++k) {
    const int col = nx + k;
    int piv = -1;
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (!used[r] && rows[r][col] != 0) {
        piv = static_cast<int>(r);
        break;
      }
    if (piv < 0) {
      if (cost[col] != 0) {
        sol.status = SdpStatus::kDualInfeasible;
        sol.message = "free variable " + std::to_string(k) + " is unconstrained and has nonzero cost";
        return sol;
      }
      red.zero_free.push_back(k);
      continue;
    }
    used[piv] = 1;
    const Rational p = rows[piv][col];
    for (auto& x : rows[piv]) x /= p;
    rhs[piv] /= p;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (static_cast<int>(r) == piv || rows[r][col] == 0) continue;
      const Rational f = rows[r][col];
      for (int j = 0; j < nx + nz; ++j)
        if (rows[piv][j] != 0) rows[r][j] -= f * rows[piv][j];
      rhs[r] -= f * rhs[piv];
    }
    if (cost[col] != 0) {
      const Rational f = cost[col];
      for (int j = 0; j < nx + nz; ++j)
        if (rows[piv][j] != 0) cost[j] -= f * rows[piv][j];
      cost_constant += f * rhs[piv];
    }
    free_pivots.emplace_back(k, piv);
  }
  // Recovery rows reference only x after full Gauss-Jordan on free columns.
  for (auto it = free_pivots.rbegin(); it != free_pivots.rend(); ++it)
    red.pivots.push_back({it->first, std::vector<Rational>(rows[it->second].begin(), rows[it->second].begin() + nx),
                          rhs[it->second]});

  // Keep a maximal independent subset of the remaining rows.
  std::vector<std::vector<Rational>> echelon;
  std::vector<int> lead;
  std::vector<Rational> echelon_rhs;
  std::vector<int> kept;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (used[r]) continue;
    std::vector<Rational> v(rows[r].begin(), rows[r].begin() + nx);
    Rational vr = rhs[r];
    for (std::size_t e = 0; e < echelon.size(); ++e) {
      const Rational f = v[lead[e]];
      if (f == 0) continue;
      for (int j = 0; j < nx; ++j)
        if (echelon[e][j] != 0) v[j] -= f * echelon[e][j];
      vr -= f * echelon_rhs[e];
    }
    int l = -1;
    for (int j = 0; j < nx; ++j)
      if (v[j] != 0) {
        l = j;
        break;
      }
    if (l < 0) {
      if (vr != 0) {
        sol.status = SdpStatus::kPrimalInfeasible;
        sol.message = "linear constraints are inconsistent";
        return sol;
      }
      continue;
    }
    const Rational p = v[l];
    for (auto& x : v) x /= p;
    vr /= p;
    for (std::size_t e = 0; e < echelon.size(); ++e) {
      const Rational f = echelon[e][l];
      if (f == 0) continue;
      for (int j = 0; j < nx; ++j)
        if (v[j] != 0) echelon[e][j] -= f * v[j];
      echelon_rhs[e] -= f * vr;
    }
    echelon.push_back(std::move(v));
    echelon_rhs.push_back(vr);
    lead.push_back(l);
    kept.push_back(static_cast<int>(r));
  }

  const int m = static_cast<int>(kept.size());
  red.b.resize(m);
  for (int i = 0; i < m; ++i) {
    std::vector<Rational> v(rows[kept[i]].begin(), rows[kept[i]].begin() + nx);
    red.a.push_back(devectorize(v, coords, problem.blocks));
    red.b(i) = rhs[kept[i]].get_d();
  }
  red.c = devectorize(std::vector<Rational>(cost.begin(), cost.begin() + nx), coords, problem.blocks);
  red.objective_constant = cost_constant.get_d();

  // Interior-point phase.
  const std::size_t nb = problem.blocks.size();
  int total_dim = 0;
  for (const auto& s : problem.blocks) total_dim += s.size;
  double norm_a = 0;
  for (const auto& ai : red.a) norm_a = std::max(norm_a, norm(ai));
  const double norm_b = red.b.size() ? red.b.norm() : 0.0;
  const double norm_c = norm(red.c);
  double xi = 10, eta = 10;
  for (int i = 0; i < m; ++i) xi = std::max(xi, 10 * (1 + std::abs(red.b(i))) / (1 + norm(red.a[i])));
  eta = std::max(eta, 10 * (1 + std::max(norm_a, norm_c)) / std::sqrt(std::max(1, total_dim)));
  Blocks x, z;
  for (const auto& s : problem.blocks) {
    x.push_back(xi * Mat::Identity(s.size, s.size));
    z.push_back(eta * Mat::Identity(s.size, s.size));
  }
  Eigen::VectorXd y = Eigen::VectorXd::Zero(m);

  auto apply_a = [&](const Blocks& v) {
    Eigen::VectorXd out(m);
    for (int i = 0; i < m; ++i) out(i) = inner(red.a[i], v);
    return out;
  };
  auto apply_at = [&](const Eigen::VectorXd& v) {
    Blocks out;
    for (const auto& s : problem.blocks) out.push_back(Mat::Zero(s.size, s.size));
    for (int i = 0; i < m; ++i)
      for (std::size_t k = 0; k < nb; ++k) out[k] += v(i) * red.a[i][k];
    return out;
  };

  sol.status = SdpStatus::kMaxIterations;
  std::vector<Scaling> sc(nb);
  for (int iter = 0; iter <= options.max_iters; ++iter) {
    const Eigen::VectorXd rp = red.b - apply_a(x);
    Blocks rd = red.c;
    {
      const Blocks aty = apply_at(y);
      for (std::size_t k = 0; k < nb; ++k) rd[k] -= z[k] + aty[k];
    }
    const double pobj = inner(red.c, x), dobj = red.b.size() ? red.b.dot(y) : 0.0;
    const double comp = inner(x, z);
    sol.primal_objective = pobj + red.objective_constant;
    sol.dual_objective = dobj + red.objective_constant;
    sol.gap = std::abs(pobj - dobj) / (1 + std::abs(pobj) + std::abs(dobj));
    sol.primal_infeasibility = (m ? rp.norm() : 0.0) / (1 + norm_b);
    sol.dual_infeasibility = norm(rd) / (1 + norm_c);
    sol.iterations = iter;
    const double feas_tol = std::max(options.tol, 1e-12);
    if (sol.primal_infeasibility <= feas_tol && sol.dual_infeasibility <= feas_tol && sol.gap <= options.tol &&
        comp / (1 + std::abs(pobj) + std::abs(dobj)) <= options.tol) {
      sol.status = SdpStatus::kOptimal;
      break;
    }
    if (dobj > 1e10 * (1 + norm_c) && sol.dual_infeasibility <= 1e-6) {
      sol.status = SdpStatus::kPrimalInfeasible;
      sol.message = "dual objective diverges";
      break;
    }
    if (-pobj > 1e10 * (1 + norm_b) && sol.primal_infeasibility <= 1e-6) {
      sol.status = SdpStatus::kDualInfeasible;
      sol.message = "primal objective diverges";
      break;
    }
    if (norm(x) > 1e14 || norm(z) > 1e14 || (m && y.norm() > 1e14)) {
      sol.status = norm(x) > 1e14 ? SdpStatus::kDualInfeasible : SdpStatus::kPrimalInfeasible;
      sol.message = "iterates diverge";
      break;
    }
    if (iter == options.max_iters) break;

    bool ok = true;
    for (std::size_t k = 0; k < nb && ok; ++k)
      if (problem.blocks[k].size > 0) ok = nt_scaling(x[k], z[k], sc[k]);
    if (!ok) {
      sol.status = SdpStatus::kNumericalFailure;
      sol.message = "lost positive definiteness";
      break;
    }
    // Schur complement M_ij = <A_i, W A_j W>.
    std::vector<Blocks> wajw(m);
    for (int j = 0; j < m; ++j)
      for (std::size_t k = 0; k < nb; ++k)
        wajw[j].push_back(problem.blocks[k].size ? Mat(sc[k].w * red.a[j][k] * sc[k].w) : Mat());
    Mat schur(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) schur(i, j) = schur(j, i) = inner(red.a[i], wajw[j]);
    Eigen::LDLT<Mat> ldlt(schur);
    if (m && (ldlt.info() != Eigen::Success || !ldlt.isPositive())) {
      const double reg = 1e-14 * std::max(1.0, schur.trace());
      ldlt.compute(schur + reg * Mat::Identity(m, m));
    }
    Blocks wrdw;
    for (std::size_t k = 0; k < nb; ++k) wrdw.push_back(problem.blocks[k].size ? Mat(sc[k].w * rd[k] * sc[k].w) : Mat());

    auto direction = [&](const Blocks& lyap_rhs, Blocks& dx, Blocks& dz, Eigen::VectorXd& dy) {
      Blocks rc;
      for (std::size_t k = 0; k < nb; ++k) {
        if (!problem.blocks[k].size) {
          rc.emplace_back();
          continue;
        }
        const Mat d = lyapunov(sc[k].vu, sc[k].vl, lyap_rhs[k]);
        rc.push_back(sym(sc[k].g * d * sc[k].g));
      }
      Blocks t = rc;
      for (std::size_t k = 0; k < nb; ++k)
        if (problem.blocks[k].size) t[k] -= wrdw[k];
      dy = m ? Eigen::VectorXd(ldlt.solve(rp - apply_a(t))) : Eigen::VectorXd();
      dz = rd;
      const Blocks aty = apply_at(dy);
      dx.clear();
      for (std::size_t k = 0; k < nb; ++k) {
        dz[k] = sym(dz[k] - aty[k]);
        dx.push_back(problem.blocks[k].size ? sym(rc[k] - sc[k].w * dz[k] * sc[k].w) : Mat());
      }
    };

    const double mu = comp / std::max(1, total_dim);
    Blocks rhs_pred;
    for (std::size_t k = 0; k < nb; ++k) rhs_pred.push_back(problem.blocks[k].size ? Mat(-2 * sc[k].v * sc[k].v) : Mat());
    Blocks dx, dz;
    Eigen::VectorXd dy;
    direction(rhs_pred, dx, dz, dy);
    const double ap = std::min(1.0, max_step(x, dx)), ad = std::min(1.0, max_step(z, dz));
    Blocks xa = x, za = z;
    for (std::size_t k = 0; k < nb; ++k) {
      xa[k] += ap * dx[k];
      za[k] += ad * dz[k];
    }
    const double mu_aff = inner(xa, za) / std::max(1, total_dim);
    const double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / std::max(mu, 1e-300), 3.0), 0.0, 1.0);

    Blocks rhs_corr;
    for (std::size_t k = 0; k < nb; ++k) {
      if (!problem.blocks[k].size) {
        rhs_corr.emplace_back();
        continue;
      }
      const Mat dxs = sc[k].ginv * dx[k] * sc[k].ginv;
      const Mat dzs = sc[k].g * dz[k] * sc[k].g;
      const Mat id = Mat::Identity(problem.blocks[k].size, problem.blocks[k].size);
      rhs_corr.push_back(2 * sigma * mu * id - 2 * sc[k].v * sc[k].v - (dxs * dzs + dzs * dxs));
    }
    direction(rhs_corr, dx, dz, dy);
    const double gamma = 0.95;
    const double sp = std::min(1.0, gamma * max_step(x, dx)), sd = std::min(1.0, gamma * max_step(z, dz));
    for (std::size_t k = 0; k < nb; ++k) {
      x[k] = sym(x[k] + sp * dx[k]);
      z[k] = sym(z[k] + sd * dz[k]);
    }
    if (m) y += sd * dy;
    if (sp < 1e-12 && sd < 1e-12) {
      sol.status = SdpStatus::kNumericalFailure;
      sol.message = "step length collapsed";
      break;
    }
  }

  for (std::size_t k = 0; k < nb; ++k) {
    Mat xk = x[k];
    if (problem.blocks[k].kind == BlockKind::kNonnegative) xk = Mat(xk.diagonal().asDiagonal());
    sol.x.push_back(xk);
  }
  sol.free_values.assign(nz, 0.0);
  for (const auto& p : red.pivots) {
    double v = p.rhs.get_d();
    for (int j = 0; j < nx; ++j) {
      if (p.x_row[j] == 0) continue;
      const auto& c = coords[j];
      v -= p.x_row[j].get_d() * sol.x[c.block](c.i, c.j);
    }
    sol.free_values[p.free_index] = v;
  }
  return sol;
}

std::optional<RatMatrix> round_psd(const Eigen::MatrixXd& m, long max_denominator, double eig_floor) {
  const int n = static_cast<int>(m.rows());
  if (n != m.cols()) throw std::invalid_argument("round_psd: matrix is not square");
  if (n == 0) return RatMatrix(0, 0);
  Eigen::SelfAdjointEigenSolver<Mat> es(sym(m));
  Eigen::VectorXd l = es.eigenvalues();
  for (int i = 0; i < n; ++i)
    if (l(i) < eig_floor) l(i) = 0;
  const Mat floored = es.eigenvectors() * l.asDiagonal() * es.eigenvectors().transpose();
  RatMatrix r(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      r(i, j) = rationalize(0.5 * (floored(i, j) + floored(j, i)), max_denominator);
      r(j, i) = r(i, j);
    }
  if (check_psd_rational(r).psd) return r;
  for (int k = 8; k >= 2; --k) {
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(k));
    const Rational eps(Integer(1), p);
    RatMatrix shifted = r + eps * RatMatrix::identity(n);
    if (check_psd_rational(shifted).psd) return shifted;
  }
  return std::nullopt;
}

std::vector<long> denominator_ladder(long max_denominator) {
  if (max_denominator < 1) throw std::invalid_argument("denominator bound must be positive");
  std::vector<long> out;
  for (long d = 10; d < max_denominator; d *= 10) out.push_back(d);
  out.push_back(max_denominator);
  return out;
}

}  // namespace flagsos
