// flagsos: command-line front end for the flag-algebra / symmetry-adapted
// SOS pipelines. Exit codes: 0 success, 1 usage or input error,
// 2 verification failure, 3 infeasible, 4 budget exceeded.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "flagsos/errors.hpp"
#include "flagsos/json_io.hpp"

using namespace flagsos;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kVerifyFailed = 2;
constexpr int kInfeasible = 3;
constexpr int kBudget = 4;

struct Globals {
  std::string spec_path;
  std::string out_path;
  std::string forbidden_path;
  std::string certificate_path;
  std::optional<int> n, t, f, m, d;
  int threads = 1;
  double tol = 1e-9;
  int max_iters = 100;
  long denom_bound = 10000;
  std::string demo;
  std::string preset = "density";
  std::string claim_path;
  bool exact = false;
};

ProblemSpec load_spec(const Globals& g) {
  ProblemSpec s = g.spec_path.empty() ? ProblemSpec{} : spec_from_json(read_json_file(g.spec_path));
  if (!g.forbidden_path.empty()) s.forbidden = graph_from_json(read_json_file(g.forbidden_path));
  if (g.n) s.n = *g.n;
  if (g.m) s.m = *g.m;
  if (g.d) s.d = *g.d;
  if (g.t) s.blocks.front().type = IntersectionType::of(Graph(*g.t));
  if (g.f) s.blocks.front().f = *g.f;
  for (const auto& b : s.blocks)
    if (b.f < b.type.size()) throw std::invalid_argument("flag size f must be at least the type size t");
  return s;
}

SolverOptions solver_options(const Globals& g) { return SolverOptions{g.tol, g.max_iters}; }

void emit(const Globals& g, const Json& j) {
  const std::string text = j.dump(2) + "\n";
  if (g.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(g.out_path);
  if (!out) throw std::invalid_argument("cannot write " + g.out_path);
  out << text;
}

int cmd_enumerate(const Globals& g) {
  const ProblemSpec s = load_spec(g);
  const auto hosts = enumerate_a_free(s.m, s.forbidden);
  Json host_list = Json::array();
  for (const auto& h : hosts) host_list.push_back(graph_to_json(h));
  Json blocks = Json::array();
  for (const auto& b : s.blocks) {
    const auto flags = enumerate_flags(b.type, b.f, s.forbidden);
    Json flag_list = Json::array();
    for (const auto& f : flags) flag_list.push_back(flag_to_json(f));
    blocks.push_back(Json{{"type", type_to_json(b.type)}, {"f", b.f}, {"flags", flags.size()}, {"flag_list", flag_list}});
  }
  Json out{{"spec", spec_to_json(s)}, {"hosts", hosts.size()}};
  if (s.blocks.size() == 1) out["flags"] = blocks[0]["flags"];
  out["host_list"] = host_list;
  out["blocks"] = blocks;
  emit(g, out);
  return kOk;
}

int cmd_table(const Globals& g) {
  const ProblemSpec s = load_spec(g);
  const FlagSdpInstance inst = assemble_flag_sdp(s.blocks, s.m, s.forbidden);
  Json tables = Json::array();
  for (const auto& b : inst.blocks) tables.push_back(table_to_json(b.table));
  Json out{{"spec", spec_to_json(s)}};
  if (tables.size() == 1) {
    for (auto& [k, v] : tables[0].items()) out[k] = v;
  } else {
    out["tables"] = tables;
  }
  emit(g, out);
  return kOk;
}

int verification_size(const ProblemSpec& s, const Graph& forbidden) {
  const int budget = zero_set_budget(forbidden);
  if (s.m > budget)
    throw BudgetExceeded("host size m=" + std::to_string(s.m) + " exceeds the verification budget n <= " +
                         std::to_string(budget));
  return std::max(s.m, std::min(s.n, budget));
}

int cmd_solve(const Globals& g) {
  const ProblemSpec s = load_spec(g);
  const FlagSdpInstance inst = assemble_flag_sdp(s.blocks, s.m, s.forbidden);
  const FlagSolveResult res = solve_flag_sdp(inst, solver_options(g), g.denom_bound);
  Json out{{"spec", spec_to_json(s)}, {"solver", solution_summary(res.numeric)}};
  if (res.numeric.status == SdpStatus::kPrimalInfeasible || res.numeric.status == SdpStatus::kDualInfeasible) {
    out["failure"] = res.failure;
    emit(g, out);
    return kInfeasible;
  }
  if (!res.certificate) {
    out["failure"] = res.failure;
    emit(g, out);
    return kVerifyFailed;
  }
  const DensityBoundReport rep = verify_density_bound(*res.certificate, verification_size(s, s.forbidden), g.threads);
  out["verification"] = density_report_to_json(rep);
  if (!rep.passed()) {
    // Never emit a certificate the verifier rejects.
    out["failure"] = "rounded certificate failed verification: " + rep.failure;
    emit(g, out);
    return kVerifyFailed;
  }
  out["bound"] = to_string(res.certificate->bound);
  out["certificate"] = certificate_to_json(*res.certificate);
  emit(g, out);
  return kOk;
}

Json q_blocks_json(const GpSdpInstance& inst, const std::vector<RatMatrix>& q) {
  Json arr = Json::array();
  for (std::size_t l = 0; l < q.size(); ++l)
    arr.push_back(Json{{"partition", partition_to_json(inst.partitions[l])}, {"q", matrix_to_json(q[l])}});
  return arr;
}

int cmd_gp(const Globals& g) {
  const ProblemSpec s = load_spec(g);
  const FlagBlockSpec& block = s.blocks.front();
  const int t = block.type.size();
  const std::vector<Partition> parts = s.partitions.empty() ? partitions_lex_geq(s.n, t) : s.partitions;
  const SabBasis basis = symmetry_adapted_basis(s.n, s.d, parts);

  const bool degree_ok = s.d >= block.f * (block.f - 1) / 2;
  MultilinearPoly target(s.n);
  Json out{{"spec", spec_to_json(s)}};
  Json target_info;
  if (degree_ok) {
    const FlagSdpInstance flag_inst = assemble_flag_sdp(s.blocks, s.m, s.forbidden);
    const FlagSolveResult flag_res = solve_flag_sdp(flag_inst, solver_options(g), g.denom_bound);
    if (!flag_res.certificate) {
      out["failure"] = "flag SDP for the target: " + flag_res.failure;
      emit(g, out);
      return flag_res.numeric.status == SdpStatus::kOptimal ? kVerifyFailed : kInfeasible;
    }
    for (std::size_t b = 0; b < flag_inst.blocks.size(); ++b)
      target += flag_sos_polynomial(flag_inst.blocks[b].flags, flag_res.certificate->q[b], s.n);
    target_info = Json{{"flag_certificate", certificate_to_json(*flag_res.certificate)}, {"target", poly_to_json(target)}};
  }
  const GpSdpInstance inst = assemble_gp_sdp(target, parts, basis, s.forbidden);

  Json blocks = Json::array(), ys = Json::array();
  for (std::size_t l = 0; l < inst.partitions.size(); ++l) {
    blocks.push_back(Json{{"partition", partition_to_json(inst.partitions[l])},
                          {"size", inst.y[l].size()},
                          {"n_lambda", inst.n_lambda[l]}});
    ys.push_back(y_matrix_to_json(inst.y[l]));
  }
  out["blocks"] = blocks;
  out["basis"] = sab_to_json(basis);
  out["y"] = ys;
  out["zero_set_classes"] = inst.graphs.size();

  int code = kOk;
  if (degree_ok) {
    const GpTargetResult tr = solve_gp_target(inst, solver_options(g), g.denom_bound);
    target_info["solver"] = solution_summary(tr.numeric);
    if (!tr.failure.empty()) target_info["failure"] = tr.failure;
    if (tr.numeric.status == SdpStatus::kOptimal) {
      target_info["q"] = q_blocks_json(inst, tr.q);
      target_info["exact"] = tr.exact;
      target_info["max_residual"] = to_string(tr.max_residual);
      if (!tr.exact) code = kVerifyFailed;
    } else {
      code = kInfeasible;
    }
    out["target_mode"] = target_info;
  } else {
    out["target_mode"] = Json{{"skipped", "degree d is below f(f-1)/2, the flag target does not fit"}};
  }

  const GpBoundInstance bound_inst = assemble_gp_bound(inst, s.m);
  const GpBoundResult br = solve_gp_bound(bound_inst, solver_options(g), g.denom_bound);
  Json bound_info{{"host_size", s.m}, {"solver", solution_summary(br.numeric)}};
  if (br.certified_alpha) {
    Json c = Json::array();
    for (const auto& v : br.c) c.push_back(to_string(v));
    bound_info["q"] = q_blocks_json(inst, br.q);
    bound_info["host_slacks"] = c;
    bound_info["bound"] = to_string(*br.certified_alpha);
  } else {
    bound_info["failure"] = br.failure;
    if (code == kOk) code = br.numeric.status == SdpStatus::kOptimal ? kVerifyFailed : kInfeasible;
  }
  out["bound_mode"] = bound_info;
  emit(g, out);
  return code;
}

int cmd_verify_identity(const Globals& g) {
  IdentityClaim claim;
  if (!g.claim_path.empty()) {
    const Json j = read_json_file(g.claim_path);
    claim.lhs = poly_from_json(j.at("lhs"));
    claim.rhs = poly_from_json(j.at("rhs"));
    claim.forbidden = j.contains("forbidden") ? graph_from_json(j.at("forbidden")) : Graph::complete(3);
    if (j.contains("mode")) claim.mode = j.at("mode") == "exact-coefficient" ? IdentityMode::kExactCoefficient : IdentityMode::kModIdeal;
  } else {
    const int n = g.n.value_or(5);
    claim.forbidden = g.forbidden_path.empty() ? Graph::complete(3) : graph_from_json(read_json_file(g.forbidden_path));
    const auto hosts = enumerate_a_free(3, claim.forbidden);
    if (g.preset == "total") {
      claim.lhs = MultilinearPoly::constant(n, 1);
      claim.rhs = MultilinearPoly(n);
      for (const auto& h : hosts) claim.rhs += d_H(h, n);
    } else if (g.preset == "density") {
      claim.lhs = edge_density(n);
      claim.rhs = MultilinearPoly(n);
      for (const auto& h : hosts) claim.rhs += edge_density_of(h) * d_H(h, n);
    } else {
      throw std::invalid_argument("unknown preset " + g.preset + " (expected total or density)");
    }
  }
  if (g.exact) claim.mode = IdentityMode::kExactCoefficient;
  const IdentityResult r = verify_identity(claim, g.threads);
  Json out{{"n", claim.lhs.n()},
           {"mode", claim.mode == IdentityMode::kExactCoefficient ? "exact-coefficient" : "mod-ideal"},
           {"holds", r.holds},
           {"points_checked", r.points_checked}};
  if (r.witness) out["witness"] = char_vector_to_json(*r.witness);
  emit(g, out);
  return r.holds ? kOk : kVerifyFailed;
}

int cmd_verify_mantel(const Globals& g) {
  const MantelReport r = verify_mantel_flag_sos(g.n.value_or(5), g.threads);
  emit(g, mantel_report_to_json(r));
  return r.passed() ? kOk : kVerifyFailed;
}

int cmd_verify_symmetric_mantel(const Globals& g) {
  const SymmetricMantelReport r = verify_symmetric_mantel(g.n.value_or(5));
  emit(g, symmetric_mantel_report_to_json(r));
  return r.passed() ? kOk : kVerifyFailed;
}

int cmd_verify_certificate(const Globals& g) {
  if (g.certificate_path.empty()) throw std::invalid_argument("verify certificate needs --certificate <file>");
  Json j = read_json_file(g.certificate_path);
  if (j.contains("certificate")) j = j.at("certificate");
  const FlagCertificate cert = certificate_from_json(j);
  const int budget = zero_set_budget(cert.forbidden);
  if (cert.m > budget) throw BudgetExceeded("host size exceeds the verification budget");
  const int n = g.n.value_or(std::max(cert.m, budget));
  const DensityBoundReport r = verify_density_bound(cert, n, g.threads);
  emit(g, density_report_to_json(r));
  return r.passed() ? kOk : kVerifyFailed;
}

std::string mark(bool ok) { return ok ? "match" : "MISMATCH"; }

int demo_mantel(const Globals& g) {
  std::ostringstream os;
  bool all = true;
  const Graph k3 = Graph::complete(3);
  const FlagSdpInstance inst = assemble_flag_sdp({{IntersectionType::of(Graph(1)), 2}}, 3, k3);
  const auto& e = inst.blocks[0].table.entries;
  os << "Mantel setup: t=1, f=2, m=3, A=K3; " << inst.blocks[0].flags.size() << " flags, " << inst.hosts.size()
     << " hosts\n\nPair densities d_{Fi,Fj}(1_H) over (H0, H1, H2)\n";
  const std::vector<std::vector<std::string>> expected = {{"1", "1/3", "0"}, {"0", "1/3", "1/3"}, {"0", "0", "1/3"}};
  const std::pair<int, int> pairs[] = {{0, 0}, {0, 1}, {1, 1}};
  for (int r = 0; r < 3; ++r) {
    auto [i, j] = pairs[r];
    std::string ours;
    bool ok = true;
    for (int h = 0; h < 3; ++h) {
      ours += (h ? ", " : "") + to_string(e[i][j][h]);
      ok = ok && to_string(e[i][j][h]) == expected[r][h];
    }
    all = all && ok;
    os << "  (F" << i << ",F" << j << ")  computed (" << ours << ")  expected (" << expected[r][0] << ", " << expected[r][1]
       << ", " << expected[r][2] << ")  " << mark(ok) << "\n";
  }
  const FlagSolveResult res = solve_flag_sdp(inst, solver_options(g), g.denom_bound);
  if (!res.certificate) {
    os << "\nflag SDP failed: " << res.failure << "\n";
    std::cout << os.str();
    return kVerifyFailed;
  }
  const auto& cert = *res.certificate;
  const RatMatrix expected_q = RatMatrix::from_rows({{frac(1, 2), frac(-1, 2)}, {frac(-1, 2), frac(1, 2)}});
  const bool q_ok = cert.q[0] == expected_q;
  const bool a_ok = cert.a_h == std::vector<Rational>{frac(1, 2), frac(-1, 6), frac(-1, 6)};
  const bool b_ok = cert.bound == frac(1, 2);
  all = all && q_ok && a_ok && b_ok;
  os << "\nFlag SDP: objective " << res.numeric.primal_objective << ", gap " << res.numeric.gap << "\n"
     << "  Q   computed [[" << to_string(cert.q[0](0, 0)) << ", " << to_string(cert.q[0](0, 1)) << "], ["
     << to_string(cert.q[0](1, 0)) << ", " << to_string(cert.q[0](1, 1)) << "]]  expected [[1/2, -1/2], [-1/2, 1/2]]  "
     << mark(q_ok) << "\n"
     << "  a_H computed (" << to_string(cert.a_h[0]) << ", " << to_string(cert.a_h[1]) << ", "
     << to_string(cert.a_h[2]) << ")  expected (1/2, -1/6, -1/6)  " << mark(a_ok) << "\n"
     << "  bound computed " << to_string(cert.bound) << "  expected 1/2  " << mark(b_ok) << "\n";
  const DensityBoundReport vr = verify_density_bound(cert, 6, g.threads);
  all = all && vr.passed();
  os << "  certificate re-verified on all triangle-free labeled graphs with n=6: " << (vr.passed() ? "yes" : "NO") << "\n";

  os << "\nsos identity (1/2 dH0 - 1/6 dH1 - 1/6 dH2 + err == E[d Q d]):\n";
  for (int n = 4; n <= 6; ++n) {
    const MantelReport mr = verify_mantel_flag_sos(n, g.threads);
    all = all && mr.passed();
    os << "  n=" << n << "  chain identity " << (mr.chain_holds ? "holds" : "FAILS") << ", max|err| "
       << to_string(mr.err_stats.max_abs) << ", n*max|err| " << to_string(mr.err_stats.bound_constant)
       << ", max density " << to_string(mr.max_density) << "\n";
  }
  const SymmetricMantelReport s5 = verify_symmetric_mantel(5);
  all = all && s5.passed();
  os << "\nSymmetry-adapted form at n=5 (blocks (5): 2x2, (4,1): 1x1)\n"
     << "  basis p00, p01, p1n reproduced: " << (s5.basis_matches ? "yes" : "NO") << "\n"
     << "  det Q_(n) = " << to_string(s5.det_q_n) << ", rank " << s5.rank_q_n << "  expected det 0  "
     << mark(s5.det_q_n == 0) << "\n"
     << "  Q_(n-1,1) = " << to_string(s5.q_hook) << "  expected 2(n-1)(n-2)/n = 24/5  " << mark(s5.q_hook == frac(24, 5))
     << "\n"
     << "  identity as printed, f = <Q_(n),Y_(n)> + (n-1)<Q_(n-1,1),Y_(n-1,1)>: "
     << (s5.displayed_identity ? "holds" : "does not hold") << "\n"
     << "  (n-1)^2 f = <Q_(n),Y_(n)> + (n-1)<2(n-2)/n, Y_(n-1,1)>: " << (s5.corrected_identity ? "holds" : "FAILS")
     << "\n";
  os << "\n" << (all ? "all reproduced values match" : "some values do not match") << "\n";
  if (g.out_path.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream out(g.out_path);
    out << os.str();
  }
  return all ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flag-algebra and symmetry-adapted SOS certificates for edge-density bounds"};
  app.require_subcommand(0, 1);
  Globals g;
  app.add_option("--spec", g.spec_path, "problem spec JSON")->option_text("FILE");
  app.add_option("--out", g.out_path, "write output here instead of stdout")->option_text("FILE");
  app.add_option("--forbidden", g.forbidden_path, "forbidden graph JSON (default K3)")->option_text("FILE");
  app.add_option("--n", g.n, "ambient number of vertices");
  app.add_option("--t", g.t, "type size (empty type on t vertices)");
  app.add_option("--f", g.f, "flag size");
  app.add_option("--m", g.m, "host size");
  app.add_option("--d", g.d, "degree of the symmetry-adapted basis");
  app.add_option("--threads", g.threads, "worker threads for zero-set evaluation")->check(CLI::Range(1, 256));
  app.add_option("--tol", g.tol, "solver tolerance")->check(CLI::PositiveNumber);
  app.add_option("--max-iters", g.max_iters, "solver iteration limit")->check(CLI::Range(1, 100000));
  app.add_option("--denom-bound", g.denom_bound, "largest denominator used when rounding")->check(CLI::Range(1L, 1000000000L));
  app.add_option("--demo", g.demo, "run a preset end-to-end reproduction")->check(CLI::IsMember({"mantel"}));

  auto* enumerate = app.add_subcommand("enumerate", "hosts and flags with counts");
  auto* table = app.add_subcommand("table", "pair-density table");
  auto* solve = app.add_subcommand("solve", "solve, round and verify a flag SDP certificate");
  auto* gp = app.add_subcommand("gp", "restricted Gatermann-Parrilo SDP for the flag target");
  auto* verify = app.add_subcommand("verify", "exact verification");
  verify->require_subcommand(1);
  auto* v_identity = verify->add_subcommand("identity", "polynomial identity, exactly or on the zero set");
  v_identity->add_option("--preset", g.preset, "total (1 = sum d_H) or density (d = sum d(H) d_H)")
      ->check(CLI::IsMember({"total", "density"}));
  v_identity->add_option("--claim", g.claim_path, "claim JSON with lhs, rhs, forbidden, mode")->option_text("FILE");
  v_identity->add_flag("--exact", g.exact, "compare coefficients instead of values on the zero set");
  auto* v_mantel = verify->add_subcommand("mantel", "Mantel flag SOS identity and err bounds");
  auto* v_symmetric = verify->add_subcommand("symmetric", "symmetry-adapted Mantel identity");
  auto* v_cert = verify->add_subcommand("certificate", "re-verify a flag certificate");
  v_cert->add_option("--certificate", g.certificate_path, "certificate JSON")->option_text("FILE");
  // Global options are also accepted after the subcommand name.
  for (auto* sub : {enumerate, table, solve, gp, verify, v_identity, v_mantel, v_symmetric, v_cert}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (!g.demo.empty()) return demo_mantel(g);
    if (enumerate->parsed()) return cmd_enumerate(g);
    if (table->parsed()) return cmd_table(g);
    if (solve->parsed()) return cmd_solve(g);
    if (gp->parsed()) return cmd_gp(g);
    if (v_identity->parsed()) return cmd_verify_identity(g);
    if (v_mantel->parsed()) return cmd_verify_mantel(g);
    if (v_symmetric->parsed()) return cmd_verify_symmetric_mantel(g);
    if (v_cert->parsed()) return cmd_verify_certificate(g);
    std::cerr << app.help();
    return kUsage;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const Infeasible& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kVerifyFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
