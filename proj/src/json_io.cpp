#include "flagsos/json_io.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

namespace flagsos {

namespace {

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument("json: " + what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) bad(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

}  // namespace

Json rational_to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) bad("rationals are written as \"p/q\" strings");
  return parse_rational(j.get<std::string>());
}

Json graph_to_json(const Graph& g) {
  Json edges = Json::array();
  for (auto [i, j] : g.edges()) edges.push_back({i + 1, j + 1});
  return Json{{"n", g.vertex_count()}, {"edges", edges}};
}

Graph graph_from_json(const Json& j) {
  const int n = int_field(j, "n");
  if (n < 1 || n > kMaxVertices) bad("graph size must be between 1 and " + std::to_string(kMaxVertices));
  const Json& edges = field(j, "edges");
  if (!edges.is_array()) bad("\"edges\" must be an array");
  std::vector<std::pair<int, int>> list;
  std::set<std::pair<int, int>> seen;
  for (const auto& e : edges) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      bad("each edge is a pair [i, j]");
    const int a = e[0].get<int>(), b = e[1].get<int>();
    if (a < 1 || b > n || a >= b) bad("edge [" + std::to_string(a) + "," + std::to_string(b) + "] needs 1 <= i < j <= n");
    if (!seen.insert({a, b}).second) bad("duplicate edge");
    list.emplace_back(a - 1, b - 1);
  }
  return Graph(n, list);
}

Json type_to_json(const IntersectionType& t) {
  Json j = graph_to_json(t.graph);
  Json labels = Json::array();
  for (int v : t.labels) labels.push_back(v + 1);
  j["labels"] = labels;
  return j;
}

IntersectionType type_from_json(const Json& j) {
  IntersectionType t;
  t.graph = graph_from_json(j);
  if (!j.contains("labels")) return IntersectionType::of(t.graph);
  for (const auto& v : field(j, "labels")) {
    if (!v.is_number_integer()) bad("labels are vertex numbers");
    t.labels.push_back(v.get<int>() - 1);
  }
  if (static_cast<int>(t.labels.size()) != t.size() || !is_permutation(t.labels))
    bad("labels must be a bijection between [t] and the type's vertices");
  return t;
}

Json flag_to_json(const Flag& f) {
  Json j = graph_to_json(f.graph);
  Json labels = Json::array();
  for (int k = 0; k < f.type_size; ++k) labels.push_back(k + 1);
  j["labels"] = labels;
  return j;
}

Flag flag_from_json(const Json& j) {
  const Graph g = graph_from_json(j);
  std::vector<int> labels;
  for (const auto& v : field(j, "labels")) {
    if (!v.is_number_integer()) bad("labels are vertex numbers");
    labels.push_back(v.get<int>() - 1);
  }
  const int n = g.vertex_count(), t = static_cast<int>(labels.size());
  std::vector<int> perm(n, -1);
  std::vector<bool> used(n, false);
  for (int k = 0; k < t; ++k) {
    if (labels[k] < 0 || labels[k] >= n || used[labels[k]]) bad("flag labels must be distinct vertices");
    used[labels[k]] = true;
    perm[labels[k]] = k;
  }
  int next = t;
  for (int v = 0; v < n; ++v)
    if (!used[v]) perm[v] = next++;
  return canonical_flag(Flag{g.relabeled(perm), t});
}

Json char_vector_to_json(const CharVector& v) { return graph_to_json(graph_of(v)); }

Json poly_to_json(const MultilinearPoly& p) {
  Json terms = Json::array();
  for (const auto& [m, c] : p.terms()) {
    Json edges = Json::array();
    for (int k = 0; k < pair_count(p.n()); ++k)
      if ((m >> k) & 1U) {
        auto [a, b] = pair_at(p.n(), k);
        edges.push_back({a + 1, b + 1});
      }
    terms.push_back(Json{{"edges", edges}, {"coeff", to_string(c)}});
  }
  return Json{{"n", p.n()}, {"terms", terms}};
}

MultilinearPoly poly_from_json(const Json& j) {
  const int n = int_field(j, "n");
  if (n < 1 || n > kMaxVertices) bad("polynomial n out of range");
  std::vector<MultilinearPoly::Term> terms;
  for (const auto& t : field(j, "terms")) {
    Monomial m = 0;
    for (const auto& e : field(t, "edges")) {
      if (!e.is_array() || e.size() != 2) bad("monomial edges are pairs");
      const int a = e[0].get<int>(), b = e[1].get<int>();
      if (a < 1 || b > n || a >= b) bad("monomial edge out of range");
      m |= Monomial{1} << pair_index(n, a - 1, b - 1);
    }
    terms.emplace_back(m, rational_from_json(field(t, "coeff")));
  }
  return MultilinearPoly::from_terms(n, std::move(terms));
}

Json partition_to_json(const Partition& p) { return Json(p); }

Partition partition_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) bad("a partition is a non-empty array of parts");
  Partition p;
  for (const auto& v : j) {
    if (!v.is_number_integer() || v.get<int>() < 1) bad("partition parts are positive integers");
    p.push_back(v.get<int>());
  }
  for (std::size_t i = 1; i < p.size(); ++i)
    if (p[i] > p[i - 1]) bad("partition parts must be non-increasing");
  return p;
}

Json matrix_to_json(const RatMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < m.cols(); ++k) row.push_back(to_string(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

RatMatrix matrix_from_json(const Json& j) {
  if (!j.is_array()) bad("a matrix is an array of rows");
  std::vector<std::vector<Rational>> rows;
  for (const auto& r : j) {
    if (!r.is_array()) bad("a matrix row is an array");
    std::vector<Rational> row;
    for (const auto& v : r) row.push_back(rational_from_json(v));
    if (!rows.empty() && row.size() != rows.front().size()) bad("matrix rows differ in length");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) return RatMatrix(0, 0);
  return RatMatrix::from_rows(rows);
}

Json matrix_to_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(row);
  }
  return rows;
}

Json table_to_json(const PairDensityTable& t) {
  Json flags = Json::array(), hosts = Json::array(), entries = Json::array();
  for (const auto& f : t.flags) flags.push_back(flag_to_json(f));
  for (const auto& h : t.hosts) hosts.push_back(graph_to_json(h));
  for (std::size_t i = 0; i < t.flags.size(); ++i)
    for (std::size_t k = 0; k < t.flags.size(); ++k)
      for (std::size_t h = 0; h < t.hosts.size(); ++h)
        entries.push_back(Json{{"F", i}, {"Fp", k}, {"H", h}, {"value", to_string(t.entries[i][k][h])}});
  return Json{{"flags", flags}, {"hosts", hosts}, {"entries", entries}};
}

Json sab_to_json(const SabBasis& b) {
  Json blocks = Json::array();
  for (const auto& blk : b.blocks) {
    Json polys = Json::array(), norms = Json::array(), tableau = Json::array();
    for (const auto& p : blk.polys) polys.push_back(poly_to_json(p));
    for (const auto& q : blk.norm2) norms.push_back(to_string(q));
    for (const auto& row : blk.tableau.rows) {
      Json r = Json::array();
      for (int v : row) r.push_back(v + 1);
      tableau.push_back(r);
    }
    blocks.push_back(Json{{"partition", partition_to_json(blk.partition)},
                          {"tableau", tableau},
                          {"polys", polys},
                          {"norm2", norms}});
  }
  return Json{{"n", b.n}, {"d", b.d}, {"blocks", blocks}};
}

Json y_matrix_to_json(const YMatrix& y) {
  Json rows = Json::array();
  for (const auto& r : y.entries) {
    Json row = Json::array();
    for (const auto& p : r) row.push_back(poly_to_json(p));
    rows.push_back(row);
  }
  return Json{{"partition", partition_to_json(y.partition)}, {"entries", rows}};
}

Json certificate_to_json(const FlagCertificate& c) {
  Json blocks = Json::array();
  for (std::size_t b = 0; b < c.specs.size(); ++b)
    blocks.push_back(Json{{"type", type_to_json(c.specs[b].type)}, {"f", c.specs[b].f}, {"q", matrix_to_json(c.q.at(b))}});
  Json a = Json::array();
  for (const auto& v : c.a_h) a.push_back(to_string(v));
  return Json{{"kind", "flag"},
              {"forbidden", graph_to_json(c.forbidden)},
              {"m", c.m},
              {"blocks", blocks},
              {"a_h", a},
              {"bound", to_string(c.bound)}};
}

FlagCertificate certificate_from_json(const Json& j) {
  if (j.contains("kind") && j.at("kind") != "flag") bad("only flag certificates can be read");
  FlagCertificate c;
  c.forbidden = graph_from_json(field(j, "forbidden"));
  c.m = int_field(j, "m");
  for (const auto& b : field(j, "blocks")) {
    c.specs.push_back({type_from_json(field(b, "type")), int_field(b, "f")});
    c.q.push_back(matrix_from_json(field(b, "q")));
  }
  for (const auto& v : field(j, "a_h")) c.a_h.push_back(rational_from_json(v));
  c.bound = rational_from_json(field(j, "bound"));
  return c;
}

Json solution_summary(const SdpSolution& s) {
  return Json{{"status", to_string(s.status)},
              {"primal_objective", s.primal_objective},
              {"dual_objective", s.dual_objective},
              {"gap", s.gap},
              {"primal_infeasibility", s.primal_infeasibility},
              {"dual_infeasibility", s.dual_infeasibility},
              {"iterations", s.iterations},
              {"message", s.message}};
}

Json density_report_to_json(const DensityBoundReport& r) {
  Json a = Json::array();
  for (const auto& v : r.a_h) a.push_back(to_string(v));
  Json j{{"n", r.n},
         {"passed", r.passed()},
         {"psd", r.psd_ok},
         {"a_h", a},
         {"a_h_match", r.a_h_match},
         {"bound", to_string(r.bound)},
         {"bound_match", r.bound_match},
         {"chain_holds", r.chain_holds},
         {"max_abs_err", to_string(r.max_err)},
         {"max_density", to_string(r.max_density)}};
  if (r.violating) j["violating"] = char_vector_to_json(*r.violating);
  if (!r.failure.empty()) j["failure"] = r.failure;
  return j;
}

Json mantel_report_to_json(const MantelReport& r) {
  return Json{{"n", r.n},
              {"passed", r.passed()},
              {"q", matrix_to_json(r.q)},
              {"q_psd", r.q_psd},
              {"chain_identity", r.chain_holds},
              {"density_le_half_plus_err", r.bound_holds},
              {"max_abs_err", to_string(r.err_stats.max_abs)},
              {"max_abs_err_at", char_vector_to_json(r.err_stats.attained_at)},
              {"err_constant", to_string(r.err_stats.bound_constant)},
              {"max_density", to_string(r.max_density)}};
}

Json symmetric_mantel_report_to_json(const SymmetricMantelReport& r) {
  return Json{{"n", r.n},
              {"passed", r.passed()},
              {"target_matches_closed_form", r.target_matches},
              {"basis_matches", r.basis_matches},
              {"q_n_unnormalised", matrix_to_json(r.q_n)},
              {"det_q_n", to_string(r.det_q_n)},
              {"rank_q_n", r.rank_q_n},
              {"q_n_psd", r.q_n_psd},
              {"q_hook", to_string(r.q_hook)},
              {"corrected_identity", r.corrected_identity},
              {"displayed_identity", r.displayed_identity}};
}

ProblemSpec spec_from_json(const Json& j) {
  if (!j.is_object()) bad("a spec is an object");
  ProblemSpec s;
  if (j.contains("forbidden")) s.forbidden = graph_from_json(j.at("forbidden"));
  if (j.contains("n")) s.n = int_field(j, "n");
  if (j.contains("m")) s.m = int_field(j, "m");
  if (j.contains("d")) s.d = int_field(j, "d");
  auto block_of = [](const Json& b, const FlagBlockSpec& fallback) {
    FlagBlockSpec out = fallback;
    if (b.contains("type")) out.type = type_from_json(b.at("type"));
    else if (b.contains("t")) out.type = IntersectionType::of(Graph(int_field(b, "t")));
    if (b.contains("f")) out.f = int_field(b, "f");
    if (out.f < out.type.size()) bad("flag size f must be at least the type size t");
    return out;
  };
  if (j.contains("blocks")) {
    s.blocks.clear();
    for (const auto& b : j.at("blocks")) s.blocks.push_back(block_of(b, {IntersectionType::of(Graph(1)), 2}));
    if (s.blocks.empty()) bad("\"blocks\" must not be empty");
  } else {
    s.blocks = {block_of(j, s.blocks.front())};
  }
  if (j.contains("partitions"))
    for (const auto& p : j.at("partitions")) s.partitions.push_back(partition_from_json(p));
  return s;
}

Json spec_to_json(const ProblemSpec& s) {
  Json blocks = Json::array();
  for (const auto& b : s.blocks) blocks.push_back(Json{{"type", type_to_json(b.type)}, {"f", b.f}});
  Json j{{"forbidden", graph_to_json(s.forbidden)}, {"n", s.n}, {"m", s.m}, {"d", s.d}, {"blocks", blocks}};
  if (!s.partitions.empty()) {
    Json parts = Json::array();
    for (const auto& p : s.partitions) parts.push_back(partition_to_json(p));
    j["partitions"] = parts;
  }
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

}  // namespace flagsos
