#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "flagsos/flag_sdp.hpp"
#include "flagsos/gp_sdp.hpp"
#include "flagsos/symrep.hpp"
#include "flagsos/verify.hpp"

namespace flagsos {

// Insertion-ordered so that output is byte-stable.
using Json = nlohmann::ordered_json;

// All parsers throw std::invalid_argument on malformed input.

Json rational_to_json(const Rational& q);  // "p/q"
Rational rational_from_json(const Json& j);

// {"n": 3, "edges": [[1,2],[2,3]]}, 1-based, i < j.
Json graph_to_json(const Graph& g);
Graph graph_from_json(const Json& j);

// Graph fields plus "labels": label k sits on vertex labels[k-1].
Json type_to_json(const IntersectionType& t);
IntersectionType type_from_json(const Json& j);

// A flag is written as a graph whose vertices 1..t carry labels 1..t.
Json flag_to_json(const Flag& f);
Flag flag_from_json(const Json& j);

Json char_vector_to_json(const CharVector& v);

// {"n": 4, "terms": [{"edges": [[1,2]], "coeff": "1/2"}, ...]}.
Json poly_to_json(const MultilinearPoly& p);
MultilinearPoly poly_from_json(const Json& j);

Json partition_to_json(const Partition& p);
Partition partition_from_json(const Json& j);

Json matrix_to_json(const RatMatrix& m);
RatMatrix matrix_from_json(const Json& j);
Json matrix_to_json(const Eigen::MatrixXd& m);

Json table_to_json(const PairDensityTable& t);
Json sab_to_json(const SabBasis& b);
Json y_matrix_to_json(const YMatrix& y);

Json certificate_to_json(const FlagCertificate& c);
FlagCertificate certificate_from_json(const Json& j);

Json solution_summary(const SdpSolution& s);
Json density_report_to_json(const DensityBoundReport& r);
Json mantel_report_to_json(const MantelReport& r);
Json symmetric_mantel_report_to_json(const SymmetricMantelReport& r);

// Problem description shared by the CLI commands. Either a single (type, f)
// pair or an explicit list of blocks.
struct ProblemSpec {
  Graph forbidden = Graph::complete(3);
  int n = 5;
  std::vector<FlagBlockSpec> blocks{{IntersectionType::of(Graph(1)), 2}};
  int m = 3;
  int d = 1;
  std::vector<Partition> partitions;  // empty: lex >= the hook of the first block
};

// Missing fields keep the defaults above (the Mantel setup). Accepts
// "type" (typed graph) or "t" (empty type on t vertices), "f", "m", "n",
// "d", "forbidden", "partitions", "blocks".
ProblemSpec spec_from_json(const Json& j);
Json spec_to_json(const ProblemSpec& s);

Json read_json_file(const std::string& path);

}  // namespace flagsos
