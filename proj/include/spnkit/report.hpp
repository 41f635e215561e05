#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "spnkit/classify.hpp"
#include "spnkit/graph.hpp"
#include "spnkit/spn.hpp"
#include "spnkit/witness.hpp"

namespace spnkit {

using Json = nlohmann::json;

inline constexpr std::string_view kVersion = "1.0.0";

Json matrix_json(const SymMatrix& a);
SymMatrix matrix_from_json(const Json& j);
Json graph_json(const Graph& g);  // 1-based edges
Graph graph_from_json(const Json& j);
Json signed_graph_json(const SignedGraph& g);
SignedGraph signed_graph_from_json(const Json& j);

// Each returns the "result" object; `status` receives the exit code that the
// command line tool reports for it.
Json test_matrix_result(const SymMatrix& a, std::string_view property, double tol, int& status);
Json decompose_result(const SymMatrix& a, double tol, int& status);
Json classify_result(const Graph& g, int& status);
Json witness_result(const Graph& g, const Witness& w);
Json catalog_result(const Graph& g);

// Envelope with command, arguments, input digest and timing.
Json make_report(std::string_view command, const Json& args, std::string_view input,
                 const Json& result, double timing_ms);

// FNV-1a 64-bit, as "fnv1a64:" followed by 16 hex digits.
std::string digest(std::string_view bytes);

struct VerifyItem {
  std::string what;
  bool ok = true;
  std::string reason;
};
// Re-checks every verdict, certificate and decomposition embedded in a report.
std::vector<VerifyItem> verify_report(const Json& report);

}  // namespace spnkit
