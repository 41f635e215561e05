#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "spnkit/graph.hpp"
#include "spnkit/matcore.hpp"

namespace spnkit {

// First non-comment line is n, then n rows. Entries are decimals, fractions
// p/q, or r2h (sqrt(2)/2), optionally negated. '#' starts a comment line.
SymMatrix parse_matrix(std::string_view text);
// Entries printed with 17 significant digits, so parsing gives back the same
// doubles.
std::string format_matrix(const SymMatrix& a);

struct ParsedGraph {
  Graph graph;
  std::optional<SignedGraph> signed_graph;  // set when every edge line has a sign
};
// First line n, then "i j" or "i j +|-" lines with 1-based vertices.
ParsedGraph parse_graph(std::string_view text);
std::string format_graph(const Graph& g);
std::string format_graph(const SignedGraph& g);

std::string read_file(const std::string& path);  // throws std::runtime_error

}  // namespace spnkit
