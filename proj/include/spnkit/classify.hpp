#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spnkit/graph.hpp"

namespace spnkit {

enum class GraphClass { spn, not_spn, unknown_conjectured };
std::string_view to_string(GraphClass c);

// Which result decides a block.
enum class Provenance {
  single_edge,
  cycle,
  tn,
  k2n,
  diamond_subdivision,
  k4,
  drn,
  at_most_four_vertices,
  forbidden_f5,
  forbidden_cd6,
  forbidden_k4_subdivision,
  conjecture_tn_subdivision,
  conjecture_k4_all_subdivided,
};
std::string_view to_string(Provenance p);

enum class Pattern { f5, cd6, k4_subdivided };
std::string_view to_string(Pattern p);
Graph pattern_graph(Pattern p);
SubdivisionConstraints pattern_constraints(Pattern p);

struct ForbiddenHit {
  Pattern pattern;
  Embedding embedding;  // host labels
};
// First forbidden subdivision found, trying F5, CD6, then K4 with 2 to 5
// subdivided edges.
std::optional<ForbiddenHit> find_forbidden(const Graph& g);

struct BlockVerdict {
  IndexSet vertices;
  Graph graph;
  BlockClass block_class;
  GraphClass verdict = GraphClass::spn;
  Provenance provenance = Provenance::single_edge;
  std::optional<ForbiddenHit> hit;  // host labels
};

struct GraphVerdict {
  GraphClass overall = GraphClass::spn;
  std::vector<BlockVerdict> per_block;
  std::optional<ForbiddenHit> forbidden_hit;
};

GraphVerdict classify(const Graph& g);

}  // namespace spnkit
