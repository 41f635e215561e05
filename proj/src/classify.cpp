#include "spnkit/classify.hpp"

#include "spnkit/errors.hpp"

namespace spnkit {

std::string_view to_string(GraphClass c) {
  switch (c) {
    case GraphClass::spn: return "SPN";
    case GraphClass::not_spn: return "NOT_SPN";
    case GraphClass::unknown_conjectured: return "UNKNOWN_CONJECTURED";
  }
  return "UNKNOWN_CONJECTURED";
}

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::single_edge: return "single_edge";
    case Provenance::cycle: return "cycle";
    case Provenance::tn: return "tn";
    case Provenance::k2n: return "k2n";
    case Provenance::diamond_subdivision: return "diamond_subdivision";
    case Provenance::k4: return "k4";
    case Provenance::drn: return "drn";
    case Provenance::at_most_four_vertices: return "at_most_four_vertices";
    case Provenance::forbidden_f5: return "forbidden_f5";
    case Provenance::forbidden_cd6: return "forbidden_cd6";
    case Provenance::forbidden_k4_subdivision: return "forbidden_k4_subdivision";
    case Provenance::conjecture_tn_subdivision: return "conjecture_tn_subdivision";
    case Provenance::conjecture_k4_all_subdivided: return "conjecture_k4_all_subdivided";
  }
  return "";
}

std::string_view to_string(Pattern p) {
  switch (p) {
    case Pattern::f5: return "F5";
    case Pattern::cd6: return "CD6";
    case Pattern::k4_subdivided: return "K4_2to5";
  }
  return "";
}

Graph pattern_graph(Pattern p) {
  switch (p) {
    case Pattern::f5: return catalog("f5");
    case Pattern::cd6: return catalog("cd6");
    case Pattern::k4_subdivided: return catalog("k4");
  }
  return {};
}

SubdivisionConstraints pattern_constraints(Pattern p) {
  SubdivisionConstraints c;
  if (p == Pattern::k4_subdivided) {
    c.min_long = 2;
    c.max_long = 5;
  }
  return c;
}

std::optional<ForbiddenHit> find_forbidden(const Graph& g) {
  for (Pattern p : {Pattern::f5, Pattern::cd6, Pattern::k4_subdivided})
    if (auto e = contains_subdivision(g, pattern_graph(p), pattern_constraints(p)))
      return ForbiddenHit{p, *e};
  return std::nullopt;
}

namespace {

Provenance forbidden_provenance(Pattern p) {
  switch (p) {
    case Pattern::f5: return Provenance::forbidden_f5;
    case Pattern::cd6: return Provenance::forbidden_cd6;
    case Pattern::k4_subdivided: return Provenance::forbidden_k4_subdivision;
  }
  return Provenance::forbidden_f5;
}

ForbiddenHit to_host(ForbiddenHit h, const IndexSet& vertices) {
  for (Index& x : h.embedding.branch_map) x = vertices[x];
  for (auto& p : h.embedding.paths)
    for (Index& x : p) x = vertices[x];
  return h;
}

void decide(BlockVerdict& b) {
  const auto safe = [&](Provenance p) {
    b.verdict = GraphClass::spn;
    b.provenance = p;
  };
  switch (b.block_class.kind) {
    case BlockKind::edge: return safe(Provenance::single_edge);
    case BlockKind::cycle: return safe(Provenance::cycle);
    case BlockKind::tn_exact: return safe(Provenance::tn);
    case BlockKind::k2n: return safe(Provenance::k2n);
    case BlockKind::diamond_subdivision: return safe(Provenance::diamond_subdivision);
    case BlockKind::k4_exact: return safe(Provenance::k4);
    case BlockKind::drn: return safe(Provenance::drn);
    default: break;
  }
  if (b.graph.order() <= 4) return safe(Provenance::at_most_four_vertices);
  if (b.block_class.kind == BlockKind::tn_subdivision_proper) {
    b.verdict = GraphClass::unknown_conjectured;
    b.provenance = Provenance::conjecture_tn_subdivision;
    return;
  }
  if (b.block_class.kind == BlockKind::k4_subdivided_all6) {
    b.verdict = GraphClass::unknown_conjectured;
    b.provenance = Provenance::conjecture_k4_all_subdivided;
    return;
  }
  if (auto hit = find_forbidden(b.graph)) {
    b.verdict = GraphClass::not_spn;
    b.provenance = forbidden_provenance(hit->pattern);
    b.hit = to_host(*hit, b.vertices);
    return;
  }
  // Only a K4 subdivision with all six edges subdivided can hide here.
  SubdivisionConstraints all6;
  all6.min_long = 6;
  if (contains_subdivision(b.graph, catalog("k4"), all6)) {
    b.verdict = GraphClass::unknown_conjectured;
    b.provenance = Provenance::conjecture_k4_all_subdivided;
    return;
  }
  throw Error(ErrorKind::InternalInconsistency,
              "block is neither a known SPN family nor contains a forbidden subdivision");
}

}  // namespace

GraphVerdict classify(const Graph& g) {
  if (g.order() > kMaxHostOrder)
    throw Error(ErrorKind::GraphTooLarge, "classification supports up to 20 vertices");
  GraphVerdict out;
  for (auto& blk : blocks(g)) {
    BlockVerdict b;
    b.vertices = blk.vertices;
    b.graph = blk.graph;
    b.block_class = recognize_block(b.graph);
    decide(b);
    out.per_block.push_back(std::move(b));
  }
  bool unknown = false;
  for (const auto& b : out.per_block) {
    if (b.verdict == GraphClass::not_spn && !out.forbidden_hit) {
      out.overall = GraphClass::not_spn;
      out.forbidden_hit = b.hit;
    }
    unknown = unknown || b.verdict == GraphClass::unknown_conjectured;
  }
  if (!out.forbidden_hit && unknown) out.overall = GraphClass::unknown_conjectured;
  return out;
}

}  // namespace spnkit
