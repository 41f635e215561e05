#pragma once

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "spnkit/matcore.hpp"

namespace spnkit {

using EdgeList = std::vector<std::pair<Index, Index>>;

// Simple undirected graph on vertices 0..n-1. Edges are stored as (i, j)
// with i < j.
class Graph {
 public:
  Graph() = default;
  explicit Graph(Index n) : adj_(n) {}
  // Throws LoopOrDuplicate.
  Graph(Index n, const EdgeList& edges);

  Index order() const { return adj_.size(); }
  Index size() const { return m_; }

  // Returns false when the edge already exists; throws on a loop or range error.
  bool add_edge(Index u, Index v);
  bool remove_edge(Index u, Index v);
  bool has_edge(Index u, Index v) const;
  const IndexSet& neighbors(Index v) const { return adj_[v]; }
  Index degree(Index v) const { return adj_[v].size(); }
  EdgeList edges() const;

  Graph induced(const IndexSet& vertices) const;
  // Adds isolated vertices up to order n.
  Graph padded(Index n) const;
  bool connected() const;
  bool subgraph_of(const Graph& other) const;

  bool operator==(const Graph& o) const { return adj_ == o.adj_; }

 private:
  std::vector<IndexSet> adj_;  // sorted
  Index m_ = 0;
};

class SignedGraph {
 public:
  SignedGraph() = default;
  explicit SignedGraph(Index n) : g_(n) {}

  Index order() const { return g_.order(); }
  // sign is +1 or -1.
  bool add_edge(Index u, Index v, int sign);
  int sign(Index u, Index v) const;  // 0 when absent
  const Graph& underlying() const { return g_; }
  // (i, j, sign) sorted by (i, j).
  std::vector<std::tuple<Index, Index, int>> signed_edges() const;

  bool operator==(const SignedGraph& o) const { return g_ == o.g_ && signs_ == o.signs_; }

 private:
  Graph g_;
  std::map<std::pair<Index, Index>, int> signs_;
};

struct MatrixGraphs {
  Graph g;
  SignedGraph signed_graph;
  Graph minus;
  Graph plus;
  Graph minus_one;
};
MatrixGraphs derive_graphs(const SymMatrix& a, double tol = kDefaultTol);
// The unsigned graph G(A).
Graph graph_of(const SymMatrix& a, double tol = kDefaultTol);

struct NegativeStructure {
  Graph neg;
  Graph pos;
  std::vector<IndexSet> components;  // of the negative graph
  std::vector<bool> induced_only;    // component spans only negative edges
};
NegativeStructure negative_structure(const SignedGraph& gs);

// A block together with its vertices in the host graph. The local graph uses
// labels 0..k-1 in the order of `vertices`.
struct Block {
  IndexSet vertices;
  Graph graph;
};
std::vector<Block> blocks(const Graph& g);

// Suppression of degree-2 vertices. Each path lists its vertices from one
// branch vertex to another; a graph that is a single cycle has no branch
// vertices and one closed path whose first and last vertex coincide.
struct TopoCore {
  IndexSet branch_vertices;
  std::vector<IndexSet> paths;
};
TopoCore topo_core(const Graph& g);
// Re-expands the paths into a graph of the given order.
Graph expand_core(const TopoCore& core, Index n);

enum class BlockKind {
  edge,
  cycle,
  tn_exact,
  k2n,
  diamond_subdivision,
  tn_subdivision_proper,
  k4_exact,
  drn,
  k4_subdivided_2to5,
  k4_subdivided_all6,
  other
};
std::string_view to_string(BlockKind k);

struct BlockClass {
  BlockKind kind = BlockKind::other;
  Index param = 0;  // k of T_k, m of K_{2,m}, n of DR_n
  bool operator==(const BlockClass&) const = default;
};
std::string to_string(const BlockClass& c);
BlockClass recognize_block(const Graph& b);
bool is_two_connected(const Graph& g);

// Branch map (pattern vertex -> host vertex) and one host path per pattern
// edge, in the order of pattern.edges().
struct Embedding {
  IndexSet branch_map;
  std::vector<IndexSet> paths;
};

struct SubdivisionConstraints {
  // Number of pattern edges realised by a path of length >= 2 must lie in
  // [min_long, max_long].
  Index min_long = 0;
  Index max_long = std::numeric_limits<Index>::max();
  // Per pattern edge (same order as pattern.edges()); empty allows all.
  std::vector<bool> may_subdivide;
};

inline constexpr Index kMaxPatternOrder = 8;
inline constexpr Index kMaxHostOrder = 20;

std::optional<Embedding> contains_subdivision(const Graph& g, const Graph& h,
                                              const SubdivisionConstraints& c = {});
bool verify_embedding(const Graph& g, const Graph& h, const Embedding& e,
                      const SubdivisionConstraints& c = {});

// Canonical adjacency string for small graphs (n <= 10).
std::string canonical_form(const Graph& g);
bool isomorphic(const Graph& a, const Graph& b);

// Named graphs. Supported names: cycle n, path n, complete n, star n (n leaves),
// tn n, k2n m, drn n, k4, f5, cd6, k33e.
Graph catalog(std::string_view name, const std::vector<Index>& params = {});
std::vector<std::string> catalog_names();
// Replaces edge uv by a path with `times` new vertices appended at the end.
Graph subdivide(const Graph& g, Index u, Index v, Index times = 1);

}  // namespace spnkit
