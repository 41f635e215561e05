#include "spnkit/graph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>

#include "internal.hpp"
#include "spnkit/errors.hpp"

namespace spnkit {

Graph::Graph(Index n, const EdgeList& edges) : adj_(n) {
  for (auto [u, v] : edges)
    if (!add_edge(u, v)) throw Error(ErrorKind::LoopOrDuplicate, "duplicate edge");
}

bool Graph::add_edge(Index u, Index v) {
  if (u >= order() || v >= order()) throw Error(ErrorKind::InvalidArgument, "vertex out of range");
  if (u == v) throw Error(ErrorKind::LoopOrDuplicate, "loop at a vertex");
  if (has_edge(u, v)) return false;
  adj_[u].insert(std::lower_bound(adj_[u].begin(), adj_[u].end(), v), v);
  adj_[v].insert(std::lower_bound(adj_[v].begin(), adj_[v].end(), u), u);
  ++m_;
  return true;
}

bool Graph::remove_edge(Index u, Index v) {
  if (!has_edge(u, v)) return false;
  adj_[u].erase(std::lower_bound(adj_[u].begin(), adj_[u].end(), v));
  adj_[v].erase(std::lower_bound(adj_[v].begin(), adj_[v].end(), u));
  --m_;
  return true;
}

bool Graph::has_edge(Index u, Index v) const {
  if (u >= order() || v >= order()) return false;
  return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

EdgeList Graph::edges() const {
  EdgeList out;
  for (Index u = 0; u < order(); ++u)
    for (Index v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

Graph Graph::induced(const IndexSet& vertices) const {
  Graph g(vertices.size());
  for (Index a = 0; a < vertices.size(); ++a)
    for (Index b = a + 1; b < vertices.size(); ++b)
      if (has_edge(vertices[a], vertices[b])) g.add_edge(a, b);
  return g;
}

Graph Graph::padded(Index n) const {
  Graph g = *this;
  if (n > order()) g.adj_.resize(n);
  return g;
}

bool Graph::connected() const {
  if (order() == 0) return true;
  std::vector<bool> seen(order(), false);
  IndexSet stack{0};
  seen[0] = true;
  Index count = 1;
  while (!stack.empty()) {
    const Index u = stack.back();
    stack.pop_back();
    for (Index w : adj_[u])
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        stack.push_back(w);
      }
  }
  return count == order();
}

bool Graph::subgraph_of(const Graph& other) const {
  if (order() > other.order()) return false;
  for (auto [u, v] : edges())
    if (!other.has_edge(u, v)) return false;
  return true;
}

bool SignedGraph::add_edge(Index u, Index v, int sign) {
  if (sign != 1 && sign != -1) throw Error(ErrorKind::InvalidArgument, "sign must be +1 or -1");
  if (!g_.add_edge(u, v)) return false;
  signs_[{std::min(u, v), std::max(u, v)}] = sign;
  return true;
}

int SignedGraph::sign(Index u, Index v) const {
  auto it = signs_.find({std::min(u, v), std::max(u, v)});
  return it == signs_.end() ? 0 : it->second;
}

std::vector<std::tuple<Index, Index, int>> SignedGraph::signed_edges() const {
  std::vector<std::tuple<Index, Index, int>> out;
  for (const auto& [e, s] : signs_) out.emplace_back(e.first, e.second, s);
  return out;
}

MatrixGraphs derive_graphs(const SymMatrix& a, double tol) {
  const Index n = a.order();
  MatrixGraphs out{Graph(n), SignedGraph(n), Graph(n), Graph(n), Graph(n)};
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      const double x = a(i, j);
      if (std::abs(x + 1.0) <= tol) out.minus_one.add_edge(i, j);
      if (std::abs(x) <= tol) continue;
      out.g.add_edge(i, j);
      out.signed_graph.add_edge(i, j, x < 0 ? -1 : 1);
      (x < 0 ? out.minus : out.plus).add_edge(i, j);
    }
  return out;
}

Graph graph_of(const SymMatrix& a, double tol) { return derive_graphs(a, tol).g; }

NegativeStructure negative_structure(const SignedGraph& gs) {
  const Index n = gs.order();
  NegativeStructure out{Graph(n), Graph(n), {}, {}};
  for (auto [i, j, s] : gs.signed_edges()) (s < 0 ? out.neg : out.pos).add_edge(i, j);
  out.components = detail::components(n, [&](Index i, Index j) { return out.neg.has_edge(i, j); });
  for (const auto& c : out.components) {
    bool only = true;
    for (Index a = 0; a < c.size() && only; ++a)
      for (Index b = a + 1; b < c.size() && only; ++b) only = gs.sign(c[a], c[b]) != 1;
    out.induced_only.push_back(only);
  }
  return out;
}

std::vector<Block> blocks(const Graph& g) {
  const Index n = g.order();
  const Index unset = static_cast<Index>(-1);
  IndexSet disc(n, unset), low(n, 0);
  std::vector<std::pair<Index, Index>> stack;
  std::vector<Block> out;
  Index time = 0;
  std::function<void(Index, Index)> dfs = [&](Index u, Index parent) {
    disc[u] = low[u] = time++;
    for (Index w : g.neighbors(u)) {
      if (w == parent) continue;
      if (disc[w] == unset) {
        stack.emplace_back(u, w);
        dfs(w, u);
        low[u] = std::min(low[u], low[w]);
        if (low[w] >= disc[u]) {
          IndexSet vs;
          std::pair<Index, Index> e;
          do {
            e = stack.back();
            stack.pop_back();
            vs.push_back(e.first);
            vs.push_back(e.second);
          } while (e != std::make_pair(u, w));
          std::sort(vs.begin(), vs.end());
          vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
          out.push_back({vs, g.induced(vs)});
        }
      } else if (disc[w] < disc[u]) {
        stack.emplace_back(u, w);
        low[u] = std::min(low[u], disc[w]);
      }
    }
  };
  for (Index v = 0; v < n; ++v)
    if (disc[v] == unset) dfs(v, unset);
  std::sort(out.begin(), out.end(),
            [](const Block& x, const Block& y) { return x.vertices < y.vertices; });
  return out;
}

bool is_two_connected(const Graph& g) {
  if (g.order() < 3 || !g.connected()) return false;
  for (Index v = 0; v < g.order(); ++v)
    if (!g.induced(complement(g.order(), {v})).connected()) return false;
  return true;
}

TopoCore topo_core(const Graph& g) {
  if (!g.connected()) throw Error(ErrorKind::DisconnectedInput, "graph is not connected");
  const Index n = g.order();
  TopoCore core;
  for (Index v = 0; v < n; ++v)
    if (g.degree(v) != 2) core.branch_vertices.push_back(v);
  if (n == 0) return core;
  if (core.branch_vertices.empty()) {
    IndexSet cyc{0};
    Index prev = 0, cur = g.neighbors(0)[0];
    while (cur != 0) {
      cyc.push_back(cur);
      const auto& nb = g.neighbors(cur);
      const Index next = nb[0] == prev ? nb[1] : nb[0];
      prev = cur;
      cur = next;
    }
    cyc.push_back(0);
    core.paths.push_back(cyc);
    return core;
  }
  Graph unused = g;
  for (Index b : core.branch_vertices) {
    for (Index w : g.neighbors(b)) {
      if (!unused.has_edge(b, w)) continue;
      IndexSet path{b, w};
      unused.remove_edge(b, w);
      Index prev = b, cur = w;
      while (g.degree(cur) == 2) {
        const auto& nb = g.neighbors(cur);
        const Index next = nb[0] == prev ? nb[1] : nb[0];
        unused.remove_edge(cur, next);
        path.push_back(next);
        prev = cur;
        cur = next;
      }
      core.paths.push_back(std::move(path));
    }
  }
  return core;
}

Graph expand_core(const TopoCore& core, Index n) {
  Graph g(n);
  for (const auto& p : core.paths)
    for (Index k = 0; k + 1 < p.size(); ++k) g.add_edge(p[k], p[k + 1]);
  return g;
}

std::string_view to_string(BlockKind k) {
  switch (k) {
    case BlockKind::edge: return "Edge";
    case BlockKind::cycle: return "Cycle";
    case BlockKind::tn_exact: return "TnExact";
    case BlockKind::k2n: return "K2n";
    case BlockKind::diamond_subdivision: return "DiamondSubdivision";
    case BlockKind::tn_subdivision_proper: return "TnSubdivisionProper";
    case BlockKind::k4_exact: return "K4Exact";
    case BlockKind::drn: return "DRn";
    case BlockKind::k4_subdivided_2to5: return "K4Subdivided2to5";
    case BlockKind::k4_subdivided_all6: return "K4SubdividedAll6";
    case BlockKind::other: return "Other";
  }
  return "Other";
}

std::string to_string(const BlockClass& c) {
  std::string s(to_string(c.kind));
  switch (c.kind) {
    case BlockKind::tn_exact:
    case BlockKind::k2n:
    case BlockKind::tn_subdivision_proper:
    case BlockKind::drn:
      s += "(" + std::to_string(c.param) + ")";
      break;
    default:
      break;
  }
  return s;
}

BlockClass recognize_block(const Graph& b) {
  const Index n = b.order();
  if (n == 2 && b.size() == 1) return {BlockKind::edge, 2};
  if (!is_two_connected(b)) throw Error(ErrorKind::NotTwoConnected, "block is not 2-connected");
  const TopoCore core = topo_core(b);
  if (core.branch_vertices.empty()) return {BlockKind::cycle, n};
  IndexSet len;
  for (const auto& p : core.paths) len.push_back(p.size() - 1);
  const auto count = [&](auto pred) {
    return static_cast<Index>(std::count_if(len.begin(), len.end(), pred));
  };
  const Index paths = len.size();
  if (core.branch_vertices.size() == 2) {
    const Index ones = count([](Index l) { return l == 1; });
    const Index twos = count([](Index l) { return l == 2; });
    if (ones == 1 && twos == paths - 1) return {BlockKind::tn_exact, n};
    if (twos == paths) return {BlockKind::k2n, paths};
    if (paths == 3) return {BlockKind::diamond_subdivision, 0};
    return {BlockKind::tn_subdivision_proper, paths + 1};
  }
  if (core.branch_vertices.size() == 4 && paths == 6) {
    std::vector<std::pair<Index, Index>> ends;
    for (const auto& p : core.paths)
      ends.emplace_back(std::min(p.front(), p.back()), std::max(p.front(), p.back()));
    std::sort(ends.begin(), ends.end());
    const bool k4 = std::adjacent_find(ends.begin(), ends.end()) == ends.end() &&
                    std::none_of(ends.begin(), ends.end(),
                                 [](const auto& e) { return e.first == e.second; });
    if (k4) {
      const Index longs = count([](Index l) { return l >= 2; });
      if (longs == 0) return {BlockKind::k4_exact, 4};
      if (longs == 1) return {BlockKind::drn, n};
      if (longs <= 5) return {BlockKind::k4_subdivided_2to5, 0};
      return {BlockKind::k4_subdivided_all6, 0};
    }
  }
  return {BlockKind::other, 0};
}

namespace {

// Colour refinement; colours are ranks of sorted signatures, so they do not
// depend on the vertex labelling.
IndexSet refine_colours(const Graph& g) {
  const Index n = g.order();
  IndexSet colour(n);
  for (Index v = 0; v < n; ++v) colour[v] = g.degree(v);
  while (true) {
    std::vector<std::pair<IndexSet, Index>> sig(n);
    for (Index v = 0; v < n; ++v) {
      IndexSet s{colour[v]};
      IndexSet nb;
      for (Index w : g.neighbors(v)) nb.push_back(colour[w]);
      std::sort(nb.begin(), nb.end());
      s.insert(s.end(), nb.begin(), nb.end());
      sig[v] = {s, v};
    }
    std::vector<IndexSet> distinct;
    for (const auto& s : sig) distinct.push_back(s.first);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    IndexSet next(n);
    for (Index v = 0; v < n; ++v)
      next[v] = std::lower_bound(distinct.begin(), distinct.end(), sig[v].first) - distinct.begin();
    const Index before = std::set<Index>(colour.begin(), colour.end()).size();
    colour = next;
    if (distinct.size() == before) return colour;
  }
}

}  // namespace

std::string canonical_form(const Graph& g) {
  const Index n = g.order();
  if (n > 10) throw Error(ErrorKind::GraphTooLarge, "canonical form supports up to 10 vertices");
  const IndexSet colour = refine_colours(g);
  // Vertices grouped by colour; permutations within each group.
  IndexSet order = range(n);
  std::sort(order.begin(), order.end(), [&](Index x, Index y) {
    return colour[x] != colour[y] ? colour[x] < colour[y] : x < y;
  });
  std::vector<std::pair<Index, Index>> groups;
  for (Index s = 0; s < n;) {
    Index e = s;
    while (e < n && colour[order[e]] == colour[order[s]]) ++e;
    groups.emplace_back(s, e);
    s = e;
  }
  std::string best;
  std::function<void(Index)> rec = [&](Index gi) {
    if (gi == groups.size()) {
      std::string s;
      for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j) s += g.has_edge(order[i], order[j]) ? '1' : '0';
      if (best.empty() || s < best) best = s;
      return;
    }
    auto [s, e] = groups[gi];
    std::sort(order.begin() + s, order.begin() + e);
    do {
      rec(gi + 1);
    } while (std::next_permutation(order.begin() + s, order.begin() + e));
  };
  rec(0);
  IndexSet sorted_colour = colour;
  std::sort(sorted_colour.begin(), sorted_colour.end());
  std::ostringstream key;
  key << n << ':';
  for (Index c : sorted_colour) key << c << ',';
  return key.str() + best;
}

bool isomorphic(const Graph& a, const Graph& b) {
  return a.order() == b.order() && a.size() == b.size() && canonical_form(a) == canonical_form(b);
}

}  // namespace spnkit
