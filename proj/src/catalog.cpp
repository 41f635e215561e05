#include <string>

#include "spnkit/errors.hpp"
#include "spnkit/graph.hpp"

namespace spnkit {

namespace {

Graph from_one_based(Index n, const EdgeList& edges) {
  Graph g(n);
  for (auto [u, v] : edges) g.add_edge(u - 1, v - 1);
  return g;
}

Index single(std::string_view name, const std::vector<Index>& p, Index lo) {
  if (p.size() != 1 || p[0] < lo)
    throw Error(ErrorKind::BadParams,
                std::string(name) + " takes one parameter >= " + std::to_string(lo));
  if (p[0] > kMaxHostOrder)
    throw Error(ErrorKind::BadParams, std::string(name) + " parameter too large");
  return p[0];
}

void no_params(std::string_view name, const std::vector<Index>& p) {
  if (!p.empty()) throw Error(ErrorKind::BadParams, std::string(name) + " takes no parameters");
}

}  // namespace

Graph catalog(std::string_view name, const std::vector<Index>& params) {
  if (name == "cycle") {
    const Index n = single(name, params, 3);
    Graph g(n);
    for (Index i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
  }
  if (name == "path") {
    const Index n = single(name, params, 1);
    Graph g(n);
    for (Index i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
  }
  if (name == "complete") {
    const Index n = single(name, params, 1);
    Graph g(n);
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
  }
  if (name == "star") {
    const Index m = single(name, params, 1);
    Graph g(m + 1);
    for (Index i = 1; i <= m; ++i) g.add_edge(0, i);
    return g;
  }
  if (name == "tn") {
    // Base edge 1-2, apexes 3..n.
    const Index n = single(name, params, 3);
    Graph g(n);
    g.add_edge(0, 1);
    for (Index i = 2; i < n; ++i) {
      g.add_edge(0, i);
      g.add_edge(1, i);
    }
    return g;
  }
  if (name == "k2n") {
    const Index m = single(name, params, 1);
    Graph g(m + 2);
    for (Index i = 2; i < m + 2; ++i) {
      g.add_edge(0, i);
      g.add_edge(1, i);
    }
    return g;
  }
  if (name == "drn") {
    // K4 on 1..4 with the edge 1-2 replaced by the path 1-5-...-n-2.
    const Index n = single(name, params, 4);
    Graph g = catalog("k4");
    if (n == 4) return g;
    return subdivide(g, 0, 1, n - 4);
  }
  if (name == "k4") {
    no_params(name, params);
    return catalog("complete", {4});
  }
  if (name == "f5") {
    no_params(name, params);
    return from_one_based(5, {{1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}, {3, 5}, {4, 5}});
  }
  if (name == "cd6") {
    no_params(name, params);
    return from_one_based(6, {{1, 2}, {1, 3}, {2, 3}, {2, 5}, {3, 4}, {4, 5}, {4, 6}, {5, 6}});
  }
  if (name == "k33e") {
    no_params(name, params);
    return from_one_based(6, {{1, 4}, {1, 5}, {1, 6}, {2, 4}, {2, 5}, {2, 6}, {3, 4}, {3, 5}});
  }
  throw Error(ErrorKind::BadParams, "unknown catalog graph '" + std::string(name) + "'");
}

std::vector<std::string> catalog_names() {
  return {"cd6", "complete", "cycle", "drn", "f5", "k2n", "k33e", "k4", "path", "star", "tn"};
}

Graph subdivide(const Graph& g, Index u, Index v, Index times) {
  if (!g.has_edge(u, v)) throw Error(ErrorKind::BadParams, "edge to subdivide is not present");
  if (g.order() + times > kMaxHostOrder)
    throw Error(ErrorKind::BadParams, "subdivision exceeds the vertex limit");
  Graph out = g.padded(g.order() + times);
  out.remove_edge(u, v);
  Index prev = u;
  for (Index k = 0; k < times; ++k) {
    out.add_edge(prev, g.order() + k);
    prev = g.order() + k;
  }
  out.add_edge(prev, v);
  return out;
}

}  // namespace spnkit
