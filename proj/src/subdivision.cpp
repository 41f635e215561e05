#include <algorithm>
#include <functional>

#include "spnkit/errors.hpp"
#include "spnkit/graph.hpp"

namespace spnkit {

namespace {

class Search {
 public:
  Search(const Graph& g, const Graph& h, const SubdivisionConstraints& c)
      : g_(g), h_(h), c_(c), hedges_(h.edges()), used_(g.order(), false) {
    may_.resize(hedges_.size(), true);
    for (Index k = 0; k < std::min(c.may_subdivide.size(), may_.size()); ++k)
      may_[k] = c.may_subdivide[k];
    map_.assign(h.order(), 0);
  }

  std::optional<Embedding> run() {
    if (assign(0)) return Embedding{map_, paths_};
    return std::nullopt;
  }

 private:
  bool assign(Index v) {
    if (v == h_.order()) {
      paths_.assign(hedges_.size(), {});
      return route(0, 0);
    }
    for (Index x = 0; x < g_.order(); ++x) {
      if (used_[x] || g_.degree(x) < h_.degree(v)) continue;
      map_[v] = x;
      bool ok = true;
      // Edges to earlier pattern vertices that must stay direct.
      for (Index k = 0; k < hedges_.size() && ok; ++k) {
        auto [a, b] = hedges_[k];
        if (b == v && !may_[k] && !g_.has_edge(map_[a], x)) ok = false;
      }
      if (!ok) continue;
      used_[x] = true;
      if (assign(v + 1)) return true;
      used_[x] = false;
    }
    return false;
  }

  bool route(Index k, Index longs) {
    if (longs > c_.max_long) return false;
    Index optional_left = 0;
    for (Index r = k; r < hedges_.size(); ++r) optional_left += may_[r] ? 1 : 0;
    if (longs + optional_left < c_.min_long) return false;
    if (k == hedges_.size()) return true;
    const Index s = map_[hedges_[k].first], t = map_[hedges_[k].second];
    if (g_.has_edge(s, t)) {
      paths_[k] = {s, t};
      if (route(k + 1, longs)) return true;
    }
    if (!may_[k]) return false;
    IndexSet path{s};
    return extend(k, longs, path, t);
  }

  // Depth-first growth of a path of length >= 2 from path.back() to t.
  bool extend(Index k, Index longs, IndexSet& path, Index t) {
    const Index u = path.back();
    for (Index w : g_.neighbors(u)) {
      if (w == t && path.size() >= 2) {
        path.push_back(t);
        paths_[k] = path;
        if (route(k + 1, longs + 1)) return true;
        path.pop_back();
        continue;
      }
      if (used_[w]) continue;
      used_[w] = true;
      path.push_back(w);
      if (extend(k, longs, path, t)) return true;
      path.pop_back();
      used_[w] = false;
    }
    return false;
  }

  const Graph& g_;
  const Graph& h_;
  const SubdivisionConstraints& c_;
  EdgeList hedges_;
  std::vector<bool> may_;
  std::vector<bool> used_;
  IndexSet map_;
  std::vector<IndexSet> paths_;
};

}  // namespace

std::optional<Embedding> contains_subdivision(const Graph& g, const Graph& h,
                                              const SubdivisionConstraints& c) {
  if (h.order() > kMaxPatternOrder)
    throw Error(ErrorKind::PatternTooLarge, "pattern has more than 8 vertices");
  if (g.order() > kMaxHostOrder)
    throw Error(ErrorKind::GraphTooLarge, "host graph has more than 20 vertices");
  if (h.order() > g.order() || h.size() > g.size()) return std::nullopt;
  auto e = Search(g, h, c).run();
  if (e && !verify_embedding(g, h, *e, c))
    throw Error(ErrorKind::InternalInconsistency, "subdivision search produced an invalid embedding");
  return e;
}

bool verify_embedding(const Graph& g, const Graph& h, const Embedding& e,
                      const SubdivisionConstraints& c) {
  const EdgeList hedges = h.edges();
  if (e.branch_map.size() != h.order() || e.paths.size() != hedges.size()) return false;
  std::vector<int> use(g.order(), 0);
  for (Index x : e.branch_map) {
    if (x >= g.order() || use[x]) return false;
    use[x] = 1;
  }
  Index longs = 0;
  for (Index k = 0; k < hedges.size(); ++k) {
    const auto& p = e.paths[k];
    if (p.size() < 2) return false;
    if (p.front() != e.branch_map[hedges[k].first] || p.back() != e.branch_map[hedges[k].second])
      return false;
    for (Index i = 0; i + 1 < p.size(); ++i)
      if (!g.has_edge(p[i], p[i + 1])) return false;
    for (Index i = 1; i + 1 < p.size(); ++i) {
      if (p[i] >= g.order() || use[p[i]]) return false;
      use[p[i]] = 2;
    }
    if (p.size() > 2) {
      ++longs;
      if (k < c.may_subdivide.size() && !c.may_subdivide[k]) return false;
    }
  }
  return longs >= c.min_long && longs <= c.max_long;
}

}  // namespace spnkit
