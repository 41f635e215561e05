#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "spnkit/matcore.hpp"
#include "spnkit/spn.hpp"

namespace spnkit::detail {

// Calls fn(subset) for every subset of {0..n-1} of size k, lexicographically.
// Stops early when fn returns true; returns whether it stopped.
template <class Fn>
bool for_each_combination(Index n, Index k, Fn&& fn) {
  if (k > n) return false;
  IndexSet c(k);
  std::iota(c.begin(), c.end(), Index{0});
  while (true) {
    if (fn(c)) return true;
    Index i = k;
    while (i > 0 && c[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++c[i - 1];
    for (Index j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

// Nonempty subsets ordered by size, then lexicographically.
template <class Fn>
bool for_each_support(Index n, Fn&& fn) {
  for (Index k = 1; k <= n; ++k)
    if (for_each_combination(n, k, fn)) return true;
  return false;
}

class UnionFind {
 public:
  explicit UnionFind(Index n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), Index{0}); }
  Index find(Index x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  // Returns false when x and y were already joined.
  bool unite(Index x, Index y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (x > y) std::swap(x, y);
    parent_[y] = x;
    return true;
  }

 private:
  IndexSet parent_;
};

// Vertex sets of connected components of the graph with edges {ij : pred(i,j)},
// each ascending, ordered by smallest vertex.
template <class Pred>
std::vector<IndexSet> components(Index n, Pred&& pred) {
  UnionFind uf(n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      if (pred(i, j)) uf.unite(i, j);
  std::vector<IndexSet> out;
  std::vector<long> slot(n, -1);
  for (Index i = 0; i < n; ++i) {
    const Index r = uf.find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<long>(out.size());
      out.emplace_back();
    }
    out[static_cast<Index>(slot[r])].push_back(i);
  }
  return out;
}

// Solves the convex problem min x^T M x + 2 a^T x over x >= 0 (M PSD) by
// enumerating supports; returns a KKT point if one exists.
std::optional<Vec> solve_psd_lcp(const SymMatrix& m, const Vec& a, double tol);

// The SPN pipeline without the T_n step and without the dual search; used by
// the T_n construction for its reduced cases.
std::optional<SpnDecomposition> structural_decomposition(const SymMatrix& a, double tol);

}  // namespace spnkit::detail
