#include <doctest.h>

#include <set>

#include "spnkit/classify.hpp"
#include "spnkit/copositive.hpp"
#include "spnkit/errors.hpp"
#include "spnkit/spn.hpp"
#include "support/oracles.hpp"

using namespace spnkit;

namespace {

bool has_f5_subgraph(const Graph& g) {
  // Plain subgraph (not subdivision) by trying every injective map.
  const Graph f5 = catalog("f5");
  IndexSet perm = range(g.order());
  std::set<IndexSet> seen;
  do {
    const IndexSet head(perm.begin(), perm.begin() + 5);
    if (!seen.insert(head).second) continue;
    bool ok = true;
    for (auto [u, v] : f5.edges()) ok = ok && g.has_edge(head[u], head[v]);
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

GraphClass aggregate(const std::vector<GraphClass>& parts) {
  GraphClass out = GraphClass::spn;
  for (auto c : parts) {
    if (c == GraphClass::not_spn) return c;
    if (c == GraphClass::unknown_conjectured) out = c;
  }
  return out;
}

}  // namespace

TEST_CASE("classification examples") {
  const auto f = classify(catalog("f5"));
  CHECK(f.overall == GraphClass::not_spn);
  REQUIRE(f.forbidden_hit);
  CHECK(f.forbidden_hit->pattern == Pattern::f5);
  CHECK(verify_embedding(catalog("f5"), catalog("f5"), f.forbidden_hit->embedding));

  Graph all6 = catalog("k4");
  for (auto [u, v] : catalog("k4").edges()) all6 = subdivide(all6, u, v);
  const auto k = classify(all6);
  CHECK(k.overall == GraphClass::unknown_conjectured);
  REQUIRE(k.per_block.size() == 1);
  CHECK(k.per_block[0].provenance == Provenance::conjecture_k4_all_subdivided);

  CHECK(classify(catalog("cycle", {5})).overall == GraphClass::spn);
  CHECK(classify(catalog("k4")).overall == GraphClass::spn);
  CHECK(classify(catalog("drn", {7})).overall == GraphClass::spn);
  CHECK(classify(catalog("tn", {8})).overall == GraphClass::spn);
  CHECK(classify(catalog("k2n", {6})).overall == GraphClass::spn);
  const auto cd = classify(catalog("cd6"));
  CHECK(cd.overall == GraphClass::not_spn);
  REQUIRE(cd.forbidden_hit);
  CHECK(cd.forbidden_hit->pattern == Pattern::cd6);
  const auto kk = classify(catalog("k33e"));
  CHECK(kk.overall == GraphClass::not_spn);
  CHECK(kk.forbidden_hit->pattern == Pattern::k4_subdivided);
  const auto tp = classify(subdivide(catalog("tn", {5}), 0, 2));
  CHECK(tp.overall == GraphClass::unknown_conjectured);
  CHECK(tp.per_block[0].provenance == Provenance::conjecture_tn_subdivision);
  CHECK(classify(Graph(0)).overall == GraphClass::spn);
  CHECK(classify(Graph(6)).overall == GraphClass::spn);
  CHECK_THROWS_AS(classify(Graph(21)), Error);
}

TEST_CASE("five-vertex graphs: SPN exactly when there is no F5 subgraph") {
  const auto classes = oracle::graph_classes(5);
  REQUIRE(classes.size() == 34);
  for (const Graph& g : classes) {
    const auto v = classify(g);
    CHECK(v.overall != GraphClass::unknown_conjectured);
    CHECK((v.overall == GraphClass::spn) == !has_f5_subgraph(g));
  }
}

TEST_CASE("verdict invariants and provenance") {
  for (Index n = 1; n <= 6; ++n)
    for (const Graph& g : oracle::graph_classes(n)) {
      const auto v = classify(g);
      std::vector<GraphClass> parts;
      for (const auto& b : v.per_block) {
        parts.push_back(b.verdict);
        if (b.verdict == GraphClass::not_spn) {
          REQUIRE(b.hit);
          CHECK(verify_embedding(g, pattern_graph(b.hit->pattern), b.hit->embedding,
                                 pattern_constraints(b.hit->pattern)));
        }
        if (b.vertices.size() <= 4) CHECK(b.verdict == GraphClass::spn);
      }
      CHECK(v.overall == aggregate(parts));
      CHECK(v.forbidden_hit.has_value() == (v.overall == GraphClass::not_spn));
    }
}

TEST_CASE("block reduction") {
  for (Index n = 3; n <= 7; ++n) {
    const auto classes = oracle::graph_classes(n);
    for (std::size_t i = 0; i < classes.size(); i += (n == 7 ? 11 : 1)) {
      const Graph& g = classes[i];
      std::vector<GraphClass> parts;
      for (const auto& b : blocks(g)) parts.push_back(classify(b.graph).overall);
      CHECK(classify(g).overall == aggregate(parts));
    }
  }
}

TEST_CASE("subgraph monotonicity on graphs with at most six vertices") {
  for (Index n = 2; n <= 6; ++n)
    for (const Graph& g : oracle::graph_classes(n)) {
      if (classify(g).overall != GraphClass::spn) continue;
      std::set<std::string> seen;
      std::vector<Graph> stack{g};
      while (!stack.empty()) {
        const Graph h = stack.back();
        stack.pop_back();
        if (!seen.insert(canonical_form(h)).second) continue;
        CHECK(classify(h).overall != GraphClass::not_spn);
        for (auto [u, v] : h.edges()) {
          Graph k = h;
          k.remove_edge(u, v);
          stack.push_back(k);
        }
      }
    }
}

TEST_CASE("SPN graphs on at most five vertices admit no non-SPN copositive matrix") {
  std::mt19937_64 rng(307);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int graphs = 0;
  for (Index n = 3; n <= 5; ++n)
    for (const Graph& g : oracle::graph_classes(n)) {
      if (g.size() == 0 || classify(g).overall != GraphClass::spn) continue;
      ++graphs;
      int done = 0;
      for (int attempt = 0; attempt < 20000 && done < 50; ++attempt) {
        SymMatrix a = SymMatrix::identity(n);
        for (auto [i, j] : g.edges()) {
          double x = u(rng);
          while (x == 0.0) x = u(rng);
          a(i, j) = x;
        }
        if (!test_copositive(a).is_member()) continue;
        ++done;
        const auto r = test_spn(a);
        CHECK_FALSE(r.verdict.is_non_member());
        if (r.decomposition) CHECK(check_decomposition(a, *r.decomposition).ok);
      }
      CHECK(done == 50);
    }
  CHECK(graphs > 0);
}

TEST_CASE("forbidden patterns") {
  CHECK(to_string(Pattern::f5) == "F5");
  CHECK(pattern_graph(Pattern::cd6) == catalog("cd6"));
  CHECK(pattern_constraints(Pattern::k4_subdivided).min_long == 2);
  CHECK(pattern_constraints(Pattern::k4_subdivided).max_long == 5);
  CHECK_FALSE(find_forbidden(catalog("tn", {7})));
  CHECK(find_forbidden(catalog("complete", {5})));
}
