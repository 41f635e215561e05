#include "spnkit/witness.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>

#include "spnkit/classify.hpp"
#include "spnkit/copositive.hpp"
#include "spnkit/errors.hpp"

namespace spnkit {

std::string_view to_string(BaseWitness b) {
  switch (b) {
    case BaseWitness::f5: return "F5";
    case BaseWitness::cd6: return "CD6";
    case BaseWitness::k4_case1: return "K4_case1";
  }
  return "";
}

SymMatrix base_matrix(BaseWitness b) {
  const double t = std::sqrt(2.0) / 2.0;
  switch (b) {
    case BaseWitness::f5:
      return SymMatrix::from_rows({{1, -1, 1, 0, 0},
                                   {-1, 1, -1, 1, 0},
                                   {1, -1, 1, -1, 1},
                                   {0, 1, -1, 1, -1},
                                   {0, 0, 1, -1, 1}});
    case BaseWitness::cd6:
      return SymMatrix::from_rows({{1, -1, t, 0, 0, 0},
                                   {-1, 1, -t, 0, 1, 0},
                                   {t, -t, 1, -t, 0, 0},
                                   {0, 0, -t, 1, -t, t},
                                   {0, 1, 0, -t, 1, -1},
                                   {0, 0, 0, t, -1, 1}});
    case BaseWitness::k4_case1:
      return SymMatrix::from_rows({{1, -t, 0, 1, 0, 0},
                                   {-t, 1, -t, 0, 1, 0},
                                   {0, -t, 1, -t, 0, 1},
                                   {1, 0, -t, 1, -t, 0},
                                   {0, 1, 0, -t, 1, -t},
                                   {0, 0, 1, 0, -t, 1}});
  }
  throw Error(ErrorKind::InvalidArgument, "unknown base witness");
}

namespace {

Witness make(SymMatrix a, std::vector<std::string> trace) {
  Witness w;
  w.graph = derive_graphs(a).signed_graph;
  w.copositivity = test_copositive(a);
  w.a = std::move(a);
  w.trace = std::move(trace);
  return w;
}

std::optional<DnnCertificate> normalized_certificate(const SymMatrix& a, SymMatrix w) {
  const double f = w.frobenius_norm();
  if (!(f > 0)) return std::nullopt;
  w *= 1.0 / f;
  DnnCertificate c{w, inner(a, w)};
  if (!check_certificate(a, c).ok) return std::nullopt;
  return c;
}

// For A_hat = [[A + g g^T, -g], [-g^T, 1]] with g >= 0, T W T^T with
// T = [[I], [g^T]] keeps <A_hat, W_hat> = <A, W> and stays DNN.
std::optional<DnnCertificate> lift_bordered(const SymMatrix& a_hat, const DnnCertificate& c,
                                            const Vec& g) {
  const Index n = g.size();
  Matrix t(n + 1, n);
  for (Index i = 0; i < n; ++i) {
    t(i, i) = 1.0;
    t(n, i) = g[i];
  }
  return normalized_certificate(a_hat, congruence(t, c.w));
}

void require_witness(const Witness& w, const char* step) {
  const Check c = verify_witness(w);
  if (!c.ok)
    throw Error(ErrorKind::CertificateNotFound, std::string(step) + " failed to verify: " + c.reason);
}

// Bordered extension by the rank-one block e e^T on rows idx + new vertex.
SymMatrix border(const Witness& w, const IndexSet& idx, const Vec& e) {
  const Index n = w.a.order();
  if (n + 1 > kMaxWitnessOrder)
    throw Error(ErrorKind::GraphTooLarge, "witness would exceed 14 vertices");
  SymMatrix a(n + 1);
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j) a(i, j) = w.a(i, j);
  for (Index k = 0; k < idx.size(); ++k) {
    a(idx[k], n) = -e[k];
    for (Index l = k; l < idx.size(); ++l) a(idx[k], idx[l]) += e[k] * e[l];
  }
  a(n, n) = 1.0;
  return a;
}

void attach_certificate(Witness& out, const Witness& from, const Vec& g) {
  if (from.certificate) out.certificate = lift_bordered(out.a, *from.certificate, g);
  if (!out.certificate) out.certificate = find_dnn_certificate(out.a);
}

}  // namespace

Witness base_witness(BaseWitness b) {
  Witness w = make(base_matrix(b), {"base " + std::string(to_string(b))});
  const auto r = test_spn(w.a);
  w.refutation = r.refutation;
  w.certificate = r.certificate ? r.certificate : find_dnn_certificate(w.a);
  require_witness(w, "base witness");
  return w;
}

SymMatrix subdivision_block(double s) {
  const double r = std::sqrt(s);
  return SymMatrix::outer({r, r, -1.0});
}

SymMatrix lambda_paw_block(double a, double b, double c) {
  return SymMatrix::outer({std::sqrt(a * c / b), std::sqrt(a * b / c), std::sqrt(b * c / a), -1.0});
}

Witness subdivide_negative_edge(const Witness& w, Index i, Index j) {
  const Index n = w.a.order();
  if (i >= n || j >= n || i == j || !(w.a(i, j) < 0))
    throw Error(ErrorKind::EdgeNotNegative, "edge to subdivide is not negative");
  const double s = -w.a(i, j);
  const double r = std::sqrt(s);
  std::ostringstream step;
  step << "subdivide " << i + 1 << "-" << j + 1;
  SymMatrix m = border(w, {i, j}, {r, r});
  // The ij entry cancels exactly: a_ij + s = 0.
  m(i, j) = 0.0;
  auto trace = w.trace;
  trace.push_back(step.str());
  Witness out = make(std::move(m), std::move(trace));
  Vec g(n, 0.0);
  g[i] = g[j] = r;
  attach_certificate(out, w, g);
  require_witness(out, "subdivision");
  return out;
}

Witness lambda_paw(const Witness& w, Index x, Index y, Index z, double c) {
  const Index n = w.a.order();
  if (x >= n || y >= n || z >= n || x == y || y == z || x == z || !(w.a(x, y) < 0) ||
      !(w.a(y, z) < 0))
    throw Error(ErrorKind::PathNotNegative, "x-y-z is not a negative path");
  if (!(c > 0) || !(w.a(x, z) + c > 0))
    throw Error(ErrorKind::BadC, "c must be positive with a_xz + c > 0");
  const double a = -w.a(x, y), b = -w.a(y, z);
  const Vec e{std::sqrt(a * c / b), std::sqrt(a * b / c), std::sqrt(b * c / a)};
  std::ostringstream step;
  step << "lambda-paw " << x + 1 << "-" << y + 1 << "-" << z + 1 << " c=" << c;
  SymMatrix m = border(w, {x, y, z}, e);
  m(x, y) = 0.0;
  m(y, z) = 0.0;
  m(x, z) = w.a(x, z) + c;
  auto trace = w.trace;
  trace.push_back(step.str());
  Witness out = make(std::move(m), std::move(trace));
  Vec g(n, 0.0);
  g[x] = e[0];
  g[y] = e[1];
  g[z] = e[2];
  attach_certificate(out, w, g);
  require_witness(out, "lambda-paw");
  return out;
}

namespace {

// Moves the witness onto host vertices perm[i] of an order-n matrix, with an
// identity diagonal on the vertices left over.
Witness relabel_witness(const Witness& w, const IndexSet& perm, Index n) {
  SymMatrix a = relabel(w.a, perm, n);
  std::vector<bool> hit(n, false);
  for (Index p : perm) hit[p] = true;
  for (Index v = 0; v < n; ++v)
    if (!hit[v]) a(v, v) = 1.0;
  auto trace = w.trace;
  std::ostringstream step;
  step << "relabel to order " << n << " [";
  for (Index k = 0; k < perm.size(); ++k) step << (k ? " " : "") << perm[k] + 1;
  step << "]";
  trace.push_back(step.str());
  Witness out = make(std::move(a), std::move(trace));
  if (w.certificate) out.certificate = normalized_certificate(out.a, relabel(w.certificate->w, perm, n));
  if (w.refutation) {
    GMinusOneRefutation r = *w.refutation;
    r.i = perm[r.i];
    r.j = perm[r.j];
    for (Index& v : r.cycle) v = perm[v];
    if (r.kind == GMinusOneRefutation::Kind::even_distance) {
      if (r.i > r.j) std::swap(r.i, r.j);
      r.entry = out.a(r.i, r.j);
    }
    if (check_refutation(out.a, r).ok) out.refutation = r;
  }
  return out;
}

struct Lineage {
  Witness w;
  Index paws = 0;
};

const std::vector<Lineage>& lineages() {
  static std::vector<Lineage> all;
  static std::once_flag once;
  std::call_once(once, [] {
    std::vector<Lineage> bases;
    for (BaseWitness b : {BaseWitness::f5, BaseWitness::cd6, BaseWitness::k4_case1})
      bases.push_back({base_witness(b), 0});
    all = bases;
    for (const auto& base : bases) {
      const Index n = base.w.a.order();
      for (Index y = 0; y < n; ++y)
        for (Index x = 0; x < n; ++x)
          for (Index z = x + 1; z < n; ++z) {
            if (x == y || z == y || !(base.w.a(x, y) < 0) || !(base.w.a(y, z) < 0)) continue;
            const double c = std::max(1.0, 1.0 - base.w.a(x, z));
            all.push_back({lambda_paw(base.w, x, y, z, c), 1});
          }
    }
    std::stable_sort(all.begin(), all.end(),
                     [](const Lineage& p, const Lineage& q) { return p.paws < q.paws; });
  });
  return all;
}

}  // namespace

Witness extend_witness_to_supergraph(const Witness& w, const Graph& target, double eps0) {
  const Index n = target.order();
  if (w.a.order() > n) throw Error(ErrorKind::NotSubgraph, "witness has more vertices than target");
  if (!(eps0 > 0)) throw Error(ErrorKind::InvalidArgument, "eps0 must be positive");
  Witness base = w.a.order() == n ? w : relabel_witness(w, range(w.a.order()), n);
  const Graph have = base.graph.underlying();
  if (!have.subgraph_of(target)) throw Error(ErrorKind::NotSubgraph, "witness graph is not a subgraph of target");
  EdgeList missing;
  for (auto e : target.edges())
    if (!have.has_edge(e.first, e.second)) missing.push_back(e);
  if (missing.empty()) return base;
  double eps = eps0;
  for (int halvings = 0; halvings <= 20; ++halvings, eps /= 2) {
    SymMatrix a = base.a;
    for (auto [u, v] : missing) a(u, v) = eps;
    auto trace = base.trace;
    std::ostringstream step;
    step << "fill " << missing.size() << " edges with eps=" << eps;
    trace.push_back(step.str());
    Witness out = make(std::move(a), std::move(trace));
    if (base.certificate) out.certificate = normalized_certificate(out.a, base.certificate->w);
    if (!out.certificate) out.certificate = find_dnn_certificate(out.a);
    if (out.certificate && verify_witness(out).ok) return out;
  }
  throw Error(ErrorKind::CertificateNotFound, "no certificate after 20 halvings of eps");
}

Witness witness_for_graph(const Graph& g) {
  if (g.order() > kMaxWitnessOrder)
    throw Error(ErrorKind::GraphTooLarge, "witness synthesis supports up to 14 vertices");
  if (classify(g).overall != GraphClass::not_spn)
    throw Error(ErrorKind::GraphIsNotNotSpn, "graph is not classified NOT_SPN");
  const Lineage* best = nullptr;
  Embedding best_e;
  Index best_cost = 0;
  for (const auto& lin : lineages()) {
    const Graph h = lin.w.graph.underlying();
    if (h.order() > g.order()) continue;
    SubdivisionConstraints c;
    for (auto [u, v] : h.edges()) c.may_subdivide.push_back(lin.w.graph.sign(u, v) < 0);
    auto e = contains_subdivision(g, h, c);
    if (!e) continue;
    Index cost = lin.paws;
    for (const auto& p : e->paths) cost += p.size() - 2;
    if (!best || cost < best_cost) {
      best = &lin;
      best_e = *e;
      best_cost = cost;
    }
  }
  if (!best)
    throw Error(ErrorKind::CertificateNotFound, "no witness lineage embeds into the graph");

  Witness w = best->w;
  IndexSet perm = best_e.branch_map;
  const EdgeList hedges = best->w.graph.underlying().edges();
  for (Index k = 0; k < hedges.size(); ++k) {
    const auto& p = best_e.paths[k];
    Index prev = hedges[k].first;
    const Index last = hedges[k].second;
    for (Index s = 1; s + 1 < p.size(); ++s) {
      w = subdivide_negative_edge(w, prev, last);
      prev = w.a.order() - 1;
      perm.push_back(p[s]);
    }
  }
  w = relabel_witness(w, perm, g.order());
  w = extend_witness_to_supergraph(w, g);
  require_witness(w, "witness");
  if (!(w.graph.underlying() == g))
    throw Error(ErrorKind::InternalInconsistency, "witness graph differs from the target");
  return w;
}

Check verify_witness(const Witness& w) {
  const auto graphs = derive_graphs(w.a);
  if (!(graphs.signed_graph == w.graph)) return {false, "signed graph does not match the matrix"};
  if (w.a.order() > kMaxExhaustiveOrder) return {false, "order too large to verify copositivity"};
  const auto cop = test_copositive(w.a);
  if (!cop.is_member()) return {false, "matrix is not copositive"};
  if (w.certificate) {
    const Check c = check_certificate(w.a, *w.certificate);
    if (c.ok) return {};
    if (!w.refutation) return c;
  }
  if (w.refutation) return check_refutation(w.a, *w.refutation);
  return {false, "no non-SPN evidence"};
}

}  // namespace spnkit
