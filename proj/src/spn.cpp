#include "spnkit/spn.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

#include "internal.hpp"
#include "spnkit/copositive.hpp"
#include "spnkit/errors.hpp"

namespace spnkit {

namespace {

struct Flags {
  bool reductions = true;
  bool numeric = true;
  bool tn = true;
  bool dual = true;
};

struct Outcome {
  Membership member = Membership::inconclusive;
  Method method = Method::undecided;
  std::optional<SpnDecomposition> dec;
  std::optional<DnnCertificate> cert;
  std::optional<GMinusOneRefutation> ref;
};

bool offdiag_all(const SymMatrix& a, Index i, bool nonneg) {
  for (Index j = 0; j < a.order(); ++j) {
    if (j == i) continue;
    if (nonneg ? a(i, j) < 0 : a(i, j) > 0) return false;
  }
  return true;
}

bool is_forest(const SymMatrix& a) {
  detail::UnionFind uf(a.order());
  for (Index i = 0; i < a.order(); ++i)
    for (Index j = i + 1; j < a.order(); ++j)
      if (a(i, j) != 0.0 && !uf.unite(i, j)) return false;
  return true;
}

struct GOneStep {
  bool spn = false;
  SymMatrix p;
  GMinusOneRefutation ref;
};

// Unit-diagonal characterization when the -1 graph is connected and spanning.
std::optional<GOneStep> g_minus_one_step(const SymMatrix& a) {
  const Index n = a.order();
  if (n < 2) return std::nullopt;
  Vec d(n);
  for (Index i = 0; i < n; ++i) {
    if (!(a(i, i) > 0)) return std::nullopt;
    d[i] = 1.0 / std::sqrt(a(i, i));
  }
  const SymMatrix s = diag_scale(a, d);
  constexpr double kEdge = 1e-9;
  std::vector<IndexSet> adj(n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      if (s(i, j) < -1.0 - kEdge) return std::nullopt;
      if (std::abs(s(i, j) + 1.0) <= kEdge) {
        adj[i].push_back(j);
        adj[j].push_back(i);
      }
    }
  // BFS distances from every vertex.
  const Index inf = static_cast<Index>(-1);
  std::vector<IndexSet> dist(n, IndexSet(n, inf));
  std::vector<IndexSet> parent(n, IndexSet(n, inf));
  for (Index src = 0; src < n; ++src) {
    std::deque<Index> q{src};
    dist[src][src] = 0;
    while (!q.empty()) {
      const Index u = q.front();
      q.pop_front();
      for (Index w : adj[u])
        if (dist[src][w] == inf) {
          dist[src][w] = dist[src][u] + 1;
          parent[src][w] = u;
          q.push_back(w);
        }
    }
    for (Index v = 0; v < n; ++v)
      if (dist[src][v] == inf) return std::nullopt;  // not connected and spanning
  }
  GOneStep out;
  // Bipartite: adjacent vertices must lie at different distance parity from 0.
  for (Index u = 0; u < n; ++u)
    for (Index w : adj[u]) {
      if (w < u || (dist[0][u] + dist[0][w]) % 2 == 1) continue;
      // Odd cycle: tree paths from u and w back to their meeting point.
      IndexSet pu{u}, pw{w};
      Index x = u, y = w;
      while (x != y) {
        if (dist[0][x] >= dist[0][y]) {
          x = parent[0][x];
          pu.push_back(x);
        } else {
          y = parent[0][y];
          pw.push_back(y);
        }
      }
      pw.pop_back();
      std::reverse(pw.begin(), pw.end());
      pu.insert(pu.end(), pw.begin(), pw.end());
      out.ref.kind = GMinusOneRefutation::Kind::odd_cycle;
      out.ref.cycle = pu;
      return out;
    }
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      if (dist[i][j] % 2 == 0 && s(i, j) < 1.0 - kEdge) {
        out.ref.kind = GMinusOneRefutation::Kind::even_distance;
        out.ref.i = i;
        out.ref.j = j;
        out.ref.distance = dist[i][j];
        out.ref.entry = a(i, j);
        return out;
      }
  out.spn = true;
  Vec sign(n);
  for (Index i = 0; i < n; ++i) sign[i] = (dist[0][i] % 2 == 0 ? 1.0 : -1.0) / d[i];
  out.p = SymMatrix::outer(sign);
  return out;
}

// Lift a certificate of a child matrix through the congruence T W T^T.
std::optional<DnnCertificate> lift_certificate(const SymMatrix& a, const Matrix& t,
                                               const DnnCertificate& child, double tol) {
  SymMatrix w = congruence(t, child.w);
  for (Index i = 0; i < w.order(); ++i)
    for (Index j = i; j < w.order(); ++j) w(i, j) = std::max(w(i, j), 0.0);
  const double f = w.frobenius_norm();
  if (f <= 0) return std::nullopt;
  w *= 1.0 / f;
  DnnCertificate c{w, inner(a, w)};
  if (!check_certificate(a, c, tol).ok) return std::nullopt;
  return c;
}

Matrix embedding_map(Index n, const IndexSet& idx) {
  Matrix t(n, idx.size());
  for (Index k = 0; k < idx.size(); ++k) t(idx[k], k) = 1.0;
  return t;
}

class Pipeline {
 public:
  Pipeline(const SpnOptions& opts, Flags flags) : opts_(opts), flags_(flags) {}

  Outcome run(const SymMatrix& a, int depth);
  std::vector<std::string> trace;

 private:
  Outcome member(const SymMatrix& a, SymMatrix p, Method m, int depth) {
    Outcome o;
    auto dec = canonical_decomposition(a, std::move(p));
    if (!check_decomposition(a, dec).ok) return o;
    o.member = Membership::member;
    o.method = m;
    o.dec = std::move(dec);
    note(depth, m);
    return o;
  }
  void note(int depth, Method m) {
    std::ostringstream s;
    s << depth << ':' << to_string(m);
    trace.push_back(s.str());
  }
  // Child non-membership lifted to the parent, or nullopt if it cannot be.
  std::optional<Outcome> lift(const SymMatrix& a, const Matrix& t, const Outcome& child,
                              Method m, int depth) {
    std::optional<DnnCertificate> c;
    if (child.cert) c = lift_certificate(a, t, *child.cert, opts_.dual_tol);
    if (!c && flags_.dual) c = find_dnn_certificate(a, opts_.dual_restarts, opts_.dual_tol);
    if (!c) return std::nullopt;
    Outcome o;
    o.member = Membership::non_member;
    o.method = m;
    o.cert = std::move(c);
    note(depth, m);
    return o;
  }

  SpnOptions opts_;
  Flags flags_;
};

Outcome Pipeline::run(const SymMatrix& a, int depth) {
  const Index n = a.order();
  const double tol = opts_.tol;
  if (n <= 1) return member(a, a, Method::psd, depth);

  // (1) nonnegative off-diagonal part
  bool nonneg = true;
  for (Index i = 0; i < n && nonneg; ++i) nonneg = offdiag_all(a, i, true);
  if (nonneg) {
    if (auto o = member(a, SymMatrix::diagonal(a.diag()), Method::nonnegative, depth); o.dec)
      return o;
  }

  // (2) PSD
  if (is_psd(a, tol).is_member()) {
    if (auto o = member(a, a, Method::psd, depth); o.dec) return o;
  }

  // (3) components of the negative graph
  const auto comps = detail::components(n, [&](Index i, Index j) { return a(i, j) < 0; });
  if (comps.size() > 1) {
    SymMatrix p(n);
    bool all = true;
    for (const auto& c : comps) {
      const auto child = run(a.principal(c), depth + 1);
      if (child.member == Membership::non_member) {
        if (auto o = lift(a, embedding_map(n, c), child, Method::g_minus_components, depth)) return *o;
        all = false;
        break;
      }
      if (!child.dec) {
        all = false;
        break;
      }
      p += embed(child.dec->p, c, n);
    }
    if (all) {
      if (auto o = member(a, p, Method::g_minus_components, depth); o.dec) return o;
    }
  }

  // (5) acyclic graph
  if (is_forest(a)) {
    const SymMatrix p = negative_part(a);
    if (is_psd(p, tol).is_member()) {
      if (auto o = member(a, p, Method::acyclic_N, depth); o.dec) return o;
    }
  }

  // (6) -1 graph connected and spanning after unit-diagonal scaling
  if (auto g = g_minus_one_step(a)) {
    if (g->spn) {
      if (auto o = member(a, g->p, Method::g_minus_one_characterization, depth); o.dec) return o;
    } else {
      Outcome o;
      o.member = Membership::non_member;
      o.method = Method::g_minus_one_characterization;
      o.ref = g->ref;
      if (flags_.dual) o.cert = find_dnn_certificate(a, opts_.dual_restarts, opts_.dual_tol);
      note(depth, o.method);
      return o;
    }
  }

  // (7a) a row with nonnegative off-diagonal entries
  for (Index i = 0; i < n; ++i) {
    if (!offdiag_all(a, i, true)) continue;
    const IndexSet rest = complement(n, {i});
    const auto child = run(a.principal(rest), depth + 1);
    if (child.member == Membership::non_member) {
      if (auto o = lift(a, embedding_map(n, rest), child, Method::schur_nonnegative_row, depth))
        return *o;
    } else if (child.dec) {
      SymMatrix p = embed(child.dec->p, rest, n);
      p(i, i) = a(i, i);
      if (auto o = member(a, p, Method::schur_nonnegative_row, depth); o.dec) return o;
    }
    break;
  }

  // (7b) corner of nonpositive rows forming a nonsingular M-matrix
  {
    IndexSet alpha;
    for (Index i = 0; i < n; ++i)
      if (a(i, i) > 0 && offdiag_all(a, i, false)) alpha.push_back(i);
    if (!alpha.empty() && alpha.size() < n) {
      const SymMatrix m = a.principal(alpha);
      if (eig_sym(m).values[0] > 1e-10 * a.scale()) {
        const IndexSet beta = complement(n, alpha);
        const SymMatrix minv = pseudo_inverse(m);
        // T maps the complement coordinates: rows alpha = -M^{-1} E, rows beta = I.
        Matrix t(n, beta.size());
        for (Index c = 0; c < beta.size(); ++c) {
          t(beta[c], c) = 1.0;
          for (Index r = 0; r < alpha.size(); ++r) {
            double s = 0.0;
            for (Index l = 0; l < alpha.size(); ++l) s += minv(r, l) * a(alpha[l], beta[c]);
            t(alpha[r], c) = -s;
          }
        }
        const SymMatrix child_m = schur_complement(a, alpha);
        const auto child = run(child_m, depth + 1);
        if (child.member == Membership::non_member) {
          if (auto o = lift(a, t, child, Method::schur_mmatrix_corner, depth)) return *o;
        } else if (child.dec) {
          // P = [[M, E], [E^T, E^T M^{-1} E + P']]
          SymMatrix p = a;
          const SymMatrix cp = child.dec->p;
          for (Index x = 0; x < beta.size(); ++x)
            for (Index y = x; y < beta.size(); ++y)
              p(beta[x], beta[y]) = a(beta[x], beta[y]) - child_m(x, y) + cp(x, y);
          if (auto o = member(a, p, Method::schur_mmatrix_corner, depth); o.dec) return o;
        }
      }
    }
  }

  // (8) PSD principal submatrix of order n-1
  for (Index k = 0; k < n; ++k) {
    if (auto d = decompose_with_psd_complement(a, k, tol)) {
      if (auto o = member(a, d->p, Method::n_minus_one_psd, depth); o.dec) return o;
    }
  }

  // zeros with large support
  if (n <= 10) {
    if (auto d = spn_by_zero_support(a, tol)) {
      if (auto o = member(a, d->p, Method::zero_support, depth); o.dec) return o;
    }
  }

  // T_k graphs
  if (flags_.tn && n >= 5) {
    try {
      const auto d = decompose_tn(a, tol);
      if (auto o = member(a, d.p, Method::tn_construction, depth); o.dec) return o;
    } catch (const Error&) {
    }
  }

  // (9) projection
  if (flags_.numeric) {
    const auto r = dykstra_feasibility(a, opts_.dykstra_max_iter, opts_.dykstra_tol);
    if (r.feasible == Membership::member) {
      if (auto o = member(a, *r.p, Method::dykstra, depth); o.dec) return o;
    }
  }

  // irreducible reduction of every positive off-diagonal entry, then the
  // structural steps on the reduced matrix
  if (flags_.reductions && n <= 8) {
    SymMatrix b = a;
    bool any = false;
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j)
        if (b(i, j) > 0) {
          const auto r = reduce_to_irreducible(b, i, j);
          any = any || r.delta > 0;
          b = r.reduced;
        }
    if (any) {
      Pipeline sub(opts_, Flags{false, false, flags_.tn, false});
      const auto child = sub.run(b, depth + 1);
      if (child.dec) {
        if (auto o = member(a, child.dec->p, Method::irreducible_reduction, depth); o.dec) {
          trace.insert(trace.end() - 1, sub.trace.begin(), sub.trace.end());
          return o;
        }
      }
    }
  }

  // (10) dual certificate; impossible for n <= 4
  if (flags_.dual && n > 4) {
    if (auto c = find_dnn_certificate(a, opts_.dual_restarts, opts_.dual_tol)) {
      Outcome o;
      o.member = Membership::non_member;
      o.method = Method::dual_certificate;
      o.cert = std::move(c);
      note(depth, o.method);
      return o;
    }
  }
  note(depth, Method::undecided);
  return {};
}

}  // namespace

namespace detail {

std::optional<SpnDecomposition> structural_decomposition(const SymMatrix& a, double tol) {
  SpnOptions opts;
  opts.tol = tol;
  Pipeline p(opts, Flags{true, true, false, false});
  auto o = p.run(a, 0);
  return o.dec;
}

}  // namespace detail

SpnResult test_spn(const SymMatrix& a, const SpnOptions& opts) {
  if (a.order() > kMaxSpnOrder)
    throw Error(ErrorKind::OrderTooLarge, "SPN test supports order up to 12");
  SpnResult out;
  const auto cop = test_copositive(a, opts.tol);
  if (!cop.is_member()) {
    if (opts.assert_copositive)
      throw Error(ErrorKind::NotCopositive, "matrix asserted copositive is not");
    out.verdict = cop;
    out.verdict.method = Method::not_copositive;
    out.trace.push_back("0:not_copositive");
    return out;
  }
  Pipeline p(opts, Flags{});
  auto o = p.run(a, 0);
  out.trace = std::move(p.trace);
  out.verdict.member = o.member;
  out.verdict.method = o.method;
  out.decomposition = std::move(o.dec);
  out.certificate = std::move(o.cert);
  out.refutation = std::move(o.ref);
  if (out.certificate) out.verdict.margin = out.certificate->objective;
  if (out.decomposition) out.verdict.margin = out.decomposition->n.min_entry();
  return out;
}

DykstraResult dykstra_feasibility(const SymMatrix& a, int max_iter, double tol) {
  if (max_iter < 1) throw Error(ErrorKind::InvalidArgument, "max_iter must be positive");
  const Index n = a.order();
  DykstraResult out;
  SymMatrix x = a, p(n), q(n);
  for (int it = 1; it <= max_iter; ++it) {
    const SymMatrix y = project_psd(x + p);
    p = x + p - y;
    SymMatrix z = y + q;
    for (Index i = 0; i < n; ++i) {
      z(i, i) = a(i, i);
      for (Index j = i + 1; j < n; ++j) z(i, j) = std::min(z(i, j), a(i, j));
    }
    q = y + q - z;
    // y is PSD by construction, so its box violation measures infeasibility
    double residual = 0.0;
    for (Index i = 0; i < n; ++i) {
      residual = std::max(residual, std::abs(y(i, i) - a(i, i)));
      for (Index j = i + 1; j < n; ++j) residual = std::max(residual, y(i, j) - a(i, j));
    }
    const double change = (z - x).max_abs();
    x = std::move(z);
    out.iterations = it;
    out.residual = residual;
    if (residual <= tol && change <= tol) {
      out.feasible = Membership::member;
      out.p = y;
      return out;
    }
  }
  return out;
}

Check check_decomposition(const SymMatrix& a, const SpnDecomposition& d, double tol) {
  const Index n = a.order();
  if (d.p.order() != n || d.n.order() != n) return {false, "order mismatch"};
  const double recon = (d.p + d.n - a).max_abs();
  if (recon > tol * std::max(1.0, a.max_abs())) return {false, "P + N differs from A"};
  if (!is_psd(d.p, tol).is_member()) return {false, "P is not PSD"};
  if (n > 0 && d.n.min_entry() < -tol) return {false, "N has a negative entry"};
  for (Index i = 0; i < n; ++i)
    if (std::abs(d.n(i, i)) > tol) return {false, "diagonal of N is not zero"};
  return {};
}

Check check_certificate(const SymMatrix& a, const DnnCertificate& c, double tol) {
  if (c.w.order() != a.order()) return {false, "order mismatch"};
  if (!is_psd(c.w, 1e-9).is_member()) return {false, "W is not PSD"};
  if (c.w.order() > 0 && c.w.min_entry() < -1e-10) return {false, "W has a negative entry"};
  if (std::abs(c.w.frobenius_norm() - 1.0) > 1e-8) return {false, "W is not normalized"};
  const double obj = inner(a, c.w);
  if (std::abs(obj - c.objective) > 1e-9 * std::max(1.0, std::abs(obj)))
    return {false, "stored objective does not match"};
  if (!(obj < -tol)) return {false, "objective is not below the tolerance"};
  return {};
}

Check check_refutation(const SymMatrix& a, const GMinusOneRefutation& r, double tol) {
  const auto g = g_minus_one_step(a);
  if (!g) return {false, "-1 graph is not connected and spanning on a unit-scalable matrix"};
  if (g->spn) return {false, "matrix satisfies the bipartite criterion"};
  const Index n = a.order();
  Vec d(n);
  for (Index i = 0; i < n; ++i) d[i] = 1.0 / std::sqrt(a(i, i));
  const SymMatrix s = diag_scale(a, d);
  if (r.kind == GMinusOneRefutation::Kind::odd_cycle) {
    const Index len = r.cycle.size();
    if (len < 3 || len % 2 == 0) return {false, "cycle length is not odd"};
    for (Index k = 0; k < len; ++k) {
      const Index u = r.cycle[k], w = r.cycle[(k + 1) % len];
      if (u >= n || w >= n || std::abs(s(u, w) + 1.0) > 1e-9) return {false, "cycle edge is not -1"};
    }
    return {};
  }
  if (r.i >= n || r.j >= n || r.i == r.j) return {false, "pair out of range"};
  if (r.distance % 2 != 0) return {false, "distance is odd"};
  // Recompute the distance.
  std::vector<Index> dist(n, static_cast<Index>(-1));
  std::deque<Index> q{r.i};
  dist[r.i] = 0;
  while (!q.empty()) {
    const Index u = q.front();
    q.pop_front();
    for (Index w = 0; w < n; ++w)
      if (w != u && std::abs(s(u, w) + 1.0) <= 1e-9 && dist[w] == static_cast<Index>(-1)) {
        dist[w] = dist[u] + 1;
        q.push_back(w);
      }
  }
  if (dist[r.j] != r.distance) return {false, "distance does not match"};
  if (!(s(r.i, r.j) < 1.0 - tol)) return {false, "entry at even distance is not below 1"};
  return {};
}

}  // namespace spnkit
