#include <algorithm>
#include <cmath>

#include "internal.hpp"
#include "spnkit/copositive.hpp"
#include "spnkit/errors.hpp"
#include "spnkit/spn.hpp"

namespace spnkit {

namespace detail {

std::optional<Vec> solve_psd_lcp(const SymMatrix& m, const Vec& a, double tol) {
  const Index k = m.order();
  const double thr = tol * std::max(m.scale(), 1.0 + norm(a));
  std::optional<Vec> found;
  auto try_support = [&](const IndexSet& sigma) {
    Vec x(k, 0.0);
    if (!sigma.empty()) {
      const SymMatrix ms = m.principal(sigma);
      const SymMatrix mp = pseudo_inverse(ms);
      Vec rhs(sigma.size());
      for (Index t = 0; t < sigma.size(); ++t) rhs[t] = -a[sigma[t]];
      const Vec xs = mat_vec(mp, rhs);
      const Vec back = mat_vec(ms, xs);
      for (Index t = 0; t < sigma.size(); ++t) {
        if (std::abs(back[t] - rhs[t]) > thr) return false;
        if (xs[t] < -thr) return false;
        x[sigma[t]] = std::max(xs[t], 0.0);
      }
    }
    const Vec w = mat_vec(m, x);
    for (Index i = 0; i < k; ++i)
      if (w[i] + a[i] < -thr) return false;
    found = x;
    return true;
  };
  if (try_support({})) return found;
  for_each_support(k, try_support);
  return found;
}

}  // namespace detail

SpnDecomposition canonical_decomposition(const SymMatrix& a, SymMatrix p) {
  for (Index i = 0; i < a.order(); ++i) p(i, i) = a(i, i);
  SymMatrix n = a - p;
  for (Index i = 0; i < a.order(); ++i) n(i, i) = 0.0;
  return {std::move(p), std::move(n)};
}

std::optional<SpnDecomposition> decompose_with_psd_complement(const SymMatrix& a, Index k,
                                                              double tol) {
  const Index n = a.order();
  if (k >= n) throw Error(ErrorKind::InvalidArgument, "index out of range");
  const IndexSet rest = complement(n, {k});
  const SymMatrix a0 = a.principal(rest);
  if (!is_psd(a0, tol).is_member()) return std::nullopt;
  Vec col(rest.size());
  for (Index t = 0; t < rest.size(); ++t) col[t] = a(rest[t], k);
  // x minimizes x^T A0 x + 2 a^T x over x >= 0; the optimal value is minus the
  // smallest corner entry that keeps the matrix copositive.
  const auto x = detail::solve_psd_lcp(a0, col, tol);
  if (!x) return std::nullopt;
  const Vec a0x = mat_vec(a0, *x);
  const double corner = dot(*x, a0x);
  if (corner > a(k, k) + 1e-8 * a.scale()) return std::nullopt;
  SymMatrix p(n);
  for (Index s = 0; s < rest.size(); ++s) {
    for (Index t = s; t < rest.size(); ++t) p(rest[s], rest[t]) = a0(s, t);
    p(rest[s], k) = -a0x[s];
  }
  p(k, k) = corner;
  return canonical_decomposition(a, std::move(p));
}

std::optional<SpnDecomposition> spn_by_zero_support(const SymMatrix& a, double tol) {
  const Index n = a.order();
  const double thr = std::max(tol, 1e-12) * a.scale();
  for (const auto& z : zero_set(a, tol)) {
    const Vec au = mat_vec(a, z.u);
    IndexSet zeros;
    for (Index i = 0; i < n; ++i)
      if (std::abs(au[i]) <= thr) zeros.push_back(i);
    if (z.support.size() + 2 < n || zeros.size() + 1 < n) continue;
    if (z.support.size() == n) return canonical_decomposition(a, a);
    // The support plus one more index with (Au)_i = 0 spans a PSD principal
    // submatrix of order n-1.
    IndexSet t = z.support;
    if (t.size() + 2 == n) {
      for (Index i : zeros)
        if (!std::binary_search(z.support.begin(), z.support.end(), i)) {
          t.push_back(i);
          break;
        }
      std::sort(t.begin(), t.end());
    }
    if (t.size() + 1 != n) continue;
    const Index k = complement(n, t)[0];
    if (auto d = decompose_with_psd_complement(a, k, std::max(tol, 1e-8))) return d;
  }
  return std::nullopt;
}

namespace {

bool nonzero(double x, double tol) { return std::abs(x) > tol; }

// Base vertices of T_k when G(A) = T_k, else nullopt.
std::optional<std::pair<Index, Index>> tn_base(const SymMatrix& a, double tol) {
  const Index n = a.order();
  if (n < 3) return std::nullopt;
  std::vector<Index> deg(n, 0);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (i != j && nonzero(a(i, j), tol)) ++deg[i];
  IndexSet hubs;
  for (Index i = 0; i < n; ++i)
    if (deg[i] == n - 1) hubs.push_back(i);
  if (hubs.size() < 2) return std::nullopt;
  for (Index p = 0; p < hubs.size(); ++p)
    for (Index q = p + 1; q < hubs.size(); ++q) {
      const Index b1 = hubs[p], b2 = hubs[q];
      bool ok = true;
      for (Index i = 0; i < n && ok; ++i) {
        if (i == b1 || i == b2) continue;
        if (deg[i] != 2) ok = false;
      }
      if (ok) return std::make_pair(b1, b2);
    }
  return std::nullopt;
}

// Part of the construction with both stars present and the apex set U
// attached negatively to b1 with ||u|| = 1 (after extension).
SymMatrix double_star_psd(const SymMatrix& s, const IndexSet& uset, Index b1, Index b2,
                          const IndexSet& vset, double tol) {
  // Order (U, b1 | b2, V).
  IndexSet left = uset;
  left.push_back(b1);
  IndexSet right{b2};
  right.insert(right.end(), vset.begin(), vset.end());
  const SymMatrix m = s.principal(left);
  const SymMatrix nn = s.principal(right);
  Vec am(left.size()), an(right.size());
  for (Index t = 0; t < left.size(); ++t) am[t] = s(left[t], b2);
  for (Index t = 0; t < right.size(); ++t) an[t] = s(right[t], b1);
  const auto x = detail::solve_psd_lcp(m, am, tol);
  const auto y = detail::solve_psd_lcp(nn, an, tol);
  if (!x || !y) throw Error(ErrorKind::InternalInconsistency, "star subproblem has no solution");
  const Vec mx = mat_vec(m, *x);
  const Vec ny = mat_vec(nn, *y);
  const double r = -s(b1, b2);
  SymMatrix p(s.order());
  for (Index i = 0; i < left.size(); ++i)
    for (Index j = i; j < left.size(); ++j) p(left[i], left[j]) = m(i, j);
  for (Index i = 0; i < right.size(); ++i)
    for (Index j = i; j < right.size(); ++j) p(right[i], right[j]) = nn(i, j);
  for (Index i = 0; i < left.size(); ++i)
    for (Index j = 0; j < right.size(); ++j) p(left[i], right[j]) = -mx[i] * ny[j] / r;
  return p;
}

SpnDecomposition tn_scaled(const SymMatrix& s, double tol);

SpnDecomposition tn_general(const SymMatrix& s, double tol) {
  auto d = detail::structural_decomposition(s, tol);
  if (!d) throw Error(ErrorKind::InternalInconsistency, "no decomposition found for a T_n reduction");
  return *d;
}

// Children of a reduction keep the T shape but not necessarily a unit diagonal.
SpnDecomposition tn_child(const SymMatrix& s, double tol) {
  const Index n = s.order();
  bool positive = true;
  for (Index i = 0; i < n; ++i) positive = positive && s(i, i) > 1e-12;
  if (n < 5 || !positive || !tn_base(s, 1e-14)) return tn_general(s, tol);
  Vec d(n), dinv(n);
  for (Index i = 0; i < n; ++i) {
    d[i] = 1.0 / std::sqrt(s(i, i));
    dinv[i] = std::sqrt(s(i, i));
  }
  const auto ds = tn_scaled(diag_scale(s, d), tol);
  return canonical_decomposition(s, diag_scale(ds.p, dinv));
}

// s has unit diagonal and G(s) = T_n.
SpnDecomposition tn_scaled(const SymMatrix& s, double tol) {
  const Index n = s.order();
  if (n <= 4) return tn_general(s, tol);
  const auto base = tn_base(s, 1e-14);
  if (!base) throw Error(ErrorKind::GraphMismatch, "graph is not T_n");
  const auto [b1, b2] = *base;
  // Apexes with two edges of the same sign reduce to T_{n-1}.
  for (Index i = 0; i < n; ++i) {
    if (i == b1 || i == b2) continue;
    const double x1 = s(i, b1), x2 = s(i, b2);
    const IndexSet rest = complement(n, {i});
    if (x1 > 0 && x2 > 0) {
      const auto child = tn_child(s.principal(rest), tol);
      SymMatrix p = embed(child.p, rest, n);
      p(i, i) = s(i, i);
      return canonical_decomposition(s, std::move(p));
    }
    if (x1 < 0 && x2 < 0) {
      const SymMatrix c = schur_complement(s, {i});
      const auto child = tn_child(c, tol);
      // P = [[1, e^T], [e, e e^T + P']] on (i, rest)
      SymMatrix p = embed(child.p, rest, n);
      p(i, i) = s(i, i);
      for (Index a = 0; a < rest.size(); ++a) {
        p(i, rest[a]) = s(i, rest[a]);
        for (Index b = a; b < rest.size(); ++b)
          p(rest[a], rest[b]) += s(i, rest[a]) * s(i, rest[b]) / s(i, i);
      }
      return canonical_decomposition(s, std::move(p));
    }
  }
  if (s(b1, b2) > 0) return tn_general(s, tol);  // G_- splits into two stars

  IndexSet uset, vset;  // negative to b1, negative to b2
  for (Index i = 0; i < n; ++i) {
    if (i == b1 || i == b2) continue;
    (s(i, b1) < 0 ? uset : vset).push_back(i);
  }
  if (uset.empty() || vset.empty()) return tn_general(s, tol);

  double nu = 0.0;
  for (Index i : uset) nu += s(i, b1) * s(i, b1);
  nu = std::sqrt(nu);
  if (nu >= 1.0 - 1e-12) return canonical_decomposition(s, double_star_psd(s, uset, b1, b2, vset, tol));

  // Extend by one vertex so the star at b1 has unit norm.
  SymMatrix e(n + 1);
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j) e(i, j) = s(i, j);
  e(n, n) = 1.0;
  e(n, b1) = -std::sqrt(std::max(0.0, 1.0 - nu * nu));
  e(n, b2) = 1.0;
  IndexSet uext = uset;
  uext.push_back(n);
  const SymMatrix pe = double_star_psd(e, uext, b1, b2, vset, tol);
  return canonical_decomposition(s, pe.principal(range(n)));
}

}  // namespace

SpnDecomposition decompose_tn(const SymMatrix& a, double tol) {
  const Index n = a.order();
  if (!tn_base(a, 0.0)) throw Error(ErrorKind::GraphMismatch, "graph is not T_n");
  if (!test_copositive(a, tol).is_member())
    throw Error(ErrorKind::NotCopositive, "T_n decomposition requires a copositive matrix");
  Vec d(n), dinv(n);
  for (Index i = 0; i < n; ++i) {
    if (a(i, i) <= 0)
      throw Error(ErrorKind::GraphMismatch, "T_n decomposition needs a positive diagonal");
    d[i] = 1.0 / std::sqrt(a(i, i));
    dinv[i] = std::sqrt(a(i, i));
  }
  const SymMatrix s = diag_scale(a, d);
  const auto ds = tn_scaled(s, tol);
  auto out = canonical_decomposition(a, diag_scale(ds.p, dinv));
  const auto chk = check_decomposition(a, out);
  if (!chk.ok) throw Error(ErrorKind::InternalInconsistency, "T_n decomposition: " + chk.reason);
  return out;
}

std::pair<SymMatrix, SymMatrix> cut_vertex_split(const SymMatrix& a, Index v, const IndexSet& part1,
                                                 const IndexSet& part2) {
  const Index n = a.order();
  std::vector<int> side(n, 0);
  for (Index i : part1) {
    if (i >= n) throw Error(ErrorKind::InvalidArgument, "index out of range");
    side[i] |= 1;
  }
  for (Index i : part2) {
    if (i >= n) throw Error(ErrorKind::InvalidArgument, "index out of range");
    side[i] |= 2;
  }
  for (Index i = 0; i < n; ++i) {
    const int want = i == v ? 3 : side[i];
    if (side[i] == 0 || side[i] != want)
      throw Error(ErrorKind::NotCutVertex, "parts must cover all vertices and meet only at v");
  }
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (side[i] == 1 && side[j] == 2 && a(i, j) != 0.0)
        throw Error(ErrorKind::NotCutVertex, "an edge joins the two sides");
  if (!test_copositive(a).is_member())
    throw Error(ErrorKind::NotCopositive, "cut-vertex split requires a copositive matrix");

  SymMatrix a1 = a.principal(part1), a2 = a.principal(part2);
  const Index v1 = static_cast<Index>(std::find(part1.begin(), part1.end(), v) - part1.begin());
  const Index v2 = static_cast<Index>(std::find(part2.begin(), part2.end(), v) - part2.begin());
  const double avv = a(v, v);
  auto cop2 = [&](double q) {
    SymMatrix t = a2;
    t(v2, v2) = q;
    return test_copositive(t, 1e-13).is_member();
  };
  double q;
  if (cop2(0.0)) {
    q = 0.0;
  } else {
    double lo = 0.0, hi = avv;
    while (hi - lo > 1e-13 * std::max(1.0, avv)) {
      const double mid = 0.5 * (lo + hi);
      if (cop2(mid)) hi = mid;
      else lo = mid;
    }
    q = hi;
  }
  a1(v1, v1) = avv - q;
  a2(v2, v2) = q;
  return {a1, a2};
}

ConeVerdict test_rank1_perturbation(const Vec& v, double tol) {
  Vec vp(v.size()), vm(v.size());
  for (Index i = 0; i < v.size(); ++i) {
    vp[i] = std::max(v[i], 0.0);
    vm[i] = std::max(-v[i], 0.0);
  }
  const double np = norm(vp), nm = norm(vm);
  ConeVerdict out;
  out.method = Method::rank1_perturbation;
  out.margin = 1.0 - std::max(np, nm);
  if (np <= 1.0 + tol && nm <= 1.0 + tol) {
    out.member = Membership::member;
  } else {
    out.member = Membership::non_member;
    out.certificate = normalized(np >= nm ? vp : vm);
  }
  return out;
}

ConeVerdict test_bordered_star(const Vec& v, double tol) {
  Vec vm(v.size());
  for (Index i = 0; i < v.size(); ++i) vm[i] = std::max(-v[i], 0.0);
  const double nm = norm(vm);
  ConeVerdict out;
  out.method = Method::bordered_star;
  out.margin = 1.0 - nm;
  if (nm <= 1.0 + tol) {
    out.member = Membership::member;
  } else {
    out.member = Membership::non_member;
    Vec x = vm;
    x.push_back(1.0);
    out.certificate = normalized(x);
  }
  return out;
}

}  // namespace spnkit
