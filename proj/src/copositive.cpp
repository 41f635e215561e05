#include "spnkit/copositive.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "internal.hpp"
#include "spnkit/errors.hpp"

namespace spnkit {

namespace {

void check_order(const SymMatrix& a, Index cap) {
  if (a.order() > cap)
    throw Error(ErrorKind::OrderTooLarge,
                "order " + std::to_string(a.order()) + " exceeds " + std::to_string(cap));
}

ConeVerdict refuted(const SymMatrix& a, Vec x, Method m) {
  x = normalized(std::move(x));
  ConeVerdict v;
  v.member = Membership::non_member;
  v.method = m;
  v.margin = quad_form(a, x);
  v.certificate = std::move(x);
  return v;
}

ConeVerdict accepted(Method m, double margin = 0.0) {
  ConeVerdict v;
  v.member = Membership::member;
  v.method = m;
  v.margin = margin;
  return v;
}

Vec abs_vec(Vec v) {
  for (double& x : v) x = std::abs(x);
  return v;
}

// A strictly positive vector in span(basis columns), or nullopt.
std::optional<Vec> positive_in_span(const std::vector<Vec>& basis, unsigned seed) {
  const Index d = basis.size();
  if (d == 0) return std::nullopt;
  const Index k = basis[0].size();
  auto is_positive = [](Vec v) -> std::optional<Vec> {
    Index arg = 0;
    for (Index i = 1; i < v.size(); ++i)
      if (std::abs(v[i]) > std::abs(v[arg])) arg = i;
    const double top = v[arg];
    if (top == 0.0) return std::nullopt;
    for (double& x : v) x /= top;
    for (double x : v)
      if (!(x > 1e-9)) return std::nullopt;
    return v;
  };
  for (const auto& b : basis)
    if (auto p = is_positive(b)) return p;
  if (d == 1) return std::nullopt;
  std::mt19937 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int s = 0; s < 1000; ++s) {
    Vec v(k, 0.0);
    for (Index c = 0; c < d; ++c) {
      const double w = g(rng);
      for (Index i = 0; i < k; ++i) v[i] += w * basis[c][i];
    }
    if (auto p = is_positive(v)) return p;
  }
  return std::nullopt;
}

// Diananda bound on one pair; certificate from the 2x2 principal block.
std::optional<ConeVerdict> two_by_two_violation(const SymMatrix& a, double thr) {
  const Index n = a.order();
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      const double aii = a(i, i), ajj = a(j, j), aij = a(i, j);
      if (aij >= 0 || aij >= -std::sqrt(std::max(0.0, aii * ajj))) continue;
      const SymMatrix sub = a.principal({i, j});
      const auto ed = eig_sym(sub);
      if (ed.values[0] >= -thr) continue;
      const Vec w = abs_vec(ed.vectors.column(0));
      Vec x = embed(w, {i, j}, n);
      auto v = refuted(a, x, Method::diagonal_bound);
      if (v.margin < -thr) return v;
    }
  return std::nullopt;
}

}  // namespace

SymMatrix unit_pair(Index n, Index i, Index j) {
  SymMatrix e(n);
  e(i, j) = 1.0;
  return e;
}

std::optional<ConeVerdict> copositive_by_hoffman_pereira(const SymMatrix& a) {
  const Index n = a.order();
  for (Index i = 0; i < n; ++i) {
    if (a(i, i) != 1.0) return std::nullopt;
    for (Index j = i + 1; j < n; ++j) {
      const double x = a(i, j);
      if (x != 0.0 && x != 1.0 && x != -1.0) return std::nullopt;
    }
  }
  auto m1 = [&](Index i, Index j) { return i != j && a(i, j) == -1.0; };
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      if (!m1(i, j)) continue;
      for (Index k = j + 1; k < n; ++k)
        if (m1(i, k) && m1(j, k)) {
          Vec x(n, 0.0);
          x[i] = x[j] = x[k] = 1.0;
          return refuted(a, x, Method::hoffman_pereira);
        }
    }
  // Distance exactly two in G_{-1} means a common -1 neighbour and a_ij != -1.
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      if (m1(i, j) || a(i, j) == 1.0) continue;
      for (Index k = 0; k < n; ++k)
        if (m1(i, k) && m1(k, j)) {
          Vec x(n, 0.0);
          x[i] = x[j] = 1.0;
          x[k] = std::sqrt(2.0);
          return refuted(a, x, Method::hoffman_pereira);
        }
    }
  return accepted(Method::hoffman_pereira);
}

std::optional<ConeVerdict> copositive_by_acyclic_graph(const SymMatrix& a, double tol) {
  const Index n = a.order();
  detail::UnionFind uf(n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      if (a(i, j) != 0.0 && !uf.unite(i, j)) return std::nullopt;
  const double thr = tol * a.scale();
  // Inside a component of G_- no positive entry can occur (it would close a
  // cycle), so each block of N(A) is a principal submatrix of A.
  const auto comps = detail::components(n, [&](Index i, Index j) { return a(i, j) < 0; });
  double margin = 0.0;
  bool first = true;
  for (const auto& c : comps) {
    const SymMatrix sub = a.principal(c);
    const auto ed = eig_sym(sub);
    if (first || ed.values[0] < margin) margin = ed.values[0];
    first = false;
    if (ed.values[0] < -thr) {
      Vec x = embed(abs_vec(ed.vectors.column(0)), c, n);
      auto v = refuted(a, x, Method::acyclic_N);
      if (v.margin < -thr) return v;
      return std::nullopt;
    }
  }
  return accepted(Method::acyclic_N, margin);
}

std::optional<ConeVerdict> copositive_by_rank_one(const SymMatrix& a, double tol) {
  const Index n = a.order();
  if (n < 2) return std::nullopt;
  const double sc = a.scale();
  const auto ed = eig_sym(a);
  const double c = ed.values[n - 1];
  if (c <= tol * sc) return std::nullopt;
  for (Index k = 1; k + 1 < n; ++k)
    if (std::abs(ed.values[k] - c) > 1e-9 * sc) return std::nullopt;
  const double gap = c - ed.values[0];
  if (gap <= 1e-9 * sc) return std::nullopt;
  Vec v = ed.vectors.column(0);
  for (double& x : v) x *= std::sqrt(gap / c);
  // Reconstruction check: A = c (I - v v^T).
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j) {
      const double r = c * ((i == j ? 1.0 : 0.0) - v[i] * v[j]);
      if (std::abs(r - a(i, j)) > 1e-9 * sc) return std::nullopt;
    }
  Vec vp(n), vm(n);
  for (Index i = 0; i < n; ++i) {
    vp[i] = std::max(v[i], 0.0);
    vm[i] = std::max(-v[i], 0.0);
  }
  const double np = norm(vp), nm = norm(vm);
  if (np <= 1.0 + tol && nm <= 1.0 + tol)
    return accepted(Method::rank1_perturbation, 1.0 - std::max(np, nm));
  auto v2 = refuted(a, np > nm ? vp : vm, Method::rank1_perturbation);
  if (v2.margin < -tol * sc) return v2;
  return std::nullopt;
}

ConeVerdict test_copositive(const SymMatrix& a, double tol) {
  check_order(a, kMaxExhaustiveOrder);
  if (tol < 0) throw Error(ErrorKind::InvalidArgument, "tolerance must be nonnegative");
  const Index n = a.order();
  const double thr = tol * a.scale();

  // (1) diagonal and 2x2 necessary conditions
  for (Index i = 0; i < n; ++i)
    if (a(i, i) < -thr) {
      Vec x(n, 0.0);
      x[i] = 1.0;
      return refuted(a, x, Method::diagonal_bound);
    }
  if (auto v = two_by_two_violation(a, thr)) return *v;

  // (2) entrywise nonnegative
  if (a.min_entry() >= 0) return accepted(Method::nonnegative);

  // (3) Z-matrix: copositive iff PSD
  if (is_Z_matrix(a)) {
    const auto ed = eig_sym(a);
    if (ed.values[0] >= -thr) return accepted(Method::z_matrix, ed.values[0]);
    auto v = refuted(a, abs_vec(ed.vectors.column(0)), Method::z_matrix);
    if (v.margin < -thr) return v;
  }

  // (4) unit diagonal with entries in {0, 1, -1}
  if (auto v = copositive_by_hoffman_pereira(a)) return *v;

  // (5) acyclic graph
  if (auto v = copositive_by_acyclic_graph(a, tol)) return *v;

  // (6) c (I - v v^T)
  if (auto v = copositive_by_rank_one(a, tol)) return *v;

  // (7) exhaustive
  return test_copositive_kaplan(a, tol);
}

ConeVerdict test_copositive_kaplan(const SymMatrix& a, double tol, const KaplanOptions& opts) {
  check_order(a, kMaxExhaustiveOrder);
  if (tol < 0) throw Error(ErrorKind::InvalidArgument, "tolerance must be nonnegative");
  const Index n = a.order();
  const double sc = a.scale();
  const double thr = tol * sc;

  bool prune = opts.unit_diagonal_pruning;
  Vec d(n, 1.0);
  for (Index i = 0; i < n; ++i) {
    if (a(i, i) <= 0) prune = false;
    else d[i] = 1.0 / std::sqrt(a(i, i));
  }

  std::optional<ConeVerdict> hit;
  double margin = 0.0;
  detail::for_each_support(n, [&](const IndexSet& alpha) {
    if (prune) {
      for (Index p = 0; p < alpha.size(); ++p)
        for (Index q = p + 1; q < alpha.size(); ++q)
          if (d[alpha[p]] * a(alpha[p], alpha[q]) * d[alpha[q]] >= 1.0) return false;
    }
    const auto ed = eig_sym(a.principal(alpha));
    const Index k = alpha.size();
    for (Index e = 0; e < k && ed.values[e] < -thr;) {
      // cluster of (numerically) repeated eigenvalues
      Index f = e + 1;
      while (f < k && std::abs(ed.values[f] - ed.values[e]) <= 1e-8 * sc) ++f;
      std::vector<Vec> basis;
      for (Index c = e; c < f; ++c) basis.push_back(ed.vectors.column(c));
      unsigned seed = 0x9e3779b9u;
      for (Index i : alpha) seed = seed * 31u + static_cast<unsigned>(i);
      if (auto w = positive_in_span(basis, seed)) {
        auto v = refuted(a, embed(*w, alpha, n), Method::kaplan);
        if (v.margin < -thr) {
          hit = v;
          return true;
        }
      }
      e = f;
    }
    if (k == n) margin = ed.values[0];
    return false;
  });
  if (hit) return *hit;
  return accepted(Method::kaplan, margin);
}

SimplexMinimum simplex_min_oracle(const SymMatrix& a) {
  check_order(a, kMaxOracleOrder);
  const Index n = a.order();
  SimplexMinimum best;
  best.value = std::numeric_limits<double>::infinity();
  const double sc = a.scale();

  auto consider = [&](const Vec& z, const IndexSet& alpha) {
    Vec x(n, 0.0);
    double s = 0.0;
    for (Index t = 0; t < alpha.size(); ++t) {
      if (z[t] <= -1e-12) return;
      x[alpha[t]] = std::max(z[t], 0.0);
      s += x[alpha[t]];
    }
    if (s <= 0) return;
    for (double& xi : x) xi /= s;
    const double val = quad_form(a, x);
    if (val < best.value) {
      best.value = val;
      best.argmin = x;
    }
  };

  detail::for_each_support(n, [&](const IndexSet& alpha) {
    const Index k = alpha.size();
    // Bordered stationarity system [[A_a, 1], [1^T, 0]] (z, -mu) = (0, 1).
    SymMatrix kkt(k + 1);
    for (Index p = 0; p < k; ++p) {
      for (Index q = p; q < k; ++q) kkt(p, q) = a(alpha[p], alpha[q]);
      kkt(p, k) = 1.0;
    }
    const auto ed = eig_sym(kkt);
    const double thr = 1e-10 * std::max(1.0, kkt.max_abs());
    Vec sol(k + 1, 0.0);
    std::vector<Vec> kernel;
    for (Index e = 0; e <= k; ++e) {
      const double lam = ed.values[e];
      const Vec q = ed.vectors.column(e);
      if (std::abs(lam) <= thr) {
        kernel.push_back(q);
        continue;
      }
      const double coef = q[k] / lam;  // q^T b / lambda with b = e_{k+1}
      for (Index t = 0; t <= k; ++t) sol[t] += coef * q[t];
    }
    // consistency of the solve
    const Vec r = mat_vec(kkt, sol);
    double res = 0.0;
    for (Index t = 0; t <= k; ++t) res = std::max(res, std::abs(r[t] - (t == k ? 1.0 : 0.0)));
    if (res > 1e-8 * sc) return false;
    Vec z(sol.begin(), sol.begin() + static_cast<long>(k));
    consider(z, alpha);
    // Flat faces: endpoints along kernel directions.
    for (const Vec& dir : kernel) {
      double lo = -std::numeric_limits<double>::infinity();
      double hi = std::numeric_limits<double>::infinity();
      for (Index t = 0; t < k; ++t) {
        if (std::abs(dir[t]) < 1e-14) {
          if (z[t] < -1e-12) lo = hi = std::numeric_limits<double>::quiet_NaN();
          continue;
        }
        const double bound = -z[t] / dir[t];
        if (dir[t] > 0) lo = std::max(lo, bound);
        else hi = std::min(hi, bound);
      }
      if (!(lo <= hi)) continue;
      for (double tt : {lo, hi}) {
        if (!std::isfinite(tt)) continue;
        Vec zz = z;
        for (Index t = 0; t < k; ++t) zz[t] += tt * dir[t];
        consider(zz, alpha);
      }
    }
    return false;
  });
  return best;
}

std::vector<ZeroVector> zero_set(const SymMatrix& a, double tol) {
  check_order(a, kMaxExhaustiveOrder);
  if (!test_copositive(a, tol).is_member())
    throw Error(ErrorKind::NotCopositive, "zero set requires a copositive matrix");
  const Index n = a.order();
  const double thr = std::max(tol, 1e-12) * a.scale();
  std::vector<ZeroVector> out;
  detail::for_each_support(n, [&](const IndexSet& alpha) {
    const Index k = alpha.size();
    const auto ed = eig_sym(a.principal(alpha));
    if (ed.values[0] < -thr) return false;
    std::vector<Vec> basis;
    for (Index e = 0; e < k && ed.values[e] <= thr; ++e) basis.push_back(ed.vectors.column(e));
    const Index d = basis.size();
    if (d == 0) return false;
    // Extreme rays of kernel ∩ orthant: d-1 coordinates forced to zero.
    Vec sum(k, 0.0);
    bool any = false;
    detail::for_each_combination(k, d - 1, [&](const IndexSet& zeros) {
      // coefficients y with sum_c y_c basis[c][zeros[r]] = 0 for all r
      SymMatrix g(d);
      for (Index p = 0; p < d; ++p)
        for (Index q = p; q < d; ++q) {
          double s = 0.0;
          for (Index r : zeros) s += basis[p][r] * basis[q][r];
          g(p, q) = s;
        }
      const auto eg = eig_sym(g);
      if (d > 1 && eg.values[1] <= 1e-10) return false;  // ray not unique
      if (eg.values[0] > 1e-10) return false;
      const Vec y = eg.vectors.column(0);
      Vec ray(k, 0.0);
      for (Index c = 0; c < d; ++c)
        for (Index t = 0; t < k; ++t) ray[t] += y[c] * basis[c][t];
      double mx = 0.0, mn = 0.0;
      for (double x : ray) {
        mx = std::max(mx, x);
        mn = std::min(mn, x);
      }
      if (mx > 1e-9 && mn >= -1e-9) {
      } else if (mn < -1e-9 && mx <= 1e-9) {
        for (double& x : ray) x = -x;
      } else {
        return false;
      }
      ray = normalized(ray);
      for (Index t = 0; t < k; ++t) sum[t] += std::max(ray[t], 0.0);
      any = true;
      return false;
    });
    if (!any) return false;
    for (double x : sum)
      if (!(x > 1e-9)) return false;
    ZeroVector z;
    z.u = normalized(embed(sum, alpha, n));
    z.support = alpha;
    out.push_back(std::move(z));
    return false;
  });
  return out;
}

IrreducibilityResult is_ij_irreducible(const SymMatrix& a, Index i, Index j, double tol) {
  if (i >= a.order() || j >= a.order()) throw Error(ErrorKind::InvalidArgument, "index out of range");
  const double thr = std::max(tol, 1e-12) * a.scale();
  for (auto& z : zero_set(a, tol)) {
    if (z.u[i] + z.u[j] <= tol) continue;
    const Vec au = mat_vec(a, z.u);
    if (std::abs(au[i]) <= thr && std::abs(au[j]) <= thr) return {true, std::move(z)};
  }
  return {};
}

Reduction reduce_to_irreducible(const SymMatrix& a, Index i, Index j) {
  const Index n = a.order();
  if (i >= n || j >= n) throw Error(ErrorKind::InvalidArgument, "index out of range");
  if (!test_copositive(a).is_member())
    throw Error(ErrorKind::NotCopositive, "reduction requires a copositive matrix");
  const SymMatrix e = unit_pair(n, i, j);
  const double hi0 = i == j ? a(i, i) : a(i, j) + std::sqrt(std::max(0.0, a(i, i) * a(j, j)));
  auto shifted = [&](double delta) { return a - delta * e; };
  // Tight inner tolerance so the result sits on the boundary.
  auto cop = [&](double delta) { return test_copositive(shifted(delta), 1e-13).is_member(); };
  if (hi0 <= 0) return {a, 0.0};
  if (cop(hi0)) return {shifted(hi0), hi0};
  double lo = 0.0, hi = hi0;
  if (!cop(0.0)) return {a, 0.0};
  while (hi - lo > 1e-12 * std::max(1.0, hi0)) {
    const double mid = 0.5 * (lo + hi);
    if (cop(mid)) lo = mid;
    else hi = mid;
  }
  return {shifted(lo), lo};
}

}  // namespace spnkit
