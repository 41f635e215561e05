#include <algorithm>
#include <cmath>

#include "spnkit/matcore.hpp"
#include "spnkit/spn.hpp"

namespace spnkit {

namespace {

// Nonnegative, PSD and unit norm version of an approximate DNN matrix.
std::optional<SymMatrix> clean_up(const SymMatrix& x) {
  SymMatrix w = project_psd(x);
  const Index n = w.order();
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j) w(i, j) = std::max(w(i, j), 0.0);
  const double lo = eig_sym(w).values.front();
  const double f0 = w.frobenius_norm();
  if (f0 <= 1e-300) return std::nullopt;
  if (lo < 0) {
    const double shift = -lo + 1e-12 * f0;
    for (Index i = 0; i < n; ++i) w(i, i) += shift;
  }
  w *= 1.0 / w.frobenius_norm();
  return w;
}

// Projection of -A onto PSD ∩ NN by Dykstra's method. Whenever A is not SPN
// the projection W satisfies <A, W> = -|W|^2 < 0.
std::optional<DnnCertificate> project_negative(const SymMatrix& a, int max_iter, double tol) {
  const Index n = a.order();
  SymMatrix x = -1.0 * a, p(n), q(n);
  for (int it = 1; it <= max_iter; ++it) {
    const SymMatrix y = project_psd(x + p);
    p = x + p - y;
    SymMatrix z = y + q;
    for (Index i = 0; i < n; ++i)
      for (Index j = i; j < n; ++j) z(i, j) = std::max(z(i, j), 0.0);
    q = y + q - z;
    const double change = (z - x).max_abs();
    x = std::move(z);
    if (it % 50 == 0 || change < 1e-14) {
      if (auto w = clean_up(x)) {
        DnnCertificate c{*w, inner(a, *w)};
        if (check_certificate(a, c, tol).ok) return c;
      }
      if (change < 1e-14) break;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<DnnCertificate> find_dnn_certificate(const SymMatrix& a, int restarts, double tol) {
  const Index n = a.order();
  if (n == 0) return std::nullopt;
  const int budget = 200 * std::max(restarts, 1);
  if (auto c = project_negative(a, budget, tol)) return c;

  // Unit-diagonal scaling changes the geometry of the projection; a
  // certificate W' for DAD gives D W' D for A.
  Vec d(n);
  for (Index i = 0; i < n; ++i) {
    if (!(a(i, i) > 0)) return std::nullopt;
    d[i] = 1.0 / std::sqrt(a(i, i));
  }
  const SymMatrix s = diag_scale(a, d);
  if (auto c = project_negative(s, budget, tol * s.scale() / a.scale())) {
    SymMatrix w = diag_scale(c->w, d);
    w *= 1.0 / w.frobenius_norm();
    DnnCertificate out{w, inner(a, w)};
    if (check_certificate(a, out, tol).ok) return out;
  }
  return std::nullopt;
}

}  // namespace spnkit
