#include "spnkit/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "spnkit/errors.hpp"

namespace spnkit {

SymMatrix::SymMatrix(Index n, double fill) : n_(n), data_(n * (n + 1) / 2, fill) {}

SymMatrix SymMatrix::identity(Index n) {
  SymMatrix m(n);
  for (Index i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

SymMatrix SymMatrix::ones(Index n) { return SymMatrix(n, 1.0); }

SymMatrix SymMatrix::diagonal(const Vec& d) {
  SymMatrix m(d.size());
  for (Index i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

SymMatrix SymMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const Index n = rows.size();
  for (const auto& r : rows)
    if (r.size() != n) throw Error(ErrorKind::InvalidArgument, "matrix rows must be square");
  SymMatrix m(n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) {
      const double x = rows[i][j], y = rows[j][i];
      if (!std::isfinite(x) || !std::isfinite(y))
        throw Error(ErrorKind::InvalidArgument, "matrix entries must be finite");
      if (std::abs(x - y) > 1e-12)
        throw Error(ErrorKind::AsymmetricInput,
                    "entries (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") differ");
      m(i, j) = x == y ? x : 0.5 * (x + y);
    }
  }
  return m;
}

SymMatrix SymMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<std::vector<double>> v;
  for (const auto& r : rows) v.emplace_back(r);
  return from_rows(v);
}

SymMatrix SymMatrix::outer(const Vec& v) {
  SymMatrix m(v.size());
  for (Index i = 0; i < v.size(); ++i)
    for (Index j = i; j < v.size(); ++j) m(i, j) = v[i] * v[j];
  return m;
}

double SymMatrix::at(Index i, Index j) const {
  if (i >= n_ || j >= n_) throw Error(ErrorKind::InvalidArgument, "index out of range");
  return (*this)(i, j);
}

double SymMatrix::max_abs() const {
  double m = 0.0;
  for (double x : data_) m = std::max(m, std::abs(x));
  return m;
}

double SymMatrix::min_entry() const {
  double m = data_.empty() ? 0.0 : data_[0];
  for (double x : data_) m = std::min(m, x);
  return m;
}

double SymMatrix::frobenius_norm() const { return std::sqrt(inner(*this, *this)); }

Vec SymMatrix::diag() const {
  Vec d(n_);
  for (Index i = 0; i < n_; ++i) d[i] = (*this)(i, i);
  return d;
}

std::vector<std::vector<double>> SymMatrix::rows() const {
  std::vector<std::vector<double>> r(n_, std::vector<double>(n_));
  for (Index i = 0; i < n_; ++i)
    for (Index j = 0; j < n_; ++j) r[i][j] = (*this)(i, j);
  return r;
}

SymMatrix SymMatrix::principal(const IndexSet& idx) const {
  SymMatrix m(idx.size());
  for (Index a = 0; a < idx.size(); ++a)
    for (Index b = a; b < idx.size(); ++b) m(a, b) = (*this)(idx[a], idx[b]);
  return m;
}

SymMatrix SymMatrix::without(Index k) const {
  IndexSet idx;
  for (Index i = 0; i < n_; ++i)
    if (i != k) idx.push_back(i);
  return principal(idx);
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& o) {
  if (o.n_ != n_) throw Error(ErrorKind::InvalidArgument, "order mismatch");
  for (Index k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

SymMatrix& SymMatrix::operator-=(const SymMatrix& o) {
  if (o.n_ != n_) throw Error(ErrorKind::InvalidArgument, "order mismatch");
  for (Index k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

SymMatrix& SymMatrix::operator*=(double s) {
  for (double& x : data_) x *= s;
  return *this;
}

SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
SymMatrix operator*(double s, SymMatrix a) { return a *= s; }

Vec Matrix::column(Index c) const {
  Vec v(rows_);
  for (Index r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

EigenDecomposition eig_sym(const SymMatrix& a) {
  const Index n = a.order();
  std::vector<double> m(n * n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m[i * n + j] = a(i, j);
  std::vector<double> v(n * n, 0.0);
  for (Index i = 0; i < n; ++i) v[i * n + i] = 1.0;

  const double fro = a.frobenius_norm();
  const double negligible = 1e-18 * fro;
  bool converged = n <= 1 || fro == 0.0;
  for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
    bool rotated = false;
    for (Index p = 0; p + 1 < n; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const double apq = m[p * n + q];
        if (std::abs(apq) <= negligible) {
          m[p * n + q] = m[q * n + p] = 0.0;
          continue;
        }
        rotated = true;
        const double theta = (m[q * n + q] - m[p * n + p]) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150)
          t = 0.5 / theta;
        else
          t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Index k = 0; k < n; ++k) {
          const double mkp = m[k * n + p], mkq = m[k * n + q];
          m[k * n + p] = c * mkp - s * mkq;
          m[k * n + q] = s * mkp + c * mkq;
        }
        for (Index k = 0; k < n; ++k) {
          const double mpk = m[p * n + k], mqk = m[q * n + k];
          m[p * n + k] = c * mpk - s * mqk;
          m[q * n + k] = s * mpk + c * mqk;
        }
        m[p * n + q] = m[q * n + p] = 0.0;
        for (Index k = 0; k < n; ++k) {
          const double vkp = v[k * n + p], vkq = v[k * n + q];
          v[k * n + p] = c * vkp - s * vkq;
          v[k * n + q] = s * vkp + c * vkq;
        }
      }
    }
    converged = !rotated;
  }
  if (!converged)
    throw Error(ErrorKind::InternalInconsistency, "Jacobi iteration did not converge");

  IndexSet order(n);
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index x, Index y) { return m[x * n + x] < m[y * n + y]; });
  EigenDecomposition out{Vec(n), Matrix(n, n)};
  for (Index k = 0; k < n; ++k) {
    const Index src = order[k];
    out.values[k] = m[src * n + src];
    // Sign convention: the largest-magnitude component is positive.
    Index arg = 0;
    for (Index r = 1; r < n; ++r)
      if (std::abs(v[r * n + src]) > std::abs(v[arg * n + src]) + 1e-14) arg = r;
    const double sign = v[arg * n + src] < 0 ? -1.0 : 1.0;
    for (Index r = 0; r < n; ++r) out.vectors(r, k) = sign * v[r * n + src];
  }
  return out;
}

ConeVerdict is_psd(const SymMatrix& a, double tol) {
  if (tol < 0) throw Error(ErrorKind::InvalidArgument, "tolerance must be nonnegative");
  ConeVerdict v;
  v.method = Method::eigenvalues;
  if (a.empty()) {
    v.member = Membership::member;
    return v;
  }
  const auto ed = eig_sym(a);
  v.margin = ed.values[0];
  if (ed.values[0] >= -tol * a.scale()) {
    v.member = Membership::member;
  } else {
    v.member = Membership::non_member;
    v.certificate = ed.vectors.column(0);
  }
  return v;
}

SymMatrix pseudo_inverse(const SymMatrix& a, double rank_tol) {
  if (rank_tol < 0) throw Error(ErrorKind::InvalidArgument, "rank tolerance must be nonnegative");
  const Index n = a.order();
  SymMatrix out(n);
  if (n == 0) return out;
  const auto ed = eig_sym(a);
  const double thr = rank_tol * std::max(1.0, a.max_abs());
  for (Index k = 0; k < n; ++k) {
    const double lam = ed.values[k];
    if (std::abs(lam) <= thr) continue;
    for (Index i = 0; i < n; ++i)
      for (Index j = i; j < n; ++j)
        out(i, j) += ed.vectors(i, k) * ed.vectors(j, k) / lam;
  }
  return out;
}

SymMatrix schur_complement(const SymMatrix& a, const IndexSet& alpha, double rank_tol) {
  const Index n = a.order();
  if (alpha.empty() || alpha.size() >= n)
    throw Error(ErrorKind::InvalidArgument, "index set must be a nonempty proper subset");
  for (Index i : alpha)
    if (i >= n) throw Error(ErrorKind::InvalidArgument, "index out of range");
  const IndexSet beta = complement(n, alpha);
  const SymMatrix mp = pseudo_inverse(a.principal(alpha), rank_tol);
  SymMatrix out = a.principal(beta);
  const Index k = alpha.size();
  // Y = M^+ E, with E = A[alpha, beta].
  Matrix y(k, beta.size());
  for (Index r = 0; r < k; ++r)
    for (Index c = 0; c < beta.size(); ++c) {
      double s = 0.0;
      for (Index l = 0; l < k; ++l) s += mp(r, l) * a(alpha[l], beta[c]);
      y(r, c) = s;
    }
  for (Index i = 0; i < beta.size(); ++i)
    for (Index j = i; j < beta.size(); ++j) {
      double s = 0.0;
      for (Index l = 0; l < k; ++l) s += a(alpha[l], beta[i]) * y(l, j);
      out(i, j) -= s;
    }
  return out;
}

bool is_Z_matrix(const SymMatrix& a) {
  for (Index i = 0; i < a.order(); ++i)
    for (Index j = i + 1; j < a.order(); ++j)
      if (a(i, j) > 0) return false;
  return true;
}

bool is_M_matrix(const SymMatrix& a, double tol) {
  return is_Z_matrix(a) && is_psd(a, tol).is_member();
}

SymMatrix project_psd(const SymMatrix& a) {
  const Index n = a.order();
  SymMatrix out(n);
  if (n == 0) return out;
  const auto ed = eig_sym(a);
  for (Index k = 0; k < n; ++k) {
    const double lam = ed.values[k];
    if (lam <= 0) continue;
    for (Index i = 0; i < n; ++i)
      for (Index j = i; j < n; ++j) out(i, j) += lam * ed.vectors(i, k) * ed.vectors(j, k);
  }
  return out;
}

Vec mat_vec(const SymMatrix& a, const Vec& x) {
  const Index n = a.order();
  Vec y(n, 0.0);
  for (Index i = 0; i < n; ++i) {
    double s = 0.0;
    for (Index j = 0; j < n; ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

double quad_form(const SymMatrix& a, const Vec& x) { return dot(x, mat_vec(a, x)); }

double inner(const SymMatrix& a, const SymMatrix& b) {
  double s = 0.0;
  for (Index i = 0; i < a.order(); ++i) {
    s += a(i, i) * b(i, i);
    for (Index j = i + 1; j < a.order(); ++j) s += 2.0 * a(i, j) * b(i, j);
  }
  return s;
}

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (Index i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Vec& v) { return std::sqrt(dot(v, v)); }

Vec normalized(Vec v) {
  const double nv = norm(v);
  if (nv > 0)
    for (double& x : v) x /= nv;
  return v;
}

SymMatrix congruence(const Matrix& t, const SymMatrix& w) {
  const Index r = t.rows(), c = t.cols();
  Matrix tw(r, c);
  for (Index i = 0; i < r; ++i)
    for (Index l = 0; l < c; ++l) {
      double s = 0.0;
      for (Index k = 0; k < c; ++k) s += t(i, k) * w(k, l);
      tw(i, l) = s;
    }
  SymMatrix out(r);
  for (Index i = 0; i < r; ++i)
    for (Index j = i; j < r; ++j) {
      double s = 0.0;
      for (Index l = 0; l < c; ++l) s += tw(i, l) * t(j, l);
      out(i, j) = s;
    }
  return out;
}

SymMatrix diag_scale(const SymMatrix& a, const Vec& d) {
  SymMatrix out(a.order());
  for (Index i = 0; i < a.order(); ++i)
    for (Index j = i; j < a.order(); ++j) out(i, j) = d[i] * a(i, j) * d[j];
  return out;
}

SymMatrix negative_part(const SymMatrix& a) {
  SymMatrix out = a;
  for (Index i = 0; i < a.order(); ++i)
    for (Index j = i + 1; j < a.order(); ++j)
      if (a(i, j) > 0) out(i, j) = 0.0;
  return out;
}

SymMatrix relabel(const SymMatrix& a, const IndexSet& p, Index n) {
  SymMatrix out(n);
  for (Index i = 0; i < a.order(); ++i)
    for (Index j = i; j < a.order(); ++j) out(p[i], p[j]) = a(i, j);
  return out;
}

SymMatrix embed(const SymMatrix& sub, const IndexSet& idx, Index n) { return relabel(sub, idx, n); }

Vec embed(const Vec& sub, const IndexSet& idx, Index n) {
  Vec out(n, 0.0);
  for (Index k = 0; k < idx.size(); ++k) out[idx[k]] = sub[k];
  return out;
}

IndexSet complement(Index n, const IndexSet& alpha) {
  std::vector<char> in(n, 0);
  for (Index i : alpha) in[i] = 1;
  IndexSet out;
  for (Index i = 0; i < n; ++i)
    if (!in[i]) out.push_back(i);
  return out;
}

IndexSet range(Index n) {
  IndexSet out(n);
  std::iota(out.begin(), out.end(), Index{0});
  return out;
}

}  // namespace spnkit
