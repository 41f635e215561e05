#pragma once

#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "spnkit/config.hpp"
#include "spnkit/verdict.hpp"

namespace spnkit {

using Vec = std::vector<double>;
using Index = std::size_t;
using IndexSet = std::vector<Index>;

// Real symmetric matrix, packed upper triangle.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(Index n, double fill = 0.0);

  static SymMatrix identity(Index n);
  static SymMatrix ones(Index n);
  static SymMatrix diagonal(const Vec& d);
  // Rows must be square and symmetric up to 1e-12; the result is the average.
  static SymMatrix from_rows(const std::vector<std::vector<double>>& rows);
  static SymMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static SymMatrix outer(const Vec& v);  // v v^T

  Index order() const { return n_; }
  bool empty() const { return n_ == 0; }

  double operator()(Index i, Index j) const { return data_[slot(i, j)]; }
  double& operator()(Index i, Index j) { return data_[slot(i, j)]; }
  double at(Index i, Index j) const;

  double max_abs() const;
  // 1 + max |a_ij|, the scale used for relative thresholds.
  double scale() const { return 1.0 + max_abs(); }
  double min_entry() const;
  double frobenius_norm() const;
  Vec diag() const;
  std::vector<std::vector<double>> rows() const;

  SymMatrix principal(const IndexSet& idx) const;
  // Delete one row and its column.
  SymMatrix without(Index k) const;

  SymMatrix& operator+=(const SymMatrix& o);
  SymMatrix& operator-=(const SymMatrix& o);
  SymMatrix& operator*=(double s);

  bool operator==(const SymMatrix& o) const { return n_ == o.n_ && data_ == o.data_; }

 private:
  Index slot(Index i, Index j) const {
    if (i > j) std::swap(i, j);
    return i * n_ - i * (i + 1) / 2 + j;
  }
  Index n_ = 0;
  std::vector<double> data_;
};

SymMatrix operator+(SymMatrix a, const SymMatrix& b);
SymMatrix operator-(SymMatrix a, const SymMatrix& b);
SymMatrix operator*(double s, SymMatrix a);

// Rectangular dense matrix, row major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(Index rows, Index cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  double operator()(Index r, Index c) const { return data_[r * cols_ + c]; }
  double& operator()(Index r, Index c) { return data_[r * cols_ + c]; }
  Vec column(Index c) const;

 private:
  Index rows_ = 0, cols_ = 0;
  std::vector<double> data_;
};

struct EigenDecomposition {
  Vec values;       // ascending
  Matrix vectors;   // column k belongs to values[k]
};

EigenDecomposition eig_sym(const SymMatrix& a);

ConeVerdict is_psd(const SymMatrix& a, double tol = kDefaults.psd);
SymMatrix pseudo_inverse(const SymMatrix& a, double rank_tol = kDefaults.rank);
SymMatrix schur_complement(const SymMatrix& a, const IndexSet& alpha,
                           double rank_tol = kDefaults.rank);
bool is_Z_matrix(const SymMatrix& a);
bool is_M_matrix(const SymMatrix& a, double tol = kDefaults.psd);

// Euclidean projection onto the PSD cone (eigenvalue clipping).
SymMatrix project_psd(const SymMatrix& a);

Vec mat_vec(const SymMatrix& a, const Vec& x);
double quad_form(const SymMatrix& a, const Vec& x);
double inner(const SymMatrix& a, const SymMatrix& b);  // trace(A B)
double dot(const Vec& a, const Vec& b);
double norm(const Vec& v);
Vec normalized(Vec v);

// T W T^T for a rows(T) x cols(T) matrix T and W of order cols(T).
SymMatrix congruence(const Matrix& t, const SymMatrix& w);
// D A D for diagonal D.
SymMatrix diag_scale(const SymMatrix& a, const Vec& d);
// Keeps the diagonal and negative off-diagonal entries.
SymMatrix negative_part(const SymMatrix& a);
// Result(p[i], p[j]) = a(i, j).
SymMatrix relabel(const SymMatrix& a, const IndexSet& p, Index n);
// Places sub on rows idx of an n x n zero matrix.
SymMatrix embed(const SymMatrix& sub, const IndexSet& idx, Index n);
Vec embed(const Vec& sub, const IndexSet& idx, Index n);

IndexSet complement(Index n, const IndexSet& alpha);
IndexSet range(Index n);

}  // namespace spnkit
