#include <doctest.h>

#include <cmath>

#include "spnkit/errors.hpp"
#include "spnkit/matcore.hpp"
#include "spnkit/spn.hpp"
#include "support/oracles.hpp"

using namespace spnkit;

namespace {

double max_diff(const SymMatrix& a, const SymMatrix& b) { return (a - b).max_abs(); }

SymMatrix product(const SymMatrix& a, const SymMatrix& b) {
  // Only used on products known to be symmetric.
  const Index n = a.order();
  SymMatrix c(n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j) {
      double s = 0;
      for (Index k = 0; k < n; ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

std::vector<std::vector<double>> full_product(const SymMatrix& a, const SymMatrix& b) {
  const Index n = a.order();
  std::vector<std::vector<double>> c(n, std::vector<double>(n, 0.0));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      for (Index k = 0; k < n; ++k) c[i][j] += a(i, k) * b(k, j);
  return c;
}

}  // namespace

TEST_CASE("eigenvalues of identity and diagonal matrices") {
  const auto e = eig_sym(SymMatrix::identity(3));
  for (double v : e.values) CHECK(v == doctest::Approx(1.0));
  const auto d = eig_sym(SymMatrix::diagonal({2.0, -1.0}));
  CHECK(d.values[0] == doctest::Approx(-1.0));
  CHECK(d.values[1] == doctest::Approx(2.0));
}

TEST_CASE("eigenvalues agree with the characteristic polynomial oracle") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const SymMatrix a = oracle::random_symmetric(rng, 5, -1.0, 1.0);
    const auto e = eig_sym(a);
    const Vec roots = oracle::charpoly_eigenvalues(a);
    for (Index k = 0; k < 5; ++k) CHECK(std::abs(e.values[k] - roots[k]) <= 1e-8);
  }
}

TEST_CASE("eigen decomposition reconstructs and is orthonormal") {
  std::mt19937_64 rng(3);
  for (Index n : {1, 2, 5, 9, 14}) {
    const SymMatrix a = oracle::random_symmetric(rng, n, -3.0, 3.0);
    const auto e = eig_sym(a);
    double worst = 0.0, ortho = 0.0;
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) {
        double s = 0.0, q = 0.0;
        for (Index k = 0; k < n; ++k) {
          s += e.vectors(i, k) * e.values[k] * e.vectors(j, k);
          q += e.vectors(k, i) * e.vectors(k, j);
        }
        worst = std::max(worst, std::abs(s - a(i, j)));
        ortho = std::max(ortho, std::abs(q - (i == j ? 1.0 : 0.0)));
      }
    CHECK(worst <= 1e-10 * (1 + a.max_abs()));
    CHECK(ortho <= 1e-10);
    CHECK(std::is_sorted(e.values.begin(), e.values.end()));
  }
}

TEST_CASE("is_psd examples") {
  CHECK(is_psd(SymMatrix::from_rows({{1, -1}, {-1, 1}})).is_member());
  const auto v = is_psd(SymMatrix::from_rows({{1, -2}, {-2, 1}}));
  REQUIRE(v.is_non_member());
  REQUIRE(v.certificate);
  const Vec& w = *v.certificate;
  CHECK(std::abs(w[0]) == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(w[0] == doctest::Approx(w[1]));
  CHECK(quad_form(SymMatrix::from_rows({{1, -2}, {-2, 1}}), w) == doctest::Approx(-1.0));
  CHECK(v.margin == doctest::Approx(-1.0));
  // The rank-one block added when a negative edge is subdivided.
  const SymMatrix e = SymMatrix::from_rows({{1, 1, -1}, {1, 1, -1}, {-1, -1, 1}});
  CHECK(is_psd(e).is_member());
  CHECK(is_psd(SymMatrix::from_rows({{-1e-12}})).is_member());
  CHECK(is_psd(SymMatrix::from_rows({{-1e-3}})).is_non_member());
}

TEST_CASE("schur complement examples") {
  CHECK(schur_complement(SymMatrix::identity(2), {0})(0, 0) == doctest::Approx(1.0));
  CHECK(schur_complement(SymMatrix::from_rows({{2, 1}, {1, 2}}), {0})(0, 0) == doctest::Approx(1.5));
  CHECK_THROWS_AS(schur_complement(SymMatrix::identity(2), {}), Error);
  CHECK_THROWS_AS(schur_complement(SymMatrix::identity(2), {0, 1}), Error);
}

TEST_CASE("schur complement agrees with the explicit block formula") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    SymMatrix a = oracle::random_symmetric(rng, 5, -1.0, 1.0);
    for (Index i = 0; i < 5; ++i) a(i, i) += 4.0;  // keeps A[alpha] nonsingular
    const IndexSet alpha{0, 2};
    const IndexSet beta{1, 3, 4};
    const SymMatrix s = schur_complement(a, alpha);
    // Inverse of the 2x2 block by the adjugate formula.
    const double p = a(0, 0), q = a(0, 2), r = a(2, 2), det = p * r - q * q;
    for (Index x = 0; x < 3; ++x)
      for (Index y = 0; y < 3; ++y) {
        const double e0x = a(0, beta[x]), e2x = a(2, beta[x]);
        const double e0y = a(0, beta[y]), e2y = a(2, beta[y]);
        const double corr = (e0x * (r * e0y - q * e2y) + e2x * (-q * e0y + p * e2y)) / det;
        CHECK(std::abs(s(x, y) - (a(beta[x], beta[y]) - corr)) <= 1e-10);
      }
  }
}

TEST_CASE("schur complement of the pre-T_n PSD part vanishes") {
  // A1 = [[I, -u, b], [-u^T, 1, -r], [b^T, -r, 1]] with |u| = 1. The PSD part
  // built on the order n-1 block has last column (d, -r) with u^T d = r, and
  // P1' (corner r^2) satisfies P1'/I = 0.
  const double r = 0.5;
  const Vec u{0.6, 0.8};
  const SymMatrix a1 = SymMatrix::from_rows(
      {{1, 0, -u[0], 1}, {0, 1, -u[1], 1}, {-u[0], -u[1], 1, -r}, {1, 1, -r, 1}});
  const auto dec = decompose_with_psd_complement(a1, 3);
  REQUIRE(dec);
  const Vec d{dec->p(0, 3), dec->p(1, 3)};
  CHECK(d[0] <= 1.0 + 1e-9);
  CHECK(d[1] <= 1.0 + 1e-9);
  CHECK(u[0] * d[0] + u[1] * d[1] == doctest::Approx(r).epsilon(1e-8));
  SymMatrix p1 = dec->p;
  p1(3, 3) = r * r;
  CHECK(is_psd(p1, 1e-8).is_member());
  CHECK(schur_complement(p1, {0, 1}).max_abs() <= 1e-8);
}

TEST_CASE("pseudo-inverse examples and Penrose identities") {
  CHECK(max_diff(pseudo_inverse(SymMatrix::identity(3)), SymMatrix::identity(3)) <= 1e-12);
  const SymMatrix r1 = SymMatrix::from_rows({{1, -1}, {-1, 1}});
  CHECK(max_diff(pseudo_inverse(r1), 0.25 * r1) <= 1e-12);

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const SymMatrix a = oracle::random_psd(rng, 4, 2);
    const SymMatrix p = pseudo_inverse(a);
    const double scale = 1 + a.max_abs() + p.max_abs();
    // A P A = A and P A P = P; A P and P A are symmetric.
    CHECK(max_diff(product(product(a, p), a), a) <= 1e-8 * scale);
    CHECK(max_diff(product(product(p, a), p), p) <= 1e-8 * scale);
    const auto ap = full_product(a, p);
    for (Index i = 0; i < 4; ++i)
      for (Index j = 0; j < 4; ++j) CHECK(std::abs(ap[i][j] - ap[j][i]) <= 1e-8 * scale);
  }
}

TEST_CASE("Z and M matrix examples") {
  const SymMatrix a = SymMatrix::from_rows({{2, -1}, {-1, 2}});
  CHECK(is_Z_matrix(a));
  CHECK(is_M_matrix(a));
  const SymMatrix b = SymMatrix::from_rows({{1, -2}, {-2, 1}});
  CHECK(is_Z_matrix(b));
  CHECK_FALSE(is_M_matrix(b));
  const SymMatrix c = SymMatrix::ones(2);
  CHECK_FALSE(is_Z_matrix(c));
  CHECK_FALSE(is_M_matrix(c));
}

TEST_CASE("Cauchy interlacing") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const SymMatrix a = oracle::random_symmetric(rng, 6, -2.0, 2.0);
    const Vec lam = eig_sym(a).values;
    const Vec mu = eig_sym(a.without(trial % 6)).values;
    for (Index k = 0; k < 5; ++k) {
      CHECK(lam[k] <= mu[k] + 1e-8);
      CHECK(mu[k] <= lam[k + 1] + 1e-8);
    }
  }
}

TEST_CASE("inverse of a nonsingular M-matrix is nonnegative and antitone") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = 5;
    SymMatrix b(n);
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j) b(i, j) = u(rng);
    const double rho = eig_sym(b).values.back();
    SymMatrix a = -1.0 * b;
    for (Index i = 0; i < n; ++i) a(i, i) = rho + 0.1 + u(rng);
    REQUIRE(is_M_matrix(a));
    const SymMatrix ainv = pseudo_inverse(a);
    CHECK(ainv.min_entry() >= -1e-9);
    // B2 >= A entrywise, still a Z-matrix.
    SymMatrix a2 = a;
    for (Index i = 0; i < n; ++i) {
      a2(i, i) += u(rng);
      for (Index j = i + 1; j < n; ++j) a2(i, j) = std::min(0.0, a(i, j) + 0.5 * u(rng));
    }
    CHECK((ainv - pseudo_inverse(a2)).min_entry() >= -1e-9);
  }
}

TEST_CASE("symmetric construction rejects asymmetric or non-finite input") {
  CHECK_THROWS_AS(SymMatrix::from_rows({{1, 0}, {1, 1}}), Error);
  CHECK_THROWS_AS(SymMatrix::from_rows({{1, 0}, {0}}), Error);
  CHECK_THROWS_AS(SymMatrix::from_rows({{std::nan(""), 0}, {0, 1}}), Error);
  const SymMatrix a = SymMatrix::from_rows({{1, 0.5 + 1e-13}, {0.5, 1}});
  CHECK(a(0, 1) == doctest::Approx(0.5));
}
