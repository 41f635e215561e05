#include <doctest.h>

#include <cmath>

#include "spnkit/copositive.hpp"
#include "spnkit/errors.hpp"
#include "spnkit/spn.hpp"
#include "spnkit/witness.hpp"
#include "support/oracles.hpp"

using namespace spnkit;

namespace {

void require_valid(const SymMatrix& a, const SpnResult& r) {
  REQUIRE(r.verdict.is_member());
  REQUIRE(r.decomposition);
  CHECK_FALSE(r.certificate);
  const auto c = check_decomposition(a, *r.decomposition);
  CHECK_MESSAGE(c.ok, c.reason);
  // Independent restatement of the decomposition invariants.
  const auto& d = *r.decomposition;
  CHECK((d.p + d.n - a).max_abs() <= 1e-8 * a.scale());
  CHECK(eig_sym(d.p).values[0] >= -1e-8 * a.scale());
  CHECK(d.n.min_entry() >= -1e-8);
  for (Index i = 0; i < a.order(); ++i) CHECK(std::abs(d.n(i, i)) <= 1e-8);
}

void require_certificate(const SymMatrix& a, const DnnCertificate& c) {
  CHECK(eig_sym(c.w).values[0] >= -1e-9);
  CHECK(c.w.min_entry() >= -1e-10);
  CHECK(c.w.frobenius_norm() == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(inner(a, c.w) == doctest::Approx(c.objective).epsilon(1e-9));
  CHECK(c.objective < -1e-6);
}

// Full-rank PSD part, so the sample is interior to the SPN cone.
SymMatrix random_spn(std::mt19937_64& rng, Index n) {
  SymMatrix n0 = oracle::random_nonnegative(rng, n, true);
  return oracle::random_psd(rng, n, n) + n0;
}

SymMatrix f5() { return base_matrix(BaseWitness::f5); }

}  // namespace

TEST_CASE("F5 witness is refuted by the -1 graph test") {
  const SymMatrix a = f5();
  const auto r = test_spn(a);
  REQUIRE(r.verdict.is_non_member());
  CHECK(r.verdict.method == Method::g_minus_one_characterization);
  REQUIRE(r.refutation);
  CHECK(r.refutation->kind == GMinusOneRefutation::Kind::even_distance);
  CHECK(r.refutation->i == 0);
  CHECK(r.refutation->j == 4);
  CHECK(r.refutation->distance == 4);
  CHECK(r.refutation->entry == doctest::Approx(0.0));
  CHECK(check_refutation(a, *r.refutation).ok);
  CHECK_FALSE(r.decomposition);
}

TEST_CASE("CD6 witness is refuted by a DNN certificate") {
  const SymMatrix a = base_matrix(BaseWitness::cd6);
  const auto r = test_spn(a);
  REQUIRE(r.verdict.is_non_member());
  REQUIRE(r.certificate);
  CHECK_FALSE(r.decomposition);
  require_certificate(a, *r.certificate);
  CHECK(check_certificate(a, *r.certificate).ok);
}

TEST_CASE("the F5 witness also has a DNN certificate") {
  const auto c = find_dnn_certificate(f5());
  REQUIRE(c);
  CHECK(c->objective <= -1e-3);
  require_certificate(f5(), *c);
}

TEST_CASE("no certificate for PSD or nonnegative matrices") {
  std::mt19937_64 rng(1);
  CHECK_FALSE(find_dnn_certificate(oracle::random_psd(rng, 5, 3)));
  CHECK_FALSE(find_dnn_certificate(oracle::random_nonnegative(rng, 5, false)));
}

TEST_CASE("random PSD plus nonnegative matrices are SPN") {
  std::mt19937_64 rng(211);
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = 2 + trial % 7;
    const SymMatrix a = random_spn(rng, n);
    CHECK(test_copositive(a).is_member());
    require_valid(a, test_spn(a));
  }
}

TEST_CASE("pipeline steps") {
  CHECK(test_spn(SymMatrix::ones(3)).verdict.method == Method::nonnegative);
  const SymMatrix psd = SymMatrix::from_rows({{1, -1}, {-1, 1}});
  const auto r = test_spn(psd);
  CHECK(r.verdict.method == Method::psd);
  CHECK(r.decomposition->n.max_abs() == 0.0);
  // Tree with mixed signs that is not PSD.
  const SymMatrix tree = SymMatrix::from_rows({{1, -1, 0, 0}, {-1, 2, 5, 0}, {0, 5, 1, -1}, {0, 0, -1, 1}});
  const auto t = test_spn(tree);
  require_valid(tree, t);
  const auto nc = test_spn(SymMatrix::from_rows({{1, -2}, {-2, 1}}));
  CHECK(nc.verdict.is_non_member());
  CHECK(nc.verdict.method == Method::not_copositive);
  REQUIRE(nc.verdict.certificate);
  SpnOptions strict;
  strict.assert_copositive = true;
  CHECK_THROWS_AS(test_spn(SymMatrix::from_rows({{1, -2}, {-2, 1}}), strict), Error);
  CHECK_THROWS_AS(test_spn(SymMatrix::identity(13)), Error);
}

TEST_CASE("trace records every step with its depth") {
  const auto r = test_spn(SymMatrix::from_rows({{1, -1, 0}, {-1, 1, 0}, {0, 0, 1}}));
  REQUIRE_FALSE(r.trace.empty());
  for (const auto& s : r.trace) CHECK(s.find(':') != std::string::npos);
  CHECK(r.trace.front().rfind("0:", 0) == 0);
}

TEST_CASE("acyclic equivalence on random trees") {
  std::mt19937_64 rng(223);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 2 + trial % 8;
    const Graph t = oracle::random_tree(rng, n);
    SymMatrix a = SymMatrix::identity(n);
    for (Index i = 0; i < n; ++i) a(i, i) = 0.5 + std::abs(u(rng));
    for (auto [i, j] : t.edges()) a(i, j) = u(rng);
    const bool cop = test_copositive(a).is_member();
    const bool np = is_psd(negative_part(a)).is_member();
    const auto s = test_spn(a);
    CHECK(cop == np);
    CHECK(cop == s.verdict.is_member());
    if (cop) require_valid(a, s);
  }
}

TEST_CASE("order at most four is always decided") {
  std::mt19937_64 rng(227);
  int done = 0;
  while (done < 200) {
    const SymMatrix a = oracle::random_unit_diagonal(rng, 4);
    if (!test_copositive(a).is_member()) continue;
    ++done;
    require_valid(a, test_spn(a));
  }
}

TEST_CASE("dykstra feasibility") {
  std::mt19937_64 rng(229);
  const SymMatrix p = oracle::random_psd(rng, 4, 2);
  const auto d = dykstra_feasibility(p);
  CHECK(d.feasible == Membership::member);
  CHECK(d.iterations == 1);
  REQUIRE(d.p);
  CHECK((*d.p - p).max_abs() <= 1e-12);

  const auto bad = dykstra_feasibility(SymMatrix::from_rows({{1, -2}, {-2, 1}}), 2000);
  CHECK(bad.feasible == Membership::inconclusive);
  CHECK(bad.residual >= 0.1);

  // Full-rank PSD parts: within 5000 iterations.
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 3 + trial % 6;
    const SymMatrix a = oracle::random_psd(rng, n, n) + oracle::random_nonnegative(rng, n, true);
    const auto r = dykstra_feasibility(a, 5000);
    CHECK(r.feasible == Membership::member);
    CHECK(r.residual <= 1e-8);
    REQUIRE(r.p);
    CHECK(check_decomposition(a, canonical_decomposition(a, *r.p), 1e-6).ok);
  }
  // Low-rank PSD parts leave a thin feasible set and Dykstra may stall; it
  // must still never claim infeasibility, and the pipeline decides them.
  int converged = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 3 + trial % 6;
    const SymMatrix a = oracle::random_psd(rng, n, 1 + trial % 2) + oracle::random_nonnegative(rng, n, true);
    const auto r = dykstra_feasibility(a);
    CHECK(r.feasible != Membership::non_member);
    converged += r.feasible == Membership::member;
    const auto s = test_spn(a);
    CHECK_FALSE(s.verdict.is_non_member());
    if (s.verdict.is_member()) require_valid(a, s);
  }
  MESSAGE("low-rank samples converged: " << converged << " of 20");
}

TEST_CASE("zero support construction") {
  const SymMatrix a = SymMatrix::from_rows({{1, -1}, {-1, 1}});
  const auto d = spn_by_zero_support(a);
  REQUIRE(d);
  CHECK((d->p - a).max_abs() <= 1e-9);
  CHECK(d->n.max_abs() <= 1e-9);
  CHECK_FALSE(spn_by_zero_support(SymMatrix::identity(3)));

  // 4x4 family with G_-(A) the path 1-2-3-4, reduced at {1,3}.
  std::mt19937_64 rng(233);
  std::uniform_real_distribution<double> neg(-1.0, -0.2), pos(0.0, 1.5);
  int built = 0, returned = 0;
  for (int trial = 0; trial < 200 && built < 25; ++trial) {
    SymMatrix b = SymMatrix::identity(4);
    b(0, 1) = neg(rng);
    b(1, 2) = neg(rng);
    b(2, 3) = neg(rng);
    b(0, 2) = pos(rng) + 1.0;
    b(0, 3) = pos(rng);
    b(1, 3) = pos(rng);
    if (!test_copositive(b).is_member()) continue;
    const auto red = reduce_to_irreducible(b, 0, 2);
    if (!test_copositive(red.reduced).is_member()) continue;
    ++built;
    if (const auto z = spn_by_zero_support(red.reduced)) {
      ++returned;
      CHECK(check_decomposition(red.reduced, *z).ok);
    }
  }
  CHECK(built > 0);
  MESSAGE("zero support decompositions: " << returned << " of " << built);
}

TEST_CASE("n-1 PSD construction") {
  std::mt19937_64 rng(239);
  int done = 0;
  for (int trial = 0; trial < 2000 && done < 40; ++trial) {
    const Index n = 3 + trial % 4;
    SymMatrix a = oracle::random_psd(rng, n - 1, n - 2).principal(range(n - 1));
    SymMatrix b(n);
    for (Index i = 0; i + 1 < n; ++i)
      for (Index j = i; j + 1 < n; ++j) b(i, j) = a(i, j);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (Index i = 0; i + 1 < n; ++i) b(i, n - 1) = u(rng);
    b(n - 1, n - 1) = 1.0;
    if (!test_copositive(b).is_member()) continue;
    ++done;
    const auto d = decompose_with_psd_complement(b, n - 1);
    REQUIRE(d);
    CHECK(check_decomposition(b, *d).ok);
  }
  CHECK(done >= 10);
  CHECK_FALSE(decompose_with_psd_complement(SymMatrix::from_rows({{1, -2, 0}, {-2, 1, 0}, {0, 0, 1}}), 2));
}

TEST_CASE("T_n decomposition examples") {
  const SymMatrix t3 = SymMatrix::from_rows({{1, -1, 1}, {-1, 1, -1}, {1, -1, 1}});
  const auto d = decompose_tn(t3);
  CHECK((d.p - t3).max_abs() <= 1e-9);
  CHECK(d.n.max_abs() <= 1e-9);
  CHECK_THROWS_AS(decompose_tn(SymMatrix::ones(4)), Error);
  CHECK_THROWS_AS(decompose_tn(SymMatrix::from_rows({{1, -2, 1}, {-2, 1, 1}, {1, 1, 1}})), Error);
}

TEST_CASE("T_5 decompositions on random copositive instances") {
  std::mt19937_64 rng(241);
  std::uniform_real_distribution<double> mag(0.05, 1.0);
  std::uniform_real_distribution<double> diag(0.5, 2.0);
  int negative_base = 0, positive_base = 0;
  for (int trial = 0; trial < 20000 && (negative_base < 25 || positive_base < 25); ++trial) {
    const bool base_negative = trial % 2 == 0;
    SymMatrix a(5);
    for (Index i = 0; i < 5; ++i) a(i, i) = diag(rng);
    a(0, 1) = (base_negative ? -1.0 : 1.0) * mag(rng) * 1.5;
    for (Index k = 2; k < 5; ++k) {
      const bool flip = rng() & 1;
      // Negative base: one + and one - edge per apex.
      const double s0 = base_negative ? (flip ? 1.0 : -1.0) : ((rng() & 1) ? 1.0 : -1.0);
      const double s1 = base_negative ? -s0 : ((rng() & 1) ? 1.0 : -1.0);
      a(0, k) = s0 * mag(rng) * 1.5;
      a(1, k) = s1 * mag(rng) * 1.5;
    }
    if (!test_copositive(a).is_member()) continue;
    int& count = base_negative ? negative_base : positive_base;
    if (count >= 25) continue;
    ++count;
    const auto d = decompose_tn(a);
    const auto c = check_decomposition(a, d);
    CHECK_MESSAGE(c.ok, c.reason);
  }
  CHECK(negative_base == 25);
  CHECK(positive_base == 25);
}

TEST_CASE("cut vertex split") {
  // Bowtie: triangles {0,1,2} and {2,3,4}, both rank one.
  const Vec x{1, -1, 1}, y{1, -1, 1};
  SymMatrix a(5);
  for (Index i = 0; i < 3; ++i)
    for (Index j = i; j < 3; ++j) a(i, j) += x[i] * x[j];
  for (Index i = 0; i < 3; ++i)
    for (Index j = i; j < 3; ++j) a(2 + i, 2 + j) += y[i] * y[j];
  REQUIRE(a(2, 2) == 2.0);
  REQUIRE(test_copositive(a).is_member());
  const auto [a1, a2] = cut_vertex_split(a, 2, {0, 1, 2}, {2, 3, 4});
  CHECK(test_copositive(a1).is_member());
  CHECK(test_copositive(a2).is_member());
  CHECK((embed(a1, {0, 1, 2}, 5) + embed(a2, {2, 3, 4}, 5) - a).max_abs() <= 1e-12);

  // No edges across v: the first part keeps the whole diagonal entry.
  const SymMatrix blocks = SymMatrix::from_rows({{1, -1, 0}, {-1, 3, 0}, {0, 0, 1}});
  const auto [b1, b2] = cut_vertex_split(blocks, 1, {0, 1}, {1, 2});
  CHECK(b1(1, 1) == doctest::Approx(3.0));
  CHECK(b2(0, 0) == doctest::Approx(0.0));

  // The path 1-2-3 with unit diagonal and -1 edges is not copositive
  // (x = (1, sqrt 2, 1)); with a_22 = 2 it is, and the split is found.
  const SymMatrix path = SymMatrix::from_rows({{1, -1, 0}, {-1, 1, -1}, {0, -1, 1}});
  CHECK(quad_form(path, {1, std::sqrt(2.0), 1}) < 0);
  CHECK_THROWS_AS(cut_vertex_split(path, 1, {0, 1}, {1, 2}), Error);
  const SymMatrix path2 = SymMatrix::from_rows({{1, -1, 0}, {-1, 2, -1}, {0, -1, 1}});
  const auto [c1, c2] = cut_vertex_split(path2, 1, {0, 1}, {1, 2});
  CHECK(test_copositive(c1).is_member());
  CHECK(test_copositive(c2).is_member());
  CHECK(c1(1, 1) + c2(0, 0) == doctest::Approx(2.0));
  CHECK(c1(1, 1) == doctest::Approx(1.0).epsilon(1e-6));

  CHECK_THROWS_AS(cut_vertex_split(a, 1, {0, 1}, {1, 2, 3, 4}), Error);
}

TEST_CASE("rank one perturbations and bordered stars") {
  CHECK(test_rank1_perturbation({1, 0, 0}).is_member());
  const auto v = test_rank1_perturbation({1, 1});
  CHECK(v.is_non_member());
  REQUIRE(v.certificate);
  const SymMatrix m = SymMatrix::identity(2) - SymMatrix::outer({1, 1});
  CHECK(quad_form(m, *v.certificate) < 0);
  CHECK(test_rank1_perturbation({0.6, -0.6}).is_member());
  CHECK(test_bordered_star({0.6, -0.8, 5}).is_member());
  CHECK(test_bordered_star({-0.8, -0.8}).is_non_member());
}

TEST_CASE("rank one perturbation verdicts match the general tests") {
  std::mt19937_64 rng(251);
  std::uniform_real_distribution<double> u(-1.2, 1.2);
  for (int trial = 0; trial < 100; ++trial) {
    Vec v(4);
    for (auto& x : v) x = u(rng);
    const SymMatrix m = SymMatrix::identity(4) - SymMatrix::outer(v);
    const bool r = test_rank1_perturbation(v).is_member();
    CHECK(r == test_copositive_kaplan(m).is_member());
    SymMatrix star = SymMatrix::identity(5);
    for (Index i = 0; i < 4; ++i) star(i, 4) = v[i];
    CHECK(test_bordered_star(v).is_member() == test_copositive_kaplan(star).is_member());
  }
}

TEST_CASE("certificate and decomposition checkers reject bad evidence") {
  const SymMatrix a = SymMatrix::from_rows({{1, -1}, {-1, 1}});
  SpnDecomposition bad{SymMatrix::identity(2), a - SymMatrix::identity(2)};
  CHECK_FALSE(check_decomposition(a, bad).ok);
  DnnCertificate c{(1 / std::sqrt(2.0)) * SymMatrix::identity(2), 0.0};
  c.objective = inner(a, c.w);
  CHECK_FALSE(check_certificate(a, c).ok);
  GMinusOneRefutation r;
  r.kind = GMinusOneRefutation::Kind::even_distance;
  r.i = 0;
  r.j = 1;
  r.distance = 2;
  CHECK_FALSE(check_refutation(a, r).ok);
}
