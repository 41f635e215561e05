#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spnkit/matcore.hpp"

namespace spnkit {

inline constexpr Index kMaxSpnOrder = 12;

// A = P + N with P PSD, N >= 0 and diag N = 0.
struct SpnDecomposition {
  SymMatrix p;
  SymMatrix n;
};

// W doubly nonnegative, unit Frobenius norm, objective = <A, W>.
struct DnnCertificate {
  SymMatrix w;
  double objective = 0.0;
};

// Exact refutation for unit-diagonal matrices whose -1 graph is connected and
// spanning: either an odd cycle of -1 entries, or a pair at even distance in
// that graph whose entry is below 1.
struct GMinusOneRefutation {
  enum class Kind { odd_cycle, even_distance };
  Kind kind = Kind::even_distance;
  IndexSet cycle;  // odd_cycle: closed walk listed once
  Index i = 0, j = 0;
  Index distance = 0;
  double entry = 0.0;
};

struct SpnOptions {
  double tol = 1e-9;
  int dykstra_max_iter = 10000;
  double dykstra_tol = 1e-8;
  int dual_restarts = 50;
  double dual_tol = 1e-6;
  // Throw NotCopositive instead of returning a copositivity refutation.
  bool assert_copositive = false;
};

struct SpnResult {
  ConeVerdict verdict;  // certificate set only for copositivity failures
  std::optional<SpnDecomposition> decomposition;
  std::optional<DnnCertificate> certificate;
  std::optional<GMinusOneRefutation> refutation;
  std::vector<std::string> trace;  // "depth:method" for every step taken
};

SpnResult test_spn(const SymMatrix& a, const SpnOptions& opts = {});

struct DykstraResult {
  Membership feasible = Membership::inconclusive;  // never non_member
  std::optional<SymMatrix> p;
  double residual = 0.0;
  int iterations = 0;
};
DykstraResult dykstra_feasibility(const SymMatrix& a, int max_iter = 10000, double tol = 1e-8);

std::optional<DnnCertificate> find_dnn_certificate(const SymMatrix& a, int restarts = 50,
                                                   double tol = 1e-6);

std::optional<SpnDecomposition> spn_by_zero_support(const SymMatrix& a, double tol = 1e-9);

// Decomposition of a copositive matrix having a PSD principal submatrix on
// all indices but k. Nullopt when A(k) is not PSD or A is not copositive
// (to tolerance).
std::optional<SpnDecomposition> decompose_with_psd_complement(const SymMatrix& a, Index k,
                                                              double tol = 1e-9);

SpnDecomposition decompose_tn(const SymMatrix& a, double tol = 1e-9);

// Copositive A1 on part1 and A2 on part2 (both ascending vertex lists sharing
// only v) with embed(A1) + embed(A2) = A.
std::pair<SymMatrix, SymMatrix> cut_vertex_split(const SymMatrix& a, Index v,
                                                 const IndexSet& part1, const IndexSet& part2);

// I - v v^T (copositive and SPN coincide here).
ConeVerdict test_rank1_perturbation(const Vec& v, double tol = 1e-9);
// [[I, v], [v^T, 1]].
ConeVerdict test_bordered_star(const Vec& v, double tol = 1e-9);

struct Check {
  bool ok = true;
  std::string reason;
};
Check check_decomposition(const SymMatrix& a, const SpnDecomposition& d, double tol = 1e-8);
Check check_certificate(const SymMatrix& a, const DnnCertificate& c, double tol = 1e-6);
Check check_refutation(const SymMatrix& a, const GMinusOneRefutation& r, double tol = 1e-9);

// Sets diag P = diag A and N = A - P.
SpnDecomposition canonical_decomposition(const SymMatrix& a, SymMatrix p);

}  // namespace spnkit
