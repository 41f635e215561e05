#pragma once

#include <optional>
#include <vector>

#include "spnkit/matcore.hpp"

namespace spnkit {

inline constexpr Index kMaxExhaustiveOrder = 14;
inline constexpr Index kMaxOracleOrder = 10;

struct ZeroVector {
  Vec u;             // unit norm, nonnegative
  IndexSet support;  // supp u, ascending
};

struct KaplanOptions {
  // Skip principal submatrices that contain an off-diagonal entry >= 1 after
  // scaling to unit diagonal. Only used when the whole diagonal is positive.
  bool unit_diagonal_pruning = false;
};

// Fast paths in fixed order, then the exhaustive criterion.
ConeVerdict test_copositive(const SymMatrix& a, double tol = kDefaultTol);
ConeVerdict test_copositive_kaplan(const SymMatrix& a, double tol = kDefaultTol,
                                   const KaplanOptions& opts = {});

// The individual fast paths; nullopt means "does not apply or undecided".
std::optional<ConeVerdict> copositive_by_hoffman_pereira(const SymMatrix& a);
std::optional<ConeVerdict> copositive_by_acyclic_graph(const SymMatrix& a, double tol);
std::optional<ConeVerdict> copositive_by_rank_one(const SymMatrix& a, double tol);

struct SimplexMinimum {
  double value = 0.0;
  Vec argmin;
};
// Global minimum of x^T A x over the standard simplex by support enumeration.
SimplexMinimum simplex_min_oracle(const SymMatrix& a);

std::vector<ZeroVector> zero_set(const SymMatrix& a, double tol = kDefaultTol);

struct IrreducibilityResult {
  bool irreducible = false;
  std::optional<ZeroVector> witness;
};
IrreducibilityResult is_ij_irreducible(const SymMatrix& a, Index i, Index j,
                                       double tol = kDefaultTol);

struct Reduction {
  SymMatrix reduced;
  double delta = 0.0;
};
// Largest delta keeping A - delta*E_ij copositive, by bisection.
Reduction reduce_to_irreducible(const SymMatrix& a, Index i, Index j);

// E_ij: ones at (i,j) and (j,i), or a single one at (i,i).
SymMatrix unit_pair(Index n, Index i, Index j);

}  // namespace spnkit
