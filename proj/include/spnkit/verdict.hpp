#pragma once

#include <optional>
#include <string_view>
#include <vector>

namespace spnkit {

enum class Membership { member, non_member, inconclusive };

enum class Method {
  eigenvalues,
  diagonal_bound,
  nonnegative,
  z_matrix,
  hoffman_pereira,
  acyclic_N,
  rank1_perturbation,
  bordered_star,
  kaplan,
  simplex_oracle,
  not_copositive,
  psd,
  g_minus_components,
  g_minus_one_characterization,
  schur_nonnegative_row,
  schur_mmatrix_corner,
  n_minus_one_psd,
  zero_support,
  tn_construction,
  irreducible_reduction,
  dykstra,
  dual_certificate,
  undecided,
};

std::string_view to_string(Membership m);
std::string_view to_string(Method m);
std::optional<Method> method_from_string(std::string_view s);

// The certificate is a vector for copositivity and PSD refutations. SPN
// refutations carry their matrix certificate separately (see spn.hpp).
struct ConeVerdict {
  Membership member = Membership::inconclusive;
  std::optional<std::vector<double>> certificate;
  Method method = Method::undecided;
  double margin = 0.0;

  bool is_member() const { return member == Membership::member; }
  bool is_non_member() const { return member == Membership::non_member; }
};

}  // namespace spnkit
