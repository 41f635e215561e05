#include <array>
#include <cmath>
#include <cstdlib>
#include <string>

#include "spnkit/config.hpp"
#include "spnkit/errors.hpp"
#include "spnkit/verdict.hpp"

namespace spnkit {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::OrderTooLarge: return "OrderTooLarge";
    case ErrorKind::NotCopositive: return "NotCopositive";
    case ErrorKind::GraphMismatch: return "GraphMismatch";
    case ErrorKind::NotCutVertex: return "NotCutVertex";
    case ErrorKind::DisconnectedInput: return "DisconnectedInput";
    case ErrorKind::NotTwoConnected: return "NotTwoConnected";
    case ErrorKind::PatternTooLarge: return "PatternTooLarge";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::GraphTooLarge: return "GraphTooLarge";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
    case ErrorKind::EdgeNotNegative: return "EdgeNotNegative";
    case ErrorKind::PathNotNegative: return "PathNotNegative";
    case ErrorKind::BadC: return "BadC";
    case ErrorKind::NotSubgraph: return "NotSubgraph";
    case ErrorKind::CertificateNotFound: return "CertificateNotFound";
    case ErrorKind::GraphIsNotNotSpn: return "GraphIsNotNotSpn";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::AsymmetricInput: return "AsymmetricInput";
    case ErrorKind::MixedSignedness: return "MixedSignedness";
    case ErrorKind::LoopOrDuplicate: return "LoopOrDuplicate";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

std::string_view to_string(Membership m) {
  switch (m) {
    case Membership::member: return "member";
    case Membership::non_member: return "non_member";
    case Membership::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {
constexpr std::array<std::pair<Method, std::string_view>, 23> kMethodNames{{
    {Method::eigenvalues, "eigenvalues"},
    {Method::diagonal_bound, "diagonal_bound"},
    {Method::nonnegative, "nonnegative"},
    {Method::z_matrix, "z_matrix"},
    {Method::hoffman_pereira, "hoffman_pereira"},
    {Method::acyclic_N, "acyclic_N"},
    {Method::rank1_perturbation, "rank1_perturbation"},
    {Method::bordered_star, "bordered_star"},
    {Method::kaplan, "kaplan"},
    {Method::simplex_oracle, "simplex_oracle"},
    {Method::not_copositive, "not_copositive"},
    {Method::psd, "psd"},
    {Method::g_minus_components, "g_minus_components"},
    {Method::g_minus_one_characterization, "g_minus_one_characterization"},
    {Method::schur_nonnegative_row, "schur_nonnegative_row"},
    {Method::schur_mmatrix_corner, "schur_mmatrix_corner"},
    {Method::n_minus_one_psd, "n_minus_one_psd"},
    {Method::zero_support, "zero_support"},
    {Method::tn_construction, "tn_construction"},
    {Method::irreducible_reduction, "irreducible_reduction"},
    {Method::dykstra, "dykstra"},
    {Method::dual_certificate, "dual_certificate"},
    {Method::undecided, "undecided"},
}};
}  // namespace

std::string_view to_string(Method m) {
  for (const auto& [k, name] : kMethodNames)
    if (k == m) return name;
  return "undecided";
}

std::optional<Method> method_from_string(std::string_view s) {
  for (const auto& [k, name] : kMethodNames)
    if (name == s) return k;
  return std::nullopt;
}

double tolerance_from_env() {
  const char* env = std::getenv("SPNKIT_TOL");
  if (env == nullptr || *env == '\0') return kDefaultTol;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(v >= 0) || !std::isfinite(v))
    throw Error(ErrorKind::BadParams, std::string("SPNKIT_TOL is not a nonnegative number: ") + env);
  return v;
}

}  // namespace spnkit
