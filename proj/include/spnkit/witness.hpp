#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spnkit/graph.hpp"
#include "spnkit/spn.hpp"

namespace spnkit {

inline constexpr Index kMaxWitnessOrder = 14;

enum class BaseWitness { f5, cd6, k4_case1 };
std::string_view to_string(BaseWitness b);

// A copositive matrix that is not SPN, with the evidence for both claims.
struct Witness {
  SymMatrix a;
  SignedGraph graph;
  ConeVerdict copositivity;
  std::optional<DnnCertificate> certificate;
  std::optional<GMinusOneRefutation> refutation;
  std::vector<std::string> trace;
};

SymMatrix base_matrix(BaseWitness b);
Witness base_witness(BaseWitness b);

// Rank-one blocks added by the two transformations. The first acts on
// (i, j, new), the second on (x, y, z, new).
SymMatrix subdivision_block(double s);
SymMatrix lambda_paw_block(double a, double b, double c);

// Replaces the negative edge ij by a negative path i-new-j. The new vertex is
// appended last.
Witness subdivide_negative_edge(const Witness& w, Index i, Index j);
// Lambda-paw on the negative path x-y-z; the new vertex is appended last.
Witness lambda_paw(const Witness& w, Index x, Index y, Index z, double c);
// Pads with identity up to the order of target and puts eps on every missing
// edge, halving eps up to 20 times until a certificate is found.
Witness extend_witness_to_supergraph(const Witness& w, const Graph& target, double eps0 = 1e-2);
Witness witness_for_graph(const Graph& g);

// Graph match, copositivity and non-SPN evidence, all recomputed.
Check verify_witness(const Witness& w);

}  // namespace spnkit
