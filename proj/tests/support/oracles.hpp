#pragma once

#include <random>
#include <vector>

#include "spnkit/graph.hpp"
#include "spnkit/matcore.hpp"

namespace oracle {

using spnkit::Graph;
using spnkit::Index;
using spnkit::SymMatrix;
using spnkit::Vec;

// Determinant by cofactor expansion along the first row.
double det_laplace(const std::vector<std::vector<double>>& m);
// Eigenvalues as the roots of det(lambda I - A): the polynomial is sampled by
// cofactor expansion, interpolated, and solved by Durand-Kerner. Ascending.
Vec charpoly_eigenvalues(const SymMatrix& a);

SymMatrix random_symmetric(std::mt19937_64& rng, Index n, double lo, double hi);
SymMatrix random_psd(std::mt19937_64& rng, Index n, Index rank);
SymMatrix random_nonnegative(std::mt19937_64& rng, Index n, bool zero_diagonal);
// Unit diagonal, off-diagonal entries uniform in [-1, 1].
SymMatrix random_unit_diagonal(std::mt19937_64& rng, Index n);
// Random tree on n vertices (Pruefer sequence).
Graph random_tree(std::mt19937_64& rng, Index n);

// Containment of a subdivision of h in g by enumerating every edge subset of
// g and comparing suppressed cores. min_long/max_long bound the number of
// pattern edges realised by paths of length >= 2.
bool brute_force_contains(const Graph& g, const Graph& h, Index min_long = 0,
                          Index max_long = 1000);

// Representatives of the isomorphism classes of graphs on n vertices.
std::vector<Graph> graph_classes(Index n);

}  // namespace oracle
