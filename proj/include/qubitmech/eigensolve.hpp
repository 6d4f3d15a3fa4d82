#pragma once

#include <vector>

#include "qubitmech/operators.hpp"

namespace qubitmech {

struct Spectrum {
    std::vector<double> energies;  // ascending, GHz
    std::vector<Vector> states;    // unit norm in the basis inner product
    BasisSpec basis;
    double residual_bound = 0.0;   // >= max_k ||H v_k - E_k v_k||
};

enum class SolvePath { Auto, Dense, Iterative };

// Lowest k eigenpairs. Dense full diagonalization for dim <= 4096, a
// shift-invert Lanczos with full reorthogonalization above (path can be
// forced for cross-checks). States are normalized including the grid
// quadrature weight and phase-fixed: the largest-magnitude entry is real
// positive, ties broken by lowest index.
Spectrum lowest_eigenpairs(const HermitianOperator& h, int k, double tol = 0.0,
                           SolvePath path = SolvePath::Auto);

// Consecutive levels with |E_{i+1} - E_i| <= rel_gap * spread(E) are grouped.
std::vector<std::vector<int>> degeneracy_groups(const Spectrum& s, double rel_gap);

}  // namespace qubitmech
