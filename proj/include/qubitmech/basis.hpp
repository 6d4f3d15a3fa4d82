#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace qubitmech {

// Discretization descriptors. A BasisSpec pins down the dimension, the grid
// coordinates (where applicable) and the quadrature weight of the inner
// product, so that operators and spectra can be checked for compatibility.

struct ChargeBasis {
    int n_max = 1;  // states |-n_max> ... |n_max>, dimension 2*n_max+1
};

struct BoundedGrid {
    double x_max = 12.0;  // Dirichlet endpoints at +-x_max, excluded
    int n_points = 800;   // interior points; spacing h = 2*x_max/(n_points+1)
};

struct PeriodicGrid {
    int n_points = 512;  // points at 2*pi*k/n_points, k = 0..n_points-1
    double twist = 0.0;  // boundary phase exp(2*pi*i*twist) on wrap-around
};

struct BasisSpec;

// Row-major over (theta index, phi index).
struct ProductBasis {
    std::shared_ptr<const BasisSpec> theta;
    std::shared_ptr<const BasisSpec> phi;
};

struct BasisSpec {
    std::variant<ChargeBasis, BoundedGrid, PeriodicGrid, ProductBasis> kind;

    std::size_t dimension() const;
    // Quadrature weight of the inner product: 1 for the charge basis, the
    // grid spacing h for grids, and the product of member weights for
    // product bases.
    double weight() const;
    // Grid coordinates for 1-D grid bases; throws UnsupportedBasis otherwise.
    std::vector<double> coordinates() const;
    std::string describe() const;

    bool same_as(const BasisSpec& other, double tol = 1e-12) const;
};

BasisSpec make_charge_basis(int n_max);
BasisSpec make_bounded_grid(double x_max, int n_points);
BasisSpec make_periodic_grid(int n_points, double twist = 0.0);
BasisSpec make_product_basis(BasisSpec theta, BasisSpec phi);

}  // namespace qubitmech
