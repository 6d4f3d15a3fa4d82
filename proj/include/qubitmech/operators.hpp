#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <variant>

#include "qubitmech/basis.hpp"
#include "qubitmech/params.hpp"

namespace qubitmech {

using Complex = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;
using SparseMatrix = Eigen::SparseMatrix<Complex>;
using Vector = Eigen::VectorXcd;

// Operators at or below this dimension are stored (and diagonalized) dense.
inline constexpr std::size_t kDenseThreshold = 4096;

class HermitianOperator {
public:
    HermitianOperator(BasisSpec basis, DenseMatrix m);
    HermitianOperator(BasisSpec basis, SparseMatrix m);

    std::size_t dim() const { return dim_; }
    const BasisSpec& basis() const { return basis_; }
    bool is_dense() const { return std::holds_alternative<DenseMatrix>(m_); }
    const DenseMatrix& dense() const;
    const SparseMatrix& sparse() const;
    DenseMatrix to_dense() const;

    Vector apply(const Vector& v) const;
    // max |H - H^dagger| over entries.
    double hermiticity_error() const;
    double max_abs_entry() const;
    // True when every entry has zero imaginary part (enables the faster
    // real symmetric solver path).
    bool is_real() const;

private:
    std::size_t dim_;
    BasisSpec basis_;
    std::variant<DenseMatrix, SparseMatrix> m_;
};

// --- Hamiltonian assembly -------------------------------------------------

// Charge-basis transmon: diagonal 4 E_C (m - n_g)^2 + E_j, off-diagonal
// -(E_j/2) e^{-i phi_ext} on (m+1, m) and the conjugate below.
HermitianOperator transmon_charge_hamiltonian(const TransmonParams& p, int n_max);

// Transmon after gauging away n_g: kinetic -4 E_C d^2/dphi^2 on the
// 2pi-periodic grid with twist phase exp(2 pi i n_g) on wrap-around
// couplings, potential E_j (1 - cos(phi - phi_ext)).
HermitianOperator transmon_twisted_grid_hamiltonian(const TransmonParams& p,
                                                    int n_points);

// Fluxonium on a Dirichlet grid: -4 E_C d^2/dphi^2 + (1/2) E_L phi^2
// + E_j (1 - cos(phi - phi_ext)).
HermitianOperator fluxonium_hamiltonian(const FluxoniumParams& p,
                                        const BoundedGrid& grid);

// 0-pi on a product grid (theta periodic, phi Dirichlet):
// E_Cphi n_phi^2 + E_Ctheta n_theta^2 - 2 E_j cos(theta) cos(phi - phi_ext/2)
// + E_l phi^2. Kinetic coefficients carry no factor 4.
HermitianOperator zeropi_hamiltonian(const ZeroPiParams& p,
                                     const BasisSpec& product);

// --- Observables ----------------------------------------------------------

enum class Observable { Flux, Charge, Angle };

// Flux/angle are diagonal grid coordinates; charge is -i d/dx by central
// differences (diagonal m in the charge basis). On product bases, Flux acts
// on the phi factor and Angle on the theta factor.
HermitianOperator observable_operator(const BasisSpec& basis, Observable which);

// --- Default resolutions ---------------------------------------------------

int default_charge_n_max(const TransmonParams& p);
BoundedGrid default_fluxonium_grid();
BasisSpec default_zeropi_basis();

// 0-pi potential, first (product-of-cosines) form.
double zeropi_potential(const ZeroPiParams& p, double theta, double phi);
// Second (sum-of-cosines) form; equals the first to round-off.
double zeropi_potential_sum_form(const ZeroPiParams& p, double theta, double phi);

double fluxonium_potential(const FluxoniumParams& p, double phi);

namespace detail {
// Test hook: perturbs the kinetic stencil so self-check negative controls
// can verify that faults are detected. Never set outside tests.
void inject_stencil_fault(bool on);
bool stencil_fault_active();
}  // namespace detail

}  // namespace qubitmech
