#include "qubitmech/operators.hpp"

#include <atomic>
#include <cmath>
#include <vector>

#include "qubitmech/errors.hpp"

namespace qubitmech {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr Complex kI{0.0, 1.0};

using Triplet = Eigen::Triplet<Complex>;

}  // namespace

namespace detail {

std::atomic<bool> g_stencil_fault{false};

void inject_stencil_fault(bool on) { g_stencil_fault.store(on); }
bool stencil_fault_active() { return g_stencil_fault.load(); }

// Center coefficient of the 4th-order second-difference stencil. The fault
// hook perturbs it so negative-control tests can see a detectable error.
double stencil_center() { return g_stencil_fault.load() ? 30.01 : 30.0; }

}  // namespace detail

// --- HermitianOperator ------------------------------------------------------

HermitianOperator::HermitianOperator(BasisSpec basis, DenseMatrix m)
    : dim_(static_cast<std::size_t>(m.rows())), basis_(std::move(basis)), m_(std::move(m)) {
    if (dim_ != basis_.dimension()) {
        throw BasisMismatch("matrix dimension does not match basis dimension");
    }
}

HermitianOperator::HermitianOperator(BasisSpec basis, SparseMatrix m)
    : dim_(static_cast<std::size_t>(m.rows())), basis_(std::move(basis)), m_(std::move(m)) {
    if (dim_ != basis_.dimension()) {
        throw BasisMismatch("matrix dimension does not match basis dimension");
    }
}

const DenseMatrix& HermitianOperator::dense() const {
    return std::get<DenseMatrix>(m_);
}

const SparseMatrix& HermitianOperator::sparse() const {
    return std::get<SparseMatrix>(m_);
}

DenseMatrix HermitianOperator::to_dense() const {
    if (is_dense()) return dense();
    return DenseMatrix(sparse());
}

Vector HermitianOperator::apply(const Vector& v) const {
    if (is_dense()) return dense() * v;
    return sparse() * v;
}

double HermitianOperator::hermiticity_error() const {
    if (is_dense()) {
        return (dense() - dense().adjoint()).cwiseAbs().maxCoeff();
    }
    SparseMatrix d = SparseMatrix(sparse().adjoint()) - sparse();
    double m = 0.0;
    for (int k = 0; k < d.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(d, k); it; ++it) {
            m = std::max(m, std::abs(it.value()));
        }
    }
    return m;
}

double HermitianOperator::max_abs_entry() const {
    if (is_dense()) return dense().cwiseAbs().maxCoeff();
    double m = 0.0;
    for (int k = 0; k < sparse().outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(sparse(), k); it; ++it) {
            m = std::max(m, std::abs(it.value()));
        }
    }
    return m;
}

bool HermitianOperator::is_real() const {
    if (is_dense()) return dense().imag().cwiseAbs().maxCoeff() == 0.0;
    for (int k = 0; k < sparse().outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(sparse(), k); it; ++it) {
            if (it.value().imag() != 0.0) return false;
        }
    }
    return true;
}

// --- Kinetic stencils -------------------------------------------------------

namespace {

// -coef * d^2/dx^2 by the 4th-order central stencil
// (-f_{i-2} + 16 f_{i-1} - 30 f_i + 16 f_{i+1} - f_{i+2}) / (12 h^2),
// Dirichlet: values beyond the endpoints are zero.
void add_bounded_kinetic(std::vector<Triplet>& t, int offset, int n, double h,
                         double coef) {
    const double c = coef / (12.0 * h * h);
    const double c0 = detail::stencil_center() * c;
    for (int i = 0; i < n; ++i) {
        t.emplace_back(offset + i, offset + i, c0);
        if (i + 1 < n) {
            t.emplace_back(offset + i, offset + i + 1, -16.0 * c);
            t.emplace_back(offset + i + 1, offset + i, -16.0 * c);
        }
        if (i + 2 < n) {
            t.emplace_back(offset + i, offset + i + 2, c);
            t.emplace_back(offset + i + 2, offset + i, c);
        }
    }
}

// Periodic version; couplings that wrap the boundary pick up the twist
// phase exp(2 pi i twist): f_{N+j} = exp(2 pi i twist) f_j.
void add_periodic_kinetic(std::vector<Triplet>& t, int n, double h, double coef,
                          double twist) {
    const double c = coef / (12.0 * h * h);
    const double c0 = detail::stencil_center() * c;
    const Complex tw = std::exp(kI * (kTwoPi * twist));
    const double coeffs[2] = {-16.0 * c, c};
    for (int i = 0; i < n; ++i) {
        t.emplace_back(i, i, c0);
        for (int s = 1; s <= 2; ++s) {
            const int j = (i + s) % n;
            const Complex phase = (i + s >= n) ? tw : Complex{1.0, 0.0};
            // H[i][j] couples f_j into row i; wrapping upward carries tw.
            t.emplace_back(i, j, coeffs[s - 1] * phase);
            t.emplace_back(j, i, coeffs[s - 1] * std::conj(phase));
        }
    }
}

HermitianOperator build(BasisSpec basis, std::vector<Triplet> triplets,
                        std::size_t dim) {
    SparseMatrix m(static_cast<int>(dim), static_cast<int>(dim));
    m.setFromTriplets(triplets.begin(), triplets.end());
    if (dim <= kDenseThreshold) {
        return HermitianOperator(std::move(basis), DenseMatrix(m));
    }
    m.makeCompressed();
    return HermitianOperator(std::move(basis), std::move(m));
}

}  // namespace

// --- Hamiltonians -----------------------------------------------------------

HermitianOperator transmon_charge_hamiltonian(const TransmonParams& p, int n_max) {
    if (n_max < 1) throw DimensionTooSmall("transmon charge basis needs n_max >= 1");
    BasisSpec basis = make_charge_basis(n_max);
    const int d = 2 * n_max + 1;
    DenseMatrix h = DenseMatrix::Zero(d, d);
    const Complex off = -(p.e_j / 2.0) * std::exp(-kI * p.phi_ext);
    for (int i = 0; i < d; ++i) {
        const double m = static_cast<double>(i - n_max);
        h(i, i) = 4.0 * p.e_c * (m - p.n_g) * (m - p.n_g) + p.e_j;
        if (i + 1 < d) {
            h(i + 1, i) = off;
            h(i, i + 1) = std::conj(off);
        }
    }
    return HermitianOperator(std::move(basis), std::move(h));
}

HermitianOperator transmon_twisted_grid_hamiltonian(const TransmonParams& p,
                                                    int n_points) {
    if (n_points < 16) throw DimensionTooSmall("twisted grid needs n_points >= 16");
    BasisSpec basis = make_periodic_grid(n_points, p.n_g);
    const double h = kTwoPi / n_points;
    std::vector<Triplet> t;
    t.reserve(static_cast<std::size_t>(5 * n_points));
    add_periodic_kinetic(t, n_points, h, 4.0 * p.e_c, p.n_g);
    for (int i = 0; i < n_points; ++i) {
        const double phi = h * i;
        t.emplace_back(i, i, p.e_j * (1.0 - std::cos(phi - p.phi_ext)));
    }
    return build(std::move(basis), std::move(t), static_cast<std::size_t>(n_points));
}

double fluxonium_potential(const FluxoniumParams& p, double phi) {
    return 0.5 * p.e_l * phi * phi + p.e_j * (1.0 - std::cos(phi - p.phi_ext));
}

namespace {

// Tail check: the quadratic part of the potential at the Dirichlet boundary
// must clear the harmonic ground-energy estimate by a 30 GHz margin, which
// puts the truncation error well below solver tolerance.
void check_fluxonium_domain(const FluxoniumParams& p, double x_max) {
    const double e0_est = std::sqrt(8.0 * p.e_c * p.e_l) / 2.0;
    if (0.5 * p.e_l * x_max * x_max < e0_est + 30.0) {
        throw DomainTooSmall("fluxonium grid x_max too small for E_L tail decay");
    }
}

}  // namespace

HermitianOperator fluxonium_hamiltonian(const FluxoniumParams& p,
                                        const BoundedGrid& grid) {
    if (grid.n_points < 3) throw DimensionTooSmall("bounded grid needs n_points >= 3");
    check_fluxonium_domain(p, grid.x_max);
    BasisSpec basis = make_bounded_grid(grid.x_max, grid.n_points);
    const double h = basis.weight();
    std::vector<Triplet> t;
    t.reserve(static_cast<std::size_t>(5 * grid.n_points));
    add_bounded_kinetic(t, 0, grid.n_points, h, 4.0 * p.e_c);
    const std::vector<double> x = basis.coordinates();
    for (int i = 0; i < grid.n_points; ++i) {
        t.emplace_back(i, i, fluxonium_potential(p, x[i]));
    }
    return build(std::move(basis), std::move(t),
                 static_cast<std::size_t>(grid.n_points));
}

double zeropi_potential(const ZeroPiParams& p, double theta, double phi) {
    return -2.0 * p.e_j * std::cos(theta) * std::cos(phi - p.phi_ext / 2.0) +
           p.e_l * phi * phi;
}

double zeropi_potential_sum_form(const ZeroPiParams& p, double theta, double phi) {
    return -p.e_j * (std::cos(theta + phi - p.phi_ext / 2.0) +
                     std::cos(theta - phi + p.phi_ext / 2.0)) +
           p.e_l * phi * phi;
}

HermitianOperator zeropi_hamiltonian(const ZeroPiParams& p, const BasisSpec& product) {
    const auto* prod = std::get_if<ProductBasis>(&product.kind);
    if (!prod) throw UnsupportedBasis("zeropi_hamiltonian needs a product basis");
    const auto* theta = std::get_if<PeriodicGrid>(&prod->theta->kind);
    const auto* phi = std::get_if<BoundedGrid>(&prod->phi->kind);
    if (!theta || !phi) {
        throw UnsupportedBasis("zeropi product must be periodic(theta) x bounded(phi)");
    }
    if (theta->twist != 0.0) {
        throw UnsupportedBasis("zeropi theta grid carries no twist");
    }
    if (theta->n_points < 5 || phi->n_points < 5) {
        throw DimensionTooSmall("zeropi grids need at least 5 points per axis");
    }
    // phi envelope width is (E_Cphi/E_l)^(1/4)/sqrt(2); require ~3.4 widths.
    if (phi->x_max < 2.4 * std::pow(p.e_c_phi / p.e_l, 0.25)) {
        throw DomainTooSmall("zeropi phi grid x_max too small for the phi envelope");
    }

    const int nt = theta->n_points;
    const int nf = phi->n_points;
    const double ht = prod->theta->weight();
    const double hf = prod->phi->weight();
    const std::size_t dim = static_cast<std::size_t>(nt) * nf;

    std::vector<Triplet> t;
    t.reserve(10 * dim);
    // theta kinetic: K_theta (x) I_phi
    {
        std::vector<Triplet> kt;
        add_periodic_kinetic(kt, nt, ht, p.e_c_theta, 0.0);
        for (const auto& e : kt) {
            for (int j = 0; j < nf; ++j) {
                t.emplace_back(e.row() * nf + j, e.col() * nf + j, e.value());
            }
        }
    }
    // phi kinetic: I_theta (x) K_phi
    {
        std::vector<Triplet> kf;
        add_bounded_kinetic(kf, 0, nf, hf, p.e_c_phi);
        for (const auto& e : kf) {
            for (int i = 0; i < nt; ++i) {
                t.emplace_back(i * nf + e.row(), i * nf + e.col(), e.value());
            }
        }
    }
    const std::vector<double> th = prod->theta->coordinates();
    const std::vector<double> ph = prod->phi->coordinates();
    for (int i = 0; i < nt; ++i) {
        for (int j = 0; j < nf; ++j) {
            t.emplace_back(i * nf + j, i * nf + j,
                           zeropi_potential(p, th[i], ph[j]));
        }
    }
    return build(product, std::move(t), dim);
}

// --- Observables ------------------------------------------------------------

namespace {

// -i d/dx by 2nd-order central differences; `twist` applies the periodic
// boundary phase, `periodic` false means Dirichlet truncation.
void add_momentum(std::vector<Triplet>& t, int n, double h, bool periodic,
                  double twist) {
    const Complex c = -kI / (2.0 * h);
    const Complex tw = std::exp(kI * (kTwoPi * twist));
    for (int i = 0; i < n; ++i) {
        const int j = i + 1;
        if (j < n) {
            t.emplace_back(i, j, c);
            t.emplace_back(j, i, -c);
        } else if (periodic) {
            t.emplace_back(i, 0, c * tw);
            t.emplace_back(0, i, -c * std::conj(tw));
        }
    }
}

HermitianOperator diagonal_operator(const BasisSpec& basis,
                                    const std::vector<double>& d) {
    std::vector<Triplet> t;
    t.reserve(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        t.emplace_back(static_cast<int>(i), static_cast<int>(i), d[i]);
    }
    return build(basis, std::move(t), d.size());
}

}  // namespace

HermitianOperator observable_operator(const BasisSpec& basis, Observable which) {
    if (const auto* c = std::get_if<ChargeBasis>(&basis.kind)) {
        if (which != Observable::Charge) {
            throw UnsupportedObservable(
                "only the charge operator exists in the charge basis");
        }
        std::vector<double> d(basis.dimension());
        for (std::size_t i = 0; i < d.size(); ++i) {
            d[i] = static_cast<double>(static_cast<int>(i) - c->n_max);
        }
        return diagonal_operator(basis, d);
    }
    if (const auto* g = std::get_if<BoundedGrid>(&basis.kind)) {
        if (which == Observable::Flux) {
            return diagonal_operator(basis, basis.coordinates());
        }
        if (which == Observable::Charge) {
            std::vector<Triplet> t;
            add_momentum(t, g->n_points, basis.weight(), false, 0.0);
            return build(basis, std::move(t), basis.dimension());
        }
        throw UnsupportedObservable("angle operator is not defined on a bounded grid");
    }
    if (const auto* g = std::get_if<PeriodicGrid>(&basis.kind)) {
        if (which == Observable::Angle || which == Observable::Flux) {
            return diagonal_operator(basis, basis.coordinates());
        }
        std::vector<Triplet> t;
        add_momentum(t, g->n_points, basis.weight(), true, g->twist);
        return build(basis, std::move(t), basis.dimension());
    }
    const auto& prod = std::get<ProductBasis>(basis.kind);
    const int nt = static_cast<int>(prod.theta->dimension());
    const int nf = static_cast<int>(prod.phi->dimension());
    if (which == Observable::Flux) {
        const std::vector<double> ph = prod.phi->coordinates();
        std::vector<double> d(static_cast<std::size_t>(nt) * nf);
        for (int i = 0; i < nt; ++i) {
            for (int j = 0; j < nf; ++j) d[static_cast<std::size_t>(i) * nf + j] = ph[j];
        }
        return diagonal_operator(basis, d);
    }
    if (which == Observable::Angle) {
        const std::vector<double> th = prod.theta->coordinates();
        std::vector<double> d(static_cast<std::size_t>(nt) * nf);
        for (int i = 0; i < nt; ++i) {
            for (int j = 0; j < nf; ++j) d[static_cast<std::size_t>(i) * nf + j] = th[i];
        }
        return diagonal_operator(basis, d);
    }
    throw UnsupportedObservable("charge is ambiguous on a product basis");
}

// --- Default resolutions ----------------------------------------------------

int default_charge_n_max(const TransmonParams& p) {
    const double suggested =
        std::ceil(5.0 * std::pow(p.e_j / p.e_c, 0.25) + std::abs(p.n_g));
    return std::max(30, static_cast<int>(suggested));
}

BoundedGrid default_fluxonium_grid() { return BoundedGrid{12.0, 800}; }

BasisSpec default_zeropi_basis() {
    return make_product_basis(make_periodic_grid(96), make_bounded_grid(10.0, 160));
}

}  // namespace qubitmech
