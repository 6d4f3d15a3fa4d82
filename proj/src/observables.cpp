#include "qubitmech/observables.hpp"

#include <cmath>

#include "qubitmech/errors.hpp"
#include "qubitmech/params.hpp"

namespace qubitmech {

namespace {
constexpr double kPi = 3.14159265358979323846264338328;
}

double transition(const Spectrum& s, int i, int j) {
    if (i < 0 || j <= i || static_cast<std::size_t>(j) >= s.energies.size()) {
        throw BadLevel("transition requires 0 <= i < j < level count");
    }
    return s.energies[j] - s.energies[i];
}

double charge_dispersion(const TransmonParams& p, int level, int n_max) {
    if (level < 0 || level >= 2 * n_max) {
        throw BadLevel("dispersion level must be below 2*n_max");
    }
    TransmonParams a = p;
    a.n_g = 0.0;
    TransmonParams b = p;
    b.n_g = 0.5;
    const int k = level + 1;
    const Spectrum sa = lowest_eigenpairs(transmon_charge_hamiltonian(a, n_max), k);
    const Spectrum sb = lowest_eigenpairs(transmon_charge_hamiltonian(b, n_max), k);
    return std::abs(sb.energies[level] - sa.energies[level]);
}

double matrix_element(const Spectrum& s, const HermitianOperator& a, int i, int j) {
    if (i < 0 || j < 0 || static_cast<std::size_t>(i) >= s.states.size() ||
        static_cast<std::size_t>(j) >= s.states.size()) {
        throw BadLevel("matrix_element level out of range");
    }
    if (!s.basis.same_as(a.basis())) {
        throw BasisMismatch("spectrum and operator bases differ");
    }
    const double w = s.basis.weight();
    return std::abs(s.states[i].dot(a.apply(s.states[j]))) * w;
}

double disjointness(const Spectrum& s, int i, int j) {
    if (std::holds_alternative<ChargeBasis>(s.basis.kind)) {
        throw UnsupportedBasis("disjointness is defined on grid bases only");
    }
    if (i < 0 || j < 0 || static_cast<std::size_t>(i) >= s.states.size() ||
        static_cast<std::size_t>(j) >= s.states.size()) {
        throw BadLevel("disjointness level out of range");
    }
    const double w = s.basis.weight();
    double overlap = 0.0;
    for (int x = 0; x < s.states[i].size(); ++x) {
        overlap += std::abs(s.states[i](x)) * std::abs(s.states[j](x)) * w;
    }
    return 1.0 - std::min(1.0, overlap);
}

Parity parity_classify(const Spectrum& s, int level) {
    if (level < 0 || static_cast<std::size_t>(level) >= s.states.size()) {
        throw BadLevel("parity level out of range");
    }
    const auto* g = std::get_if<BoundedGrid>(&s.basis.kind);
    if (!g) throw UnsupportedBasis("parity_classify needs a bounded grid");
    const Vector& v = s.states[level];
    const int n = static_cast<int>(v.size());
    Vector r(n);
    for (int i = 0; i < n; ++i) r(i) = v(n - 1 - i);
    const double w = std::sqrt(s.basis.weight());
    const double even_norm = (v - r).norm() * w;
    const double odd_norm = (v + r).norm() * w;
    if (even_norm <= 1e-6) return Parity::Even;
    if (odd_norm <= 1e-6) return Parity::Odd;
    return Parity::None;
}

std::pair<double, double> theta_well_occupation(const Spectrum& s, int level) {
    const auto* prod = std::get_if<ProductBasis>(&s.basis.kind);
    if (!prod) throw UnsupportedBasis("theta_well_occupation needs a product basis");
    if (level < 0 || static_cast<std::size_t>(level) >= s.states.size()) {
        throw BadLevel("occupation level out of range");
    }
    const std::vector<double> th = prod->theta->coordinates();
    const int nt = static_cast<int>(prod->theta->dimension());
    const int nf = static_cast<int>(prod->phi->dimension());
    const double w = s.basis.weight();
    double near0 = 0.0, nearpi = 0.0;
    const Vector& v = s.states[level];
    for (int i = 0; i < nt; ++i) {
        // theta in (-pi/2, pi/2] counts as the 0 well
        const bool well0 = th[i] <= kPi / 2 + 1e-12 || th[i] > 3 * kPi / 2 + 1e-12;
        double mass = 0.0;
        for (int j = 0; j < nf; ++j) mass += std::norm(v(i * nf + j));
        (well0 ? near0 : nearpi) += mass * w;
    }
    return {near0, nearpi};
}

QubitReport qubit_report(const Spectrum& s) {
    QubitReport r;
    if (s.energies.size() >= 2) r.f10 = s.energies[1] - s.energies[0];
    if (s.energies.size() >= 3) {
        r.f21 = s.energies[2] - s.energies[1];
        r.anharmonicity = r.f21 - r.f10;
    }
    if (s.states.size() >= 2) {
        try {
            r.flux_mat_el =
                matrix_element(s, observable_operator(s.basis, Observable::Flux), 0, 1);
        } catch (const UnsupportedObservable&) {
        }
        try {
            r.charge_mat_el = matrix_element(
                s, observable_operator(s.basis, Observable::Charge), 0, 1);
        } catch (const UnsupportedObservable&) {
        }
        try {
            r.disjointness = disjointness(s, 0, 1);
        } catch (const UnsupportedBasis&) {
        }
    }
    return r;
}

}  // namespace qubitmech
