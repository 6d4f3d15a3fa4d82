#include "qubitmech/selfcheck.hpp"

#include <cmath>
#include <sstream>

#include "qubitmech/eigensolve.hpp"
#include "qubitmech/mechanics.hpp"
#include "qubitmech/observables.hpp"
#include "qubitmech/operators.hpp"

namespace qubitmech {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;

CheckResult make(const std::string& name, bool pass, double measured,
                 double bound) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << "measured " << measured << " (bound " << bound << ")";
    return CheckResult{name, pass, os.str()};
}

double max_rel_diff(const std::vector<double>& a, const std::vector<double>& b,
                    std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        m = std::max(m, std::abs(a[i] - b[i]) / std::max(1e-12, std::abs(b[i])));
    }
    return m;
}

}  // namespace

std::vector<CheckResult> run_self_checks() {
    std::vector<CheckResult> out;

    {  // free-rotor levels 4 E_C m^2 in the charge basis
        TransmonParams p = validate(TransmonParams{.e_c = 1.0, .e_j = 0.0});
        Spectrum s = lowest_eigenpairs(transmon_charge_hamiltonian(p, 6), 5);
        const double expected[5] = {0, 4, 4, 16, 16};
        double dev = 0.0;
        for (int i = 0; i < 5; ++i) {
            dev = std::max(dev, std::abs(s.energies[i] - expected[i]));
        }
        out.push_back(make("rotor_limit", dev <= 1e-8, dev, 1e-8));
    }
    {  // fluxonium with e_j = 0 is a harmonic ladder sqrt(8 E_C E_L)(k+1/2)
        FluxoniumParams p = validate(FluxoniumParams{.e_c = 1, .e_l = 1, .e_j = 0});
        Spectrum s = lowest_eigenpairs(
            fluxonium_hamiltonian(p, default_fluxonium_grid()), 4);
        const double w = std::sqrt(8.0);
        double dev = 0.0;
        for (int k = 0; k < 4; ++k) {
            const double e = w * (k + 0.5);
            dev = std::max(dev, std::abs(s.energies[k] - e) / e);
        }
        out.push_back(make("harmonic_limit", dev <= 1e-4, dev, 1e-4));
    }
    {  // charge basis vs twisted grid agree on the lowest 4 levels
        TransmonParams p =
            validate(TransmonParams{.e_c = 1.0, .e_j = 10.0, .n_g = 0.25});
        Spectrum a = lowest_eigenpairs(transmon_charge_hamiltonian(p, 30), 4);
        Spectrum b = lowest_eigenpairs(transmon_twisted_grid_hamiltonian(p, 256), 4);
        const double dev = max_rel_diff(b.energies, a.energies, 4);
        out.push_back(make("cross_basis_agreement", dev <= 1e-6, dev, 1e-6));
    }
    {  // the two written forms of the 0-pi potential are identical
        ZeroPiParams p = validate(ZeroPiParams{.e_c_phi = 10, .e_c_theta = 0.2,
                                               .e_j = 5, .e_l = 0.04,
                                               .phi_ext = 1.3});
        const double dev = zeropi_potential_identity_check(p, 1000);
        out.push_back(make("zeropi_potential_identity", dev <= 1e-12 * p.e_j, dev,
                           1e-12 * p.e_j));
    }
    {  // electrical <-> mechanical dictionaries invert exactly
        double dev = 0.0;
        TransmonParams tp = validate(TransmonParams{.e_c = 0.3, .e_j = 17.0});
        TransmonParams tr = transmon_m2e(transmon_e2m(tp, 1.7));
        dev = std::max(dev, std::abs(tr.e_c - tp.e_c) / tp.e_c);
        dev = std::max(dev, std::abs(tr.e_j - tp.e_j) / tp.e_j);
        FluxoniumParams fp =
            validate(FluxoniumParams{.e_c = 1.1, .e_l = 0.4, .e_j = 9.0});
        FluxoniumParams fr = fluxonium_m2e(fluxonium_e2m(fp, 0.8));
        dev = std::max(dev, std::abs(fr.e_l - fp.e_l) / fp.e_l);
        dev = std::max(dev, std::abs(fr.e_j - fp.e_j) / fp.e_j);
        ZeroPiParams zp = validate(ZeroPiParams{.e_c_phi = 2, .e_c_theta = 0.3,
                                                .e_j = 6, .e_l = 0.1});
        ZeroPiParams zr = zeropi_m2e(zeropi_e2m(zp, 2.2));
        dev = std::max(dev, std::abs(zr.e_c_phi - zp.e_c_phi) / zp.e_c_phi);
        dev = std::max(dev, std::abs(zr.e_l - zp.e_l) / zp.e_l);
        out.push_back(make("mapping_round_trip", dev <= 1e-12, dev, 1e-12));
    }
    {  // assembled operators are Hermitian to round-off
        TransmonParams p =
            validate(TransmonParams{.e_c = 1, .e_j = 30, .n_g = 0.37, .phi_ext = 0.9});
        HermitianOperator h = transmon_twisted_grid_hamiltonian(p, 128);
        const double dev = h.hermiticity_error() / h.max_abs_entry();
        out.push_back(make("hermiticity", dev <= 1e-12, dev, 1e-12));
    }
    {  // phi_ext is a pure translation on the periodic domain
        TransmonParams p0 = validate(TransmonParams{.e_c = 1, .e_j = 20});
        TransmonParams p1 = p0;
        p1.phi_ext = 1.0;
        Spectrum a = lowest_eigenpairs(transmon_twisted_grid_hamiltonian(p0, 128), 4);
        Spectrum b = lowest_eigenpairs(transmon_twisted_grid_hamiltonian(p1, 128), 4);
        const double dev = max_rel_diff(b.energies, a.energies, 4);
        out.push_back(make("gauge_translation_invariance", dev <= 1e-9, dev, 1e-9));
    }
    {  // classical splitting vanishes at the symmetric point
        FluxoniumParams p = validate(
            FluxoniumParams{.e_c = 1, .e_l = 0.5, .e_j = 50, .phi_ext = kPi});
        const double dev = std::abs(classical_splitting(p));
        out.push_back(make("classical_symmetric_point", dev <= 1e-8, dev, 1e-8));
    }

    return out;
}

}  // namespace qubitmech
