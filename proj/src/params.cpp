#include "qubitmech/params.hpp"

#include <cmath>

#include "qubitmech/errors.hpp"

namespace qubitmech {

double wrap_into(double x, double period) {
    double r = std::fmod(x, period);
    if (r < 0) r += period;
    // fmod can return exactly `period` after the correction when x is a
    // tiny negative number.
    if (r >= period) r -= period;
    return r;
}

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

void require_finite(double v, const char* field) {
    if (!std::isfinite(v)) {
        throw NonFinite(std::string(field) + " is not finite");
    }
}

}  // namespace

TransmonParams validate(TransmonParams p) {
    require_finite(p.e_c, "e_c");
    require_finite(p.e_j, "e_j");
    require_finite(p.n_g, "n_g");
    require_finite(p.phi_ext, "phi_ext");
    if (p.e_c <= 0) throw NonPositiveEnergy("e_c must be > 0");
    if (p.e_j < 0) throw NonPositiveEnergy("e_j must be >= 0");
    // Preserve raw inputs on first validation; re-validating an already
    // canonical object must be a no-op (idempotence).
    if (p.n_g_raw == 0.0 && p.phi_ext_raw == 0.0 &&
        (p.n_g != 0.0 || p.phi_ext != 0.0)) {
        p.n_g_raw = p.n_g;
        p.phi_ext_raw = p.phi_ext;
    }
    p.n_g = wrap_into(p.n_g, 1.0);
    p.phi_ext = wrap_into(p.phi_ext, kTwoPi);
    return p;
}

FluxoniumParams validate(FluxoniumParams p) {
    require_finite(p.e_c, "e_c");
    require_finite(p.e_l, "e_l");
    require_finite(p.e_j, "e_j");
    require_finite(p.phi_ext, "phi_ext");
    if (p.e_c <= 0) throw NonPositiveEnergy("e_c must be > 0");
    if (p.e_l <= 0) throw NonPositiveEnergy("e_l must be > 0");
    if (p.e_j < 0) throw NonPositiveEnergy("e_j must be >= 0");
    if (p.phi_ext_raw == 0.0 && p.phi_ext != 0.0) p.phi_ext_raw = p.phi_ext;
    // The fluxonium spectrum is exactly 2pi-periodic in phi_ext (the cosine
    // is the only term that sees it), so a canonical representative is safe.
    p.phi_ext = wrap_into(p.phi_ext, kTwoPi);
    return p;
}

ZeroPiParams validate(ZeroPiParams p) {
    require_finite(p.e_c_phi, "e_c_phi");
    require_finite(p.e_c_theta, "e_c_theta");
    require_finite(p.e_j, "e_j");
    require_finite(p.e_l, "e_l");
    require_finite(p.phi_ext, "phi_ext");
    if (p.e_c_phi <= 0) throw NonPositiveEnergy("e_c_phi must be > 0");
    if (p.e_c_theta <= 0) throw NonPositiveEnergy("e_c_theta must be > 0");
    if (p.e_l <= 0) throw NonPositiveEnergy("e_l must be > 0");
    if (p.e_j < 0) throw NonPositiveEnergy("e_j must be >= 0");
    if (p.phi_ext_raw == 0.0 && p.phi_ext != 0.0) p.phi_ext_raw = p.phi_ext;
    p.phi_ext = wrap_into(p.phi_ext, kTwoPi);
    return p;
}

}  // namespace qubitmech
