#pragma once

#include <string>

namespace qubitmech {

inline constexpr const char* kVersion = "0.1.0";

// Unit convention for the whole library: hbar = 1, every energy is E/h in
// GHz. A transition energy E10 is therefore numerically equal to the
// transition frequency f10 in GHz, with no 2*pi bookkeeping anywhere.
struct EnergyConvention {
    static constexpr const char* description =
        "hbar = 1; energies are E/h in GHz; E10 == f10 numerically";
};

// Capacitively shunted junction / transmon. n_g and phi_ext are stored
// canonically (n_g in [0,1), phi_ext in [0,2pi)) after validate(); the raw
// user inputs are kept for reporting.
struct TransmonParams {
    double e_c = 0.0;      // charging energy E_C, GHz
    double e_j = 0.0;      // Josephson energy E_j, GHz
    double n_g = 0.0;      // offset charge, dimensionless
    double phi_ext = 0.0;  // external flux, radians

    double n_g_raw = 0.0;
    double phi_ext_raw = 0.0;
};

struct FluxoniumParams {
    double e_c = 0.0;      // GHz
    double e_l = 0.0;      // inductive energy E_L = Phi_0^2 / L, GHz
    double e_j = 0.0;      // GHz
    double phi_ext = 0.0;  // radians

    double phi_ext_raw = 0.0;
};

struct ZeroPiParams {
    double e_c_phi = 0.0;    // kinetic coefficient of n_phi^2, GHz
    double e_c_theta = 0.0;  // kinetic coefficient of n_theta^2, GHz
    double e_j = 0.0;        // GHz
    double e_l = 0.0;        // coefficient of phi^2 as written, GHz
    double phi_ext = 0.0;    // radians

    double phi_ext_raw = 0.0;
};

// Canonicalize and check invariants. Throws NonPositiveEnergy / NonFinite.
TransmonParams validate(TransmonParams p);
FluxoniumParams validate(FluxoniumParams p);
ZeroPiParams validate(ZeroPiParams p);

// Reduce x into [0, period).
double wrap_into(double x, double period);

}  // namespace qubitmech
