#pragma once

#include <variant>
#include <vector>

#include "qubitmech/params.hpp"

namespace qubitmech {

// Mechanical analog parameter sets. All mappings use hbar = 1, so inertias
// carry units of 1/energy; reinstating SI multiplies each inertia by
// hbar^2 expressed in the chosen unit system.

struct TransmonMech {
    double inertia_I = 0.0;  // balanced pendulum, I = 2 m L^2
    double k = 0.0;          // slider spring rate
    double length_L = 0.0;
    double n_g = 0.0;        // carried through unchanged
    double theta_offset = 0.0;
};

struct FluxoniumMech {
    double inertia_I = 0.0;
    double k_j = 0.0;          // slider spring rate
    double k_l = 0.0;          // torsion spring rate
    double half_length_l = 0.0;  // pendulum length is 2l
    double theta_offset = 0.0;
};

struct ZeroPiMech {
    double inertia_I_phi = 0.0;
    double inertia_I_theta = 0.0;
    double k_j = 0.0;
    double k_l = 0.0;
    double length_L = 0.0;  // gearbox output arm
    double theta_offset = 0.0;
};

// E_C <-> 1/(2I), E_j <-> k L^2 / 4.
TransmonMech transmon_e2m(const TransmonParams& p, double length_L);
TransmonParams transmon_m2e(const TransmonMech& m);

// E_C <-> 1/(2I), E_j <-> k_j l^2 / 4, E_L <-> k_l / 8, phi_ext <-> offset.
FluxoniumMech fluxonium_e2m(const FluxoniumParams& p, double half_length_l);
FluxoniumParams fluxonium_m2e(const FluxoniumMech& m);

// E_Cphi <-> 1/(8 I_phi), E_Ctheta <-> 1/(8 I_theta), E_l <-> 2 k_l,
// E_j <-> k_j L^2 / 2, phi_ext <-> offset.
ZeroPiMech zeropi_e2m(const ZeroPiParams& p, double length_L);
ZeroPiParams zeropi_m2e(const ZeroPiMech& m);

// --- Classical statics ------------------------------------------------------

struct Pendulum {
    double mass = 0.0, gravity = 0.0, length = 0.0;
};
struct SliderSpring {
    double k = 0.0, length = 0.0;
};
using MechanicalSystem = std::variant<Pendulum, SliderSpring>;

// Pendulum: m g L (1 - cos theta). Slider spring: (1/4) k L^2 (1 - cos theta).
double mechanical_potential(const MechanicalSystem& sys, double theta);

struct Equilibrium {
    double theta_star = 0.0;
    double potential = 0.0;
    bool stable = false;
};

// Fluxonium statics, U(theta) = (1/2) E_L theta^2 + E_j (1 - cos(theta -
// phi_ext)). Roots of U' located by sign-change bracketing on a 2000-point
// grid over [-window/2, window/2] followed by bisection to 1e-12.
std::vector<Equilibrium> classical_equilibria(const FluxoniumParams& p,
                                              double search_window);

// Potential difference between the two lowest stable equilibria. To first
// order in E_L/E_j this is 2 pi E_L |phi_ext - pi|.
double classical_splitting(const FluxoniumParams& p);

// Spur-gear differential: output is the average of the input velocities.
double differential_output(double omega1, double omega2);

// Max |first form - second form| of the 0-pi potential over a uniform
// sample grid; an exact identity up to round-off.
double zeropi_potential_identity_check(const ZeroPiParams& p, int samples);

}  // namespace qubitmech
