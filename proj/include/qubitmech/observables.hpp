#pragma once

#include <optional>
#include <utility>

#include "qubitmech/eigensolve.hpp"

namespace qubitmech {

struct QubitReport {
    double f10 = 0.0;            // GHz
    double f21 = 0.0;            // GHz
    double anharmonicity = 0.0;  // f21 - f10, GHz
    std::optional<double> flux_mat_el;    // |<0|phi|1>|
    std::optional<double> charge_mat_el;  // |<0|n|1>|
    std::optional<double> disjointness;   // in [0,1], grid bases only
};

enum class Parity { Even, Odd, None };

// E_j - E_i, i < j.
double transition(const Spectrum& s, int i, int j);

// |E_level(n_g = 0.5) - E_level(n_g = 0)|, charge basis.
double charge_dispersion(const TransmonParams& p, int level, int n_max);

// |<v_i| A |v_j>| with the grid quadrature weight applied.
double matrix_element(const Spectrum& s, const HermitianOperator& a, int i, int j);

// 1 - sum_x |psi_i(x)| |psi_j(x)| w(x); 1 means fully disjoint supports.
double disjointness(const Spectrum& s, int i, int j);

// Even/odd under reflection about the grid center; None if neither holds
// to 1e-6. Meaningful when the potential is even.
Parity parity_classify(const Spectrum& s, int level);

// Probability mass with theta in (-pi/2, pi/2] vs (pi/2, 3pi/2], 0-pi
// product basis only.
std::pair<double, double> theta_well_occupation(const Spectrum& s, int level);

// Convenience bundle; unsupported observables are left empty.
QubitReport qubit_report(const Spectrum& s);

}  // namespace qubitmech
