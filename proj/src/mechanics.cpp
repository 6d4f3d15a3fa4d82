#include "qubitmech/mechanics.hpp"

#include <algorithm>
#include <cmath>

#include "qubitmech/errors.hpp"
#include "qubitmech/operators.hpp"

namespace qubitmech {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;

void require_positive(double v, const char* name) {
    if (!(v > 0) || !std::isfinite(v)) {
        throw NonPositiveInput(std::string(name) + " must be positive and finite");
    }
}

}  // namespace

TransmonMech transmon_e2m(const TransmonParams& p, double length_L) {
    require_positive(p.e_c, "e_c");
    require_positive(length_L, "length_L");
    TransmonMech m;
    m.inertia_I = 1.0 / (2.0 * p.e_c);
    m.k = 4.0 * p.e_j / (length_L * length_L);
    m.length_L = length_L;
    m.n_g = p.n_g;
    m.theta_offset = p.phi_ext;
    return m;
}

TransmonParams transmon_m2e(const TransmonMech& m) {
    require_positive(m.inertia_I, "inertia_I");
    require_positive(m.length_L, "length_L");
    TransmonParams p;
    p.e_c = 1.0 / (2.0 * m.inertia_I);
    p.e_j = 0.25 * m.k * m.length_L * m.length_L;
    p.n_g = m.n_g;
    p.phi_ext = m.theta_offset;
    return p;
}

FluxoniumMech fluxonium_e2m(const FluxoniumParams& p, double half_length_l) {
    require_positive(p.e_c, "e_c");
    require_positive(p.e_l, "e_l");
    require_positive(half_length_l, "half_length_l");
    FluxoniumMech m;
    m.inertia_I = 1.0 / (2.0 * p.e_c);
    m.k_j = 4.0 * p.e_j / (half_length_l * half_length_l);
    m.k_l = 8.0 * p.e_l;
    m.half_length_l = half_length_l;
    m.theta_offset = p.phi_ext;
    return m;
}

FluxoniumParams fluxonium_m2e(const FluxoniumMech& m) {
    require_positive(m.inertia_I, "inertia_I");
    require_positive(m.k_l, "k_l");
    require_positive(m.half_length_l, "half_length_l");
    FluxoniumParams p;
    p.e_c = 1.0 / (2.0 * m.inertia_I);
    p.e_j = 0.25 * m.k_j * m.half_length_l * m.half_length_l;
    p.e_l = m.k_l / 8.0;
    p.phi_ext = m.theta_offset;
    return p;
}

ZeroPiMech zeropi_e2m(const ZeroPiParams& p, double length_L) {
    require_positive(p.e_c_phi, "e_c_phi");
    require_positive(p.e_c_theta, "e_c_theta");
    require_positive(p.e_l, "e_l");
    require_positive(length_L, "length_L");
    ZeroPiMech m;
    m.inertia_I_phi = 1.0 / (8.0 * p.e_c_phi);
    m.inertia_I_theta = 1.0 / (8.0 * p.e_c_theta);
    m.k_l = p.e_l / 2.0;
    m.k_j = 2.0 * p.e_j / (length_L * length_L);
    m.length_L = length_L;
    m.theta_offset = p.phi_ext;
    return m;
}

ZeroPiParams zeropi_m2e(const ZeroPiMech& m) {
    require_positive(m.inertia_I_phi, "inertia_I_phi");
    require_positive(m.inertia_I_theta, "inertia_I_theta");
    require_positive(m.k_l, "k_l");
    require_positive(m.length_L, "length_L");
    ZeroPiParams p;
    p.e_c_phi = 1.0 / (8.0 * m.inertia_I_phi);
    p.e_c_theta = 1.0 / (8.0 * m.inertia_I_theta);
    p.e_l = 2.0 * m.k_l;
    p.e_j = 0.5 * m.k_j * m.length_L * m.length_L;
    p.phi_ext = m.theta_offset;
    return p;
}

double mechanical_potential(const MechanicalSystem& sys, double theta) {
    return std::visit(
        [&](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Pendulum>) {
                require_positive(s.mass, "mass");
                require_positive(s.gravity, "gravity");
                require_positive(s.length, "length");
                return s.mass * s.gravity * s.length * (1.0 - std::cos(theta));
            } else {
                require_positive(s.k, "k");
                require_positive(s.length, "length");
                return 0.25 * s.k * s.length * s.length * (1.0 - std::cos(theta));
            }
        },
        sys);
}

namespace {

double statics_potential(const FluxoniumParams& p, double th) {
    return 0.5 * p.e_l * th * th + p.e_j * (1.0 - std::cos(th - p.phi_ext));
}

double statics_torque(const FluxoniumParams& p, double th) {
    return p.e_l * th + p.e_j * std::sin(th - p.phi_ext);
}

double statics_stiffness(const FluxoniumParams& p, double th) {
    return p.e_l + p.e_j * std::cos(th - p.phi_ext);
}

}  // namespace

std::vector<Equilibrium> classical_equilibria(const FluxoniumParams& p,
                                              double search_window) {
    if (search_window < 4.0 * kPi) {
        throw RootFindingFailure("search window must span at least 4*pi");
    }
    const int n_scan = 2000;
    const double lo = -search_window / 2.0;
    const double h = search_window / n_scan;

    std::vector<double> roots;
    double prev_x = lo;
    double prev_f = statics_torque(p, lo);
    for (int i = 1; i <= n_scan; ++i) {
        const double x = lo + i * h;
        const double f = statics_torque(p, x);
        if (prev_f == 0.0) {
            roots.push_back(prev_x);
        } else if (f == 0.0) {
            roots.push_back(x);
        } else if ((prev_f < 0) != (f < 0)) {
            double a = prev_x, b = x, fa = prev_f;
            while (b - a > 1e-12) {
                const double m = 0.5 * (a + b);
                const double fm = statics_torque(p, m);
                if (fm == 0.0) {
                    a = b = m;
                } else if ((fa < 0) != (fm < 0)) {
                    b = m;
                } else {
                    a = m;
                    fa = fm;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
        prev_x = x;
        prev_f = f;
    }
    if (roots.empty()) throw RootFindingFailure("no equilibria found in window");

    std::sort(roots.begin(), roots.end());
    std::vector<Equilibrium> out;
    for (double r : roots) {
        if (!out.empty() && std::abs(r - out.back().theta_star) <= 1e-8) continue;
        out.push_back(Equilibrium{r, statics_potential(p, r),
                                  statics_stiffness(p, r) > 0});
    }
    return out;
}

double classical_splitting(const FluxoniumParams& p) {
    std::vector<Equilibrium> eq = classical_equilibria(p, 4.0 * kPi + 1.0);
    std::vector<double> stable;
    for (const auto& e : eq) {
        if (e.stable) stable.push_back(e.potential);
    }
    if (stable.size() < 2) {
        throw SingleWell("fewer than two stable equilibria; E_j/E_L too small");
    }
    std::sort(stable.begin(), stable.end());
    return stable[1] - stable[0];
}

double differential_output(double omega1, double omega2) {
    if (!std::isfinite(omega1) || !std::isfinite(omega2)) {
        throw NonFinite("angular velocities must be finite");
    }
    return 0.5 * (omega1 + omega2);
}

double zeropi_potential_identity_check(const ZeroPiParams& p, int samples) {
    if (samples < 1) throw ConfigError("samples must be >= 1");
    // deterministic low-discrepancy sampling of the (theta, phi) plane
    double max_dev = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double u = std::fmod(0.754877666 * (i + 1), 1.0);
        const double v = std::fmod(0.569840296 * (i + 1), 1.0);
        const double theta = 2.0 * kPi * u;
        const double phi = 20.0 * (v - 0.5);
        const double dev = std::abs(zeropi_potential(p, theta, phi) -
                                    zeropi_potential_sum_form(p, theta, phi));
        max_dev = std::max(max_dev, dev);
    }
    return max_dev;
}

}  // namespace qubitmech
