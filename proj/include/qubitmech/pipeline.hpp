#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qubitmech/observables.hpp"

namespace qubitmech {

enum class Circuit { Transmon, Fluxonium, ZeroPi };
enum class SweptVariable { NGate, PhiExt, EjOverEc };

using CircuitParams = std::variant<TransmonParams, FluxoniumParams, ZeroPiParams>;

// Basis overrides; fields left empty fall back to the operators module
// defaults for the circuit.
struct BasisConfig {
    std::optional<int> n_max;         // transmon charge basis
    std::optional<std::string> kind;  // transmon: "charge" | "twisted_grid"
    std::optional<int> n_points;      // twisted / bounded grid
    std::optional<double> x_max;      // bounded grid
    std::optional<int> theta_points;  // 0-pi
    std::optional<int> phi_points;    // 0-pi
};

struct SweepRange {
    SweptVariable variable = SweptVariable::PhiExt;
    double from = 0.0;
    double to = 0.0;
    int steps = 2;
};

struct SweepSpec {
    Circuit circuit = Circuit::Fluxonium;
    CircuitParams base_params;
    std::optional<SweepRange> sweep;  // empty = single-point job
    int levels = 4;
    BasisConfig basis;
};

struct SweepRecord {
    double swept_value = 0.0;
    std::vector<double> energies;  // ascending; empty on error
    std::optional<double> f10;
    std::optional<double> flux_mat_el;
    std::optional<double> charge_mat_el;
    std::optional<double> disjointness;
    std::string error;  // error name; empty on success
};

struct SweepResult {
    std::string swept_name;
    std::vector<SweepRecord> records;  // ascending swept order
    int levels = 0;
    std::string metadata_json;  // params, basis, tolerances, code version
};

// Resolve the basis config to a concrete BasisSpec for the circuit.
BasisSpec resolve_basis(const SweepSpec& spec);

// Assemble + solve one parameter point.
Spectrum solve_point(const SweepSpec& spec, const CircuitParams& params);

// Deterministic sweep; per-point failures become error records. n_threads
// 0 means auto (hardware concurrency, capped by QUBITMECH_THREADS).
SweepResult run_sweep(const SweepSpec& spec, int n_threads = 0);

// Parse the documented JSON config schema; unknown keys are rejected.
SweepSpec load_config(const std::string& text);
SweepSpec load_config_file(const std::string& path);

// Header then one row per point. Floats carry 12 significant digits.
// Writes `destination` and a metadata sidecar `destination + ".meta.json"`.
void write_csv(const SweepResult& r, const std::string& destination);
std::string csv_to_string(const SweepResult& r);

// CSV with columns x, V(x), psi_plot_k = E_k + c*psi_k and psi_raw_k. The
// plot scale c is 0.4 * mean level spacing / max |psi| (1 GHz floor).
void export_wavefunctions(const Spectrum& s, const std::vector<int>& levels,
                          const std::vector<double>& potential,
                          const std::string& destination);

int thread_cap_from_env();

}  // namespace qubitmech
