#pragma once

#include <string>
#include <vector>

namespace qubitmech {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Built-in invariant suite behind the `check` CLI subcommand: rotor limit,
// harmonic limit, cross-basis agreement, potential identity, mapping round
// trips, hermiticity, gauge invariance, classical symmetry.
std::vector<CheckResult> run_self_checks();

}  // namespace qubitmech
