#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "qubitmech/errors.hpp"
#include "qubitmech/mechanics.hpp"
#include "qubitmech/operators.hpp"
#include "qubitmech/pipeline.hpp"
#include "qubitmech/selfcheck.hpp"

using nlohmann::json;
using namespace qubitmech;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitIo = 4;
constexpr int kExitCheck = 5;

int exit_code_for(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::Config: return kExitConfig;
        case ErrorKind::Solver: return kExitSolver;
        case ErrorKind::Io: return kExitIo;
    }
    return kExitSolver;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Apply dotted-key overrides (params.phi_ext=3.14) onto the raw JSON text.
std::string apply_overrides(std::string text,
                            const std::vector<std::string>& overrides) {
    if (overrides.empty()) return text;
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
    for (const std::string& ov : overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("override must look like key.path=value: " + ov);
        }
        const std::string path = ov.substr(0, eq);
        const std::string value = ov.substr(eq + 1);
        json* node = &root;
        std::istringstream ps(path);
        std::string part;
        std::vector<std::string> parts;
        while (std::getline(ps, part, '.')) parts.push_back(part);
        if (parts.empty()) throw ConfigError("empty override key");
        for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
            node = &(*node)[parts[i]];
        }
        try {
            (*node)[parts.back()] = json::parse(value);
        } catch (const json::parse_error&) {
            (*node)[parts.back()] = value;  // bare string
        }
    }
    return root.dump();
}

SweepSpec load_spec(const std::string& config_path,
                    const std::vector<std::string>& overrides) {
    return load_config(apply_overrides(read_file(config_path), overrides));
}

std::vector<double> point_potential(const SweepSpec& spec, const BasisSpec& basis) {
    const std::vector<double> x = basis.coordinates();
    std::vector<double> v(x.size());
    if (spec.circuit == Circuit::Fluxonium) {
        const auto& p = std::get<FluxoniumParams>(spec.base_params);
        for (std::size_t i = 0; i < x.size(); ++i) v[i] = fluxonium_potential(p, x[i]);
    } else if (spec.circuit == Circuit::Transmon) {
        const auto& p = std::get<TransmonParams>(spec.base_params);
        for (std::size_t i = 0; i < x.size(); ++i) {
            v[i] = p.e_j * (1.0 - std::cos(x[i] - p.phi_ext));
        }
    } else {
        throw UnsupportedBasis("wavefunction export supports 1-D circuits only");
    }
    return v;
}

int cmd_spectrum(const std::string& config, int levels_override,
                 const std::string& out, const std::vector<std::string>& overrides) {
    SweepSpec spec = load_spec(config, overrides);
    if (levels_override > 0) spec.levels = levels_override;
    spec.sweep.reset();
    const Spectrum s = solve_point(spec, spec.base_params);
    const QubitReport rep = qubit_report(s);

    std::printf("basis: %s\n", s.basis.describe().c_str());
    for (std::size_t i = 0; i < s.energies.size(); ++i) {
        std::printf("E%zu = %.12g GHz\n", i, s.energies[i]);
    }
    std::printf("f10 = %.12g GHz\n", rep.f10);
    if (s.energies.size() >= 3) {
        std::printf("f21 = %.12g GHz\nanharmonicity = %.12g GHz\n", rep.f21,
                    rep.anharmonicity);
    }
    if (rep.flux_mat_el) std::printf("flux_mat_el = %.12g\n", *rep.flux_mat_el);
    if (rep.charge_mat_el) std::printf("charge_mat_el = %.12g\n", *rep.charge_mat_el);
    if (rep.disjointness) {
        std::printf("disjointness (overlap-based) = %.12g\n", *rep.disjointness);
    }
    if (!out.empty()) {
        write_csv(run_sweep(spec), out);
    }
    return kExitOk;
}

int cmd_sweep(const std::string& config, const std::string& out,
              const std::vector<std::string>& overrides) {
    SweepSpec spec = load_spec(config, overrides);
    const SweepResult r = run_sweep(spec);
    std::size_t failed = 0;
    for (const auto& rec : r.records) {
        if (!rec.error.empty()) ++failed;
    }
    write_csv(r, out);
    if (failed == r.records.size()) {
        std::fprintf(stderr, "error: all %zu sweep points failed\n", failed);
        return kExitSolver;
    }
    if (failed > 0) {
        std::fprintf(stderr, "warning: %zu of %zu sweep points failed\n", failed,
                     r.records.size());
    }
    std::printf("wrote %zu records to %s\n", r.records.size(), out.c_str());
    return kExitOk;
}

int cmd_wavefunctions(const std::string& config, const std::string& levels_arg,
                      const std::string& out,
                      const std::vector<std::string>& overrides) {
    SweepSpec spec = load_spec(config, overrides);
    spec.sweep.reset();
    std::vector<int> levels;
    std::istringstream ls(levels_arg);
    std::string tok;
    while (std::getline(ls, tok, ',')) {
        if (!tok.empty()) levels.push_back(std::stoi(tok));
    }
    if (levels.empty()) throw ConfigError("no levels requested");
    int max_level = 0;
    for (int l : levels) max_level = std::max(max_level, l);
    spec.levels = std::max(spec.levels, max_level + 1);

    const Spectrum s = solve_point(spec, spec.base_params);
    export_wavefunctions(s, levels, point_potential(spec, s.basis), out);
    std::printf("wrote %zu wavefunctions to %s\n", levels.size(), out.c_str());
    return kExitOk;
}

json mech_to_json(const TransmonMech& m) {
    return {{"inertia_I", m.inertia_I}, {"k", m.k}, {"length_L", m.length_L},
            {"n_g", m.n_g}, {"theta_offset", m.theta_offset}};
}
json mech_to_json(const FluxoniumMech& m) {
    return {{"inertia_I", m.inertia_I}, {"k_j", m.k_j}, {"k_l", m.k_l},
            {"half_length_l", m.half_length_l}, {"theta_offset", m.theta_offset}};
}
json mech_to_json(const ZeroPiMech& m) {
    return {{"inertia_I_phi", m.inertia_I_phi},
            {"inertia_I_theta", m.inertia_I_theta},
            {"k_j", m.k_j}, {"k_l", m.k_l}, {"length_L", m.length_L},
            {"theta_offset", m.theta_offset}};
}

double get_num(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number()) {
        throw SchemaError(std::string("missing numeric field \"") + key + "\"");
    }
    return j[key].get<double>();
}

int cmd_map(const std::string& direction, const std::string& circuit,
            const std::string& config, const std::vector<std::string>& overrides) {
    json root;
    try {
        root = json::parse(apply_overrides(read_file(config), overrides));
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
    json out;
    if (direction == "e2m") {
        if (!root.contains("params")) throw SchemaError("missing \"params\"");
        const json& pj = root["params"];
        const json geom = root.value("geometry", json::object());
        if (circuit == "transmon") {
            if (!geom.contains("length_L")) {
                throw ConfigError("e2m transmon requires geometry.length_L");
            }
            TransmonParams p;
            p.e_c = get_num(pj, "e_c");
            p.e_j = get_num(pj, "e_j");
            p.n_g = pj.value("n_g", 0.0);
            p.phi_ext = pj.value("phi_ext", 0.0);
            out = mech_to_json(transmon_e2m(validate(p), get_num(geom, "length_L")));
        } else if (circuit == "fluxonium") {
            if (!geom.contains("half_length_l")) {
                throw ConfigError("e2m fluxonium requires geometry.half_length_l");
            }
            FluxoniumParams p;
            p.e_c = get_num(pj, "e_c");
            p.e_l = get_num(pj, "e_l");
            p.e_j = get_num(pj, "e_j");
            p.phi_ext = pj.value("phi_ext", 0.0);
            out = mech_to_json(
                fluxonium_e2m(validate(p), get_num(geom, "half_length_l")));
        } else if (circuit == "zeropi") {
            if (!geom.contains("length_L")) {
                throw ConfigError("e2m zeropi requires geometry.length_L");
            }
            ZeroPiParams p;
            p.e_c_phi = get_num(pj, "e_c_phi");
            p.e_c_theta = get_num(pj, "e_c_theta");
            p.e_j = get_num(pj, "e_j");
            p.e_l = get_num(pj, "e_l");
            p.phi_ext = pj.value("phi_ext", 0.0);
            out = mech_to_json(zeropi_e2m(validate(p), get_num(geom, "length_L")));
        } else {
            throw ConfigError("circuit must be transmon | fluxonium | zeropi");
        }
    } else if (direction == "m2e") {
        if (!root.contains("mech")) throw SchemaError("missing \"mech\"");
        const json& mj = root["mech"];
        if (circuit == "transmon") {
            TransmonMech m;
            m.inertia_I = get_num(mj, "inertia_I");
            m.k = get_num(mj, "k");
            m.length_L = get_num(mj, "length_L");
            m.n_g = mj.value("n_g", 0.0);
            m.theta_offset = mj.value("theta_offset", 0.0);
            const TransmonParams p = transmon_m2e(m);
            out = {{"e_c", p.e_c}, {"e_j", p.e_j}, {"n_g", p.n_g},
                   {"phi_ext", p.phi_ext}};
        } else if (circuit == "fluxonium") {
            FluxoniumMech m;
            m.inertia_I = get_num(mj, "inertia_I");
            m.k_j = get_num(mj, "k_j");
            m.k_l = get_num(mj, "k_l");
            m.half_length_l = get_num(mj, "half_length_l");
            m.theta_offset = mj.value("theta_offset", 0.0);
            const FluxoniumParams p = fluxonium_m2e(m);
            out = {{"e_c", p.e_c}, {"e_l", p.e_l}, {"e_j", p.e_j},
                   {"phi_ext", p.phi_ext}};
        } else if (circuit == "zeropi") {
            ZeroPiMech m;
            m.inertia_I_phi = get_num(mj, "inertia_I_phi");
            m.inertia_I_theta = get_num(mj, "inertia_I_theta");
            m.k_j = get_num(mj, "k_j");
            m.k_l = get_num(mj, "k_l");
            m.length_L = get_num(mj, "length_L");
            m.theta_offset = mj.value("theta_offset", 0.0);
            const ZeroPiParams p = zeropi_m2e(m);
            out = {{"e_c_phi", p.e_c_phi}, {"e_c_theta", p.e_c_theta},
                   {"e_j", p.e_j}, {"e_l", p.e_l}, {"phi_ext", p.phi_ext}};
        } else {
            throw ConfigError("circuit must be transmon | fluxonium | zeropi");
        }
    } else {
        throw ConfigError("direction must be e2m | m2e");
    }
    std::printf("%s\n", out.dump(2).c_str());
    return kExitOk;
}

int cmd_check(bool inject_fault) {
    detail::inject_stencil_fault(inject_fault);
    const std::vector<CheckResult> results = run_self_checks();
    detail::inject_stencil_fault(false);
    bool all_ok = true;
    for (const auto& r : results) {
        std::printf("[%s] %s: %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                    r.detail.c_str());
        all_ok = all_ok && r.pass;
    }
    std::printf("%zu checks, %s\n", results.size(), all_ok ? "all passed" : "FAILURES");
    return all_ok ? kExitOk : kExitCheck;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qubitmech: superconducting-qubit spectra and mechanical analogs"};
    app.require_subcommand(1);

    std::string config, out, levels_list = "0,1,2,3";
    std::string direction, circuit;
    int levels = 0;
    std::vector<std::string> overrides;
    bool inject_fault = false;

    auto* sp = app.add_subcommand("spectrum", "solve a single point and report levels");
    sp->add_option("--config", config)->required();
    sp->add_option("--levels", levels);
    sp->add_option("--out", out);
    sp->add_option("--set", overrides, "dotted-key overrides, e.g. params.phi_ext=3.14");

    auto* sw = app.add_subcommand("sweep", "run a parameter sweep to CSV");
    sw->add_option("--config", config)->required();
    sw->add_option("--out", out)->required();
    sw->add_option("--set", overrides);

    auto* wf = app.add_subcommand("wavefunctions", "export eigenfunctions to CSV");
    wf->add_option("--config", config)->required();
    wf->add_option("--levels", levels_list);
    wf->add_option("--out", out)->required();
    wf->add_option("--set", overrides);

    auto* mp = app.add_subcommand("map", "electrical <-> mechanical parameter map");
    mp->add_option("--direction", direction)->required();
    mp->add_option("--circuit", circuit)->required();
    mp->add_option("--config", config)->required();
    mp->add_option("--set", overrides);

    auto* ck = app.add_subcommand("check", "run the built-in invariant suite");
    ck->add_flag("--inject-stencil-fault", inject_fault)->group("");  // hidden

    CLI11_PARSE(app, argc, argv);

    try {
        if (sp->parsed()) return cmd_spectrum(config, levels, out, overrides);
        if (sw->parsed()) return cmd_sweep(config, out, overrides);
        if (wf->parsed()) return cmd_wavefunctions(config, levels_list, out, overrides);
        if (mp->parsed()) return cmd_map(direction, circuit, config, overrides);
        if (ck->parsed()) return cmd_check(inject_fault);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitSolver;
    }
    return kExitOk;
}
