#include "qubitmech/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "qubitmech/errors.hpp"

namespace qubitmech {

using nlohmann::json;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string circuit_name(Circuit c) {
    switch (c) {
        case Circuit::Transmon: return "transmon";
        case Circuit::Fluxonium: return "fluxonium";
        case Circuit::ZeroPi: return "zeropi";
    }
    return "?";
}

std::string swept_name_of(SweptVariable v) {
    switch (v) {
        case SweptVariable::NGate: return "n_g";
        case SweptVariable::PhiExt: return "phi_ext";
        case SweptVariable::EjOverEc: return "ej_over_ec";
    }
    return "?";
}

CircuitParams with_swept(const SweepSpec& spec, double value) {
    CircuitParams p = spec.base_params;
    if (!spec.sweep) return p;
    switch (spec.sweep->variable) {
        case SweptVariable::NGate:
            std::get<TransmonParams>(p).n_g = value;
            break;
        case SweptVariable::PhiExt:
            std::visit([&](auto& q) { q.phi_ext = value; }, p);
            break;
        case SweptVariable::EjOverEc:
            if (auto* t = std::get_if<TransmonParams>(&p)) {
                t->e_j = value * t->e_c;
            } else if (auto* f = std::get_if<FluxoniumParams>(&p)) {
                f->e_j = value * f->e_c;
            } else {
                throw ConfigError("ej_over_ec sweep is not defined for zeropi");
            }
            break;
    }
    return p;
}

}  // namespace

BasisSpec resolve_basis(const SweepSpec& spec) {
    const BasisConfig& b = spec.basis;
    switch (spec.circuit) {
        case Circuit::Transmon: {
            const auto& p = std::get<TransmonParams>(spec.base_params);
            if (b.kind && *b.kind == "twisted_grid") {
                return make_periodic_grid(b.n_points.value_or(512), p.n_g);
            }
            return make_charge_basis(b.n_max.value_or(default_charge_n_max(p)));
        }
        case Circuit::Fluxonium: {
            BoundedGrid g = default_fluxonium_grid();
            if (b.x_max) g.x_max = *b.x_max;
            if (b.n_points) g.n_points = *b.n_points;
            return make_bounded_grid(g.x_max, g.n_points);
        }
        case Circuit::ZeroPi: {
            BasisSpec d = default_zeropi_basis();
            const auto& prod = std::get<ProductBasis>(d.kind);
            int nt = static_cast<int>(prod.theta->dimension());
            auto g = std::get<BoundedGrid>(prod.phi->kind);
            if (b.theta_points) nt = *b.theta_points;
            if (b.phi_points) g.n_points = *b.phi_points;
            if (b.x_max) g.x_max = *b.x_max;
            return make_product_basis(make_periodic_grid(nt),
                                      make_bounded_grid(g.x_max, g.n_points));
        }
    }
    throw ConfigError("unknown circuit");
}

Spectrum solve_point(const SweepSpec& spec, const CircuitParams& params) {
    switch (spec.circuit) {
        case Circuit::Transmon: {
            TransmonParams p = validate(std::get<TransmonParams>(params));
            if (spec.basis.kind && *spec.basis.kind == "twisted_grid") {
                return lowest_eigenpairs(
                    transmon_twisted_grid_hamiltonian(p, spec.basis.n_points.value_or(512)),
                    spec.levels);
            }
            const int n_max = spec.basis.n_max.value_or(default_charge_n_max(p));
            return lowest_eigenpairs(transmon_charge_hamiltonian(p, n_max), spec.levels);
        }
        case Circuit::Fluxonium: {
            FluxoniumParams p = validate(std::get<FluxoniumParams>(params));
            BoundedGrid g = default_fluxonium_grid();
            if (spec.basis.x_max) g.x_max = *spec.basis.x_max;
            if (spec.basis.n_points) g.n_points = *spec.basis.n_points;
            return lowest_eigenpairs(fluxonium_hamiltonian(p, g), spec.levels);
        }
        case Circuit::ZeroPi: {
            ZeroPiParams p = validate(std::get<ZeroPiParams>(params));
            return lowest_eigenpairs(zeropi_hamiltonian(p, resolve_basis(spec)),
                                     spec.levels);
        }
    }
    throw ConfigError("unknown circuit");
}

int thread_cap_from_env() {
    const char* env = std::getenv("QUBITMECH_THREADS");
    if (!env) return 0;
    const int v = std::atoi(env);
    return v > 0 ? v : 0;
}

SweepResult run_sweep(const SweepSpec& spec, int n_threads) {
    if (spec.levels < 2) throw ConfigError("levels must be >= 2");

    std::vector<double> values;
    if (spec.sweep) {
        const auto& sw = *spec.sweep;
        if (sw.steps < 2) throw ConfigError("steps must be >= 2");
        if (!(sw.from < sw.to)) throw ConfigError("sweep requires from < to");
        for (int i = 0; i < sw.steps; ++i) {
            values.push_back(sw.from + (sw.to - sw.from) * i / (sw.steps - 1));
        }
    } else {
        values.push_back(0.0);  // single-point job
    }

    SweepResult result;
    result.levels = spec.levels;
    result.swept_name = spec.sweep ? swept_name_of(spec.sweep->variable) : "point";
    result.records.resize(values.size());

    auto compute = [&](std::size_t i) {
        SweepRecord& rec = result.records[i];
        rec.swept_value = values[i];
        try {
            const CircuitParams p =
                spec.sweep ? with_swept(spec, values[i]) : spec.base_params;
            const Spectrum s = solve_point(spec, p);
            rec.energies = s.energies;
            const QubitReport rep = qubit_report(s);
            rec.f10 = rep.f10;
            rec.flux_mat_el = rep.flux_mat_el;
            rec.charge_mat_el = rep.charge_mat_el;
            rec.disjointness = rep.disjointness;
        } catch (const Error& e) {
            rec.energies.clear();
            rec.error = e.name();
        } catch (const std::exception&) {
            rec.energies.clear();
            rec.error = "SolverError";
        }
    };

    int workers = n_threads;
    if (workers <= 0) workers = thread_cap_from_env();
    if (workers <= 0) {
        workers = static_cast<int>(std::thread::hardware_concurrency());
        if (workers <= 0) workers = 1;
    }
    workers = std::min<int>(workers, static_cast<int>(values.size()));

    if (workers <= 1) {
        for (std::size_t i = 0; i < values.size(); ++i) compute(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t) {
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < values.size();
                     i = next.fetch_add(1)) {
                    compute(i);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    json meta;
    meta["version"] = kVersion;
    meta["circuit"] = circuit_name(spec.circuit);
    meta["levels"] = spec.levels;
    meta["basis"] = resolve_basis(spec).describe();
    meta["solver_tol"] = {{"dense", 1e-10}, {"iterative", 1e-8}};
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            json& j = meta["params"];
            if constexpr (std::is_same_v<T, TransmonParams>) {
                j = {{"e_c", p.e_c}, {"e_j", p.e_j}, {"n_g", p.n_g},
                     {"phi_ext", p.phi_ext}};
            } else if constexpr (std::is_same_v<T, FluxoniumParams>) {
                j = {{"e_c", p.e_c}, {"e_l", p.e_l}, {"e_j", p.e_j},
                     {"phi_ext", p.phi_ext}};
            } else {
                j = {{"e_c_phi", p.e_c_phi}, {"e_c_theta", p.e_c_theta},
                     {"e_j", p.e_j}, {"e_l", p.e_l}, {"phi_ext", p.phi_ext}};
            }
        },
        spec.base_params);
    if (spec.sweep) {
        meta["sweep"] = {{"variable", result.swept_name},
                         {"from", spec.sweep->from},
                         {"to", spec.sweep->to},
                         {"steps", spec.sweep->steps}};
    }
    meta["timestamp"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::system_clock::now().time_since_epoch())
            .count();
    result.metadata_json = meta.dump(2);
    return result;
}

// --- Config -----------------------------------------------------------------

namespace {

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const char* where) {
    for (const auto& [key, _] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed) {
            if (key == a) {
                ok = true;
                break;
            }
        }
        if (!ok) {
            throw SchemaError("unknown field \"" + key + "\" in " + where);
        }
    }
}

double num(const json& obj, const char* key, std::optional<double> fallback = {}) {
    if (!obj.contains(key)) {
        if (fallback) return *fallback;
        throw SchemaError(std::string("missing field \"") + key + "\"");
    }
    if (!obj[key].is_number()) {
        throw SchemaError(std::string("field \"") + key + "\" must be a number");
    }
    return obj[key].get<double>();
}

}  // namespace

SweepSpec load_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
    if (!root.is_object()) throw SchemaError("config root must be an object");
    reject_unknown(root, {"circuit", "params", "sweep", "levels", "basis"}, "config");

    SweepSpec spec;
    const std::string circuit = root.value("circuit", std::string{});
    if (circuit == "transmon") {
        spec.circuit = Circuit::Transmon;
    } else if (circuit == "fluxonium") {
        spec.circuit = Circuit::Fluxonium;
    } else if (circuit == "zeropi") {
        spec.circuit = Circuit::ZeroPi;
    } else {
        throw SchemaError("circuit must be transmon | fluxonium | zeropi");
    }

    if (!root.contains("params") || !root["params"].is_object()) {
        throw SchemaError("missing \"params\" object");
    }
    const json& pj = root["params"];
    switch (spec.circuit) {
        case Circuit::Transmon: {
            reject_unknown(pj, {"e_c", "e_j", "n_g", "phi_ext"}, "params");
            TransmonParams p;
            p.e_c = num(pj, "e_c");
            p.e_j = num(pj, "e_j");
            p.n_g = num(pj, "n_g", 0.0);
            p.phi_ext = num(pj, "phi_ext", 0.0);
            spec.base_params = validate(p);
            break;
        }
        case Circuit::Fluxonium: {
            reject_unknown(pj, {"e_c", "e_l", "e_j", "phi_ext"}, "params");
            FluxoniumParams p;
            p.e_c = num(pj, "e_c");
            p.e_l = num(pj, "e_l");
            p.e_j = num(pj, "e_j");
            p.phi_ext = num(pj, "phi_ext", 0.0);
            spec.base_params = validate(p);
            break;
        }
        case Circuit::ZeroPi: {
            reject_unknown(pj, {"e_c_phi", "e_c_theta", "e_j", "e_l", "phi_ext"},
                           "params");
            ZeroPiParams p;
            p.e_c_phi = num(pj, "e_c_phi");
            p.e_c_theta = num(pj, "e_c_theta");
            p.e_j = num(pj, "e_j");
            p.e_l = num(pj, "e_l");
            p.phi_ext = num(pj, "phi_ext", 0.0);
            spec.base_params = validate(p);
            break;
        }
    }

    if (root.contains("sweep")) {
        const json& sj = root["sweep"];
        if (!sj.is_object()) throw SchemaError("\"sweep\" must be an object");
        reject_unknown(sj, {"variable", "from", "to", "steps"}, "sweep");
        SweepRange sw;
        const std::string var = sj.value("variable", std::string{});
        if (var == "n_g") {
            if (spec.circuit != Circuit::Transmon) {
                throw SchemaError("n_g sweeps apply to the transmon only");
            }
            sw.variable = SweptVariable::NGate;
        } else if (var == "phi_ext") {
            sw.variable = SweptVariable::PhiExt;
        } else if (var == "ej_over_ec") {
            if (spec.circuit == Circuit::ZeroPi) {
                throw SchemaError("ej_over_ec sweeps apply to transmon/fluxonium");
            }
            sw.variable = SweptVariable::EjOverEc;
        } else {
            throw SchemaError("sweep variable must be n_g | phi_ext | ej_over_ec");
        }
        sw.from = num(sj, "from");
        sw.to = num(sj, "to");
        sw.steps = static_cast<int>(num(sj, "steps"));
        if (!(sw.from < sw.to)) throw SchemaError("sweep requires from < to");
        if (sw.steps < 2) throw SchemaError("sweep requires steps >= 2");
        spec.sweep = sw;
    }

    if (root.contains("levels")) {
        if (!root["levels"].is_number_integer()) {
            throw SchemaError("\"levels\" must be an integer");
        }
        spec.levels = root["levels"].get<int>();
        if (spec.levels < 2) throw SchemaError("levels must be >= 2");
    }

    if (root.contains("basis")) {
        const json& bj = root["basis"];
        if (!bj.is_object()) throw SchemaError("\"basis\" must be an object");
        reject_unknown(bj,
                       {"kind", "n_max", "n_points", "x_max", "theta_points",
                        "phi_points"},
                       "basis");
        if (bj.contains("kind")) {
            const std::string k = bj["kind"].get<std::string>();
            if (k != "charge" && k != "twisted_grid") {
                throw SchemaError("basis kind must be charge | twisted_grid");
            }
            spec.basis.kind = k;
        }
        if (bj.contains("n_max")) spec.basis.n_max = static_cast<int>(num(bj, "n_max"));
        if (bj.contains("n_points")) {
            spec.basis.n_points = static_cast<int>(num(bj, "n_points"));
        }
        if (bj.contains("x_max")) spec.basis.x_max = num(bj, "x_max");
        if (bj.contains("theta_points")) {
            spec.basis.theta_points = static_cast<int>(num(bj, "theta_points"));
        }
        if (bj.contains("phi_points")) {
            spec.basis.phi_points = static_cast<int>(num(bj, "phi_points"));
        }
    }
    // fail early on inconsistent basis settings
    resolve_basis(spec);
    return spec;
}

SweepSpec load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_config(ss.str());
}

// --- Output -----------------------------------------------------------------

std::string csv_to_string(const SweepResult& r) {
    std::ostringstream os;
    os << "swept_name,swept_value";
    for (int i = 0; i < r.levels; ++i) os << ",E" << i;
    os << ",f10,flux_mat_el,charge_mat_el,disjointness,error\n";
    for (const auto& rec : r.records) {
        os << r.swept_name << "," << fmt(rec.swept_value);
        for (int i = 0; i < r.levels; ++i) {
            os << ",";
            if (static_cast<std::size_t>(i) < rec.energies.size()) {
                os << fmt(rec.energies[i]);
            }
        }
        auto opt = [&](const std::optional<double>& v) {
            os << ",";
            if (v) os << fmt(*v);
        };
        opt(rec.f10);
        opt(rec.flux_mat_el);
        opt(rec.charge_mat_el);
        opt(rec.disjointness);
        os << "," << rec.error << "\n";
    }
    return os.str();
}

void write_csv(const SweepResult& r, const std::string& destination) {
    std::ofstream out(destination, std::ios::binary);
    if (!out) throw IoError("cannot open output file " + destination);
    out << csv_to_string(r);
    if (!out) throw IoError("failed writing " + destination);
    std::ofstream meta(destination + ".meta.json", std::ios::binary);
    if (!meta) throw IoError("cannot open metadata sidecar for " + destination);
    meta << r.metadata_json << "\n";
    if (!meta) throw IoError("failed writing metadata sidecar");
}

void export_wavefunctions(const Spectrum& s, const std::vector<int>& levels,
                          const std::vector<double>& potential,
                          const std::string& destination) {
    const bool grid_1d = std::holds_alternative<BoundedGrid>(s.basis.kind) ||
                         std::holds_alternative<PeriodicGrid>(s.basis.kind);
    if (!grid_1d) {
        throw UnsupportedBasis("wavefunction export needs a 1-D grid basis");
    }
    const std::vector<double> x = s.basis.coordinates();
    if (potential.size() != x.size()) {
        throw ConfigError("potential column length does not match the grid");
    }
    for (int lvl : levels) {
        if (lvl < 0 || static_cast<std::size_t>(lvl) >= s.states.size()) {
            throw BadLevel("wavefunction level out of range");
        }
    }

    // plot scale: 40% of the mean exported level spacing per unit amplitude
    double max_amp = 0.0;
    for (int lvl : levels) {
        max_amp = std::max(max_amp, s.states[lvl].cwiseAbs().maxCoeff());
    }
    double spacing = 1.0;
    if (levels.size() >= 2) {
        std::vector<double> es;
        for (int lvl : levels) es.push_back(s.energies[lvl]);
        std::sort(es.begin(), es.end());
        spacing = std::max(1.0, (es.back() - es.front()) /
                                    static_cast<double>(es.size() - 1));
    }
    const double scale = max_amp > 0 ? 0.4 * spacing / max_amp : 1.0;

    std::ofstream out(destination, std::ios::binary);
    if (!out) throw IoError("cannot open output file " + destination);
    out << "x,V";
    for (int lvl : levels) out << ",psi_plot_" << lvl << ",psi_raw_" << lvl;
    out << "\n";
    for (std::size_t i = 0; i < x.size(); ++i) {
        out << fmt(x[i]) << "," << fmt(potential[i]);
        for (int lvl : levels) {
            const double raw = s.states[lvl](static_cast<int>(i)).real();
            out << "," << fmt(s.energies[lvl] + scale * raw) << "," << fmt(raw);
        }
        out << "\n";
    }
    if (!out) throw IoError("failed writing " + destination);
}

}  // namespace qubitmech
