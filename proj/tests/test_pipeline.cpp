#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qubitmech/errors.hpp"
#include "qubitmech/operators.hpp"
#include "qubitmech/pipeline.hpp"

using namespace qubitmech;

namespace {

constexpr double kPi = 3.14159265358979323846264338328;

std::vector<std::string> split(const std::string& line, char sep = ',') {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (std::getline(is, tok, sep)) out.push_back(tok);
    if (!line.empty() && line.back() == sep) out.push_back("");
    return out;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    std::string l;
    while (std::getline(is, l)) out.push_back(l);
    return out;
}

const char* kMinimalFluxonium = R"({
  "circuit": "fluxonium",
  "params": {"e_c": 1.0, "e_l": 0.5, "e_j": 8.0}
})";

}  // namespace

TEST_CASE("minimal config fills defaults") {
    SweepSpec spec = load_config(kMinimalFluxonium);
    CHECK(spec.circuit == Circuit::Fluxonium);
    CHECK(spec.levels == 4);
    CHECK_FALSE(spec.sweep.has_value());
    BasisSpec b = resolve_basis(spec);
    CHECK(b.dimension() == 800);
    const auto& p = std::get<FluxoniumParams>(spec.base_params);
    CHECK(p.phi_ext == 0.0);
}

TEST_CASE("schema violations name the offending field") {
    CHECK_THROWS_AS(load_config("{nope"), ParseError);

    const char* unknown = R"({"circuit":"fluxonium",
        "params":{"e_c":1,"e_l":1,"e_j":1,"e_cc":2}})";
    try {
        load_config(unknown);
        FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
        CHECK(std::string(e.what()).find("e_cc") != std::string::npos);
    }

    const char* reversed = R"({"circuit":"fluxonium",
        "params":{"e_c":1,"e_l":1,"e_j":1},
        "sweep":{"variable":"phi_ext","from":2.0,"to":1.0,"steps":5}})";
    CHECK_THROWS_AS(load_config(reversed), SchemaError);

    const char* bad_var = R"({"circuit":"fluxonium",
        "params":{"e_c":1,"e_l":1,"e_j":1},
        "sweep":{"variable":"n_g","from":0,"to":1,"steps":3}})";
    CHECK_THROWS_AS(load_config(bad_var), SchemaError);

    const char* bad_energy = R"({"circuit":"fluxonium",
        "params":{"e_c":1,"e_l":-1,"e_j":1}})";
    CHECK_THROWS_AS(load_config(bad_energy), NonPositiveEnergy);
}

TEST_CASE("two-step sweep lands on the endpoints") {
    SweepSpec spec = load_config(kMinimalFluxonium);
    spec.sweep = SweepRange{SweptVariable::PhiExt, 1.0, 2.0, 2};
    spec.basis.n_points = 200;
    spec.basis.x_max = 14.0;
    SweepResult r = run_sweep(spec);
    REQUIRE(r.records.size() == 2);
    CHECK(r.records[0].swept_value == doctest::Approx(1.0));
    CHECK(r.records[1].swept_value == doctest::Approx(2.0));
    CHECK(r.records[0].error.empty());
    for (std::size_t i = 1; i < r.records[0].energies.size(); ++i) {
        CHECK(r.records[0].energies[i] >= r.records[0].energies[i - 1]);
    }
}

TEST_CASE("transmon n_g sweep shows flat ground level in the deep regime") {
    const char* cfg = R"({"circuit":"transmon",
        "params":{"e_c":1,"e_j":50},
        "sweep":{"variable":"n_g","from":0,"to":1,"steps":11},
        "levels":2})";
    SweepResult r = run_sweep(load_config(cfg));
    REQUIRE(r.records.size() == 11);
    double lo = 1e300, hi = -1e300;
    for (const auto& rec : r.records) {
        REQUIRE(rec.error.empty());
        lo = std::min(lo, rec.energies[0]);
        hi = std::max(hi, rec.energies[0]);
    }
    CHECK(hi - lo <= 1e-4);
}

TEST_CASE("f10 dips at pi on a flux sweep") {
    SweepSpec spec = load_config(kMinimalFluxonium);
    spec.sweep = SweepRange{SweptVariable::PhiExt, kPi / 2, 3 * kPi / 2, 11};
    spec.basis.n_points = 400;
    SweepResult r = run_sweep(spec);
    std::size_t argmin = 0;
    for (std::size_t i = 0; i < r.records.size(); ++i) {
        REQUIRE(r.records[i].error.empty());
        if (*r.records[i].f10 < *r.records[argmin].f10) argmin = i;
    }
    CHECK(argmin == 5);  // the pi grid point
}

TEST_CASE("per-point failures become error records") {
    SweepSpec spec = load_config(kMinimalFluxonium);
    spec.sweep = SweepRange{SweptVariable::PhiExt, 0.0, 1.0, 3};
    spec.basis.x_max = 6.0;  // trips the tail check in the assembler
    SweepResult r = run_sweep(spec);
    REQUIRE(r.records.size() == 3);
    for (const auto& rec : r.records) {
        CHECK(rec.error == "DomainTooSmall");
        CHECK(rec.energies.empty());
        CHECK_FALSE(rec.f10.has_value());
    }
    // error rows carry the code in the last column with empty numeric cells
    auto rows = lines_of(csv_to_string(r));
    REQUIRE(rows.size() == 4);
    auto cells = split(rows[1]);
    CHECK(cells.back() == "DomainTooSmall");
    CHECK(cells[2] == "");
}

TEST_CASE("csv layout and numeric round trip") {
    SweepSpec spec = load_config(kMinimalFluxonium);
    spec.sweep = SweepRange{SweptVariable::PhiExt, 0.5, 1.5, 3};
    spec.basis.n_points = 300;
    spec.basis.x_max = 14.0;
    SweepResult r = run_sweep(spec);
    const std::string csv = csv_to_string(r);
    auto rows = lines_of(csv);
    REQUIRE(rows.size() == 4);  // header + 3 points
    CHECK(rows[0] ==
          "swept_name,swept_value,E0,E1,E2,E3,f10,flux_mat_el,charge_mat_el,"
          "disjointness,error");
    for (int i = 0; i < 3; ++i) {
        auto cells = split(rows[i + 1]);
        REQUIRE(cells.size() == 11);
        CHECK(cells[0] == "phi_ext");
        CHECK(std::stod(cells[1]) ==
              doctest::Approx(r.records[i].swept_value).epsilon(1e-12));
        for (int l = 0; l < 4; ++l) {
            CHECK(std::stod(cells[2 + l]) ==
                  doctest::Approx(r.records[i].energies[l]).epsilon(1e-11));
        }
        CHECK(std::stod(cells[6]) == doctest::Approx(*r.records[i].f10).epsilon(1e-11));
    }
}

TEST_CASE("sweeps are deterministic across thread counts") {
    SweepSpec spec = load_config(kMinimalFluxonium);
    spec.sweep = SweepRange{SweptVariable::PhiExt, kPi / 2, 3 * kPi / 2, 12};
    spec.basis.n_points = 300;
    SweepResult a = run_sweep(spec, 1);
    SweepResult b = run_sweep(spec, 4);
    SweepResult c = run_sweep(spec, 7);
    CHECK(csv_to_string(a) == csv_to_string(b));
    CHECK(csv_to_string(a) == csv_to_string(c));
}

TEST_CASE("write_csv produces file and sidecar; bad paths raise IoError") {
    SweepSpec spec = load_config(kMinimalFluxonium);
    spec.sweep = SweepRange{SweptVariable::PhiExt, 1.0, 2.0, 2};
    spec.basis.n_points = 200;
    spec.basis.x_max = 14.0;
    SweepResult r = run_sweep(spec);
    const std::string path = "/tmp/qubitmech_test_sweep.csv";
    write_csv(r, path);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ifstream meta(path + ".meta.json");
    REQUIRE(meta.good());
    std::ostringstream ms;
    ms << meta.rdbuf();
    CHECK(ms.str().find("\"circuit\"") != std::string::npos);
    CHECK_THROWS_AS(write_csv(r, "/nonexistent-dir/out.csv"), IoError);
}

TEST_CASE("wavefunction export") {
    FluxoniumParams p = validate(FluxoniumParams{.e_c = 1, .e_l = 1, .e_j = 0});
    BoundedGrid g{12.0, 799};  // odd count puts x = 0 on the grid
    Spectrum s = lowest_eigenpairs(fluxonium_hamiltonian(p, g), 2);
    std::vector<double> x = s.basis.coordinates();
    std::vector<double> v(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) v[i] = fluxonium_potential(p, x[i]);

    const std::string path = "/tmp/qubitmech_test_wf.csv";
    export_wavefunctions(s, {0, 1}, v, path);

    std::ifstream in(path);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == "x,V,psi_plot_0,psi_raw_0,psi_plot_1,psi_raw_1");
    double best_amp = -1.0, best_x = 1e9;
    std::string line;
    bool zero_potential_at_origin = false;
    while (std::getline(in, line)) {
        auto cells = split(line);
        REQUIRE(cells.size() == 6);
        const double xi = std::stod(cells[0]);
        const double amp = std::abs(std::stod(cells[3]));
        if (amp > best_amp) {
            best_amp = amp;
            best_x = xi;
        }
        if (std::abs(xi) < 1e-9) {
            zero_potential_at_origin = std::abs(std::stod(cells[1])) < 1e-12;
        }
    }
    CHECK(std::abs(best_x) <= 0.05);  // Gaussian peak at the origin
    CHECK(zero_potential_at_origin);

    TransmonParams tp = validate(TransmonParams{.e_c = 1, .e_j = 5});
    Spectrum charge = lowest_eigenpairs(transmon_charge_hamiltonian(tp, 10), 2);
    CHECK_THROWS_AS(export_wavefunctions(charge, {0}, {}, "/tmp/unused.csv"),
                    UnsupportedBasis);
}

TEST_CASE("two localized wavefunctions occupy different wells at 3pi/4") {
    FluxoniumParams p = validate(
        FluxoniumParams{.e_c = 1, .e_l = 0.5, .e_j = 8, .phi_ext = 3 * kPi / 4});
    Spectrum s = lowest_eigenpairs(fluxonium_hamiltonian(p, default_fluxonium_grid()), 2);
    std::vector<double> x = s.basis.coordinates();
    auto peak_of = [&](int lvl) {
        int imax = 0;
        for (int i = 1; i < s.states[lvl].size(); ++i) {
            if (std::abs(s.states[lvl](i)) > std::abs(s.states[lvl](imax))) imax = i;
        }
        return x[static_cast<std::size_t>(imax)];
    };
    // wells sit near phi_ext and phi_ext - 2 pi
    CHECK(std::abs(peak_of(0) - peak_of(1)) > kPi);
}

TEST_CASE("QUBITMECH_THREADS caps parallelism") {
    setenv("QUBITMECH_THREADS", "3", 1);
    CHECK(thread_cap_from_env() == 3);
    setenv("QUBITMECH_THREADS", "0", 1);
    CHECK(thread_cap_from_env() == 0);
    unsetenv("QUBITMECH_THREADS");
    CHECK(thread_cap_from_env() == 0);
}
