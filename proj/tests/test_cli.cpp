#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

std::string g_cli;

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

RunResult run(const std::string& args) {
    const std::string out_path = "/tmp/qm_cli_out.txt";
    const std::string err_path = "/tmp/qm_cli_err.txt";
    const std::string cmd =
        g_cli + " " + args + " >" + out_path + " 2>" + err_path;
    const int rc = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    std::ifstream o(out_path), e(err_path);
    std::ostringstream so, se;
    so << o.rdbuf();
    se << e.rdbuf();
    r.out = so.str();
    r.err = se.str();
    return r;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    f << text;
}

const char* kFluxConfig = R"({
  "circuit": "fluxonium",
  "params": {"e_c": 1.0, "e_l": 0.5, "e_j": 8.0, "phi_ext": 3.141592653589793},
  "levels": 4,
  "basis": {"n_points": 400}
})";

int count_lines(const std::string& path) {
    std::ifstream f(path);
    int n = 0;
    std::string l;
    while (std::getline(f, l)) ++n;
    return n;
}

}  // namespace

TEST_CASE("spectrum prints ascending energies and exits 0") {
    write_file("/tmp/qm_flux.json", kFluxConfig);
    RunResult r = run("spectrum --config /tmp/qm_flux.json --levels 4");
    CHECK(r.exit_code == 0);
    double prev = -1e300;
    int found = 0;
    std::istringstream is(r.out);
    std::string line;
    while (std::getline(is, line)) {
        double e;
        if (std::sscanf(line.c_str(), "E%*d = %lf", &e) == 1) {
            CHECK(e >= prev);
            prev = e;
            ++found;
        }
    }
    CHECK(found == 4);
    CHECK(r.out.find("f10") != std::string::npos);
}

TEST_CASE("config errors exit 2 with a named diagnostic") {
    write_file("/tmp/qm_bad.json", "{not json");
    RunResult r = run("spectrum --config /tmp/qm_bad.json");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("ParseError") != std::string::npos);

    write_file("/tmp/qm_neg.json",
               R"({"circuit":"fluxonium","params":{"e_c":1,"e_l":-1,"e_j":8}})");
    RunResult r2 = run("spectrum --config /tmp/qm_neg.json");
    CHECK(r2.exit_code == 2);
    CHECK(r2.err.find("NonPositiveEnergy") != std::string::npos);
}

TEST_CASE("sweep writes a CSV with one row per point") {
    write_file("/tmp/qm_sweep.json", R"({
      "circuit": "fluxonium",
      "params": {"e_c": 1.0, "e_l": 0.5, "e_j": 8.0},
      "sweep": {"variable": "phi_ext", "from": 1.5707963, "to": 4.7123889,
                "steps": 11},
      "basis": {"n_points": 300}
    })");
    RunResult r = run("sweep --config /tmp/qm_sweep.json --out /tmp/qm_sweep.csv");
    CHECK(r.exit_code == 0);
    CHECK(count_lines("/tmp/qm_sweep.csv") == 12);  // header + 11 points

    RunResult bad = run("sweep --config /tmp/qm_sweep.json --out /nope/qm.csv");
    CHECK(bad.exit_code == 4);
    CHECK(bad.err.find("IoError") != std::string::npos);
}

TEST_CASE("repeated sweeps are byte-identical at any parallelism") {
    write_file("/tmp/qm_det.json", R"({
      "circuit": "fluxonium",
      "params": {"e_c": 1.0, "e_l": 0.5, "e_j": 8.0},
      "sweep": {"variable": "phi_ext", "from": 2.0, "to": 4.0, "steps": 8},
      "basis": {"n_points": 300}
    })");
    auto csv_with_threads = [&](const char* n, const std::string& out) {
        setenv("QUBITMECH_THREADS", n, 1);
        RunResult r = run("sweep --config /tmp/qm_det.json --out " + out);
        unsetenv("QUBITMECH_THREADS");
        REQUIRE(r.exit_code == 0);
        std::ifstream f(out);
        std::ostringstream ss;
        ss << f.rdbuf();
        return ss.str();
    };
    const std::string a = csv_with_threads("1", "/tmp/qm_det_a.csv");
    const std::string b = csv_with_threads("4", "/tmp/qm_det_b.csv");
    CHECK(a == b);
}

TEST_CASE("dotted-key overrides change the solved point") {
    write_file("/tmp/qm_flux0.json", R"({
      "circuit": "fluxonium",
      "params": {"e_c": 1.0, "e_l": 0.5, "e_j": 8.0},
      "basis": {"n_points": 300}
    })");
    RunResult base = run("spectrum --config /tmp/qm_flux0.json");
    RunResult shifted = run(
        "spectrum --config /tmp/qm_flux0.json --set params.phi_ext=3.14159265");
    CHECK(base.exit_code == 0);
    CHECK(shifted.exit_code == 0);
    CHECK(base.out != shifted.out);
}

TEST_CASE("wavefunctions subcommand writes the plot CSV") {
    write_file("/tmp/qm_wf.json", kFluxConfig);
    RunResult r = run(
        "wavefunctions --config /tmp/qm_wf.json --levels 0,1 --out /tmp/qm_wf.csv");
    CHECK(r.exit_code == 0);
    std::ifstream f("/tmp/qm_wf.csv");
    std::string header;
    std::getline(f, header);
    CHECK(header == "x,V,psi_plot_0,psi_raw_0,psi_plot_1,psi_raw_1");
    CHECK(count_lines("/tmp/qm_wf.csv") == 401);
}

TEST_CASE("map subcommand") {
    write_file("/tmp/qm_map_e2m.json", R"({
      "params": {"e_c": 1.0, "e_j": 3.0},
      "geometry": {"length_L": 1.0}
    })");
    RunResult r = run("map --direction e2m --circuit transmon "
                      "--config /tmp/qm_map_e2m.json");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"inertia_I\": 0.5") != std::string::npos);
    CHECK(r.out.find("\"k\": 12.0") != std::string::npos);  // k = 4 e_j / L^2

    write_file("/tmp/qm_map_m2e.json", R"({
      "mech": {"inertia_I": 0.5, "k_j": 8.0, "k_l": 8.0,
               "half_length_l": 1.0, "theta_offset": 0.0}
    })");
    RunResult r2 = run("map --direction m2e --circuit fluxonium "
                       "--config /tmp/qm_map_m2e.json");
    CHECK(r2.exit_code == 0);
    CHECK(r2.out.find("\"e_l\": 1.0") != std::string::npos);

    write_file("/tmp/qm_map_nol.json", R"({"params": {"e_c": 1.0, "e_j": 3.0}})");
    RunResult r3 = run("map --direction e2m --circuit transmon "
                       "--config /tmp/qm_map_nol.json");
    CHECK(r3.exit_code == 2);
}

TEST_CASE("check subcommand") {
    RunResult r = run("check");
    CHECK(r.exit_code == 0);
    int passes = 0;
    std::istringstream is(r.out);
    std::string line;
    while (std::getline(is, line)) {
        if (line.rfind("[PASS]", 0) == 0) ++passes;
    }
    CHECK(passes >= 6);

    RunResult again = run("check");
    CHECK(again.out == r.out);  // deterministic report

    RunResult fault = run("check --inject-stencil-fault");
    CHECK(fault.exit_code == 5);
}

int main(int argc, char** argv) {
    doctest::Context ctx;
    for (int i = 1; i < argc; ++i) {
        if (argv[i][0] != '-') {
            g_cli = argv[i];
        }
    }
    if (g_cli.empty()) {
        std::fprintf(stderr, "usage: test_cli <path-to-cli-binary>\n");
        return 1;
    }
    ctx.applyCommandLine(1, argv);
    return ctx.run();
}
