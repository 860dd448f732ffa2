#include "muskat/benchmarks.hpp"
#include "muskat/config.hpp"
#include "muskat/output.hpp"

#include <doctest.h>

#include <clocale>
#include <cstring>
#include <numbers>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>

using namespace muskat;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("muskat_cli_io_" + name);
    fs::remove_all(dir);
    return dir;
}

OutputBundle sample_bundle() {
    const Grid grid = Grid::centered(1, 64);
    const SimulationResult run = simulate(make_benchmark("offset", grid), EpsParams(0.1, 0.0, 1.0), 0.05, {0.025});
    OutputBundle b;
    b.trajectory = run.trajectory;
    b.diagnostics = run.diagnostics;
    ErrorCurve c;
    c.samples = {{0.25, 0.5, 1.0 / 3.0}, {0.125, 0.5, std::numbers::pi * 1e-7}, {0.0625, 1.0, 5e-324}};
    b.curves = {c};
    RateFit f;
    f.t = 0.5;
    f.slope = 0.912345678901234567;
    f.intercept = -1.0 / 7.0;
    f.r_squared = 0.99999999999999989;
    f.theoretical_exponent = 42.0 / 47.0;
    f.pass = true;
    b.fits = {f};
    b.manifest.command = "test";
    b.manifest.config = {{"params.eps", "0.1"}};
    return b;
}

}  // namespace

TEST_SUITE("cli_io") {

TEST_CASE("number formatting round trips exactly") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::uint64_t> bits;
    for (int k = 0; k < 20000; ++k) {
        const std::uint64_t b = bits(rng);
        double v;
        std::memcpy(&v, &b, sizeof v);
        if (!std::isfinite(v)) continue;
        const double back = parse_double(format_double(v));
        REQUIRE(std::memcmp(&back, &v, sizeof v) == 0);
    }
    for (double v : {0.0, -0.0, 1e300, -2.5e-310, 0.1, 1.0 / 3.0}) CHECK(parse_double(format_double(v)) == v);
    CHECK(parse_double(" 2.5 ") == 2.5);
    CHECK(parse_double("+1e-3") == 1e-3);
    CHECK_THROWS_AS(parse_double("1,5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_double(""), std::invalid_argument);
}

TEST_CASE("number formatting ignores the C locale") {
    const char* previous = std::setlocale(LC_ALL, nullptr);
    const std::string saved = previous ? previous : "C";
    for (const char* name : {"de_DE.UTF-8", "fr_FR.UTF-8", "de_DE"}) {
        if (std::setlocale(LC_ALL, name)) break;
    }
    CHECK(format_double(1.5) == "1.5");
    CHECK(parse_double("1.5") == 1.5);
    std::setlocale(LC_ALL, saved.c_str());
}

TEST_CASE("empty config gives defaults") {
    const SimulationConfig s = parse_simulation_config("");
    CHECK(s.grid.dim == 1);
    CHECK(s.grid.cells_per_axis == 1024);
    CHECK(s.grid.grid().length() == 20.0);
    CHECK(s.initial.benchmark == "two_bump");
    CHECK(s.resolved_output_times().size() == 101);

    const SweepSettings w = parse_sweep_config("");
    CHECK(w.sweep.dim == 1);
    CHECK(w.sweep.eps_list.size() == 7);
    CHECK(w.sweep.eps_list.back() == 0.00390625);
    CHECK(w.sweep.measurement_times == std::vector<double>{0.25, 0.5, 1.0});
    CHECK(w.sweep.reference == ReferenceMode::same_grid);
}

TEST_CASE("config values and comments") {
    const SweepSettings w = parse_sweep_config(
        "# comment\n; another\n[grid]\ndim = 2\ncells = 64\n[sweep]\neps_list = 0.25,0.125\nalpha = 0.1\n"
        "quantities = g\nreference = fine-grid\n[controls]\ncfl = 0.5\n");
    CHECK(w.sweep.eps_list.size() == 2);
    CHECK(w.sweep.dim == 2);
    CHECK(w.sweep.cells_per_axis == 64);
    CHECK(w.sweep.alpha == 0.1);
    CHECK_FALSE(w.sweep.measure_f);
    CHECK(w.sweep.measure_g);
    CHECK(w.sweep.reference == ReferenceMode::fine_grid);
    CHECK(w.sweep.controls.cfl == 0.5);

    const SimulationConfig s = parse_simulation_config("[run]\nt_end = 0.5\noutput_times = 0.1, 0.2\n[params]\neps=0\n");
    CHECK(s.resolved_output_times() == std::vector<double>{0.1, 0.2});
    CHECK(s.eps == 0.0);
}

TEST_CASE("config errors name section.key") {
    CHECK_THROWS_WITH_AS(parse_simulation_config("[grid]\ncels = 4\n"), doctest::Contains("grid.cels"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_simulation_config("[gird]\ncells = 4\n"), doctest::Contains("gird"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_simulation_config("[grid]\ncells = many\n"), doctest::Contains("grid.cells"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_simulation_config("[params]\neps = 1.5\n"), doctest::Contains("params"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_simulation_config("[run]\nt_end = 1\noutput_times = 2\n"),
                         doctest::Contains("run.output_times"), ConfigError);
    CHECK_THROWS_AS(parse_simulation_config("cells = 4\n"), ConfigError);
    CHECK_THROWS_AS(parse_simulation_config("[sweep]\nalpha = 0\n"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_sweep_config("[sweep]\nreference = coarse\n"), doctest::Contains("sweep.reference"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_sweep_config("[initial]\nbenchmark = wave\n"), doctest::Contains("initial.benchmark"),
                         ConfigError);
}

TEST_CASE("g experiment refuses alpha beyond 1/(d+2)") {
    CHECK_THROWS_WITH_AS(parse_sweep_config("[sweep]\nalpha = 0.5\n"), doctest::Contains("alpha < 1/(d+2)"),
                         ConfigError);
    CHECK_NOTHROW(parse_sweep_config("[sweep]\nalpha = 0.5\nquantities = f\n"));
    CHECK_THROWS_AS(parse_sweep_config("[grid]\ndim = 2\n[sweep]\nalpha = 0.25\n"), ConfigError);
}

TEST_CASE("config echo and parameter hash") {
    const SimulationConfig a = parse_simulation_config("[params]\neps = 0.2\n");
    const SimulationConfig b = parse_simulation_config("[params]\neps = 0.2\n# same\n");
    const SimulationConfig c = parse_simulation_config("[params]\neps = 0.3\n");
    RunManifest ma, mb, mc;
    ma.config = echo(a);
    mb.config = echo(b);
    mc.config = echo(c);
    CHECK(ma.parameter_hash() == mb.parameter_hash());
    CHECK(ma.parameter_hash() != mc.parameter_hash());
    CHECK(ma.parameter_hash().size() == 16);
}

TEST_CASE("write then read reproduces every value") {
    const fs::path dir = scratch_dir("roundtrip");
    const OutputBundle b = sample_bundle();
    const auto written = write_outputs(dir, b);
    CHECK(written.size() == 5);

    const auto diag = read_diagnostics_csv(dir / "diagnostics.csv");
    REQUIRE(diag.size() == b.diagnostics.samples.size());
    for (std::size_t k = 0; k < diag.size(); ++k) {
        const DiagnosticsSample& x = diag[k];
        const DiagnosticsSample& y = b.diagnostics.samples[k];
        CHECK(x.t == y.t);
        CHECK(x.energy == y.energy);
        CHECK(x.entropy == y.entropy);
        CHECK(x.second_moment == y.second_moment);
        CHECK(x.energy_diss == y.energy_diss);
        CHECK(x.boundary_mass == y.boundary_mass);
    }
    const auto curves = read_errors_csv(dir / "errors.csv");
    REQUIRE(curves.size() == 1);
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(curves[0].samples[k].eps == b.curves[0].samples[k].eps);
        CHECK(curves[0].samples[k].error == b.curves[0].samples[k].error);
    }
    const auto fits = read_rates_csv(dir / "rates.csv");
    REQUIRE(fits.size() == 1);
    CHECK(fits[0].slope == b.fits[0].slope);
    CHECK(fits[0].intercept == b.fits[0].intercept);
    CHECK(fits[0].r_squared == b.fits[0].r_squared);
    CHECK(fits[0].theoretical_exponent == b.fits[0].theoretical_exponent);
    CHECK(fits[0].pass);

    // The manifest lists each data file exactly once.
    const auto manifest = read_manifest(dir / "manifest.txt");
    for (const char* name : {"diagnostics.csv", "errors.csv", "rates.csv", "snapshots.csv"}) {
        int count = 0;
        for (const auto& [k, v] : manifest) count += k == "file" && v == name;
        CHECK(count == 1);
    }
    fs::remove_all(dir);
}

TEST_CASE("empty and single-row outputs") {
    const fs::path dir = scratch_dir("empty");
    write_outputs(dir, OutputBundle{});
    for (const auto& [name, header] : {std::pair{"diagnostics.csv", kDiagnosticsHeader},
                                       std::pair{"errors.csv", kErrorsHeader}, std::pair{"rates.csv", kRatesHeader},
                                       std::pair{"snapshots.csv", kSnapshotsHeader}}) {
        std::ifstream in(dir / name);
        std::string first, rest;
        std::getline(in, first);
        CHECK(first == header);
        CHECK_FALSE(static_cast<bool>(std::getline(in, rest)));
    }

    const Grid grid = Grid::centered(1, 32);
    const SimulationResult run = simulate(make_benchmark("two_bump", grid), EpsParams(0.1, 0.0, 1.0), 0.0, {0.0});
    OutputBundle one;
    one.trajectory = run.trajectory;
    one.diagnostics = run.diagnostics;
    write_outputs(dir, one);
    CHECK(read_diagnostics_csv(dir / "diagnostics.csv").size() == 1);
    fs::remove_all(dir);
}

TEST_CASE("failed writes leave nothing behind") {
    const fs::path dir = scratch_dir("failure");
    fs::create_directories(dir / "rates.csv.partial" / "blocker");
    CHECK_THROWS(write_outputs(dir, sample_bundle()));
    for (const auto& entry : fs::directory_iterator(dir)) CHECK(entry.path().filename() == "rates.csv.partial");

    const fs::path file = scratch_dir("not_a_dir");
    std::ofstream(file) << "x";
    CHECK_THROWS(write_outputs(file / "sub", sample_bundle()));
    fs::remove_all(dir);
    fs::remove(file);
}

TEST_CASE("initial data from a snapshots file") {
    const fs::path dir = scratch_dir("initial");
    OutputBundle b = sample_bundle();
    write_outputs(dir, b);
    InitialSpec spec;
    spec.file = (dir / "snapshots.csv").string();
    const Grid grid = Grid::centered(1, 64);
    const InitialData init = load_initial_data(spec, grid);
    for (std::size_t k = 0; k < grid.cell_count(); ++k) {
        CHECK(init.f0[k] == doctest::Approx(b.trajectory.front().f[k]).epsilon(1e-14));
        CHECK(init.g0[k] == doctest::Approx(b.trajectory.front().g[k]).epsilon(1e-14));
    }
    CHECK_THROWS_AS(load_initial_data(spec, Grid::centered(1, 128)), ConfigError);
    spec.file = (dir / "missing.csv").string();
    CHECK_THROWS_AS(load_initial_data(spec, grid), ConfigError);
    fs::remove_all(dir);
}

}
