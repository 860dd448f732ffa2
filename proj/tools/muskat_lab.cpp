// muskat_lab: command-line front end.
//
//   muskat_lab simulate --config run.ini --out DIR
//   muskat_lab sweep    --config sweep.ini --out DIR [--threads N] [--reference fine-grid]
//   muskat_lab rates    --in DIR [--config sweep.ini] [--out DIR]
//   muskat_lab validate [--criteria 1,2,6] [--threads N]
//
// Exit codes: 0 success, 2 configuration error, 3 simulation failure,
// 4 acceptance failure.

#include "muskat/config.hpp"
#include "muskat/output.hpp"
#include "muskat/validation.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using namespace muskat;

constexpr int kExitConfig = 2;
constexpr int kExitSimulation = 3;
constexpr int kExitAcceptance = 4;

struct Options {
    std::string config;
    std::string out;
    std::string in;
    int threads = 1;
    std::optional<long> seed;
    std::string reference;
    std::vector<int> criteria;
};

std::string describe(const Grid& g) {
    std::ostringstream s;
    s << "dim=" << g.dim() << " cells_per_axis=" << g.cells_per_axis() << " length=" << format_double(g.length())
      << " dx=" << format_double(g.spacing());
    return s.str();
}

std::string describe(const StepControls& c) {
    std::ostringstream s;
    s << "cfl=" << format_double(c.cfl) << " dt_min=" << format_double(c.dt_min) << " dt_max=" << format_double(c.dt_max)
      << " retry_limit=" << c.positivity_retry_limit << " fixed_dt=" << format_double(c.fixed_dt);
    return s.str();
}

RunManifest base_manifest(const std::string& command, const Options& opt,
                          std::vector<std::pair<std::string, std::string>> config) {
    RunManifest m;
    m.command = command;
    m.code_version = code_version();
    if (opt.seed) config.emplace_back("seed", std::to_string(*opt.seed) + " (reserved; runs are deterministic)");
    m.config = std::move(config);
    return m;
}

double elapsed(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void report_written(const std::vector<std::filesystem::path>& files) {
    for (const auto& f : files) std::cout << "wrote " << f.string() << '\n';
}

int run_simulate(const Options& opt) {
    const SimulationConfig cfg = parse_simulation_config(opt.config.empty() ? "" : read_text_file(opt.config));
    const Grid grid = cfg.grid.grid();
    const InitialData init = load_initial_data(cfg.initial, grid);
    const EpsParams params(cfg.eps, cfg.alpha, cfg.mu_bar);

    OutputBundle bundle;
    bundle.manifest = base_manifest("simulate", opt, echo(cfg));
    bundle.manifest.grid = describe(grid);
    bundle.manifest.controls = describe(cfg.controls);
    if (cfg.alpha >= 1.0 / (grid.dim() + 2.0))
        bundle.manifest.warnings.push_back("alpha >= 1/(d+2): outside the regime of the g-rate estimate");

    const auto start = std::chrono::steady_clock::now();
    int code = 0;
    try {
        SimulationResult run = simulate(init, params, cfg.t_end, cfg.resolved_output_times(), cfg.controls);
        bundle.trajectory = std::move(run.trajectory);
        bundle.diagnostics = std::move(run.diagnostics);
        bundle.manifest.steps = run.stats.steps;
        bundle.manifest.retries = run.stats.retries;
        for (const std::string& w : run.stats.warnings) bundle.manifest.warnings.push_back(w);
        std::cout << "simulate: " << run.stats.steps << " steps to t = " << cfg.t_end << '\n';
    } catch (const SimulationError& e) {
        std::cerr << "simulation failed: " << e.what() << '\n';
        bundle.manifest.status = "aborted";
        bundle.manifest.warnings.push_back(e.what());
        bundle.trajectory = {e.snapshot()};
        bundle.diagnostics.dim = grid.dim();
        bundle.diagnostics.samples = {diagnose(e.snapshot(), params)};
        code = kExitSimulation;
    }
    bundle.manifest.wall_clock_seconds = elapsed(start);
    report_written(write_outputs(opt.out, std::move(bundle)));
    return code;
}

// Fits every (quantity, t) with enough samples; returns false when any fit
// misses its exponent.
bool fit_all(const std::vector<ErrorCurve>& curves, const std::vector<double>& times, std::vector<RateFit>& fits,
             std::vector<std::string>& warnings) {
    bool ok = true;
    for (const ErrorCurve& c : curves) {
        if (c.samples.empty()) continue;
        for (double t : times) {
            try {
                const RateFit f = fit_rate(c, t);
                fits.push_back(f);
                ok = ok && f.pass;
                std::cout << to_string(f.quantity) << " t=" << t << ": slope " << f.slope << " (exponent "
                          << f.theoretical_exponent << ", r2 " << f.r_squared << ") " << (f.pass ? "pass" : "FAIL")
                          << '\n';
            } catch (const std::invalid_argument& e) {
                warnings.push_back(to_string(c.quantity) + ": " + e.what());
                std::cerr << "warning: " << warnings.back() << '\n';
            }
        }
    }
    return ok;
}

int run_sweep_command(const Options& opt) {
    std::string text = opt.config.empty() ? "" : read_text_file(opt.config);
    SweepSettings settings = parse_sweep_config(text);
    SweepConfig& cfg = settings.sweep;
    if (opt.reference == "fine-grid") cfg.reference = ReferenceMode::fine_grid;
    if (opt.reference == "same-grid") cfg.reference = ReferenceMode::same_grid;
    cfg.threads = opt.threads;
    const Grid grid = cfg.grid();
    if (!settings.initial.file.empty()) cfg.custom_initial = load_initial_data(settings.initial, grid);

    OutputBundle bundle;
    bundle.manifest = base_manifest("sweep", opt, echo(settings));
    bundle.manifest.grid = describe(grid);
    bundle.manifest.controls = describe(cfg.controls);

    const auto start = std::chrono::steady_clock::now();
    SweepResult result;
    int code = 0;
    try {
        result = run_sweep(cfg);
    } catch (const SweepError& e) {
        std::cerr << e.what() << '\n';
        result = e.partial();
        bundle.manifest.status = "aborted";
        code = kExitSimulation;
    }
    bundle.manifest.wall_clock_seconds = elapsed(start);
    bundle.manifest.warnings = result.warnings;
    bundle.manifest.warnings.push_back("shared dt = " + format_double(result.dt));
    for (const SweepMember& m : result.members) {
        bundle.manifest.steps += m.stats.steps;
        bundle.manifest.retries += m.stats.retries;
    }
    if (cfg.measure_f) bundle.curves.push_back(result.f_curve);
    if (cfg.measure_g) bundle.curves.push_back(result.g_curve);
    std::vector<double> times = cfg.measurement_times;
    times.erase(std::unique(times.begin(), times.end()), times.end());
    const bool rates_ok = fit_all(bundle.curves, times, bundle.fits, bundle.manifest.warnings);
    if (result.showcase) {
        bundle.trajectory = std::move(result.showcase->trajectory);
        bundle.diagnostics = std::move(result.showcase->diagnostics);
    }
    report_written(write_outputs(opt.out, std::move(bundle)));
    if (code == 0 && !rates_ok) code = kExitAcceptance;
    return code;
}

int run_rates(const Options& opt) {
    const std::filesystem::path in(opt.in);
    int dim = 1;
    double alpha = 0.0;
    std::vector<std::pair<std::string, std::string>> echoed;
    if (!opt.config.empty()) {
        const SweepSettings s = parse_sweep_config(read_text_file(opt.config));
        dim = s.sweep.dim;
        alpha = s.sweep.alpha;
        echoed = echo(s);
    } else if (std::filesystem::exists(in / "manifest.txt")) {
        for (const auto& [k, v] : read_manifest(in / "manifest.txt")) {
            if (k == "config.grid.dim") dim = static_cast<int>(parse_double(v));
            if (k == "config.sweep.alpha") alpha = parse_double(v);
            if (k.starts_with("config.")) echoed.emplace_back(k.substr(7), v);
        }
    }
    std::vector<ErrorCurve> curves = read_errors_csv(in / "errors.csv");
    std::vector<double> times;
    for (ErrorCurve& c : curves) {
        c.dim = dim;
        c.alpha = alpha;
        for (const ErrorSample& s : c.samples)
            if (std::find(times.begin(), times.end(), s.t) == times.end()) times.push_back(s.t);
    }
    std::sort(times.begin(), times.end());

    OutputBundle bundle;
    bundle.manifest = base_manifest("rates", opt, echoed);
    bundle.manifest.warnings.push_back("re-fit of " + (in / "errors.csv").string());
    const bool ok = fit_all(curves, times, bundle.fits, bundle.manifest.warnings);
    if (!opt.out.empty()) {
        bundle.curves = std::move(curves);
        report_written(write_outputs(opt.out, std::move(bundle)));
    }
    return ok ? 0 : kExitAcceptance;
}

int run_validate(const Options& opt) {
    AcceptanceSuite suite(opt.threads);
    const std::vector<int>& ids = opt.criteria.empty() ? AcceptanceSuite::criteria() : opt.criteria;
    bool ok = true;
    for (int id : ids) {
        const CriterionResult r = suite.run(id);
        std::cout << format_result(r) << std::endl;
        ok = ok && r.pass;
    }
    return ok ? 0 : kExitAcceptance;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Thin-film Muskat / porous-medium laboratory"};
    app.set_version_flag("--version", muskat::code_version());
    app.require_subcommand(1);
    Options opt;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--threads", opt.threads, "Worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--seed", opt.seed, "Reserved; all runs are deterministic");
    };

    CLI::App* sim = app.add_subcommand("simulate", "One (eps, alpha) run");
    sim->add_option("--config", opt.config, "INI configuration")->check(CLI::ExistingFile);
    sim->add_option("--out", opt.out, "Output directory")->required();
    common(sim);

    CLI::App* sweep = app.add_subcommand("sweep", "Singular-limit rate experiment");
    sweep->add_option("--config", opt.config, "INI configuration")->check(CLI::ExistingFile);
    sweep->add_option("--out", opt.out, "Output directory")->required();
    sweep->add_option("--reference", opt.reference, "PME reference grid")
        ->check(CLI::IsMember({"same-grid", "fine-grid"}));
    common(sweep);

    CLI::App* rates = app.add_subcommand("rates", "Re-fit rates from an existing errors.csv");
    rates->add_option("--in", opt.in, "Directory holding errors.csv")->required()->check(CLI::ExistingDirectory);
    rates->add_option("--config", opt.config, "Sweep configuration (dim, alpha)")->check(CLI::ExistingFile);
    rates->add_option("--out", opt.out, "Directory for the re-fitted rates.csv");
    common(rates);

    CLI::App* validate = app.add_subcommand("validate", "Barenblatt and invariant acceptance checks");
    validate->add_option("--criteria", opt.criteria, "Subset of criteria to run")->delimiter(',');
    common(validate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (sim->parsed()) return run_simulate(opt);
        if (sweep->parsed()) return run_sweep_command(opt);
        if (rates->parsed()) return run_rates(opt);
        return run_validate(opt);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitSimulation;
    }
}
