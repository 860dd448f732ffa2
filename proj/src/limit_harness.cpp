#include "muskat/limit_harness.hpp"

#include "muskat/benchmarks.hpp"
#include "muskat/negative_sobolev.hpp"
#include "muskat/pme.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <sstream>
#include <thread>

namespace muskat {

double theoretical_f_exponent(int dim) {
    if (dim < 1 || dim > 4) throw std::invalid_argument("the f-rate exponent needs 1 <= d <= 4");
    return (6.0 * dim + 36.0) / (11.0 * dim + 36.0);
}

double theoretical_g_exponent(int dim, double alpha) {
    if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
    const double bound = 1.0 / (dim + 2.0);
    if (!(alpha >= 0.0 && alpha < bound)) {
        std::ostringstream msg;
        msg << "the g-rate needs alpha in [0, 1/(d+2)) = [0, " << bound << "), got " << alpha;
        throw std::invalid_argument(msg.str());
    }
    return bound - alpha;
}

std::string to_string(ErrorQuantity q) { return q == ErrorQuantity::f_err_hm1 ? "f_err_hm1" : "g_err_hm1d"; }

ErrorQuantity error_quantity_from_string(const std::string& name) {
    if (name == "f_err_hm1") return ErrorQuantity::f_err_hm1;
    if (name == "g_err_hm1d") return ErrorQuantity::g_err_hm1d;
    throw std::invalid_argument("unknown error quantity '" + name + "'");
}

double ErrorCurve::theoretical_exponent() const {
    return quantity == ErrorQuantity::f_err_hm1 ? theoretical_f_exponent(dim) : theoretical_g_exponent(dim, alpha);
}

RateFit fit_rate(const ErrorCurve& curve, double t) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (const ErrorSample& s : curve.samples) {
        if (std::abs(s.t - t) > 1e-12 * std::max(1.0, std::abs(t))) continue;
        if (!(s.error > 0.0) || !(s.eps > 0.0)) continue;
        xs.push_back(std::log(s.eps));
        ys.push_back(std::log(s.error));
    }
    if (xs.size() < 4) {
        std::ostringstream msg;
        msg << "rate fit at t = " << t << " needs 4 positive samples, found " << xs.size();
        throw std::invalid_argument(msg.str());
    }
    const double n = static_cast<double>(xs.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        mx += xs[k];
        my += ys[k];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        sxx += (xs[k] - mx) * (xs[k] - mx);
        sxy += (xs[k] - mx) * (ys[k] - my);
        syy += (ys[k] - my) * (ys[k] - my);
    }
    if (!(sxx > 0.0)) throw std::invalid_argument("rate fit needs at least two distinct eps values");

    RateFit fit;
    fit.quantity = curve.quantity;
    fit.t = t;
    fit.points = static_cast<int>(xs.size());
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const double r = ys[k] - (fit.intercept + fit.slope * xs[k]);
        ss_res += r * r;
    }
    fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
    fit.theoretical_exponent = curve.theoretical_exponent();
    fit.pass = fit.slope >= fit.theoretical_exponent - kSlopeMargin;
    return fit;
}

Grid SweepConfig::grid() const { return Grid(dim, cells_per_axis, length > 0.0 ? length : Grid::default_length(dim)); }

void SweepConfig::validate() const {
    (void)grid();
    controls.validate();
    if (eps_list.empty()) throw std::invalid_argument("sweep.eps_list must not be empty");
    for (std::size_t k = 0; k < eps_list.size(); ++k) {
        if (!(eps_list[k] > 0.0 && eps_list[k] < 1.0)) throw std::invalid_argument("sweep.eps_list entries must lie in (0, 1)");
        if (k > 0 && !(eps_list[k] < eps_list[k - 1]))
            throw std::invalid_argument("sweep.eps_list must be strictly decreasing");
    }
    if (measurement_times.empty()) throw std::invalid_argument("sweep.measurement_times must not be empty");
    for (double t : measurement_times)
        if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("sweep.measurement_times must be >= 0");
    if (!std::is_sorted(measurement_times.begin(), measurement_times.end()))
        throw std::invalid_argument("sweep.measurement_times must be sorted");
    if (measure_f) (void)theoretical_f_exponent(dim);
    if (measure_g) (void)theoretical_g_exponent(dim, alpha);
    (void)EpsParams(eps_list.front(), alpha, mu_bar);
    if (custom_initial && !(custom_initial->f0.grid() == grid()))
        throw std::invalid_argument("custom initial data does not match the sweep grid");
    if (threads < 1) throw std::invalid_argument("threads must be >= 1");
}

Field prolong(const Field& coarse, int factor) {
    const Grid& cg = coarse.grid();
    const Grid fg(cg.dim(), cg.cells_per_axis() * factor, cg.length());
    Field out(fg);
    for (std::size_t k = 0; k < fg.cell_count(); ++k) {
        const int i = static_cast<int>(k % fg.cells_per_axis()) / factor;
        const int j = static_cast<int>(k / fg.cells_per_axis()) / factor;
        out[k] = coarse[cg.index(i, j)];
    }
    return out;
}

Field restrict_average(const Field& fine, int factor) {
    const Grid& fg = fine.grid();
    if (fg.cells_per_axis() % factor != 0) throw std::invalid_argument("restriction factor must divide the cell count");
    const Grid cg(fg.dim(), fg.cells_per_axis() / factor, fg.length());
    Field out(cg);
    const double weight = fg.dim() == 1 ? 1.0 / factor : 1.0 / (factor * factor);
    for (std::size_t k = 0; k < fg.cell_count(); ++k) {
        const int i = static_cast<int>(k % fg.cells_per_axis()) / factor;
        const int j = static_cast<int>(k / fg.cells_per_axis()) / factor;
        out[cg.index(i, j)] += weight * fine[k];
    }
    return out;
}

namespace {

constexpr int kFineFactor = 2;

// Index of the trajectory entry recorded at time t.
const State& state_at(const SimulationResult& run, double t) {
    for (const State& s : run.trajectory)
        if (std::abs(s.time - t) <= 1e-12 * std::max(1.0, t)) return s;
    throw std::logic_error("simulation did not record the requested time");
}

void run_jobs(std::vector<std::function<void()>>& jobs, int threads) {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < jobs.size(); k = next++) jobs[k]();
    };
    const int extra = std::min<int>(threads, static_cast<int>(jobs.size())) - 1;
    std::vector<std::jthread> pool;
    for (int k = 0; k < extra; ++k) pool.emplace_back(worker);
    worker();
}

}  // namespace

SweepResult run_sweep(const SweepConfig& config) {
    config.validate();
    const Grid grid = config.grid();
    const InitialData init = config.custom_initial ? *config.custom_initial : make_benchmark(config.benchmark, grid);
    std::vector<double> times = config.measurement_times;
    times.erase(std::unique(times.begin(), times.end()), times.end());
    const double t_end = times.back();

    // One step size for every same-grid member: the most restrictive
    // stable_dt over the sweep, evaluated on the initial data.
    StepControls controls = config.controls;
    if (controls.fixed_dt <= 0.0) {
        double dt = stable_dt(State(init.f0, Field(grid)), EpsParams(0.0, 0.0, 1.0), controls);
        for (double eps : config.eps_list)
            dt = std::min(dt, stable_dt(init.state(), EpsParams(eps, config.alpha, config.mu_bar), controls));
        controls.fixed_dt = dt;
    }

    SweepResult result;
    result.dt = controls.fixed_dt;
    result.f_curve = ErrorCurve{ErrorQuantity::f_err_hm1, config.dim, config.alpha, {}};
    result.g_curve = ErrorCurve{ErrorQuantity::g_err_hm1d, config.dim, config.alpha, {}};
    if (config.alpha >= 1.0 / (config.dim + 2.0))
        result.warnings.push_back("alpha >= 1/(d+2): outside the regime of the g-rate estimate");

    const std::size_t n_eps = config.eps_list.size();
    std::vector<std::optional<SimulationResult>> runs(n_eps + 1);
    result.members.resize(n_eps + 1);
    result.members[0].reference = true;
    for (std::size_t k = 0; k < n_eps; ++k) result.members[k + 1].eps = config.eps_list[k];

    std::vector<std::function<void()>> jobs;
    jobs.emplace_back([&] {
        if (!config.measure_f) {
            result.members[0].completed = true;
            return;
        }
        try {
            if (config.reference == ReferenceMode::same_grid) {
                runs[0] = pme_simulate(init.f0, t_end, times, controls);
            } else {
                const Grid fine(grid.dim(), grid.cells_per_axis() * kFineFactor, grid.length());
                const Field f0_fine = config.custom_initial ? prolong(init.f0, kFineFactor)
                                                            : make_benchmark(config.benchmark, fine).f0;
                StepControls fine_controls = controls;
                fine_controls.fixed_dt = controls.fixed_dt / (kFineFactor * kFineFactor);
                SimulationResult fine_run = pme_simulate(f0_fine, t_end, times, fine_controls);
                for (State& s : fine_run.trajectory) {
                    s.f = restrict_average(s.f, kFineFactor);
                    s.g = restrict_average(s.g, kFineFactor);
                }
                runs[0] = std::move(fine_run);
            }
            result.members[0].stats = runs[0]->stats;
            result.members[0].completed = true;
        } catch (const std::exception& e) {
            result.members[0].failure = e.what();
        }
    });
    for (std::size_t k = 0; k < n_eps; ++k) {
        jobs.emplace_back([&, k] {
            try {
                const EpsParams params(config.eps_list[k], config.alpha, config.mu_bar);
                runs[k + 1] = simulate(init, params, t_end, times, controls);
                result.members[k + 1].stats = runs[k + 1]->stats;
                result.members[k + 1].completed = true;
            } catch (const std::exception& e) {
                result.members[k + 1].failure = e.what();
            }
        });
    }
    run_jobs(jobs, config.threads);

    // Merge in fixed ε-then-t order so the output does not depend on scheduling.
    const HelmholtzOperator op(grid);
    for (std::size_t k = 0; k < n_eps; ++k) {
        if (!runs[k + 1]) continue;
        const double eps = config.eps_list[k];
        for (double t : times) {
            const State& s = state_at(*runs[k + 1], t);
            if (config.measure_f && runs[0])
                result.f_curve.samples.push_back({eps, t, h_minus_s_norm(op, s.f - state_at(*runs[0], t).f, 1)});
            if (config.measure_g)
                result.g_curve.samples.push_back({eps, t, h_minus_s_norm(op, s.g - init.g0, 1 + config.dim)});
        }
    }
    for (const SweepMember& m : result.members)
        for (const std::string& w : m.stats.warnings) {
            std::ostringstream msg;
            msg << (m.reference ? std::string("reference") : "eps=" + std::to_string(m.eps)) << ": " << w;
            result.warnings.push_back(msg.str());
        }
    if (runs[1]) result.showcase = std::move(runs[1]);

    std::ostringstream failures;
    for (const SweepMember& m : result.members)
        if (!m.completed)
            failures << (m.reference ? std::string("reference") : "eps=" + std::to_string(m.eps)) << ": " << m.failure << "; ";
    if (!failures.str().empty()) throw SweepError("sweep aborted: " + failures.str(), std::move(result));
    return result;
}

}  // namespace muskat
