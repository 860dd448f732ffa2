#include "muskat/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace muskat {

void StepControls::validate() const {
    if (!(cfl > 0.0 && cfl <= 1.0)) throw std::invalid_argument("cfl must lie in (0, 1]");
    if (!(dt_min > 0.0)) throw std::invalid_argument("dt_min must be positive");
    if (!(dt_max > 0.0)) throw std::invalid_argument("dt_max must be positive");
    if (positivity_retry_limit < 0) throw std::invalid_argument("positivity_retry_limit must be >= 0");
    if (fixed_dt < 0.0) throw std::invalid_argument("fixed_dt must be >= 0");
}

std::pair<Field, Field> pressures(const State& state, const EpsParams& params) {
    const double eps = params.eps();
    Field p_f(state.grid());
    Field p_g(state.grid());
    for (std::size_t k = 0; k < p_f.size(); ++k) {
        p_f[k] = (1.0 + eps) * state.f[k] + eps * state.g[k];
        p_g[k] = state.f[k] + state.g[k];
    }
    return {std::move(p_f), std::move(p_g)};
}

FluxPair face_fluxes(const State& state, const EpsParams& params) {
    const Grid& grid = state.grid();
    const auto [p_f, p_g] = pressures(state, params);
    const double g_factor = params.g_mobility_factor();
    const double inv_dx = 1.0 / grid.spacing();
    FluxPair out(grid);
    for_each_interior_face(grid, [&](std::size_t l, std::size_t r, int axis, std::size_t slot) {
        const double m_f = upwind_mobility(state.f[l], state.f[r], p_f[l], p_f[r]);
        const double m_g = upwind_mobility(state.g[l], state.g[r], p_g[l], p_g[r]);
        auto& ff = axis == 0 ? out.flux_f.x : out.flux_f.y;
        auto& fg = axis == 0 ? out.flux_g.x : out.flux_g.y;
        ff[slot] = -m_f * (p_f[r] - p_f[l]) * inv_dx;
        fg[slot] = -(g_factor * m_g) * (p_g[r] - p_g[l]) * inv_dx;
    });
    return out;
}

double stable_dt(const State& state, const EpsParams& params, const StepControls& controls) {
    const double eps = params.eps();
    const double max_f = state.f.max();
    const double max_h = state.height().max();
    const double a = std::max((1.0 + eps) * max_f + eps * max_h, params.g_mobility_factor() * max_h);
    if (a <= 0.0) return controls.dt_max;
    const Grid& grid = state.grid();
    const double dx = grid.spacing();
    return std::max(controls.cfl * dx * dx / (2.0 * grid.dim() * a), controls.dt_min);
}

namespace {

// Conservative update of one layer: u + dt (flux_in - flux_out) / Δx per axis.
// Returns false as soon as a cell turns negative.
bool apply_fluxes(const Field& u, const FaceArray& flux, double dt, Field& out) {
    const Grid& grid = u.grid();
    const int n = grid.cells_per_axis();
    const double ratio = dt / grid.spacing();
    const std::size_t stride = static_cast<std::size_t>(n) + 1;
    bool non_negative = true;
    for (std::size_t k = 0; k < grid.cell_count(); ++k) {
        const std::size_t i = k % n;
        const std::size_t j = k / n;
        double net = flux.x[i + stride * j] - flux.x[i + 1 + stride * j];
        if (grid.dim() == 2) net += flux.y[k] - flux.y[k + n];
        const double v = u[k] + ratio * net;
        out[k] = v;
        if (v < 0.0) non_negative = false;
    }
    return non_negative;
}

}  // namespace

StepOutcome step(const State& state, const EpsParams& params, double dt, const StepControls& controls) {
    if (!(dt > 0.0)) throw std::invalid_argument("step needs dt > 0");
    const FluxPair fluxes = face_fluxes(state, params);
    Field f(state.grid());
    Field g(state.grid());
    for (int attempt = 0; attempt <= controls.positivity_retry_limit; ++attempt) {
        const bool ok_f = apply_fluxes(state.f, fluxes.flux_f, dt, f);
        const bool ok_g = apply_fluxes(state.g, fluxes.flux_g, dt, g);
        if (ok_f && ok_g) return StepOutcome{State(std::move(f), std::move(g), state.time + dt), dt, attempt};
        dt *= 0.5;
        if (dt < controls.dt_min) break;
    }
    std::ostringstream msg;
    msg << "positivity could not be restored at t = " << state.time << " after "
        << controls.positivity_retry_limit << " step halvings";
    throw SimulationError(msg.str(), state);
}

std::vector<double> uniform_times(double t_end, int intervals) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(intervals) + 1);
    for (int k = 0; k <= intervals; ++k) out.push_back(t_end * k / intervals);
    return out;
}

SimulationResult simulate(const State& init, const EpsParams& params, double t_end,
                          const std::vector<double>& output_times, const StepControls& controls) {
    controls.validate();
    if (!(t_end >= init.time)) throw std::invalid_argument("t_end precedes the initial time");
    if (!std::is_sorted(output_times.begin(), output_times.end()))
        throw std::invalid_argument("output times must be sorted");
    std::vector<double> targets;
    for (double t : output_times) {
        if (t < init.time || t > t_end) throw std::invalid_argument("output time outside [t0, t_end]");
        if (t > init.time && (targets.empty() || t > targets.back())) targets.push_back(t);
    }
    if (t_end > init.time && (targets.empty() || targets.back() < t_end)) targets.push_back(t_end);

    SimulationResult result;
    result.diagnostics.dim = init.grid().dim();
    result.stats.min_f_seen = init.f.min();
    result.stats.min_g_seen = init.g.min();
    auto record = [&](const State& s) {
        result.diagnostics.samples.push_back(diagnose(s, params));
        const double bm = result.diagnostics.samples.back().boundary_mass;
        result.stats.max_boundary_mass = std::max(result.stats.max_boundary_mass, bm);
        result.trajectory.push_back(s);
    };
    record(init);

    State state = init;
    for (double target : targets) {
        while (state.time < target) {
            const double dt_policy = controls.fixed_dt > 0.0 ? controls.fixed_dt : stable_dt(state, params, controls);
            const double remaining = target - state.time;
            // Land exactly on the target; avoid leaving a sliver step behind.
            const bool landing = dt_policy >= remaining || remaining - dt_policy <= 1e-9 * dt_policy;
            StepOutcome out = step(state, params, landing ? remaining : dt_policy, controls);
            if (landing && out.retries == 0) out.state.time = target;
            ++result.stats.steps;
            result.stats.retries += out.retries;
            result.stats.min_f_seen = std::min(result.stats.min_f_seen, out.state.f.min());
            result.stats.min_g_seen = std::min(result.stats.min_g_seen, out.state.g.min());
            state = std::move(out.state);
        }
        record(state);
    }

    if (result.stats.max_boundary_mass > kBoundaryMassThreshold) {
        std::ostringstream msg;
        msg << "boundary contact: up to " << result.stats.max_boundary_mass
            << " mass within two cells of the box edge";
        result.stats.warnings.push_back(msg.str());
    }
    if (result.stats.retries > 0)
        result.stats.warnings.push_back("positivity retries: " + std::to_string(result.stats.retries));
    return result;
}

SimulationResult simulate(const InitialData& init, const EpsParams& params, double t_end,
                          const std::vector<double>& output_times, const StepControls& controls) {
    return simulate(init.state(), params, t_end, output_times, controls);
}

}  // namespace muskat
