#pragma once

#include "muskat/core.hpp"
#include "muskat/functionals.hpp"
#include "muskat/stencil.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace muskat {

// Face fluxes of both layers; positive values move mass toward increasing
// coordinate. Boundary faces stay exactly zero (no-flux box).
struct FluxPair {
    FaceArray flux_f;
    FaceArray flux_g;

    explicit FluxPair(const Grid& grid) : flux_f(grid), flux_g(grid) {}
};

struct StepControls {
    double cfl = 0.25;
    double dt_min = 1e-14;
    double dt_max = 1e-2;   // returned for an all-zero state
    int positivity_retry_limit = 40;
    // When positive, every step uses this dt (clipped to output times)
    // instead of the state-dependent stable_dt. Sweeps share one value so
    // all members take identical step sequences.
    double fixed_dt = 0.0;

    void validate() const;
};

// Raised when a step cannot be made non-negative within the retry limit.
class SimulationError : public std::runtime_error {
public:
    SimulationError(const std::string& what, State snapshot)
        : std::runtime_error(what), snapshot_(std::move(snapshot)) {}
    const State& snapshot() const { return snapshot_; }

private:
    State snapshot_;
};

// p_f = (1+ε)f + εg and p_g = f + g.
std::pair<Field, Field> pressures(const State& state, const EpsParams& params);

FluxPair face_fluxes(const State& state, const EpsParams& params);

double stable_dt(const State& state, const EpsParams& params, const StepControls& controls);

struct StepOutcome {
    State state;
    double dt = 0.0;  // the dt actually taken
    int retries = 0;
};

// Explicit conservative Euler step. Halves dt on any negative cell, at most
// controls.positivity_retry_limit times.
StepOutcome step(const State& state, const EpsParams& params, double dt, const StepControls& controls = {});

struct RunStats {
    long steps = 0;
    long retries = 0;
    double min_f_seen = 0.0;  // over every accepted step
    double min_g_seen = 0.0;
    double max_boundary_mass = 0.0;
    std::vector<std::string> warnings;
};

struct SimulationResult {
    std::vector<State> trajectory;  // initial state, then one per output time
    DiagnosticsRecord diagnostics;  // one sample per trajectory entry
    RunStats stats;
};

// Integrates from init.time = 0 to t_end. Output times must be sorted and
// inside [0, t_end]; t_end itself is always sampled.
SimulationResult simulate(const State& init, const EpsParams& params, double t_end,
                          const std::vector<double>& output_times, const StepControls& controls = {});

SimulationResult simulate(const InitialData& init, const EpsParams& params, double t_end,
                          const std::vector<double>& output_times, const StepControls& controls = {});

// n+1 equally spaced times on [0, t_end].
std::vector<double> uniform_times(double t_end, int intervals);

}  // namespace muskat
