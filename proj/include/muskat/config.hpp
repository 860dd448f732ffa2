#pragma once

#include "muskat/core.hpp"
#include "muskat/limit_harness.hpp"
#include "muskat/solver.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace muskat {

// Raised for malformed or out-of-range configuration; the message starts
// with the offending section.key.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Shared [grid] / [initial] / [controls] sections.
struct GridSpec {
    int dim = 1;
    int cells_per_axis = 1024;
    double length = 0.0;  // 0: default box for dim
    Grid grid() const;
};

struct InitialSpec {
    std::string benchmark = "two_bump";
    std::string file;  // snapshots-style CSV (cell_index, f, g); overrides benchmark
};

struct SimulationConfig {
    GridSpec grid;
    InitialSpec initial;
    double eps = 0.1;
    double alpha = 0.0;
    double mu_bar = 1.0;
    double t_end = 1.0;
    int output_intervals = 100;
    std::vector<double> output_times;  // explicit list overrides output_intervals
    StepControls controls;

    std::vector<double> resolved_output_times() const;
};

struct SweepSettings {
    GridSpec grid;
    InitialSpec initial;
    SweepConfig sweep;  // grid/benchmark fields mirrored from above
};

// INI-style text: [section] headers, key = value lines, ';' or '#' comments.
// Unknown sections or keys are rejected. Empty text yields the defaults.
SimulationConfig parse_simulation_config(std::string_view text);
SweepSettings parse_sweep_config(std::string_view text);

// Canonical "section.key = value" lines describing a configuration.
std::vector<std::pair<std::string, std::string>> echo(const SimulationConfig& config);
std::vector<std::pair<std::string, std::string>> echo(const SweepSettings& config);

// Resolves the initial data of a configuration on its grid.
InitialData load_initial_data(const InitialSpec& spec, const Grid& grid);

std::string read_text_file(const std::string& path);

}  // namespace muskat
