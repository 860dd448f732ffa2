#pragma once

#include "muskat/core.hpp"
#include "muskat/solver.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace muskat {

// Rate exponent of ‖f_ε(t) - f(t)‖_{H^-1} for 1 <= d <= 4: (6d+36)/(11d+36).
double theoretical_f_exponent(int dim);
// Rate exponent of ‖g_ε(t) - g0‖_{H^-(1+d)} for α in [0, 1/(d+2)): 1/(d+2) - α.
double theoretical_g_exponent(int dim, double alpha);

enum class ErrorQuantity { f_err_hm1, g_err_hm1d };
std::string to_string(ErrorQuantity q);
ErrorQuantity error_quantity_from_string(const std::string& name);

struct ErrorSample {
    double eps = 0.0;
    double t = 0.0;
    double error = 0.0;
};

struct ErrorCurve {
    ErrorQuantity quantity = ErrorQuantity::f_err_hm1;
    int dim = 1;
    double alpha = 0.0;
    std::vector<ErrorSample> samples;

    double theoretical_exponent() const;
};

struct RateFit {
    ErrorQuantity quantity = ErrorQuantity::f_err_hm1;
    double t = 0.0;
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double theoretical_exponent = 0.0;
    bool pass = false;
    int points = 0;
};

// Slack allowed below the theoretical exponent.
inline constexpr double kSlopeMargin = 0.05;

// Least squares of ln(error) on ln(ε) over the samples at time t; samples
// with error <= 0 are skipped. Needs at least 4 survivors.
RateFit fit_rate(const ErrorCurve& curve, double t);

enum class ReferenceMode { same_grid, fine_grid };

struct SweepConfig {
    int dim = 1;
    int cells_per_axis = 1024;
    double length = 0.0;  // 0 selects the default box for dim
    std::vector<double> eps_list = {0.25, 0.125, 0.0625, 0.03125, 0.015625, 0.0078125, 0.00390625};
    double alpha = 0.0;
    double mu_bar = 1.0;
    std::vector<double> measurement_times = {0.25, 0.5, 1.0};
    std::string benchmark = "two_bump";
    std::optional<InitialData> custom_initial;  // overrides benchmark
    bool measure_f = true;
    bool measure_g = true;
    ReferenceMode reference = ReferenceMode::same_grid;
    StepControls controls;
    int threads = 1;

    Grid grid() const;
    // Throws std::invalid_argument naming the violated constraint.
    void validate() const;
};

struct SweepMember {
    double eps = 0.0;  // reference runs report eps = 0
    bool reference = false;
    bool completed = false;
    RunStats stats;
    std::string failure;
};

struct SweepResult {
    ErrorCurve f_curve;
    ErrorCurve g_curve;
    double dt = 0.0;  // shared step of the same-grid members
    std::vector<SweepMember> members;
    std::vector<std::string> warnings;
    // Trajectory of the first ε member, kept for snapshots/diagnostics output.
    std::optional<SimulationResult> showcase;
};

class SweepError : public std::runtime_error {
public:
    SweepError(const std::string& what, SweepResult partial)
        : std::runtime_error(what), partial_(std::move(partial)) {}
    const SweepResult& partial() const { return partial_; }

private:
    SweepResult partial_;
};

SweepResult run_sweep(const SweepConfig& config);

// Piecewise-constant prolongation to a grid with factor-times more cells per
// axis, and the matching cell-average restriction.
Field prolong(const Field& coarse, int factor);
Field restrict_average(const Field& fine, int factor);

}  // namespace muskat
