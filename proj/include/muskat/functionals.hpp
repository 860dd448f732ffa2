#pragma once

#include "muskat/core.hpp"

#include <vector>

namespace muskat {

// One row of the diagnostics time series.
struct DiagnosticsSample {
    double t = 0.0;
    double mass_f = 0.0;
    double mass_g = 0.0;
    double energy = 0.0;
    double entropy = 0.0;
    double second_moment = 0.0;
    double diss_f = 0.0;       // ∫|∇f|²
    double diss_h = 0.0;       // ε∫|∇h|²
    double energy_diss = 0.0;  // ½∫[f|∇p_f|² + με² g|∇p_g|²]
    double min_f = 0.0;
    double min_g = 0.0;
    double boundary_mass = 0.0;
};

struct DiagnosticsRecord {
    int dim = 1;
    std::vector<DiagnosticsSample> samples;
};

// ½∫[f² + ε(f+g)²]
double energy(const State& state, double eps);
// ∫[f ln f + g ln g / μ] with 0 ln 0 = 0. μ = +inf (the ε = 0 limit with
// α > 0) drops the g term.
double entropy(const State& state, double mu);
// ∫(f + g/μ)|x|²
double second_moment(const State& state, double mu);

// Mass of f + g inside the outermost two cell layers of the box.
double boundary_mass(const State& state);

DiagnosticsSample diagnose(const State& state, const EpsParams& params);

struct MomentResidual {
    double value = 0.0;  // max_t |M(t) - M(0) - d∫₀ᵗ∫(f²+εh²)| / M(0)
    bool valid = true;   // false when mass reached the boundary layer
};

// Threshold on boundary_mass above which the truncated box no longer
// stands in for the whole space.
inline constexpr double kBoundaryMassThreshold = 1e-8;

MomentResidual moment_identity_residual(const DiagnosticsRecord& diag);

struct InequalityLedgers {
    std::vector<double> t;
    std::vector<double> energy;   // E(t) + ∫₀ᵗ energy_diss - E(0)
    std::vector<double> entropy;  // H(t) + ∫₀ᵗ (diss_f + diss_h) - H(0)
};

InequalityLedgers inequality_ledgers(const DiagnosticsRecord& diag);

}  // namespace muskat
