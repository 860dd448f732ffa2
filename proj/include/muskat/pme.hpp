#pragma once

#include "muskat/core.hpp"
#include "muskat/solver.hpp"

#include <array>
#include <vector>

namespace muskat {

// Source-type solution of ∂t f = div(f∇f). The classical m = 2 profile of
// ∂τ u = Δ(u²) is evaluated at τ = (t + time_offset)/2:
//   f(t, x) = τ^(-d/(d+2)) (C - κ|x|² τ^(-2/(d+2)))₊,  κ = 1/(4(d+2)),
// with C fixed by the mass.
struct BarenblattSpec {
    int dim = 1;
    double mass = 1.0;
    double time_offset = 1.0;

    void validate() const;
    // C and κ of the profile above.
    double height_constant() const;
    double shape_constant() const;
    // Radius of the support at time t.
    double support_radius(double t) const;
};

double barenblatt_eval(const BarenblattSpec& spec, double t, std::array<double, 2> x);
inline double barenblatt_eval(const BarenblattSpec& spec, double t, double x) {
    return barenblatt_eval(spec, t, {x, 0.0});
}

// Cell averages of the profile on grid: exact in 1D, 8x8 Gauss–Legendre per
// cell in 2D (with 4x4 sub-cells on cells cut by the front).
Field barenblatt_cell_averages(const BarenblattSpec& spec, const Grid& grid, double t);

// PME integrator: the Muskat scheme with ε = 0 and g ≡ 0.
SimulationResult pme_simulate(const Field& f0, double t_end, const std::vector<double>& output_times,
                              const StepControls& controls = {});

}  // namespace muskat
