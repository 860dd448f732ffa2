#include "muskat/functionals.hpp"

#include "muskat/stencil.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace muskat {

namespace {

double xlogx(double v) { return v > 0.0 ? v * std::log(v) : 0.0; }

}  // namespace

double energy(const State& state, double eps) {
    std::vector<double> density(state.f.size());
    for (std::size_t k = 0; k < density.size(); ++k) {
        const double f = state.f[k];
        const double h = f + state.g[k];
        density[k] = f * f + eps * h * h;
    }
    return 0.5 * cell_integral(state.grid(), density);
}

double entropy(const State& state, double mu) {
    const double inv_mu = 1.0 / mu;
    std::vector<double> density(state.f.size());
    for (std::size_t k = 0; k < density.size(); ++k) density[k] = xlogx(state.f[k]) + inv_mu * xlogx(state.g[k]);
    return cell_integral(state.grid(), density);
}

double second_moment(const State& state, double mu) {
    const double inv_mu = 1.0 / mu;
    const Grid& grid = state.grid();
    std::vector<double> density(state.f.size());
    for (std::size_t k = 0; k < density.size(); ++k)
        density[k] = (state.f[k] + inv_mu * state.g[k]) * grid.radius_squared(k);
    return cell_integral(grid, density);
}

double boundary_mass(const State& state) {
    const Grid& grid = state.grid();
    const int n = grid.cells_per_axis();
    auto near_edge = [n](int i) { return i < 2 || i >= n - 2; };
    double sum = 0.0;
    for (std::size_t k = 0; k < grid.cell_count(); ++k) {
        const int i = static_cast<int>(k % n);
        const int j = static_cast<int>(k / n);
        if (near_edge(i) || (grid.dim() == 2 && near_edge(j))) sum += state.f[k] + state.g[k];
    }
    return sum * grid.cell_volume();
}

DiagnosticsSample diagnose(const State& state, const EpsParams& params) {
    const double eps = params.eps();
    const Field h = state.height();
    Field p_f = h;
    for (std::size_t k = 0; k < p_f.size(); ++k) p_f[k] = (1.0 + eps) * state.f[k] + eps * state.g[k];

    DiagnosticsSample s;
    s.t = state.time;
    s.mass_f = cell_integral(state.f);
    s.mass_g = cell_integral(state.g);
    s.energy = energy(state, eps);
    s.entropy = entropy(state, params.mu());
    s.second_moment = second_moment(state, params.mu());
    s.diss_f = gradient_energy(state.f);
    s.diss_h = eps * gradient_energy(h);
    s.energy_diss = 0.5 * (weighted_gradient_energy(state.f, p_f) +
                           params.g_mobility_factor() * eps * weighted_gradient_energy(state.g, h));
    s.min_f = state.f.min();
    s.min_g = state.g.min();
    s.boundary_mass = boundary_mass(state);
    return s;
}

MomentResidual moment_identity_residual(const DiagnosticsRecord& diag) {
    MomentResidual out;
    const auto& s = diag.samples;
    if (s.empty()) return out;
    const double m0 = s.front().second_moment;
    if (!(m0 > 0.0)) throw std::invalid_argument("moment identity needs a positive initial second moment");
    // ∫(f² + εh²) = 2E, integrated by the trapezoid rule on the output times.
    double integral = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (k > 0) integral += (s[k].t - s[k - 1].t) * (s[k].energy + s[k - 1].energy);
        const double r = std::abs(s[k].second_moment - m0 - diag.dim * integral);
        out.value = std::max(out.value, r / m0);
        if (s[k].boundary_mass > kBoundaryMassThreshold) out.valid = false;
    }
    return out;
}

InequalityLedgers inequality_ledgers(const DiagnosticsRecord& diag) {
    InequalityLedgers out;
    const auto& s = diag.samples;
    if (s.empty()) return out;
    double energy_int = 0.0;
    double entropy_int = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (k > 0) {
            const double dt = s[k].t - s[k - 1].t;
            energy_int += 0.5 * dt * (s[k].energy_diss + s[k - 1].energy_diss);
            entropy_int += 0.5 * dt * (s[k].diss_f + s[k].diss_h + s[k - 1].diss_f + s[k - 1].diss_h);
        }
        out.t.push_back(s[k].t);
        out.energy.push_back(s[k].energy + energy_int - s.front().energy);
        out.entropy.push_back(s[k].entropy + entropy_int - s.front().entropy);
    }
    return out;
}

}  // namespace muskat
