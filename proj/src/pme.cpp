#include "muskat/pme.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace muskat {

void BarenblattSpec::validate() const {
    if (dim != 1 && dim != 2) throw std::invalid_argument("Barenblatt profile implemented for d = 1, 2");
    if (!(mass > 0.0)) throw std::invalid_argument("Barenblatt mass must be positive");
    if (!(time_offset > 0.0)) throw std::invalid_argument("Barenblatt time offset must be positive");
}

double BarenblattSpec::shape_constant() const { return 1.0 / (4.0 * (dim + 2)); }

double BarenblattSpec::height_constant() const {
    // mass = ω_d · 2/(d(d+2)) · C^(1+d/2) κ^(-d/2), ω_1 = 2, ω_2 = 2π.
    const double d = dim;
    const double sphere = dim == 1 ? 2.0 : 2.0 * std::numbers::pi;
    const double kappa = shape_constant();
    const double c_pow = mass * d * (d + 2.0) * std::pow(kappa, 0.5 * d) / (2.0 * sphere);
    return std::pow(c_pow, 2.0 / (d + 2.0));
}

double BarenblattSpec::support_radius(double t) const {
    const double tau = 0.5 * (t + time_offset);
    return std::sqrt(height_constant() / shape_constant()) * std::pow(tau, 1.0 / (dim + 2));
}

double barenblatt_eval(const BarenblattSpec& spec, double t, std::array<double, 2> x) {
    spec.validate();
    if (!(t + spec.time_offset > 0.0)) throw std::invalid_argument("Barenblatt profile needs t + t0 > 0");
    const double d = spec.dim;
    const double tau = 0.5 * (t + spec.time_offset);
    const double r2 = spec.dim == 1 ? x[0] * x[0] : x[0] * x[0] + x[1] * x[1];
    const double inner = spec.height_constant() - spec.shape_constant() * r2 * std::pow(tau, -2.0 / (d + 2.0));
    return inner > 0.0 ? std::pow(tau, -d / (d + 2.0)) * inner : 0.0;
}

namespace {

constexpr std::array<double, 8> kGaussNodes = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                               -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                               0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kGaussWeights = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                                 0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                                 0.2223810344533745, 0.1012285362903763};

double gauss_square(const BarenblattSpec& spec, double t, double x0, double y0, double h) {
    double sum = 0.0;
    for (std::size_t a = 0; a < kGaussNodes.size(); ++a)
        for (std::size_t b = 0; b < kGaussNodes.size(); ++b)
            sum += kGaussWeights[a] * kGaussWeights[b] *
                   barenblatt_eval(spec, t, {x0 + 0.5 * h * (1.0 + kGaussNodes[a]), y0 + 0.5 * h * (1.0 + kGaussNodes[b])});
    return 0.25 * sum;  // average over the square
}

}  // namespace

Field barenblatt_cell_averages(const BarenblattSpec& spec, const Grid& grid, double t) {
    spec.validate();
    if (spec.dim != grid.dim()) throw std::invalid_argument("Barenblatt spec and grid dimensions differ");
    Field out(grid);
    const double dx = grid.spacing();
    const double tau = 0.5 * (t + spec.time_offset);
    const double radius = spec.support_radius(t);
    if (grid.dim() == 1) {
        const double amp = std::pow(tau, -1.0 / 3.0);
        const double c = spec.height_constant();
        const double k = spec.shape_constant() * std::pow(tau, -2.0 / 3.0);
        for (int i = 0; i < grid.cells_per_axis(); ++i) {
            const double a = std::max(grid.center(i) - 0.5 * dx, -radius);
            const double b = std::min(grid.center(i) + 0.5 * dx, radius);
            if (b <= a) continue;
            out[grid.index(i)] = amp * (c * (b - a) - k * (b * b * b - a * a * a) / 3.0) / dx;
        }
        return out;
    }
    for (std::size_t cell = 0; cell < grid.cell_count(); ++cell) {
        const auto [xc, yc] = grid.center_of(cell);
        const double x0 = xc - 0.5 * dx;
        const double y0 = yc - 0.5 * dx;
        const double near = std::hypot(std::max({0.0, std::abs(xc) - 0.5 * dx}), std::max({0.0, std::abs(yc) - 0.5 * dx}));
        const double far = std::hypot(std::abs(xc) + 0.5 * dx, std::abs(yc) + 0.5 * dx);
        if (near >= radius) continue;
        if (far <= radius) {
            out[cell] = gauss_square(spec, t, x0, y0, dx);
            continue;
        }
        constexpr int kSub = 4;
        const double h = dx / kSub;
        double sum = 0.0;
        for (int a = 0; a < kSub; ++a)
            for (int b = 0; b < kSub; ++b) sum += gauss_square(spec, t, x0 + a * h, y0 + b * h, h);
        out[cell] = sum / (kSub * kSub);
    }
    return out;
}

SimulationResult pme_simulate(const Field& f0, double t_end, const std::vector<double>& output_times,
                              const StepControls& controls) {
    const State init(f0, Field(f0.grid()), 0.0);
    return simulate(init, EpsParams(0.0, 0.0, 1.0), t_end, output_times, controls);
}

}  // namespace muskat
