#include "muskat/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace muskat {

namespace {

// Neumaier-compensated sum; keeps unit-mass checks at the 1e-15 level for
// grids with millions of cells.
double compensated_sum(std::span<const double> values) {
    double sum = 0.0;
    double carry = 0.0;
    for (double v : values) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            carry += (sum - t) + v;
        else
            carry += (v - t) + sum;
        sum = t;
    }
    return sum + carry;
}

}  // namespace

Grid::Grid(int dim, int cells_per_axis, double length) : dim_(dim), n_(cells_per_axis) {
    if (dim != 1 && dim != 2)
        throw std::invalid_argument("grid dimension must be 1 or 2, got " + std::to_string(dim));
    if (cells_per_axis < 4)
        throw std::invalid_argument("grid needs at least 4 cells per axis, got " + std::to_string(cells_per_axis));
    if (!(length > 0.0) || !std::isfinite(length))
        throw std::invalid_argument("grid length must be positive and finite");
    dx_ = length / cells_per_axis;
    count_ = dim == 1 ? static_cast<std::size_t>(n_) : static_cast<std::size_t>(n_) * n_;
    volume_ = dim == 1 ? dx_ : dx_ * dx_;
}

double Grid::default_length(int dim) { return dim == 1 ? 20.0 : 10.0; }

Grid Grid::centered(int dim, int cells_per_axis) { return Grid(dim, cells_per_axis, default_length(dim)); }

std::array<double, 2> Grid::center_of(std::size_t cell) const {
    const int i = static_cast<int>(cell % n_);
    const int j = static_cast<int>(cell / n_);
    return {center(i), dim_ == 2 ? center(j) : 0.0};
}

double Grid::radius_squared(std::size_t cell) const {
    const auto [x, y] = center_of(cell);
    return x * x + y * y;
}

Field::Field(const Grid& grid, double value) : grid_(grid), values_(grid.cell_count(), value) {}

Field::Field(const Grid& grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.cell_count())
        throw std::invalid_argument("field has " + std::to_string(values_.size()) + " values for a grid of " +
                                    std::to_string(grid_.cell_count()) + " cells");
}

double Field::max() const { return *std::max_element(values_.begin(), values_.end()); }
double Field::min() const { return *std::min_element(values_.begin(), values_.end()); }

Field& Field::operator+=(const Field& other) {
    if (!(grid_ == other.grid_)) throw std::invalid_argument("field grids differ");
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
    return *this;
}

Field& Field::operator-=(const Field& other) {
    if (!(grid_ == other.grid_)) throw std::invalid_argument("field grids differ");
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= other.values_[k];
    return *this;
}

Field& Field::operator*=(double s) {
    for (double& v : values_) v *= s;
    return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double s, Field a) { return a *= s; }

State::State(Field f_, Field g_, double t) : f(std::move(f_)), g(std::move(g_)), time(t) {
    if (!(f.grid() == g.grid())) throw std::invalid_argument("state fields live on different grids");
    if (t < 0.0) throw std::invalid_argument("state time must be non-negative");
}

EpsParams::EpsParams(double eps, double alpha, double mu_bar) : eps_(eps), alpha_(alpha), mu_bar_(mu_bar) {
    if (!(eps >= 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in [0, 1)");
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("alpha must be >= 0");
    if (!(mu_bar > 0.0) || !std::isfinite(mu_bar)) throw std::invalid_argument("mu_bar must be > 0");
    if (eps == 0.0 && alpha > 1.0)
        throw std::invalid_argument("eps = 0 requires alpha <= 1 (mu*eps would diverge)");
}

double EpsParams::mu() const {
    if (eps_ == 0.0) return alpha_ == 0.0 ? mu_bar_ : std::numeric_limits<double>::infinity();
    return mu_bar_ * std::pow(eps_, -alpha_);
}

double EpsParams::inv_mu() const { return std::pow(eps_, alpha_) / mu_bar_; }

double EpsParams::g_mobility_factor() const { return mu_bar_ * std::pow(eps_, 1.0 - alpha_); }

double mu_of_eps(const EpsParams& params) { return params.mu(); }

InitialData::InitialData(Field f, Field g) : f0(std::move(f)), g0(std::move(g)) {
    if (!(f0.grid() == g0.grid())) throw std::invalid_argument("initial fields live on different grids");
    check_admissible(f0, "f0");
    check_admissible(g0, "g0");
}

double cell_integral(const Grid& grid, std::span<const double> values) {
    return compensated_sum(values) * grid.cell_volume();
}

double cell_integral(const Field& field) { return cell_integral(field.grid(), field.values()); }

Field normalize_to_unit_mass(const Field& field) {
    for (std::size_t k = 0; k < field.size(); ++k) {
        if (!std::isfinite(field[k]) || field[k] < 0.0) {
            std::ostringstream msg;
            msg << "cannot normalize: cell " << k << " holds " << field[k];
            throw std::invalid_argument(msg.str());
        }
    }
    const double mass = cell_integral(field);
    if (!(mass > 0.0)) throw std::invalid_argument("cannot normalize: zero mass");
    // Already normalized inputs pass through untouched, which makes the
    // projection idempotent bit for bit.
    if (std::abs(mass - 1.0) <= 1e-14) return field;
    Field out = field;
    for (double& v : out.values()) v /= mass;
    return out;
}

void check_admissible(const Field& field, const std::string& name) {
    for (std::size_t k = 0; k < field.size(); ++k) {
        if (!std::isfinite(field[k]) || field[k] < 0.0) {
            std::ostringstream msg;
            msg << name << ": cell " << k << " holds " << field[k] << " (must be finite and >= 0)";
            throw std::invalid_argument(msg.str());
        }
    }
    const double mass = cell_integral(field);
    if (std::abs(mass - 1.0) > 1e-12) {
        std::ostringstream msg;
        msg.precision(17);
        msg << name << ": mass " << mass << " is not 1 within 1e-12";
        throw std::invalid_argument(msg.str());
    }
}

}  // namespace muskat
