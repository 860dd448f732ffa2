#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace muskat {

// Uniform cell-centered Cartesian mesh on a box centered at the origin.
// Cells are stored x-fastest: index = i + N*j.
class Grid {
public:
    Grid(int dim, int cells_per_axis, double length);

    // Default truncated boxes: L = 20 in 1D, L = 10 per axis in 2D.
    static Grid centered(int dim, int cells_per_axis);
    static double default_length(int dim);

    int dim() const { return dim_; }
    int cells_per_axis() const { return n_; }
    double spacing() const { return dx_; }
    double length() const { return dx_ * n_; }
    double origin() const { return -0.5 * length(); }
    std::size_t cell_count() const { return count_; }
    // Δx^d, the measure of one cell.
    double cell_volume() const { return volume_; }

    // Coordinate of the i-th cell center along one axis. Computed as
    // (i + 1/2 - N/2)·Δx so that mirrored cells carry exactly opposite
    // coordinates.
    double center(int i) const { return (i + 0.5 - 0.5 * n_) * dx_; }
    std::array<double, 2> center_of(std::size_t cell) const;
    double radius_squared(std::size_t cell) const;

    std::size_t index(int i, int j = 0) const { return static_cast<std::size_t>(i) + static_cast<std::size_t>(n_) * j; }

    bool operator==(const Grid&) const = default;

private:
    int dim_;
    int n_;
    double dx_;
    std::size_t count_;
    double volume_;
};

// Cell-averaged scalar on a grid.
class Field {
public:
    explicit Field(const Grid& grid, double value = 0.0);
    Field(const Grid& grid, std::vector<double> values);

    const Grid& grid() const { return grid_; }
    std::size_t size() const { return values_.size(); }

    double& operator[](std::size_t k) { return values_[k]; }
    double operator[](std::size_t k) const { return values_[k]; }

    std::span<double> values() { return values_; }
    std::span<const double> values() const { return values_; }

    double max() const;
    double min() const;

    Field& operator+=(const Field& other);
    Field& operator-=(const Field& other);
    Field& operator*=(double s);

    bool operator==(const Field&) const = default;

private:
    Grid grid_;
    std::vector<double> values_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double s, Field a);

// Heights of the dense (f) and light (g) layer at time t.
struct State {
    Field f;
    Field g;
    double time = 0.0;

    State(Field f_, Field g_, double t = 0.0);
    const Grid& grid() const { return f.grid(); }
    Field height() const { return f + g; }
};

// Singular-limit parameters: R = eps, mu = mu_bar * eps^(-alpha).
// eps = 0 is accepted as the decoupled limit when alpha < 1; the products
// mu*eps and 1/mu stay finite there.
class EpsParams {
public:
    EpsParams(double eps, double alpha, double mu_bar);

    double eps() const { return eps_; }
    double alpha() const { return alpha_; }
    double mu_bar() const { return mu_bar_; }

    double density_ratio() const { return eps_; }
    double mu() const;
    double inv_mu() const;
    // Prefactor mu*eps = mu_bar * eps^(1-alpha) of the g-equation.
    double g_mobility_factor() const;

private:
    double eps_;
    double alpha_;
    double mu_bar_;
};

double mu_of_eps(const EpsParams& params);

struct InitialData {
    Field f0;
    Field g0;

    InitialData(Field f, Field g);
    State state() const { return State(f0, g0, 0.0); }
};

// Discrete ∫ u dx: Σ u_k Δx^d.
double cell_integral(const Field& field);
double cell_integral(const Grid& grid, std::span<const double> values);

// Rescales a non-negative field to unit mass.
Field normalize_to_unit_mass(const Field& field);

// Checks the admissible-class requirements (non-negative, finite, unit mass).
void check_admissible(const Field& field, const std::string& name);

}  // namespace muskat
