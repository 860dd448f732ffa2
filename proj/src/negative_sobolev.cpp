#include "muskat/negative_sobolev.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace muskat {

HelmholtzOperator::HelmholtzOperator(const Grid& grid) : grid_(grid) {
    if (grid.dim() != 2) return;
    const int n = grid.cells_per_axis();
    basis_.resize(static_cast<std::size_t>(n) * n);
    for (int k = 0; k < n; ++k) {
        const double scale = std::sqrt((k == 0 ? 1.0 : 2.0) / n);
        for (int i = 0; i < n; ++i)
            basis_[static_cast<std::size_t>(k) * n + i] = scale * std::cos(std::numbers::pi * k * (i + 0.5) / n);
    }
}

double HelmholtzOperator::axis_eigenvalue(int k) const {
    const double s = std::sin(0.5 * std::numbers::pi * k / grid_.cells_per_axis());
    const double dx = grid_.spacing();
    return 4.0 * s * s / (dx * dx);
}

Field HelmholtzOperator::apply(const Field& u) const {
    if (!(u.grid() == grid_)) throw std::invalid_argument("field and operator grids differ");
    const int n = grid_.cells_per_axis();
    const double inv_dx2 = 1.0 / (grid_.spacing() * grid_.spacing());
    Field out = u;
    const int rows = grid_.dim() == 2 ? n : 1;
    for (int j = 0; j < rows; ++j) {
        for (int i = 0; i < n; ++i) {
            const std::size_t k = grid_.index(i, j);
            double lap = 0.0;
            if (i > 0) lap += u[k - 1] - u[k];
            if (i < n - 1) lap += u[k + 1] - u[k];
            if (grid_.dim() == 2) {
                if (j > 0) lap += u[k - n] - u[k];
                if (j < n - 1) lap += u[k + n] - u[k];
            }
            out[k] -= lap * inv_dx2;
        }
    }
    return out;
}

// Solves ((1 + shift) I - Δ_1) x = rhs along one axis in place.
void HelmholtzOperator::solve_tridiagonal(std::vector<double>& rhs, double shift, std::vector<double>& c) const {
    const int n = grid_.cells_per_axis();
    const double off = -1.0 / (grid_.spacing() * grid_.spacing());
    auto diag = [&](int i) { return 1.0 + shift - off * ((i > 0) + (i < n - 1)); };
    c.resize(n);
    double denom = diag(0);
    c[0] = off / denom;
    rhs[0] /= denom;
    for (int i = 1; i < n; ++i) {
        denom = diag(i) - off * c[i - 1];
        c[i] = off / denom;
        rhs[i] = (rhs[i] - off * rhs[i - 1]) / denom;
    }
    for (int i = n - 2; i >= 0; --i) rhs[i] -= c[i] * rhs[i + 1];
}

Field HelmholtzOperator::invert(const Field& rhs) const {
    if (!(rhs.grid() == grid_)) throw std::invalid_argument("field and operator grids differ");
    const int n = grid_.cells_per_axis();
    std::vector<double> scratch;
    Field out(grid_);
    if (grid_.dim() == 1) {
        std::vector<double> x(rhs.values().begin(), rhs.values().end());
        solve_tridiagonal(x, 0.0, scratch);
        out = Field(grid_, std::move(x));
    } else {
        const std::size_t nn = static_cast<std::size_t>(n);
        // modes[k*N + j]: x-transform of row j, stored mode-major so each
        // y-solve reads a contiguous column.
        std::vector<double> modes(nn * nn, 0.0);
        for (std::size_t j = 0; j < nn; ++j)
            for (std::size_t k = 0; k < nn; ++k) {
                double s = 0.0;
                for (std::size_t i = 0; i < nn; ++i) s += basis_[k * nn + i] * rhs[i + nn * j];
                modes[k * nn + j] = s;
            }
        std::vector<double> column(nn);
        for (std::size_t k = 0; k < nn; ++k) {
            std::copy_n(modes.begin() + k * nn, nn, column.begin());
            solve_tridiagonal(column, axis_eigenvalue(static_cast<int>(k)), scratch);
            std::copy_n(column.begin(), nn, modes.begin() + k * nn);
        }
        for (std::size_t j = 0; j < nn; ++j)
            for (std::size_t i = 0; i < nn; ++i) {
                double s = 0.0;
                for (std::size_t k = 0; k < nn; ++k) s += basis_[k * nn + i] * modes[k * nn + j];
                out[i + nn * j] = s;
            }
    }

    const Field back = apply(out);
    double res = 0.0;
    double ref = 0.0;
    for (std::size_t k = 0; k < back.size(); ++k) {
        res = std::max(res, std::abs(back[k] - rhs[k]));
        ref = std::max(ref, std::abs(rhs[k]));
    }
    if (res > 1e-10 * ref) {
        std::ostringstream msg;
        msg << "Helmholtz solve residual " << res << " exceeds 1e-10 relative to |rhs|_max = " << ref;
        throw std::runtime_error(msg.str());
    }
    return out;
}

Field invert_helmholtz(const HelmholtzOperator& op, const Field& field) { return op.invert(field); }

double discrete_inner(const Field& u, const Field& v) {
    std::vector<double> prod(u.size());
    for (std::size_t k = 0; k < prod.size(); ++k) prod[k] = u[k] * v[k];
    return cell_integral(u.grid(), prod);
}

double h_minus_s_norm(const HelmholtzOperator& op, const Field& field, int s) {
    if (s < 1) throw std::invalid_argument("h_minus_s_norm needs s >= 1");
    // ⟨A^-s u, u⟩ = ⟨A^-⌈s/2⌉ u, A^-⌊s/2⌋ u⟩, symmetric split keeps it >= 0.
    Field low = field;
    for (int k = 0; k < s / 2; ++k) low = op.invert(low);
    const Field high = s % 2 == 1 ? op.invert(low) : low;
    return std::sqrt(std::max(0.0, discrete_inner(high, low)));
}

}  // namespace muskat
