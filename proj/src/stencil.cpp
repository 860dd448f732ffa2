#include "muskat/stencil.hpp"

namespace muskat {

FaceArray::FaceArray(const Grid& grid) {
    const std::size_t n = static_cast<std::size_t>(grid.cells_per_axis());
    const std::size_t rows = grid.dim() == 2 ? n : 1;
    x.assign((n + 1) * rows, 0.0);
    if (grid.dim() == 2) y.assign(n * (n + 1), 0.0);
}

double gradient_energy(const Field& u) {
    const Grid& grid = u.grid();
    const double inv_dx = 1.0 / grid.spacing();
    double sum = 0.0;
    for_each_interior_face(grid, [&](std::size_t l, std::size_t r, int, std::size_t) {
        const double grad = (u[r] - u[l]) * inv_dx;
        sum += grad * grad;
    });
    return sum * grid.cell_volume();
}

double weighted_gradient_energy(const Field& m, const Field& p) {
    const Grid& grid = m.grid();
    const double inv_dx = 1.0 / grid.spacing();
    double sum = 0.0;
    for_each_interior_face(grid, [&](std::size_t l, std::size_t r, int, std::size_t) {
        const double grad = (p[r] - p[l]) * inv_dx;
        sum += upwind_mobility(m[l], m[r], p[l], p[r]) * grad * grad;
    });
    return sum * grid.cell_volume();
}

}  // namespace muskat
