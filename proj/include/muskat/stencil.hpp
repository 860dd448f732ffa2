#pragma once

#include "muskat/core.hpp"

#include <cstddef>
#include <vector>

namespace muskat {

// Per-face storage. x-faces are indexed i_face + (N+1)*j with i_face in
// [0, N]; y-faces (2D only) are indexed i + N*j_face with j_face in [0, N].
// Faces with i_face or j_face equal to 0 or N lie on the box boundary.
struct FaceArray {
    std::vector<double> x;
    std::vector<double> y;

    explicit FaceArray(const Grid& grid);
};

// Upwind mobility: the mobility of the cell on the higher-pressure side.
inline double upwind_mobility(double m_left, double m_right, double p_left, double p_right) {
    return p_left >= p_right ? m_left : m_right;
}

// Visits every interior face once as visit(left_cell, right_cell, axis, face_slot).
template <class Visit>
void for_each_interior_face(const Grid& grid, Visit&& visit) {
    const int n = grid.cells_per_axis();
    const int rows = grid.dim() == 2 ? n : 1;
    for (int j = 0; j < rows; ++j) {
        for (int i = 1; i < n; ++i) {
            visit(grid.index(i - 1, j), grid.index(i, j), 0, static_cast<std::size_t>(i) + static_cast<std::size_t>(n + 1) * j);
        }
    }
    if (grid.dim() == 2) {
        for (int j = 1; j < n; ++j) {
            for (int i = 0; i < n; ++i) {
                visit(grid.index(i, j - 1), grid.index(i, j), 1, grid.index(i, j));
            }
        }
    }
}

// Σ_faces (Δu/Δx)² Δx^d: the discrete ∫|∇u|² on the solver's face stencil.
double gradient_energy(const Field& u);

// Σ_faces m_face (Δp/Δx)² Δx^d with upwind face mobility taken from m on p.
double weighted_gradient_energy(const Field& m, const Field& p);

}  // namespace muskat
