#pragma once

#include "muskat/core.hpp"

#include <vector>

namespace muskat {

// Discrete I - Δ_h on the five/three-point stencil with zero normal
// difference at the box boundary (the solver's no-flux closure).
//
// 1D inverses use the Thomas algorithm. 2D inverses diagonalize Δ_h along x
// with the orthonormal DCT-II basis of the Neumann second difference and
// solve one tridiagonal system along y per mode.
class HelmholtzOperator {
public:
    explicit HelmholtzOperator(const Grid& grid);

    const Grid& grid() const { return grid_; }

    // (I - Δ_h) u
    Field apply(const Field& u) const;
    // Unique D with (I - Δ_h) D = rhs. Throws std::runtime_error when the
    // solve misses a 1e-10 relative residual.
    Field invert(const Field& rhs) const;

    // Eigenvalue of -Δ_h (one axis) for mode k: (4/Δx²) sin²(πk/(2N)).
    double axis_eigenvalue(int k) const;

private:
    void solve_tridiagonal(std::vector<double>& rhs, double shift, std::vector<double>& scratch) const;

    Grid grid_;
    std::vector<double> basis_;  // basis_[k*N + i] = q_k(i), 2D only
};

Field invert_helmholtz(const HelmholtzOperator& op, const Field& field);

// sqrt(⟨(I-Δ_h)^(-s) u, u⟩ Δx^d) for integer s >= 1.
double h_minus_s_norm(const HelmholtzOperator& op, const Field& field, int s);

// Σ_k u_k v_k Δx^d
double discrete_inner(const Field& u, const Field& v);

}  // namespace muskat
