#include "muskat/negative_sobolev.hpp"
#include "muskat/stencil.hpp"
#include "dense_oracle.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace muskat;

namespace {

double max_abs_diff(const Field& a, const Field& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

double max_abs(const Field& a) { return std::max(std::abs(a.max()), std::abs(a.min())); }

// Neumann eigenvector cos(kπ(i+½)/N) of the one-axis second difference.
Field cosine_mode(const Grid& grid, int kx, int ky) {
    const int n = grid.cells_per_axis();
    Field out(grid);
    for (std::size_t c = 0; c < grid.cell_count(); ++c) {
        const int i = static_cast<int>(c % n);
        const int j = static_cast<int>(c / n);
        double v = std::cos(std::numbers::pi * kx * (i + 0.5) / n);
        if (grid.dim() == 2) v *= std::cos(std::numbers::pi * ky * (j + 0.5) / n);
        out[c] = v;
    }
    return out;
}

}  // namespace

TEST_SUITE("negative_sobolev") {

TEST_CASE("invert agrees with a dense solve") {
    for (const Grid& g : {Grid(1, 16, 2.0), Grid(1, 37, 5.0), Grid(1, 64, 20.0), Grid(2, 8, 2.0), Grid(2, 13, 4.0)}) {
        const HelmholtzOperator op(g);
        const Field rhs = testing::random_field(g, 41, -1.0, 1.0);
        const Eigen::VectorXd ref = testing::dense_helmholtz(g).partialPivLu().solve(testing::to_vector(rhs));
        const Field d = op.invert(rhs);
        for (std::size_t k = 0; k < d.size(); ++k) CHECK(d[k] == doctest::Approx(ref(k)).epsilon(1e-12).scale(1.0));
        // Forward operator matches the assembled matrix too.
        const Eigen::VectorXd fwd = testing::dense_helmholtz(g) * testing::to_vector(rhs);
        const Field applied = op.apply(rhs);
        for (std::size_t k = 0; k < d.size(); ++k) CHECK(applied[k] == doctest::Approx(fwd(k)).epsilon(1e-12));
    }
}

TEST_CASE("h_minus_s_norm agrees with a dense oracle") {
    for (const Grid& g : {Grid(1, 8, 1.0), Grid(1, 64, 20.0), Grid(1, 50, 3.0), Grid(2, 8, 10.0)}) {
        const HelmholtzOperator op(g);
        const Field u = testing::random_field(g, 43, -1.0, 1.0);
        for (int s : {1, 2, 3}) {
            const double ref = testing::dense_h_minus_s(g, u, s);
            CHECK(std::abs(h_minus_s_norm(op, u, s) - ref) <= 1e-10 * ref);
        }
    }
}

TEST_CASE("constants and zero") {
    for (int dim : {1, 2}) {
        const Grid g(dim, 16, 3.0);
        const HelmholtzOperator op(g);
        const Field c = op.invert(Field(g, 2.5));
        for (double v : c.values()) CHECK(v == doctest::Approx(2.5).epsilon(1e-13));
        CHECK(max_abs(op.invert(Field(g))) == 0.0);
        CHECK(h_minus_s_norm(op, Field(g), 1) == 0.0);
    }
}

TEST_CASE("cosine modes are eigenvectors") {
    for (int dim : {1, 2}) {
        const Grid g(dim, dim == 1 ? 48 : 16, 6.0);
        const HelmholtzOperator op(g);
        for (auto [kx, ky] : {std::pair{1, 0}, std::pair{3, 2}, std::pair{7, 5}}) {
            const Field v = cosine_mode(g, kx, dim == 2 ? ky : 0);
            const double lambda = op.axis_eigenvalue(kx) + (dim == 2 ? op.axis_eigenvalue(ky) : 0.0);
            Field expect = (1.0 / (1.0 + lambda)) * v;
            CHECK(max_abs_diff(op.invert(v), expect) <= 1e-12);
            for (int s : {1, 2}) {
                const double norm2 = std::pow(1.0 + lambda, -s) * discrete_inner(v, v);
                CHECK(h_minus_s_norm(op, v, s) == doctest::Approx(std::sqrt(norm2)).epsilon(1e-12));
            }
        }
    }
    // The analytic eigenvalues are the spectrum of the dense matrix.
    const Grid g(1, 32, 4.0);
    const HelmholtzOperator op(g);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(testing::dense_helmholtz(g));
    std::vector<double> analytic;
    for (int k = 0; k < 32; ++k) analytic.push_back(1.0 + op.axis_eigenvalue(k));
    std::sort(analytic.begin(), analytic.end());
    for (int k = 0; k < 32; ++k) CHECK(eig.eigenvalues()(k) == doctest::Approx(analytic[k]).epsilon(1e-12));
}

TEST_CASE("norm scaling") {
    const Grid g(1, 40, 4.0);
    const HelmholtzOperator op(g);
    const Field u = testing::random_field(g, 44, -1.0, 1.0);
    const double n1 = h_minus_s_norm(op, u, 2);
    CHECK(h_minus_s_norm(op, 2.0 * u, 2) == 2.0 * n1);
    CHECK(h_minus_s_norm(op, -0.5 * u, 2) == 0.5 * n1);
    CHECK(h_minus_s_norm(op, 3.7 * u, 2) == doctest::Approx(3.7 * n1).epsilon(1e-14));
    CHECK_THROWS_AS(h_minus_s_norm(op, u, 0), std::invalid_argument);
}

TEST_CASE("positivity and contraction chain") {
    for (int dim : {1, 2}) {
        const Grid g(dim, dim == 1 ? 64 : 24, 5.0);
        const HelmholtzOperator op(g);
        for (unsigned seed = 50; seed < 55; ++seed) {
            const Field u = testing::random_field(g, seed, -1.0, 1.0);
            const double l2 = std::sqrt(discrete_inner(u, u));
            const double n1 = h_minus_s_norm(op, u, 1);
            const double n2 = h_minus_s_norm(op, u, 2);
            const double n3 = h_minus_s_norm(op, u, 3);
            CHECK(n1 > 0.0);
            CHECK(n1 <= l2);
            CHECK(n2 <= n1);
            CHECK(n3 <= n2);
        }
    }
}

TEST_CASE("discrete duality by summation by parts") {
    for (int dim : {1, 2}) {
        const Grid g(dim, dim == 1 ? 80 : 20, 4.0);
        const HelmholtzOperator op(g);
        const Field d = testing::random_field(g, 60, -1.0, 1.0);
        const Field big_d = invert_helmholtz(op, d);
        const double lhs = discrete_inner(big_d, d);
        const double rhs = discrete_inner(big_d, big_d) + gradient_energy(big_d);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("forward-inverse round trip") {
    for (int dim : {1, 2}) {
        const Grid g(dim, dim == 1 ? 4096 : 256, 10.0);
        const HelmholtzOperator op(g);
        const Field u = testing::random_field(g, 61, -1.0, 1.0);
        CHECK(max_abs_diff(op.apply(op.invert(u)), u) <= 1e-10 * max_abs(u));
    }
}

}
