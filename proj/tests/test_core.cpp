#include "muskat/core.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace muskat;

TEST_SUITE("core") {

TEST_CASE("grid geometry") {
    const Grid g(1, 8, 4.0);
    CHECK(g.spacing() == 0.5);
    CHECK(g.cell_count() == 8);
    CHECK(g.cell_volume() == 0.5);
    CHECK(g.center(0) == -1.75);
    CHECK(g.center(7) == 1.75);

    const Grid g2(2, 6, 3.0);
    CHECK(g2.cell_count() == 36);
    CHECK(g2.cell_volume() == 0.25);
    CHECK(g2.index(2, 3) == 20);
    const auto c = g2.center_of(g2.index(0, 5));
    CHECK(c[0] == -1.25);
    CHECK(c[1] == 1.25);
    CHECK(g2.radius_squared(g2.index(0, 5)) == doctest::Approx(2 * 1.25 * 1.25));

    CHECK(Grid::centered(1, 64).length() == 20.0);
    CHECK(Grid::centered(2, 64).length() == 10.0);
}

TEST_CASE("grid rejects invalid shapes") {
    CHECK_THROWS_AS(Grid(1, 3, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Grid(3, 8, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Grid(1, 8, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(Grid(1, 8, std::numeric_limits<double>::infinity()), std::invalid_argument);
}

TEST_CASE("cell centers are exactly symmetric about the origin") {
    for (int n : {4, 7, 64, 1023, 2048}) {
        const Grid g = Grid::centered(1, n);
        for (int i = 0; i < n; ++i) REQUIRE(g.center(i) == -g.center(n - 1 - i));
    }
}

TEST_CASE("cell_integral closed forms") {
    CHECK(cell_integral(Field(Grid(1, 16, 2.0))) == 0.0);
    CHECK(cell_integral(Field(Grid(1, 16, 2.0), 1.0)) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(cell_integral(Field(Grid(2, 12, 3.0), 1.0)) == doctest::Approx(9.0).epsilon(1e-15));
}

TEST_CASE("cell_integral is linear") {
    for (int dim : {1, 2}) {
        const Grid g(dim, 32, 5.0);
        const Field u = testing::random_field(g, 1, -1.0, 1.0);
        const Field v = testing::random_field(g, 2, -1.0, 1.0);
        for (auto [a, b] : {std::pair{0.3, -1.7}, std::pair{2.0, 5.5}, std::pair{-4.0, 0.0}}) {
            const double lhs = cell_integral(a * u + b * v);
            const double rhs = a * cell_integral(u) + b * cell_integral(v);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13).scale(1.0));
        }
    }
}

TEST_CASE("mu_of_eps") {
    CHECK(mu_of_eps(EpsParams(0.25, 0.0, 3.0)) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(mu_of_eps(EpsParams(0.25, 0.5, 1.0)) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(mu_of_eps(EpsParams(0.1, 1.0, 2.0)) == doctest::Approx(20.0).epsilon(1e-14));
}

TEST_CASE("eps params derived quantities") {
    const EpsParams p(0.04, 0.5, 3.0);
    CHECK(p.density_ratio() == 0.04);
    CHECK(p.g_mobility_factor() == doctest::Approx(p.mu() * 0.04).epsilon(1e-14));
    CHECK(p.inv_mu() == doctest::Approx(1.0 / p.mu()).epsilon(1e-14));

    const EpsParams limit(0.0, 0.5, 2.0);
    CHECK(limit.g_mobility_factor() == 0.0);
    CHECK(limit.inv_mu() == 0.0);
    CHECK(std::isinf(limit.mu()));
    CHECK(EpsParams(0.0, 0.0, 2.0).mu() == 2.0);
}

TEST_CASE("eps params validation") {
    CHECK_THROWS_AS(EpsParams(1.0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(EpsParams(-0.1, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(EpsParams(0.1, -0.1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(EpsParams(0.1, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(EpsParams(0.0, 1.5, 1.0), std::invalid_argument);
    CHECK_NOTHROW(EpsParams(0.1, 1.5, 1.0));
}

TEST_CASE("state invariants") {
    const Grid a(1, 8, 1.0);
    const Grid b(1, 8, 2.0);
    CHECK_THROWS_AS(State(Field(a), Field(b)), std::invalid_argument);
    CHECK_THROWS_AS(State(Field(a), Field(a), -1.0), std::invalid_argument);
    const State s(Field(a, 1.0), Field(a, 2.0));
    CHECK(s.height().max() == 3.0);
}

TEST_CASE("normalize_to_unit_mass") {
    SUBCASE("constant on a unit box") {
        const Field out = normalize_to_unit_mass(Field(Grid(1, 10, 1.0), 2.0));
        for (double v : out.values()) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));
    }
    SUBCASE("zero field") {
        CHECK_THROWS_WITH_AS(normalize_to_unit_mass(Field(Grid(1, 10, 1.0))), doctest::Contains("zero mass"),
                             std::invalid_argument);
    }
    SUBCASE("negative cell is named") {
        Field f(Grid(1, 10, 1.0), 1.0);
        f[6] = -0.5;
        CHECK_THROWS_WITH_AS(normalize_to_unit_mass(f), doctest::Contains("cell 6"), std::invalid_argument);
    }
    SUBCASE("gaussian against a long double sum") {
        const Grid g = Grid::centered(1, 256);
        Field f(g);
        for (int i = 0; i < 256; ++i) f[i] = std::exp(-g.center(i) * g.center(i));
        const Field out = normalize_to_unit_mass(f);
        long double mass = 0.0L;
        for (double v : out.values()) mass += static_cast<long double>(v);
        mass *= g.spacing();
        CHECK(std::abs(static_cast<double>(mass) - 1.0) <= 1e-14);
        // Shape preserved up to one scalar.
        for (int i = 0; i < 256; ++i) CHECK(out[i] == doctest::Approx(f[i] / cell_integral(f)).epsilon(1e-15));
    }
    SUBCASE("idempotent bit for bit") {
        for (int dim : {1, 2}) {
            const Field once = normalize_to_unit_mass(testing::random_field(Grid(dim, 24, 3.0), 9));
            CHECK(normalize_to_unit_mass(once) == once);
        }
    }
}

TEST_CASE("initial data admissibility") {
    const Grid g(1, 8, 1.0);
    const Field unit(g, 1.0);
    CHECK_NOTHROW(InitialData(unit, unit));
    CHECK_THROWS_AS(InitialData(Field(g, 2.0), unit), std::invalid_argument);
    Field neg = unit;
    neg[0] = -1e-3;
    neg[1] += 1e-3;
    CHECK_THROWS_WITH_AS(InitialData(unit, neg), doctest::Contains("cell 0"), std::invalid_argument);
    CHECK_THROWS_AS(InitialData(unit, Field(Grid(1, 8, 2.0), 0.5)), std::invalid_argument);
}

}
