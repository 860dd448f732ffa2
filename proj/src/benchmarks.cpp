#include "muskat/benchmarks.hpp"

#include "muskat/pme.hpp"

#include <stdexcept>

namespace muskat {

Field bump(const Grid& grid, double center_x, double half_width) {
    Field out(grid);
    const double inv_w2 = 1.0 / (half_width * half_width);
    for (std::size_t k = 0; k < grid.cell_count(); ++k) {
        const auto [x, y] = grid.center_of(k);
        const double dx = x - center_x;
        const double s = 1.0 - (dx * dx + y * y) * inv_w2;
        out[k] = s > 0.0 ? s * s : 0.0;
    }
    return out;
}

const std::vector<std::string>& benchmark_names() {
    static const std::vector<std::string> names = {"two_bump", "equal", "offset", "barenblatt"};
    return names;
}

InitialData make_benchmark(std::string_view name, const Grid& grid) {
    if (name == "two_bump") {
        return InitialData(normalize_to_unit_mass(bump(grid, 0.0, 1.5)),
                           normalize_to_unit_mass(bump(grid, -1.25, 0.75) + bump(grid, 1.25, 0.75)));
    }
    if (name == "equal") {
        Field f = normalize_to_unit_mass(bump(grid, 0.0, 1.5));
        return InitialData(f, f);
    }
    if (name == "offset") {
        return InitialData(normalize_to_unit_mass(bump(grid, -0.75, 1.25)),
                           normalize_to_unit_mass(bump(grid, 0.75, 1.25)));
    }
    if (name == "barenblatt") {
        BarenblattSpec spec;
        spec.dim = grid.dim();
        Field f = normalize_to_unit_mass(barenblatt_cell_averages(spec, grid, 0.0));
        return InitialData(f, f);
    }
    throw std::invalid_argument("unknown benchmark '" + std::string(name) + "'");
}

}  // namespace muskat
