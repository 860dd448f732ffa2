#include "muskat/config.hpp"

#include "muskat/benchmarks.hpp"
#include "muskat/output.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace muskat {

namespace pt = boost::property_tree;

namespace {

using KeyMap = std::map<std::string, std::set<std::string>>;

const KeyMap& simulation_keys() {
    static const KeyMap keys = {
        {"grid", {"dim", "cells", "length"}},
        {"initial", {"benchmark", "file"}},
        {"params", {"eps", "alpha", "mu_bar"}},
        {"run", {"t_end", "output_intervals", "output_times"}},
        {"controls", {"cfl", "dt_min", "dt_max", "retry_limit", "fixed_dt"}},
    };
    return keys;
}

const KeyMap& sweep_keys() {
    static const KeyMap keys = {
        {"grid", {"dim", "cells", "length"}},
        {"initial", {"benchmark", "file"}},
        {"sweep", {"eps_list", "alpha", "mu_bar", "measurement_times", "quantities", "reference", "threads"}},
        {"controls", {"cfl", "dt_min", "dt_max", "retry_limit", "fixed_dt"}},
    };
    return keys;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

// Parsed INI text as section -> key -> raw value.
class IniDoc {
public:
    IniDoc(std::string_view text, const KeyMap& allowed) {
        // '#' comments are not understood by the property tree reader.
        std::ostringstream cleaned;
        std::istringstream lines{std::string(text)};
        for (std::string line; std::getline(lines, line);) {
            const std::string t = trim(line);
            cleaned << (t.starts_with('#') ? std::string() : line) << '\n';
        }
        pt::ptree tree;
        std::istringstream in(cleaned.str());
        try {
            pt::read_ini(in, tree);
        } catch (const pt::ini_parser_error& e) {
            throw ConfigError("config: line " + std::to_string(e.line()) + ": " + e.message());
        }
        for (const auto& [section, body] : tree) {
            if (body.empty()) throw ConfigError(section + ": key outside any [section]");
            const auto it = allowed.find(section);
            if (it == allowed.end()) throw ConfigError(section + ": unknown section");
            for (const auto& [key, value] : body) {
                if (!it->second.contains(key)) throw ConfigError(section + "." + key + ": unknown key");
                values_[section + "." + key] = trim(value.get_value<std::string>());
            }
        }
    }

    bool has(const std::string& name) const { return values_.contains(name); }

    void read(const std::string& name, double& out) const {
        if (has(name)) out = to_double(name, values_.at(name));
    }

    void read(const std::string& name, int& out) const {
        if (!has(name)) return;
        const std::string& v = values_.at(name);
        int parsed = 0;
        const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), parsed);
        if (ec != std::errc() || ptr != v.data() + v.size()) throw ConfigError(name + ": expected an integer, got '" + v + "'");
        out = parsed;
    }

    void read(const std::string& name, std::string& out) const {
        if (has(name)) out = values_.at(name);
    }

    void read(const std::string& name, std::vector<double>& out) const {
        if (!has(name)) return;
        out.clear();
        std::istringstream items(values_.at(name));
        for (std::string item; std::getline(items, item, ',');) out.push_back(to_double(name, trim(item)));
        if (out.empty()) throw ConfigError(name + ": empty list");
    }

private:
    static double to_double(const std::string& name, const std::string& v) {
        try {
            return parse_double(v);
        } catch (const std::exception&) {
            throw ConfigError(name + ": expected a number, got '" + v + "'");
        }
    }

    std::map<std::string, std::string> values_;
};

void read_common(const IniDoc& doc, GridSpec& grid, InitialSpec& initial, StepControls& controls) {
    doc.read("grid.dim", grid.dim);
    doc.read("grid.cells", grid.cells_per_axis);
    doc.read("grid.length", grid.length);
    doc.read("initial.benchmark", initial.benchmark);
    doc.read("initial.file", initial.file);
    doc.read("controls.cfl", controls.cfl);
    doc.read("controls.dt_min", controls.dt_min);
    doc.read("controls.dt_max", controls.dt_max);
    doc.read("controls.retry_limit", controls.positivity_retry_limit);
    doc.read("controls.fixed_dt", controls.fixed_dt);

    if (grid.dim != 1 && grid.dim != 2) throw ConfigError("grid.dim: must be 1 or 2");
    if (grid.cells_per_axis < 4) throw ConfigError("grid.cells: must be >= 4");
    if (grid.length < 0.0) throw ConfigError("grid.length: must be positive (or omitted)");
    if (initial.file.empty()) {
        const auto& names = benchmark_names();
        if (std::find(names.begin(), names.end(), initial.benchmark) == names.end())
            throw ConfigError("initial.benchmark: unknown benchmark '" + initial.benchmark + "'");
    }
    try {
        controls.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("controls: ") + e.what());
    }
}

std::string join(const std::vector<double>& xs) {
    std::string out;
    for (std::size_t k = 0; k < xs.size(); ++k) out += (k ? "," : "") + format_double(xs[k]);
    return out;
}

void echo_common(std::vector<std::pair<std::string, std::string>>& out, const GridSpec& grid,
                 const InitialSpec& initial, const StepControls& c) {
    out.emplace_back("grid.dim", std::to_string(grid.dim));
    out.emplace_back("grid.cells", std::to_string(grid.cells_per_axis));
    out.emplace_back("grid.length", format_double(grid.grid().length()));
    out.emplace_back("initial.benchmark", initial.file.empty() ? initial.benchmark : "file");
    out.emplace_back("initial.file", initial.file);
    out.emplace_back("controls.cfl", format_double(c.cfl));
    out.emplace_back("controls.dt_min", format_double(c.dt_min));
    out.emplace_back("controls.dt_max", format_double(c.dt_max));
    out.emplace_back("controls.retry_limit", std::to_string(c.positivity_retry_limit));
    out.emplace_back("controls.fixed_dt", format_double(c.fixed_dt));
}

}  // namespace

Grid GridSpec::grid() const { return Grid(dim, cells_per_axis, length > 0.0 ? length : Grid::default_length(dim)); }

std::vector<double> SimulationConfig::resolved_output_times() const {
    return output_times.empty() ? uniform_times(t_end, output_intervals) : output_times;
}

SimulationConfig parse_simulation_config(std::string_view text) {
    const IniDoc doc(text, simulation_keys());
    SimulationConfig c;
    read_common(doc, c.grid, c.initial, c.controls);
    doc.read("params.eps", c.eps);
    doc.read("params.alpha", c.alpha);
    doc.read("params.mu_bar", c.mu_bar);
    doc.read("run.t_end", c.t_end);
    doc.read("run.output_intervals", c.output_intervals);
    doc.read("run.output_times", c.output_times);

    try {
        (void)EpsParams(c.eps, c.alpha, c.mu_bar);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("params: ") + e.what());
    }
    if (!(c.t_end >= 0.0)) throw ConfigError("run.t_end: must be >= 0");
    if (c.output_intervals < 1) throw ConfigError("run.output_intervals: must be >= 1");
    if (!std::is_sorted(c.output_times.begin(), c.output_times.end())) throw ConfigError("run.output_times: must be sorted");
    for (double t : c.output_times)
        if (t < 0.0 || t > c.t_end) throw ConfigError("run.output_times: entries must lie in [0, run.t_end]");
    return c;
}

SweepSettings parse_sweep_config(std::string_view text) {
    const IniDoc doc(text, sweep_keys());
    SweepSettings s;
    read_common(doc, s.grid, s.initial, s.sweep.controls);
    SweepConfig& c = s.sweep;
    doc.read("sweep.eps_list", c.eps_list);
    doc.read("sweep.alpha", c.alpha);
    doc.read("sweep.mu_bar", c.mu_bar);
    doc.read("sweep.measurement_times", c.measurement_times);
    doc.read("sweep.threads", c.threads);
    std::string quantities = "f,g";
    doc.read("sweep.quantities", quantities);
    c.measure_f = quantities.find('f') != std::string::npos;
    c.measure_g = quantities.find('g') != std::string::npos;
    if (quantities != "f,g" && quantities != "f" && quantities != "g" && quantities != "g,f")
        throw ConfigError("sweep.quantities: expected f, g or f,g");
    std::string reference = "same-grid";
    doc.read("sweep.reference", reference);
    if (reference == "same-grid")
        c.reference = ReferenceMode::same_grid;
    else if (reference == "fine-grid")
        c.reference = ReferenceMode::fine_grid;
    else
        throw ConfigError("sweep.reference: expected same-grid or fine-grid");

    c.dim = s.grid.dim;
    c.cells_per_axis = s.grid.cells_per_axis;
    c.length = s.grid.length;
    c.benchmark = s.initial.benchmark;

    if (c.measure_g && !(c.alpha < 1.0 / (c.dim + 2.0))) {
        std::ostringstream msg;
        msg << "sweep.alpha: the g-rate experiment requires alpha < 1/(d+2) = " << 1.0 / (c.dim + 2.0)
            << " for d = " << c.dim << " (got " << c.alpha << ")";
        throw ConfigError(msg.str());
    }
    try {
        c.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("sweep: ") + e.what());
    }
    return s;
}

std::vector<std::pair<std::string, std::string>> echo(const SimulationConfig& c) {
    std::vector<std::pair<std::string, std::string>> out;
    echo_common(out, c.grid, c.initial, c.controls);
    out.emplace_back("params.eps", format_double(c.eps));
    out.emplace_back("params.alpha", format_double(c.alpha));
    out.emplace_back("params.mu_bar", format_double(c.mu_bar));
    out.emplace_back("run.t_end", format_double(c.t_end));
    out.emplace_back("run.output_times", join(c.resolved_output_times()));
    return out;
}

std::vector<std::pair<std::string, std::string>> echo(const SweepSettings& s) {
    std::vector<std::pair<std::string, std::string>> out;
    echo_common(out, s.grid, s.initial, s.sweep.controls);
    const SweepConfig& c = s.sweep;
    out.emplace_back("sweep.eps_list", join(c.eps_list));
    out.emplace_back("sweep.alpha", format_double(c.alpha));
    out.emplace_back("sweep.mu_bar", format_double(c.mu_bar));
    out.emplace_back("sweep.measurement_times", join(c.measurement_times));
    out.emplace_back("sweep.quantities", c.measure_f && c.measure_g ? "f,g" : (c.measure_f ? "f" : "g"));
    out.emplace_back("sweep.reference", c.reference == ReferenceMode::same_grid ? "same-grid" : "fine-grid");
    return out;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

InitialData load_initial_data(const InitialSpec& spec, const Grid& grid) {
    if (spec.file.empty()) return make_benchmark(spec.benchmark, grid);
    // Snapshot-style CSV: header with at least cell_index, f, g; the rows of
    // the first time found are used.
    std::istringstream in(read_text_file(spec.file));
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("initial.file: empty file");
    std::vector<std::string> cols;
    {
        std::istringstream h(line);
        for (std::string c; std::getline(h, c, ',');) cols.push_back(trim(c));
    }
    auto col = [&](const std::string& name) {
        const auto it = std::find(cols.begin(), cols.end(), name);
        if (it == cols.end()) throw ConfigError("initial.file: missing column '" + name + "'");
        return static_cast<std::size_t>(it - cols.begin());
    };
    const std::size_t ci = col("cell_index"), cf = col("f"), cg = col("g");
    const auto ct = std::find(cols.begin(), cols.end(), "t");
    std::optional<double> first_t;
    Field f(grid), g(grid);
    std::vector<bool> seen(grid.cell_count(), false);
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        std::vector<std::string> cells;
        std::istringstream r(line);
        for (std::string c; std::getline(r, c, ',');) cells.push_back(trim(c));
        if (cells.size() != cols.size()) throw ConfigError("initial.file: ragged row '" + line + "'");
        if (ct != cols.end()) {
            const double t = parse_double(cells[static_cast<std::size_t>(ct - cols.begin())]);
            if (!first_t) first_t = t;
            if (t != *first_t) continue;
        }
        const long idx = std::stol(cells[ci]);
        if (idx < 0 || static_cast<std::size_t>(idx) >= grid.cell_count())
            throw ConfigError("initial.file: cell_index " + cells[ci] + " outside the grid");
        f[idx] = parse_double(cells[cf]);
        g[idx] = parse_double(cells[cg]);
        seen[idx] = true;
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end())
        throw ConfigError("initial.file: does not cover every grid cell");
    try {
        return InitialData(normalize_to_unit_mass(f), normalize_to_unit_mass(g));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("initial.file: ") + e.what());
    }
}

}  // namespace muskat
