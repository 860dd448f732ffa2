#include "muskat/output.hpp"

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace muskat {

namespace fs = std::filesystem;

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, ptr);
}

double parse_double(std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) text.remove_suffix(1);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
        throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    return value;
}

std::string code_version() { return MUSKAT_VERSION; }

std::string RunManifest::parameter_hash() const {
    std::uint64_t h = 14695981039346656037ull;
    auto mix = [&h](std::string_view s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
    };
    for (const auto& [k, v] : config) {
        mix(k);
        mix("=");
        mix(v);
        mix("\n");
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

std::string diagnostics_csv(const DiagnosticsRecord& diag) {
    std::ostringstream out;
    out << kDiagnosticsHeader << '\n';
    for (const DiagnosticsSample& s : diag.samples) {
        const double row[] = {s.t,       s.mass_f, s.mass_g,      s.energy, s.entropy, s.second_moment,
                              s.diss_f,  s.diss_h, s.energy_diss, s.min_f,  s.min_g,   s.boundary_mass};
        for (std::size_t k = 0; k < std::size(row); ++k) out << (k ? "," : "") << format_double(row[k]);
        out << '\n';
    }
    return out.str();
}

std::string errors_csv(const std::vector<ErrorCurve>& curves) {
    std::ostringstream out;
    out << kErrorsHeader << '\n';
    for (const ErrorCurve& c : curves)
        for (const ErrorSample& s : c.samples)
            out << format_double(s.eps) << ',' << format_double(s.t) << ',' << to_string(c.quantity) << ','
                << format_double(s.error) << '\n';
    return out.str();
}

std::string rates_csv(const std::vector<RateFit>& fits) {
    std::ostringstream out;
    out << kRatesHeader << '\n';
    for (const RateFit& f : fits)
        out << to_string(f.quantity) << ',' << format_double(f.t) << ',' << format_double(f.slope) << ','
            << format_double(f.intercept) << ',' << format_double(f.r_squared) << ','
            << format_double(f.theoretical_exponent) << ',' << (f.pass ? "true" : "false") << '\n';
    return out.str();
}

std::string snapshots_csv(const std::vector<State>& trajectory) {
    std::ostringstream out;
    out << kSnapshotsHeader << '\n';
    for (const State& s : trajectory) {
        const Grid& grid = s.grid();
        const std::string t = format_double(s.time);
        for (std::size_t k = 0; k < grid.cell_count(); ++k)
            out << t << ',' << k << ',' << format_double(grid.center_of(k)[0]) << ',' << format_double(s.f[k]) << ','
                << format_double(s.g[k]) << '\n';
    }
    return out.str();
}

std::string manifest_text(const RunManifest& m) {
    std::ostringstream out;
    out << "command = " << m.command << '\n';
    out << "status = " << m.status << '\n';
    out << "code_version = " << m.code_version << '\n';
    out << "parameter_hash = " << m.parameter_hash() << '\n';
    out << "grid = " << m.grid << '\n';
    out << "controls = " << m.controls << '\n';
    out << "wall_clock_seconds = " << format_double(m.wall_clock_seconds) << '\n';
    out << "steps = " << m.steps << '\n';
    out << "retries = " << m.retries << '\n';
    for (const auto& [k, v] : m.config) out << "config." << k << " = " << v << '\n';
    for (const std::string& w : m.warnings) out << "warning = " << w << '\n';
    for (const std::string& f : m.files) out << "file = " << f << '\n';
    return out.str();
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> cells;
    std::istringstream in(line);
    for (std::string c; std::getline(in, c, ',');) {
        if (!c.empty() && c.back() == '\r') c.pop_back();
        cells.push_back(c);
    }
    return cells;
}

// Rows of a CSV whose header must equal `header`.
std::vector<std::vector<std::string>> read_csv(const fs::path& path, std::string_view header) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path.string() + ": missing header");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != header) throw std::runtime_error(path.string() + ": expected header '" + std::string(header) + "'");
    const std::size_t width = split_row(std::string(header)).size();
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        auto cells = split_row(line);
        if (cells.size() != width) throw std::runtime_error(path.string() + ": malformed row '" + line + "'");
        rows.push_back(std::move(cells));
    }
    return rows;
}

}  // namespace

std::vector<fs::path> write_outputs(const fs::path& dir, OutputBundle bundle) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory '" + dir.string() + "': " + ec.message());

    std::vector<std::pair<std::string, std::string>> files = {
        {"diagnostics.csv", diagnostics_csv(bundle.diagnostics)},
        {"errors.csv", errors_csv(bundle.curves)},
        {"rates.csv", rates_csv(bundle.fits)},
        {"snapshots.csv", snapshots_csv(bundle.trajectory)},
    };
    bundle.manifest.files.clear();
    for (const auto& f : files) bundle.manifest.files.push_back(f.first);
    files.emplace_back("manifest.txt", manifest_text(bundle.manifest));

    std::vector<fs::path> staged;
    std::vector<fs::path> written;
    try {
        for (const auto& [name, text] : files) {
            staged.push_back(dir / (name + ".partial"));
            write_file(staged.back(), text);
        }
        for (std::size_t k = 0; k < files.size(); ++k) {
            const fs::path target = dir / files[k].first;
            fs::rename(staged[k], target);
            written.push_back(target);
        }
    } catch (...) {
        for (const fs::path& p : staged) fs::remove(p, ec);
        for (const fs::path& p : written) fs::remove(p, ec);
        throw;
    }
    return written;
}

std::vector<DiagnosticsSample> read_diagnostics_csv(const fs::path& path) {
    std::vector<DiagnosticsSample> out;
    for (const auto& r : read_csv(path, kDiagnosticsHeader)) {
        DiagnosticsSample s;
        double* fields[] = {&s.t,      &s.mass_f, &s.mass_g,      &s.energy, &s.entropy, &s.second_moment,
                            &s.diss_f, &s.diss_h, &s.energy_diss, &s.min_f,  &s.min_g,   &s.boundary_mass};
        for (std::size_t k = 0; k < std::size(fields); ++k) *fields[k] = parse_double(r[k]);
        out.push_back(s);
    }
    return out;
}

std::vector<ErrorCurve> read_errors_csv(const fs::path& path) {
    std::map<ErrorQuantity, ErrorCurve> by_quantity;
    std::vector<ErrorQuantity> order;
    for (const auto& r : read_csv(path, kErrorsHeader)) {
        const ErrorQuantity q = error_quantity_from_string(r[2]);
        if (!by_quantity.contains(q)) {
            by_quantity[q].quantity = q;
            order.push_back(q);
        }
        by_quantity[q].samples.push_back({parse_double(r[0]), parse_double(r[1]), parse_double(r[3])});
    }
    std::vector<ErrorCurve> out;
    for (ErrorQuantity q : order) out.push_back(std::move(by_quantity[q]));
    return out;
}

std::vector<RateFit> read_rates_csv(const fs::path& path) {
    std::vector<RateFit> out;
    for (const auto& r : read_csv(path, kRatesHeader)) {
        RateFit f;
        f.quantity = error_quantity_from_string(r[0]);
        f.t = parse_double(r[1]);
        f.slope = parse_double(r[2]);
        f.intercept = parse_double(r[3]);
        f.r_squared = parse_double(r[4]);
        f.theoretical_exponent = parse_double(r[5]);
        if (r[6] != "true" && r[6] != "false") throw std::runtime_error(path.string() + ": pass must be true or false");
        f.pass = r[6] == "true";
        out.push_back(f);
    }
    return out;
}

std::vector<std::pair<std::string, std::string>> read_manifest(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
    std::vector<std::pair<std::string, std::string>> out;
    for (std::string line; std::getline(in, line);) {
        const auto eq = line.find(" = ");
        if (eq == std::string::npos) continue;
        out.emplace_back(line.substr(0, eq), line.substr(eq + 3));
    }
    return out;
}

}  // namespace muskat
