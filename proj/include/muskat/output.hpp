#pragma once

#include "muskat/functionals.hpp"
#include "muskat/limit_harness.hpp"
#include "muskat/solver.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace muskat {

// Shortest decimal form that reads back to the same double; independent of
// the global locale.
std::string format_double(double value);
double parse_double(std::string_view text);

// Library version string.
std::string code_version();

struct RunManifest {
    std::string command;
    std::string status = "completed";
    std::vector<std::pair<std::string, std::string>> config;
    std::string code_version;
    std::string grid;
    std::string controls;
    double wall_clock_seconds = 0.0;
    long steps = 0;
    long retries = 0;
    std::vector<std::string> warnings;
    std::vector<std::string> files;  // filled by write_outputs

    // FNV-1a of the config echo, hex encoded.
    std::string parameter_hash() const;
};

struct OutputBundle {
    std::vector<State> trajectory;
    DiagnosticsRecord diagnostics;
    std::vector<ErrorCurve> curves;
    std::vector<RateFit> fits;
    RunManifest manifest;
};

inline constexpr std::string_view kDiagnosticsHeader =
    "t,mass_f,mass_g,energy,entropy,second_moment,diss_f,diss_h,energy_diss,min_f,min_g,boundary_mass";
inline constexpr std::string_view kErrorsHeader = "epsilon,t,quantity,error";
inline constexpr std::string_view kRatesHeader = "quantity,t,slope,intercept,r_squared,theoretical_exponent,pass";
inline constexpr std::string_view kSnapshotsHeader = "t,cell_index,x,f,g";

// Writes diagnostics.csv, errors.csv, rates.csv, snapshots.csv and
// manifest.txt into dir. Files are staged under temporary names and renamed
// at the end; on any failure every staged or renamed file is removed.
// Returns the written paths.
std::vector<std::filesystem::path> write_outputs(const std::filesystem::path& dir, OutputBundle bundle);

std::vector<DiagnosticsSample> read_diagnostics_csv(const std::filesystem::path& path);
// Groups rows by quantity; dim/alpha of the returned curves are left at
// their defaults.
std::vector<ErrorCurve> read_errors_csv(const std::filesystem::path& path);
std::vector<RateFit> read_rates_csv(const std::filesystem::path& path);
// key = value pairs of a manifest file.
std::vector<std::pair<std::string, std::string>> read_manifest(const std::filesystem::path& path);

}  // namespace muskat
