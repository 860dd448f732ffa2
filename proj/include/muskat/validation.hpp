#pragma once

#include "muskat/limit_harness.hpp"
#include "muskat/solver.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace muskat {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

// "PASS [3] energy ledger: ..." style line.
std::string format_result(const CriterionResult& result);

// Run-based acceptance checks on the standard benchmarks. Simulations shared
// between checks (the two-bump refinement ladder, the α = 0 sweep) are run
// once and cached.
class AcceptanceSuite {
public:
    explicit AcceptanceSuite(int threads = 1) : threads_(threads) {}

    // Checks implemented here: 1-8 and 10.
    static const std::vector<int>& criteria();
    CriterionResult run(int id);

    // The d = 1 two-bump run at ε = 0.1 up to T = 1 with 400 output
    // intervals, on N cells. Returns the cached result and its wall time.
    const SimulationResult& two_bump_run(int cells, double* seconds = nullptr);

private:
    CriterionResult mass_conservation();
    CriterionResult positivity_symmetry();
    CriterionResult ledger(bool energy);
    CriterionResult moment_identity();
    CriterionResult barenblatt();
    CriterionResult f_rate();
    CriterionResult g_rate();
    CriterionResult decoupling();
    const SweepResult& sweep(double alpha, bool measure_f, double* seconds = nullptr);

    int threads_;
    std::map<int, std::pair<SimulationResult, double>> runs_;
    std::map<double, std::pair<SweepResult, double>> sweeps_;
};

// Largest |u_i - u_mirror(i)| over both layers of every state.
double max_mirror_asymmetry(const std::vector<State>& trajectory);

// log2(coarse / fine) for successive entries of a halving-Δx ladder.
std::vector<double> refinement_orders(const std::vector<double>& values);

}  // namespace muskat
