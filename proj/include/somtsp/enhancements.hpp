#pragma once

#include <cstdint>
#include <vector>

#include "somtsp/instance.hpp"
#include "somtsp/som_solver.hpp"

namespace somtsp {

struct RunOutcome {
    Route route;
    double length = 0.0;
    SolverConfig config_used;
    /// Training iterations actually executed.
    std::uint64_t wall_steps = 0;
};

/// Winning outcome plus every member run in deterministic reduction order.
struct SolveReport {
    RunOutcome best;
    std::vector<RunOutcome> runs;
};

/// Population multipliers tried by the sweep.
inline constexpr std::uint32_t kSweepMultiplierMin = 1;
inline constexpr std::uint32_t kSweepMultiplierMax = 20;

/// One plain SOM run with its tour length.
RunOutcome solve_once(const Instance& instance, const SolverConfig& config);

/// Runs every config (up to `jobs` at a time) and keeps the shortest; ties go
/// to the earliest config. Member failures are rethrown annotated with the
/// strategy and multiplier of the failing run.
SolveReport solve_best_of(const Instance& instance, const std::vector<SolverConfig>& configs,
                          unsigned jobs = 1);

/// Random, Centermost and FurthestFromCentroid anchors with otherwise identical config.
SolveReport multi_start_solve(const Instance& instance, const SolverConfig& base, unsigned jobs = 1);

/// Population multipliers 1..20 with otherwise identical config.
SolveReport population_sweep_solve(const Instance& instance, const SolverConfig& base,
                                   unsigned jobs = 1);

/// Cross product of the three anchors and twenty multipliers (60 runs),
/// ordered anchor-major.
SolveReport enhanced_solve(const Instance& instance, const SolverConfig& base, unsigned jobs = 1);

std::vector<SolverConfig> multi_start_configs(const SolverConfig& base);
std::vector<SolverConfig> population_sweep_configs(const SolverConfig& base);
std::vector<SolverConfig> enhanced_configs(const SolverConfig& base);

} // namespace somtsp
