#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "somtsp/enhancements.hpp"
#include "somtsp/evaluation.hpp"
#include "somtsp/oracle.hpp"
#include "somtsp/som_solver.hpp"

namespace somtsp {

/// Which solver pipeline produced a record.
enum class SolveMode { Plain, MultiStart, PopulationSweep, Enhanced, Oracle };

std::string_view to_string(SolveMode mode);
SolveMode parse_solve_mode(std::string_view text);

nlohmann::json config_to_json(const SolverConfig& config);
/// Starts from `base` and overwrites each field present in `overrides`.
/// Unknown keys are a ValidationError; the result is validated.
SolverConfig apply_config_overrides(SolverConfig base, const nlohmann::json& overrides);

struct RunLogEntry {
    AnchorStrategy strategy = AnchorStrategy::Random;
    std::uint32_t multiplier = 0;
    double length = 0.0;
    std::uint64_t steps = 0;
};

/// Output of `solve` and `oracle`.
struct ResultsRecord {
    std::string instance_id;
    std::string instance_path;
    SolveMode mode = SolveMode::Plain;
    /// Absent for oracle records.
    std::optional<SolverConfig> config;
    std::vector<RunLogEntry> runs;
    Route best_route;
    double best_length = 0.0;
    /// Set on oracle records: which oracle produced best_route.
    std::optional<OracleKind> oracle_kind;
    /// Set when the route was scored against a reference tour.
    std::optional<F1Report> f1;
    std::optional<OracleKind> reference_oracle;
    double timing_ms = 0.0;
};

nlohmann::json to_json(const ResultsRecord& record);
/// Throws ParseError on a missing or mistyped field.
ResultsRecord results_from_json(const nlohmann::json& json);

ResultsRecord load_results(const std::filesystem::path& path);
void save_results(const std::filesystem::path& path, const ResultsRecord& record);

nlohmann::json to_json(const F1Report& report);

/// Runs the pipeline selected by `mode` and fills in everything except the
/// reference fields and instance_path.
ResultsRecord solve_record(const Instance& instance, const SolverConfig& config, SolveMode mode,
                           unsigned jobs = 1);

/// Re-executes a solver record from its echoed config and mode.
ResultsRecord replay(const ResultsRecord& record, const Instance& instance, unsigned jobs = 1);

} // namespace somtsp
