#include "somtsp/enhancements.hpp"

#include <string>

#include "somtsp/errors.hpp"
#include "somtsp/evaluation.hpp"
#include "somtsp/parallel.hpp"

namespace somtsp {

RunOutcome solve_once(const Instance& instance, const SolverConfig& config) {
    SomRun run = run_som(instance, config);
    RunOutcome outcome;
    outcome.length = route_length(run.route, instance);
    outcome.route = std::move(run.route);
    outcome.config_used = config;
    outcome.wall_steps = run.state.step;
    return outcome;
}

namespace {

std::string describe(const SolverConfig& config) {
    return "anchor=" + std::string(to_string(config.anchor_strategy)) +
           " multiplier=" + std::to_string(config.population_multiplier) + ": ";
}

} // namespace

SolveReport solve_best_of(const Instance& instance, const std::vector<SolverConfig>& configs,
                          unsigned jobs) {
    if (configs.empty()) {
        throw ValidationError("solve_best_of needs at least one configuration");
    }
    validate_instance(instance);

    SolveReport report;
    report.runs.resize(configs.size());
    parallel_for(configs.size(), jobs, [&](std::size_t i) {
        try {
            report.runs[i] = solve_once(instance, configs[i]);
        } catch (const InternalCorruptionError& e) {
            throw InternalCorruptionError(describe(configs[i]) + e.what());
        } catch (const ValidationError& e) {
            throw ValidationError(describe(configs[i]) + e.what());
        }
    });

    std::size_t best = 0;
    for (std::size_t i = 1; i < report.runs.size(); ++i) {
        if (report.runs[i].length < report.runs[best].length) {
            best = i;
        }
    }
    report.best = report.runs[best];
    return report;
}

std::vector<SolverConfig> multi_start_configs(const SolverConfig& base) {
    std::vector<SolverConfig> configs;
    for (AnchorStrategy strategy : kAllAnchorStrategies) {
        SolverConfig config = base;
        config.anchor_strategy = strategy;
        configs.push_back(config);
    }
    return configs;
}

std::vector<SolverConfig> population_sweep_configs(const SolverConfig& base) {
    std::vector<SolverConfig> configs;
    for (std::uint32_t multiplier = kSweepMultiplierMin; multiplier <= kSweepMultiplierMax; ++multiplier) {
        SolverConfig config = base;
        config.population_multiplier = multiplier;
        configs.push_back(config);
    }
    return configs;
}

std::vector<SolverConfig> enhanced_configs(const SolverConfig& base) {
    std::vector<SolverConfig> configs;
    for (const SolverConfig& anchored : multi_start_configs(base)) {
        for (const SolverConfig& config : population_sweep_configs(anchored)) {
            configs.push_back(config);
        }
    }
    return configs;
}

SolveReport multi_start_solve(const Instance& instance, const SolverConfig& base, unsigned jobs) {
    base.validate();
    return solve_best_of(instance, multi_start_configs(base), jobs);
}

SolveReport population_sweep_solve(const Instance& instance, const SolverConfig& base, unsigned jobs) {
    base.validate();
    return solve_best_of(instance, population_sweep_configs(base), jobs);
}

SolveReport enhanced_solve(const Instance& instance, const SolverConfig& base, unsigned jobs) {
    base.validate();
    return solve_best_of(instance, enhanced_configs(base), jobs);
}

} // namespace somtsp
