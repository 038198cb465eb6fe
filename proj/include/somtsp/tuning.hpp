#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "somtsp/instance.hpp"
#include "somtsp/oracle.hpp"
#include "somtsp/som_solver.hpp"

namespace somtsp {

enum class SweepMetric { MeanF1, MeanLength };

std::string_view to_string(SweepMetric metric);
/// Accepts "mean_f1" and "mean_length".
SweepMetric parse_sweep_metric(std::string_view text);

struct TuningInstance {
    Instance instance;
    Route reference;
    OracleKind reference_kind = OracleKind::TwoOpt;
};

struct SweepPlan {
    SolverConfig base;
    /// Full configurations, each normally differing from `base` in about one field.
    std::vector<SolverConfig> rows;
    std::vector<TuningInstance> instances;
    SweepMetric metric = SweepMetric::MeanF1;

    void validate() const;
};

struct SweepRow {
    SolverConfig config;
    double mean = 0.0;
    /// In plan instance order.
    std::vector<double> per_instance;
};

struct SweepResult {
    SweepMetric metric = SweepMetric::MeanF1;
    std::vector<SweepRow> rows;
    std::size_t best_row = 0;
};

/// Arithmetic mean, summed in sorted order so the result does not depend on
/// the order of `values`.
double order_independent_mean(std::vector<double> values);

/// Index of the largest mean for MeanF1, smallest for MeanLength; ties to the lowest index.
std::size_t best_row_index(const std::vector<double>& means, SweepMetric metric);

/// Plain (non-enhanced) SOM for every row x instance, scored against the
/// attached references. Cells run up to `jobs` at a time.
SweepResult run_sweep(const SweepPlan& plan, unsigned jobs = 1);

enum class TableFormat { Markdown, Csv };

TableFormat parse_table_format(std::string_view text);

/// One line per row in plan order: five hyperparameter columns, the metric, and a best-row flag.
std::string render_table(const SweepResult& result, TableFormat format);

/// Reads a JSON plan: {"base": {...}, "rows": [{...}, ...], "instances": "dir", "metric": "mean_f1"}.
/// Relative instance directories resolve against the plan file's directory.
/// Each instance file (.csv or .tsp) needs a sibling "<stem>.ref.json" results record.
SweepPlan load_sweep_plan(const std::filesystem::path& path);

/// Instances (sorted by file name) with their reference tours.
std::vector<TuningInstance> load_instance_set(const std::filesystem::path& directory);

/// Path of the reference record that belongs to `instance_path`.
std::filesystem::path reference_path_for(const std::filesystem::path& instance_path);

} // namespace somtsp
