#include "somtsp/tuning.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"
#include "somtsp/errors.hpp"
#include "somtsp/evaluation.hpp"
#include "somtsp/io.hpp"
#include "somtsp/parallel.hpp"
#include "somtsp/results.hpp"

namespace somtsp {

std::string_view to_string(SweepMetric metric) {
    return metric == SweepMetric::MeanF1 ? "mean_f1" : "mean_length";
}

SweepMetric parse_sweep_metric(std::string_view text) {
    if (text == "mean_f1") {
        return SweepMetric::MeanF1;
    }
    if (text == "mean_length") {
        return SweepMetric::MeanLength;
    }
    throw ValidationError("unknown sweep metric '" + std::string(text) + "'");
}

TableFormat parse_table_format(std::string_view text) {
    if (text == "markdown" || text == "md") {
        return TableFormat::Markdown;
    }
    if (text == "csv") {
        return TableFormat::Csv;
    }
    throw ValidationError("unknown table format '" + std::string(text) + "'");
}

void SweepPlan::validate() const {
    base.validate();
    if (rows.empty()) {
        throw ValidationError("sweep plan has no rows");
    }
    if (instances.empty()) {
        throw ValidationError("sweep plan has no instances");
    }
    for (const SolverConfig& row : rows) {
        row.validate();
    }
    for (const TuningInstance& entry : instances) {
        validate_instance(entry.instance);
        if (!is_valid_route(entry.reference, entry.instance.size())) {
            throw ValidationError("instance '" + entry.instance.id + "' lacks a valid reference tour");
        }
    }
}

double order_independent_mean(std::vector<double> values) {
    if (values.empty()) {
        return 0.0;
    }
    std::sort(values.begin(), values.end());
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    return sum / static_cast<double>(values.size());
}

std::size_t best_row_index(const std::vector<double>& means, SweepMetric metric) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < means.size(); ++i) {
        const bool better = metric == SweepMetric::MeanF1 ? means[i] > means[best] : means[i] < means[best];
        if (better) {
            best = i;
        }
    }
    return best;
}

SweepResult run_sweep(const SweepPlan& plan, unsigned jobs) {
    plan.validate();
    const std::size_t row_count = plan.rows.size();
    const std::size_t instance_count = plan.instances.size();

    std::vector<double> cells(row_count * instance_count);
    parallel_for(cells.size(), jobs, [&](std::size_t cell) {
        const std::size_t r = cell / instance_count;
        const std::size_t i = cell % instance_count;
        const TuningInstance& entry = plan.instances[i];
        try {
            const SomRun run = run_som(entry.instance, plan.rows[r]);
            if (plan.metric == SweepMetric::MeanF1) {
                cells[cell] = f1_score(edges_of_route(run.route), edges_of_route(entry.reference)).f1;
            } else {
                cells[cell] = route_length(run.route, entry.instance);
            }
        } catch (const std::exception& e) {
            throw std::runtime_error("sweep row " + std::to_string(r) + ", instance '" + entry.instance.id +
                                     "': " + e.what());
        }
    });

    SweepResult result;
    result.metric = plan.metric;
    std::vector<double> means;
    for (std::size_t r = 0; r < row_count; ++r) {
        SweepRow row;
        row.config = plan.rows[r];
        row.per_instance.assign(cells.begin() + static_cast<std::ptrdiff_t>(r * instance_count),
                                cells.begin() + static_cast<std::ptrdiff_t>((r + 1) * instance_count));
        row.mean = order_independent_mean(row.per_instance);
        means.push_back(row.mean);
        result.rows.push_back(std::move(row));
    }
    result.best_row = best_row_index(means, plan.metric);
    return result;
}

std::string render_table(const SweepResult& result, TableFormat format) {
    if (result.rows.empty()) {
        throw ValidationError("cannot render an empty sweep result");
    }
    std::ostringstream out;
    const std::string metric_name(to_string(result.metric));
    if (format == TableFormat::Csv) {
        out << "iterations,neighborhood_discount,learning_rate,learning_rate_discount,"
               "population_multiplier,"
            << metric_name << ",best\n";
        for (std::size_t r = 0; r < result.rows.size(); ++r) {
            const SolverConfig& c = result.rows[r].config;
            out << c.iterations << ',' << format_double(c.neighborhood_discount) << ','
                << format_double(c.learning_rate) << ',' << format_double(c.learning_rate_discount) << ','
                << c.population_multiplier << ',' << format_double(result.rows[r].mean) << ','
                << (r == result.best_row ? 1 : 0) << '\n';
        }
        return out.str();
    }

    const char* metric_title = result.metric == SweepMetric::MeanF1 ? "Mean F1 Score" : "Mean Route Length";
    out << "| Number of Iterations | Discount Rate of Initial Neighborhood | Learning Rate "
           "| Discount Rate of Learning Rate | Population Size Multiplier Factor | "
        << metric_title << " | Best |\n";
    out << "|---:|---:|---:|---:|---:|---:|:---:|\n";
    for (std::size_t r = 0; r < result.rows.size(); ++r) {
        const SolverConfig& c = result.rows[r].config;
        out << "| " << c.iterations << " | " << format_double(c.neighborhood_discount) << " | "
            << format_double(c.learning_rate) << " | " << format_double(c.learning_rate_discount) << " | "
            << c.population_multiplier << " | " << format_double(result.rows[r].mean) << " | "
            << (r == result.best_row ? "*" : "") << " |\n";
    }
    return out.str();
}

std::filesystem::path reference_path_for(const std::filesystem::path& instance_path) {
    std::filesystem::path ref = instance_path;
    ref.replace_extension(".ref.json");
    return ref;
}

std::vector<TuningInstance> load_instance_set(const std::filesystem::path& directory) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(directory)) {
        throw ValidationError("instance directory '" + directory.string() + "' does not exist");
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(directory)) {
        const auto ext = entry.path().extension();
        if (entry.is_regular_file() && (ext == ".csv" || ext == ".tsp")) {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());

    std::vector<TuningInstance> set;
    for (const fs::path& file : files) {
        TuningInstance entry;
        entry.instance = load_instance(file);
        const fs::path ref_path = reference_path_for(file);
        if (!fs::exists(ref_path)) {
            throw ValidationError("missing reference tour '" + ref_path.string() + "'");
        }
        const ResultsRecord ref = load_results(ref_path);
        entry.reference = ref.best_route;
        entry.reference_kind = ref.oracle_kind.value_or(OracleKind::TwoOpt);
        validate_route(entry.reference, entry.instance.size());
        set.push_back(std::move(entry));
    }
    return set;
}

SweepPlan load_sweep_plan(const std::filesystem::path& path) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    if (!doc.is_object() || !doc.contains("rows") || !doc.contains("instances")) {
        throw ParseError(path.string() + ": plan needs 'rows' and 'instances'");
    }

    SweepPlan plan;
    plan.base = apply_config_overrides(SolverConfig{}, doc.value("base", nlohmann::json::object()));
    for (const auto& overrides : doc.at("rows")) {
        plan.rows.push_back(apply_config_overrides(plan.base, overrides));
    }
    plan.metric = parse_sweep_metric(doc.value("metric", std::string("mean_f1")));

    std::filesystem::path dir = doc.at("instances").get<std::string>();
    if (dir.is_relative()) {
        dir = path.parent_path() / dir;
    }
    plan.instances = load_instance_set(dir);
    plan.validate();
    return plan;
}

} // namespace somtsp
