#include "somtsp/results.hpp"

#include <chrono>

#include "somtsp/errors.hpp"
#include "somtsp/io.hpp"

namespace somtsp {

using nlohmann::json;

std::string_view to_string(SolveMode mode) {
    switch (mode) {
    case SolveMode::Plain:
        return "plain";
    case SolveMode::MultiStart:
        return "multi_start";
    case SolveMode::PopulationSweep:
        return "pop_sweep";
    case SolveMode::Enhanced:
        return "enhanced";
    case SolveMode::Oracle:
        return "oracle";
    }
    return "unknown";
}

SolveMode parse_solve_mode(std::string_view text) {
    for (SolveMode mode : {SolveMode::Plain, SolveMode::MultiStart, SolveMode::PopulationSweep,
                           SolveMode::Enhanced, SolveMode::Oracle}) {
        if (text == to_string(mode)) {
            return mode;
        }
    }
    throw ValidationError("unknown solve mode '" + std::string(text) + "'");
}

json config_to_json(const SolverConfig& config) {
    return json{
        {"iterations", config.iterations},
        {"neighborhood_discount", config.neighborhood_discount},
        {"learning_rate", config.learning_rate},
        {"learning_rate_discount", config.learning_rate_discount},
        {"population_multiplier", config.population_multiplier},
        {"seed", config.seed},
        {"anchor_strategy", std::string(to_string(config.anchor_strategy))},
        {"radius_floor", config.radius_floor},
        {"learning_rate_floor", config.learning_rate_floor},
    };
}

namespace {

template <typename T>
T get_field(const json& object, const char* key) {
    try {
        return object.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("field '") + key + "': " + e.what());
    }
}

template <typename T>
T get_unsigned(const json& value, const char* key) {
    if (!value.is_number_unsigned()) {
        throw ValidationError(std::string("'") + key + "' must be a non-negative integer");
    }
    return value.get<T>();
}

double get_number(const json& value, const char* key) {
    if (!value.is_number()) {
        throw ValidationError(std::string("'") + key + "' must be a number");
    }
    return value.get<double>();
}

} // namespace

SolverConfig apply_config_overrides(SolverConfig config, const json& overrides) {
    if (!overrides.is_object()) {
        throw ValidationError("config overrides must be a JSON object");
    }
    for (const auto& [key, value] : overrides.items()) {
        if (key == "iterations") {
            config.iterations = get_unsigned<std::uint64_t>(value, "iterations");
        } else if (key == "neighborhood_discount") {
            config.neighborhood_discount = get_number(value, "neighborhood_discount");
        } else if (key == "learning_rate") {
            config.learning_rate = get_number(value, "learning_rate");
        } else if (key == "learning_rate_discount") {
            config.learning_rate_discount = get_number(value, "learning_rate_discount");
        } else if (key == "population_multiplier") {
            config.population_multiplier = get_unsigned<std::uint32_t>(value, "population_multiplier");
        } else if (key == "seed") {
            config.seed = get_unsigned<std::uint64_t>(value, "seed");
        } else if (key == "anchor_strategy") {
            if (!value.is_string()) {
                throw ValidationError("'anchor_strategy' must be a string");
            }
            config.anchor_strategy = parse_anchor_strategy(value.get<std::string>());
        } else if (key == "radius_floor") {
            config.radius_floor = get_number(value, "radius_floor");
        } else if (key == "learning_rate_floor") {
            config.learning_rate_floor = get_number(value, "learning_rate_floor");
        } else {
            throw ValidationError("unknown config field '" + key + "'");
        }
    }
    config.validate();
    return config;
}

json to_json(const F1Report& report) {
    return json{
        {"precision", report.precision},
        {"recall", report.recall},
        {"f1", report.f1},
        {"true_positive_edges", report.true_positive_edges},
        {"predicted_edges", report.predicted_edges},
        {"reference_edges", report.reference_edges},
    };
}

json to_json(const ResultsRecord& record) {
    json runs = json::array();
    for (const RunLogEntry& run : record.runs) {
        runs.push_back({
            {"strategy", std::string(to_string(run.strategy))},
            {"multiplier", run.multiplier},
            {"length", run.length},
            {"steps", run.steps},
        });
    }
    json out{
        {"instance_id", record.instance_id},
        {"instance_path", record.instance_path},
        {"mode", std::string(to_string(record.mode))},
        {"config", record.config ? config_to_json(*record.config) : json(nullptr)},
        {"runs", runs},
        {"best_route", record.best_route.order},
        {"best_length", record.best_length},
        {"oracle_kind", record.oracle_kind ? json(std::string(to_string(*record.oracle_kind))) : json(nullptr)},
        {"f1", record.f1 ? to_json(*record.f1) : json(nullptr)},
        {"reference_oracle",
         record.reference_oracle ? json(std::string(to_string(*record.reference_oracle))) : json(nullptr)},
        {"timing_ms", record.timing_ms},
    };
    return out;
}

ResultsRecord results_from_json(const json& in) {
    if (!in.is_object()) {
        throw ParseError("results record must be a JSON object");
    }
    ResultsRecord record;
    try {
        record.instance_id = get_field<std::string>(in, "instance_id");
        record.instance_path = in.value("instance_path", std::string{});
        record.mode = parse_solve_mode(get_field<std::string>(in, "mode"));
        if (in.contains("config") && !in.at("config").is_null()) {
            record.config = apply_config_overrides(SolverConfig{}, in.at("config"));
        }
        if (in.contains("runs")) {
            for (const json& run : in.at("runs")) {
                RunLogEntry entry;
                entry.strategy = parse_anchor_strategy(get_field<std::string>(run, "strategy"));
                entry.multiplier = get_field<std::uint32_t>(run, "multiplier");
                entry.length = get_field<double>(run, "length");
                entry.steps = get_field<std::uint64_t>(run, "steps");
                record.runs.push_back(entry);
            }
        }
        record.best_route.order = get_field<std::vector<std::size_t>>(in, "best_route");
        record.best_length = get_field<double>(in, "best_length");
        if (in.contains("oracle_kind") && !in.at("oracle_kind").is_null()) {
            record.oracle_kind = parse_oracle_kind(get_field<std::string>(in, "oracle_kind"));
        }
        if (in.contains("f1") && !in.at("f1").is_null()) {
            const json& f1 = in.at("f1");
            F1Report report;
            report.precision = get_field<double>(f1, "precision");
            report.recall = get_field<double>(f1, "recall");
            report.f1 = get_field<double>(f1, "f1");
            report.true_positive_edges = get_field<std::size_t>(f1, "true_positive_edges");
            report.predicted_edges = get_field<std::size_t>(f1, "predicted_edges");
            report.reference_edges = get_field<std::size_t>(f1, "reference_edges");
            record.f1 = report;
        }
        if (in.contains("reference_oracle") && !in.at("reference_oracle").is_null()) {
            record.reference_oracle = parse_oracle_kind(get_field<std::string>(in, "reference_oracle"));
        }
        record.timing_ms = in.value("timing_ms", 0.0);
    } catch (const ValidationError& e) {
        throw ParseError(std::string("invalid results record: ") + e.what());
    }
    return record;
}

ResultsRecord load_results(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    json parsed;
    try {
        parsed = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    return results_from_json(parsed);
}

void save_results(const std::filesystem::path& path, const ResultsRecord& record) {
    write_file_atomic(path, to_json(record).dump(2) + "\n");
}

ResultsRecord solve_record(const Instance& instance, const SolverConfig& config, SolveMode mode,
                           unsigned jobs) {
    config.validate();
    const auto started = std::chrono::steady_clock::now();
    SolveReport report;
    switch (mode) {
    case SolveMode::Plain:
        report = solve_best_of(instance, {config}, jobs);
        break;
    case SolveMode::MultiStart:
        report = multi_start_solve(instance, config, jobs);
        break;
    case SolveMode::PopulationSweep:
        report = population_sweep_solve(instance, config, jobs);
        break;
    case SolveMode::Enhanced:
        report = enhanced_solve(instance, config, jobs);
        break;
    case SolveMode::Oracle:
        throw ValidationError("solve_record does not run oracles");
    }
    const auto elapsed = std::chrono::steady_clock::now() - started;

    ResultsRecord record;
    record.instance_id = instance.id;
    record.mode = mode;
    record.config = config;
    for (const RunOutcome& run : report.runs) {
        record.runs.push_back({run.config_used.anchor_strategy, run.config_used.population_multiplier,
                               run.length, run.wall_steps});
    }
    record.best_route = report.best.route;
    record.best_length = report.best.length;
    record.timing_ms = std::chrono::duration<double, std::milli>(elapsed).count();
    return record;
}

ResultsRecord replay(const ResultsRecord& record, const Instance& instance, unsigned jobs) {
    if (!record.config) {
        throw ValidationError("record has no solver config to replay");
    }
    ResultsRecord again = solve_record(instance, *record.config, record.mode, jobs);
    again.instance_path = record.instance_path;
    return again;
}

} // namespace somtsp
