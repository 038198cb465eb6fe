#include "somtsp/cli.hpp"

#include <chrono>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "somtsp/enhancements.hpp"
#include "somtsp/errors.hpp"
#include "somtsp/evaluation.hpp"
#include "somtsp/instance.hpp"
#include "somtsp/io.hpp"
#include "somtsp/oracle.hpp"
#include "somtsp/results.hpp"
#include "somtsp/svg.hpp"
#include "somtsp/tuning.hpp"

namespace somtsp::cli {

namespace fs = std::filesystem;

namespace {

/// Optional overrides for the SolverConfig fields, one flag per hyperparameter.
struct ConfigFlags {
    std::optional<std::uint64_t> iterations;
    std::optional<double> neighborhood_discount;
    std::optional<double> learning_rate;
    std::optional<double> learning_rate_discount;
    std::optional<std::uint32_t> population_multiplier;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> anchor;
    std::optional<double> radius_floor;
    std::optional<double> learning_rate_floor;

    void attach(CLI::App* app) {
        app->add_option("--iterations", iterations, "Number of iterations");
        app->add_option("--neighborhood-discount", neighborhood_discount,
                        "Discount rate of initial neighborhood");
        app->add_option("--learning-rate", learning_rate, "Learning rate");
        app->add_option("--learning-rate-discount", learning_rate_discount, "Discount rate of learning rate");
        app->add_option("--population-multiplier", population_multiplier, "Population size multiplier factor");
        app->add_option("--seed", seed, "RNG seed");
        app->add_option("--anchor", anchor, "Anchor strategy: random, centermost, furthest");
        app->add_option("--radius-floor", radius_floor, "Stop once the neighborhood radius drops below this");
        app->add_option("--lr-floor", learning_rate_floor, "Stop once the learning rate drops below this");
    }

    SolverConfig build(SolverConfig config = {}) const {
        if (iterations) config.iterations = *iterations;
        if (neighborhood_discount) config.neighborhood_discount = *neighborhood_discount;
        if (learning_rate) config.learning_rate = *learning_rate;
        if (learning_rate_discount) config.learning_rate_discount = *learning_rate_discount;
        if (population_multiplier) config.population_multiplier = *population_multiplier;
        if (seed) config.seed = *seed;
        if (anchor) config.anchor_strategy = parse_anchor_strategy(*anchor);
        if (radius_floor) config.radius_floor = *radius_floor;
        if (learning_rate_floor) config.learning_rate_floor = *learning_rate_floor;
        config.validate();
        return config;
    }
};

void print_f1(std::ostream& out, const F1Report& report) {
    out << "precision " << format_double(report.precision) << '\n'
        << "recall    " << format_double(report.recall) << '\n'
        << "f1        " << format_double(report.f1) << '\n'
        << "edges     " << report.true_positive_edges << " shared / " << report.predicted_edges
        << " predicted / " << report.reference_edges << " reference\n";
}

void ensure_parent(const fs::path& path) {
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
}

struct GenerateArgs {
    std::size_t n = 0;
    std::size_t count = 1;
    std::uint64_t seed = 0;
    double bounds = 1.0;
    std::string format = "csv";
    std::string out;
};

int run_generate(const GenerateArgs& args, std::ostream& out) {
    const bool tsplib = args.format == "tsplib";
    if (!tsplib && args.format != "csv") {
        throw ValidationError("--format must be csv or tsplib");
    }
    fs::create_directories(args.out);
    for (std::size_t k = 0; k < args.count; ++k) {
        const Instance instance = generate_instance(args.n, args.seed + k, args.bounds);
        std::ostringstream text;
        write_instance(text, instance, tsplib ? InstanceFormat::TsplibEuc2d : InstanceFormat::Csv);
        const fs::path path = fs::path(args.out) / (instance.id + (tsplib ? ".tsp" : ".csv"));
        write_file_atomic(path, text.str());
        out << path.string() << '\n';
    }
    return kExitOk;
}

struct SolveArgs {
    std::string instance;
    bool multi_start = false;
    bool pop_sweep = false;
    bool enhanced = false;
    std::string reference;
    std::string replay;
    unsigned jobs = 1;
    std::string out;
    ConfigFlags flags;
};

int run_solve(const SolveArgs& args, std::ostream& out) {
    SolveMode mode = SolveMode::Plain;
    if (args.multi_start) mode = SolveMode::MultiStart;
    if (args.pop_sweep) mode = SolveMode::PopulationSweep;
    if (args.enhanced) mode = SolveMode::Enhanced;

    SolverConfig config;
    fs::path instance_path = args.instance;
    if (!args.replay.empty()) {
        const ResultsRecord previous = load_results(args.replay);
        if (!previous.config) {
            throw ValidationError("'" + args.replay + "' has no solver config to replay");
        }
        config = args.flags.build(*previous.config);
        mode = previous.mode;
        if (instance_path.empty()) {
            instance_path = previous.instance_path;
        }
    } else {
        config = args.flags.build();
    }
    if (instance_path.empty()) {
        throw ValidationError("solve needs --instance (or --replay with a recorded instance_path)");
    }

    const Instance instance = load_instance(instance_path);
    ResultsRecord record = solve_record(instance, config, mode, args.jobs);
    record.instance_path = instance_path.string();

    if (!args.reference.empty()) {
        const ResultsRecord reference = load_results(args.reference);
        validate_route(reference.best_route, instance.size());
        record.f1 = f1_score(edges_of_route(record.best_route), edges_of_route(reference.best_route));
        record.reference_oracle = reference.oracle_kind;
    }

    ensure_parent(args.out);
    save_results(args.out, record);
    out << "instance " << record.instance_id << " mode " << to_string(mode) << " runs " << record.runs.size()
        << " best_length " << format_double(record.best_length) << '\n';
    if (record.f1) {
        print_f1(out, *record.f1);
    }
    return kExitOk;
}

struct OracleArgs {
    std::string instance;
    std::string kind = "auto";
    std::string out;
};

int run_oracle(const OracleArgs& args, std::ostream& out) {
    const Instance instance = load_instance(args.instance);
    const auto started = std::chrono::steady_clock::now();
    ReferenceTour tour;
    if (args.kind == "auto") {
        tour = reference_tour(instance);
    } else {
        switch (parse_oracle_kind(args.kind)) {
        case OracleKind::BruteForce:
            tour = brute_force_optimal(instance);
            break;
        case OracleKind::HeldKarp:
            tour = held_karp(instance);
            break;
        case OracleKind::TwoOpt:
            tour = two_opt_improve(instance, nearest_neighbor_route(instance, 0));
            break;
        }
    }
    const auto elapsed = std::chrono::steady_clock::now() - started;

    ResultsRecord record;
    record.instance_id = instance.id;
    record.instance_path = args.instance;
    record.mode = SolveMode::Oracle;
    record.best_route = tour.route;
    record.best_length = tour.length;
    record.oracle_kind = tour.kind;
    record.timing_ms = std::chrono::duration<double, std::milli>(elapsed).count();

    const fs::path target = args.out.empty() ? reference_path_for(args.instance) : fs::path(args.out);
    ensure_parent(target);
    save_results(target, record);
    out << "instance " << record.instance_id << " oracle " << to_string(tour.kind) << " length "
        << format_double(tour.length) << " -> " << target.string() << '\n';
    return kExitOk;
}

struct EvaluateArgs {
    std::string predicted;
    std::string reference;
    std::string adjacency_out;
    std::string out;
};

int run_evaluate(const EvaluateArgs& args, std::ostream& out) {
    const ResultsRecord predicted = load_results(args.predicted);
    const ResultsRecord reference = load_results(args.reference);
    const std::size_t n = reference.best_route.size();
    validate_route(reference.best_route, n);
    validate_route(predicted.best_route, n);

    const EdgeSet predicted_edges = edges_of_route(predicted.best_route);
    const F1Report report = f1_score(predicted_edges, edges_of_route(reference.best_route));
    print_f1(out, report);

    if (!args.out.empty()) {
        ensure_parent(args.out);
        write_file_atomic(args.out, to_json(report).dump(2) + "\n");
    }
    if (!args.adjacency_out.empty()) {
        std::ostringstream matrix;
        write_adjacency_csv(matrix, predicted_edges, n);
        ensure_parent(args.adjacency_out);
        write_file_atomic(args.adjacency_out, matrix.str());
    }
    return kExitOk;
}

struct TuneArgs {
    std::string plan;
    std::string format = "markdown";
    std::string out;
    std::string results_json;
    unsigned jobs = 1;
};

int run_tune(const TuneArgs& args, std::ostream& out) {
    const SweepPlan plan = load_sweep_plan(args.plan);
    const TableFormat format = parse_table_format(args.format);
    const SweepResult result = run_sweep(plan, args.jobs);
    const std::string table = render_table(result, format);

    if (args.out.empty()) {
        out << table;
    } else {
        ensure_parent(args.out);
        write_file_atomic(args.out, table);
        out << "wrote " << args.out << '\n';
    }

    if (!args.results_json.empty()) {
        nlohmann::json rows = nlohmann::json::array();
        for (const SweepRow& row : result.rows) {
            rows.push_back({{"config", config_to_json(row.config)},
                            {"mean", row.mean},
                            {"per_instance", row.per_instance}});
        }
        nlohmann::json instances = nlohmann::json::array();
        for (const TuningInstance& entry : plan.instances) {
            instances.push_back({{"id", entry.instance.id},
                                 {"reference_oracle", std::string(to_string(entry.reference_kind))}});
        }
        const nlohmann::json doc{{"metric", std::string(to_string(result.metric))},
                                 {"best_row", result.best_row},
                                 {"instances", instances},
                                 {"rows", rows}};
        ensure_parent(args.results_json);
        write_file_atomic(args.results_json, doc.dump(2) + "\n");
    }
    return kExitOk;
}

struct PlotArgs {
    std::string instance;
    std::string out;
    std::vector<std::uint64_t> steps;
    ConfigFlags flags;
};

int run_plot(const PlotArgs& args, std::ostream& out) {
    const Instance instance = load_instance(args.instance);
    const SolverConfig config = args.flags.build();
    RunOptions options;
    options.snapshot_steps = args.steps.empty() ? default_snapshot_steps(config.iterations) : args.steps;
    const SomRun run = run_som(instance, config, options);
    for (const fs::path& path : render_frames(run.snapshots, instance, args.out)) {
        out << path.string() << '\n';
    }
    return kExitOk;
}

} // namespace

int command_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Self-organizing map solver for 2-D Euclidean TSP", "somtsp"};
    app.require_subcommand(1);

    GenerateArgs generate;
    auto* gen = app.add_subcommand("generate", "Generate uniform random instances");
    gen->add_option("--n", generate.n, "Cities per instance")->required()->check(CLI::PositiveNumber);
    gen->add_option("--count", generate.count, "Number of instances")->check(CLI::PositiveNumber);
    gen->add_option("--seed", generate.seed, "Seed of the first instance; instance k uses seed + k");
    gen->add_option("--bounds", generate.bounds, "Side length of the square");
    gen->add_option("--format", generate.format, "csv or tsplib");
    gen->add_option("--out", generate.out, "Output directory")->required();

    SolveArgs solve;
    auto* sol = app.add_subcommand("solve", "Run the SOM solver on one instance");
    sol->add_option("--instance", solve.instance, "Instance file (.csv or .tsp)")->check(CLI::ExistingFile);
    auto* ms = sol->add_flag("--multi-start", solve.multi_start, "Best of three anchor strategies");
    auto* ps = sol->add_flag("--pop-sweep", solve.pop_sweep, "Best of population multipliers 1..20");
    auto* en = sol->add_flag("--enhanced", solve.enhanced, "Best of anchors x multipliers (60 runs)");
    ms->excludes(ps)->excludes(en);
    ps->excludes(en);
    sol->add_option("--reference", solve.reference, "Reference tour record for F1 scoring")
        ->check(CLI::ExistingFile);
    sol->add_option("--replay", solve.replay, "Re-run the config and mode echoed in a results record")
        ->check(CLI::ExistingFile)
        ->excludes(ms)
        ->excludes(ps)
        ->excludes(en);
    sol->add_option("--jobs", solve.jobs, "Concurrent solver runs")->check(CLI::PositiveNumber);
    sol->add_option("--out", solve.out, "Results JSON path")->required();
    solve.flags.attach(sol);

    OracleArgs oracle;
    auto* ora = app.add_subcommand("oracle", "Compute a reference tour");
    ora->add_option("--instance", oracle.instance, "Instance file")->required()->check(CLI::ExistingFile);
    ora->add_option("--kind", oracle.kind, "auto, brute_force, held_karp or two_opt");
    ora->add_option("--out", oracle.out, "Output path (default: <instance stem>.ref.json)");

    EvaluateArgs evaluate;
    auto* eva = app.add_subcommand("evaluate", "Score a predicted route against a reference");
    eva->add_option("--predicted", evaluate.predicted, "Results record")->required()->check(CLI::ExistingFile);
    eva->add_option("--reference", evaluate.reference, "Reference record")->required()->check(CLI::ExistingFile);
    eva->add_option("--adjacency-out", evaluate.adjacency_out, "Write the predicted adjacency matrix as CSV");
    eva->add_option("--out", evaluate.out, "Write the F1 report as JSON");

    TuneArgs tune;
    auto* tun = app.add_subcommand("tune", "Run a hyperparameter sweep plan");
    tun->add_option("--plan", tune.plan, "Sweep plan JSON")->required()->check(CLI::ExistingFile);
    tun->add_option("--format", tune.format, "markdown or csv");
    tun->add_option("--out", tune.out, "Table output path (default: stdout)");
    tun->add_option("--results-json", tune.results_json, "Per-instance results as JSON");
    tun->add_option("--jobs", tune.jobs, "Concurrent solver runs")->check(CLI::PositiveNumber);

    PlotArgs plot;
    auto* plt = app.add_subcommand("plot", "Write SVG frames of the ring during training");
    plt->add_option("--instance", plot.instance, "Instance file")->required()->check(CLI::ExistingFile);
    plt->add_option("--out", plot.out, "Output directory")->required();
    plt->add_option("--steps", plot.steps, "Snapshot steps (default: 0,1%,5%,25%,100% of iterations)")
        ->delimiter(',');
    plot.flags.attach(plt);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitValidation;
    }

    try {
        if (gen->parsed()) return run_generate(generate, out);
        if (sol->parsed()) return run_solve(solve, out);
        if (ora->parsed()) return run_oracle(oracle, out);
        if (eva->parsed()) return run_evaluate(evaluate, out);
        if (tun->parsed()) return run_tune(tune, out);
        if (plt->parsed()) return run_plot(plot, out);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const UnsupportedFormatError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const SizeLimitError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    err << app.help();
    return kExitValidation;
}

} // namespace somtsp::cli
