#include "doctest.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "somtsp/errors.hpp"
#include "somtsp/evaluation.hpp"
#include "somtsp/io.hpp"
#include "somtsp/oracle.hpp"
#include "somtsp/results.hpp"
#include "somtsp/tuning.hpp"
#include "test_support.hpp"

using namespace somtsp;

namespace {

SolverConfig small(std::uint64_t iterations, std::uint32_t multiplier, std::uint64_t seed = 1) {
    SolverConfig c;
    c.iterations = iterations;
    c.population_multiplier = multiplier;
    c.seed = seed;
    return c;
}

std::vector<TuningInstance> held_karp_set(std::size_t count, std::size_t n, std::uint64_t seed) {
    std::vector<TuningInstance> set;
    for (std::size_t i = 0; i < count; ++i) {
        TuningInstance entry;
        entry.instance = generate_instance(n, seed + i);
        const ReferenceTour ref = held_karp(entry.instance);
        entry.reference = ref.route;
        entry.reference_kind = ref.kind;
        set.push_back(std::move(entry));
    }
    return set;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream cells_in(line);
        std::string cell;
        while (std::getline(cells_in, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

} // namespace

TEST_CASE("a row scored against its own route has mean F1 of one") {
    TuningInstance entry;
    entry.instance = generate_instance(12, 3);
    const SolverConfig config = small(2000, 4);
    entry.reference = run_som(entry.instance, config).route;
    const SweepPlan plan{config, {config}, {entry}, SweepMetric::MeanF1};
    const SweepResult result = run_sweep(plan);
    REQUIRE(result.rows.size() == 1);
    CHECK(result.rows[0].mean == 1.0);
    CHECK(result.best_row == 0);
}

TEST_CASE("identical rows tie and the first wins") {
    const SolverConfig config = small(1000, 3);
    const SweepPlan plan{config, {config, config}, held_karp_set(3, 8, 10), SweepMetric::MeanF1};
    const SweepResult result = run_sweep(plan);
    CHECK(result.rows[0].mean == result.rows[1].mean);
    CHECK(result.rows[0].per_instance == result.rows[1].per_instance);
    CHECK(result.best_row == 0);
}

TEST_CASE("sweep means equal a manual solve-and-score loop") {
    const SolverConfig base = small(2000, 6);
    std::vector<SolverConfig> rows{base, small(2000, 2), small(2000, 12)};
    const auto set = held_karp_set(5, 8, 40);
    const SweepResult result = run_sweep(SweepPlan{base, rows, set, SweepMetric::MeanF1}, 3);

    for (std::size_t r = 0; r < rows.size(); ++r) {
        double sum = 0.0;
        for (std::size_t i = 0; i < set.size(); ++i) {
            const Route predicted = run_som(set[i].instance, rows[r]).route;
            const F1Report f1 = f1_score(edges_of_route(predicted), edges_of_route(set[i].reference));
            CHECK(result.rows[r].per_instance[i] == f1.f1);
            sum += f1.f1;
        }
        CHECK(result.rows[r].mean == doctest::Approx(sum / 5.0).epsilon(1e-12));
    }

    const SweepResult by_length = run_sweep(SweepPlan{base, rows, set, SweepMetric::MeanLength});
    for (std::size_t r = 0; r < rows.size(); ++r) {
        CHECK(by_length.rows[r].per_instance[0] ==
              route_length(run_som(set[0].instance, rows[r]).route, set[0].instance));
    }
    std::vector<double> means;
    for (const auto& row : by_length.rows) means.push_back(row.mean);
    CHECK(by_length.best_row ==
          static_cast<std::size_t>(std::min_element(means.begin(), means.end()) - means.begin()));
}

TEST_CASE("means do not depend on instance order") {
    const SolverConfig base = small(1500, 5);
    auto set = held_karp_set(6, 9, 70);
    const SweepResult forward = run_sweep(SweepPlan{base, {base, small(1500, 9)}, set, SweepMetric::MeanF1});
    std::reverse(set.begin(), set.end());
    const SweepResult backward = run_sweep(SweepPlan{base, {base, small(1500, 9)}, set, SweepMetric::MeanF1});
    for (std::size_t r = 0; r < 2; ++r) {
        CHECK(forward.rows[r].mean == backward.rows[r].mean);
    }
    CHECK(order_independent_mean({0.1, 0.7, 0.2}) == order_independent_mean({0.7, 0.2, 0.1}));
    CHECK(order_independent_mean({}) == 0.0);
}

TEST_CASE("best_row_index") {
    CHECK(best_row_index({0.1, 0.5, 0.5, 0.2}, SweepMetric::MeanF1) == 1);
    CHECK(best_row_index({3.0, 2.0, 2.0, 4.0}, SweepMetric::MeanLength) == 1);
    CHECK(best_row_index({0.3}, SweepMetric::MeanF1) == 0);
}

TEST_CASE("render_table") {
    SweepResult result;
    result.metric = SweepMetric::MeanF1;
    result.rows.push_back({small(100000, 8), 0.0780012345678901, {}});
    result.rows.push_back({small(100000, 6), 0.07885, {}});
    result.rows.push_back({small(100, 8), 0.06878, {}});
    result.best_row = 1;

    const std::string md = render_table(result, TableFormat::Markdown);
    std::istringstream md_in(md);
    std::vector<std::string> md_lines;
    for (std::string line; std::getline(md_in, line);) md_lines.push_back(line);
    REQUIRE(md_lines.size() == 5);
    CHECK(md_lines[0].find("Population Size Multiplier Factor") != std::string::npos);
    CHECK(md_lines[3].find("| * |") != std::string::npos);
    CHECK(md_lines[2].find("| * |") == std::string::npos);

    const auto csv = parse_csv(render_table(result, TableFormat::Csv));
    REQUIRE(csv.size() == 4);
    CHECK(csv[0] == std::vector<std::string>{"iterations", "neighborhood_discount", "learning_rate",
                                             "learning_rate_discount", "population_multiplier", "mean_f1", "best"});
    std::size_t flagged = 0;
    std::size_t argmax = 1;
    for (std::size_t r = 1; r < csv.size(); ++r) {
        REQUIRE(csv[r].size() == 7);
        const double mean = std::stod(csv[r][5]);
        CHECK(std::abs(mean - result.rows[r - 1].mean) <= 1e-9);
        CHECK(std::stod(csv[r][1]) == result.rows[r - 1].config.neighborhood_discount);
        if (csv[r][6] == "1") flagged = r;
        if (mean > std::stod(csv[argmax][5])) argmax = r;
    }
    CHECK(flagged == argmax);

    SweepResult single;
    single.rows.push_back({small(10, 1), 0.5, {}});
    CHECK(parse_csv(render_table(single, TableFormat::Csv)).size() == 2);
    CHECK(parse_csv(render_table(single, TableFormat::Csv))[1][6] == "1");
    CHECK_THROWS_AS(render_table(SweepResult{}, TableFormat::Csv), ValidationError);
}

TEST_CASE("plan validation") {
    const SolverConfig base = small(100, 2);
    CHECK_THROWS_AS(run_sweep(SweepPlan{base, {}, held_karp_set(1, 5, 1), SweepMetric::MeanF1}), ValidationError);
    CHECK_THROWS_AS(run_sweep(SweepPlan{base, {base}, {}, SweepMetric::MeanF1}), ValidationError);
    auto set = held_karp_set(1, 5, 1);
    set[0].reference.order.pop_back();
    CHECK_THROWS_AS(run_sweep(SweepPlan{base, {base}, set, SweepMetric::MeanF1}), ValidationError);
}

TEST_CASE("load_sweep_plan reads rows, instances and references") {
    const auto dir = testing::scratch_dir("plan");
    std::filesystem::create_directories(dir / "set");
    for (std::uint64_t s = 0; s < 3; ++s) {
        const Instance inst = generate_instance(7, s);
        std::ostringstream text;
        write_instance(text, inst, InstanceFormat::Csv);
        write_file_atomic(dir / "set" / (inst.id + ".csv"), text.str());

        ResultsRecord ref;
        ref.instance_id = inst.id;
        ref.mode = SolveMode::Oracle;
        const ReferenceTour tour = held_karp(inst);
        ref.best_route = tour.route;
        ref.best_length = tour.length;
        ref.oracle_kind = tour.kind;
        save_results(dir / "set" / (inst.id + ".ref.json"), ref);
    }
    const nlohmann::json plan_doc{
        {"base", {{"iterations", 800}, {"seed", 5}}},
        {"rows", {nlohmann::json::object(), {{"population_multiplier", 3}}, {{"learning_rate", 0.5}}}},
        {"instances", "set"},
        {"metric", "mean_f1"},
    };
    write_file_atomic(dir / "plan.json", plan_doc.dump());

    const SweepPlan plan = load_sweep_plan(dir / "plan.json");
    CHECK(plan.base.iterations == 800);
    REQUIRE(plan.rows.size() == 3);
    CHECK(plan.rows[0] == plan.base);
    CHECK(plan.rows[1].population_multiplier == 3);
    CHECK(plan.rows[1].seed == 5);
    CHECK(plan.rows[2].learning_rate == 0.5);
    REQUIRE(plan.instances.size() == 3);
    CHECK(plan.instances[0].reference_kind == OracleKind::HeldKarp);
    CHECK(run_sweep(plan).rows.size() == 3);

    write_file_atomic(dir / "bad.json", R"({"rows": [{"learning_rat": 0.5}], "instances": "set"})");
    CHECK_THROWS_AS(load_sweep_plan(dir / "bad.json"), ValidationError);

    std::filesystem::remove(dir / "set" / "uniform_n7_s1.ref.json");
    CHECK_THROWS_AS(load_sweep_plan(dir / "plan.json"), ValidationError);
}
