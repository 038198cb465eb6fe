#include "doctest.h"

#include <cmath>
#include <numbers>

#include "somtsp/errors.hpp"
#include "somtsp/evaluation.hpp"
#include "somtsp/som_solver.hpp"

using namespace somtsp;

namespace {

SolverConfig quick(std::uint64_t iterations, std::uint64_t seed = 1) {
    SolverConfig c;
    c.iterations = iterations;
    c.seed = seed;
    return c;
}

NeuronRing random_ring(std::size_t m, Rng& rng) {
    NeuronRing ring;
    for (std::size_t j = 0; j < m; ++j) ring.positions.push_back({rng.uniform01(), rng.uniform01()});
    return ring;
}

} // namespace

TEST_CASE("SolverConfig defaults and validation") {
    const SolverConfig c;
    CHECK(c.iterations == 100000);
    CHECK(c.neighborhood_discount == 0.9997);
    CHECK(c.learning_rate == 0.8);
    CHECK(c.learning_rate_discount == 0.99997);
    CHECK(c.population_multiplier == 6);
    CHECK_NOTHROW(c.validate());

    auto broken = [](auto mutate) {
        SolverConfig b;
        mutate(b);
        return b;
    };
    CHECK_THROWS_AS(broken([](SolverConfig& b) { b.iterations = 0; }).validate(), ValidationError);
    CHECK_THROWS_AS(broken([](SolverConfig& b) { b.neighborhood_discount = 0.0; }).validate(), ValidationError);
    CHECK_THROWS_AS(broken([](SolverConfig& b) { b.neighborhood_discount = 1.01; }).validate(), ValidationError);
    CHECK_THROWS_AS(broken([](SolverConfig& b) { b.learning_rate = 0.0; }).validate(), ValidationError);
    CHECK_THROWS_AS(broken([](SolverConfig& b) { b.learning_rate_discount = -1.0; }).validate(), ValidationError);
    CHECK_THROWS_AS(broken([](SolverConfig& b) { b.population_multiplier = 0; }).validate(), ValidationError);
    CHECK_THROWS_AS(broken([](SolverConfig& b) { b.radius_floor = -1.0; }).validate(), ValidationError);
    CHECK_NOTHROW(broken([](SolverConfig& b) { b.learning_rate = 1.0; b.neighborhood_discount = 1.0; }).validate());
}

TEST_CASE("init_ring size, placement and determinism") {
    const Instance four = generate_instance(4, 2);
    CHECK(init_ring(four, SolverConfig{}).size() == 24);

    const Instance centered{"c", {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}}};
    SolverConfig config;
    config.anchor_strategy = AnchorStrategy::Centermost;
    const NeuronRing ring = init_ring(centered, config);
    CHECK(ring.size() == 30);
    for (Point p : ring.positions) {
        CHECK(distance(p, {0.5, 0.5}) <= 0.1 * std::sqrt(2.0) + 1e-12);
        CHECK(distance(p, {0.5, 0.5}) >= 0.1 * std::sqrt(2.0) - 1e-12);
    }

    const Instance inst = generate_instance(30, 4);
    for (AnchorStrategy s : kAllAnchorStrategies) {
        config.anchor_strategy = s;
        CHECK(init_ring(inst, config).positions == init_ring(inst, config).positions);
    }
}

TEST_CASE("winner_index examples") {
    const NeuronRing ring{{{0, 0}, {1, 0}}};
    CHECK(winner_index(ring, {0.9, 0}) == 1);
    CHECK(winner_index(ring, {0.5, 0}) == 0);
    CHECK_THROWS_AS(winner_index(NeuronRing{}, {0, 0}), ValidationError);
}

TEST_CASE("winner_index agrees with a linear-scan oracle") {
    Rng rng(2024);
    const NeuronRing ring = random_ring(30, rng);
    for (int q = 0; q < 1000; ++q) {
        const Point city{rng.uniform01(), rng.uniform01()};
        std::size_t expected = 0;
        for (std::size_t j = 1; j < ring.size(); ++j) {
            if (std::hypot(ring.positions[j].x - city.x, ring.positions[j].y - city.y) <
                std::hypot(ring.positions[expected].x - city.x, ring.positions[expected].y - city.y)) {
                expected = j;
            }
        }
        CHECK(winner_index(ring, city) == expected);
    }
}

TEST_CASE("neighborhood_weight") {
    CHECK(neighborhood_weight(10, 3, 3, 2.5) == 1.0);
    CHECK(neighborhood_weight(10, 0, 5, 1e-3) == 0.0);
    CHECK(neighborhood_weight(10, 0, 5, 0.5) < 1e-10);
    CHECK(ring_distance(8, 0, 7) == 1);
    CHECK(neighborhood_weight(8, 0, 7, 2.0) == doctest::Approx(std::exp(-1.0 / 8.0)).epsilon(1e-15));
    CHECK(neighborhood_weight(9, 1, 6, 3.0) == doctest::Approx(std::exp(-16.0 / 18.0)).epsilon(1e-15));
    CHECK_THROWS_AS(neighborhood_weight(8, 0, 1, 0.0), ValidationError);

    for (std::size_t m = 1; m < 40; m += 3) {
        for (std::size_t w = 0; w < m; ++w) {
            for (std::size_t j = 0; j < m; ++j) {
                const double a = neighborhood_weight(m, w, j, 1.7);
                CHECK(a == neighborhood_weight(m, j, w, 1.7));
                CHECK(a >= 0.0);
                CHECK(a <= 1.0);
            }
        }
    }
}

TEST_CASE("train_iteration with zero learning rate only advances counters") {
    const Instance inst = generate_instance(10, 5);
    const SolverConfig config = quick(100);
    TrainState state = initial_state(inst, config);
    state.learning_rate = 0.0;
    const auto before = state.ring.positions;
    const double radius = state.radius;
    Rng rng(1);
    train_iteration(state, inst, config, 0, rng);
    CHECK(state.ring.positions == before);
    CHECK(state.step == 1);
    CHECK(state.radius == radius * config.neighborhood_discount);
}

TEST_CASE("single neuron moves lr of the way to the city") {
    const Instance inst{"one", {{1, 1}}};
    SolverConfig config = quick(10);
    config.population_multiplier = 1;
    TrainState state{NeuronRing{{{0, 0}}}, 5.0, 0.8, 0};
    Rng rng(1);
    train_iteration(state, inst, config, 0, rng);
    CHECK(state.ring.positions[0].x == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(state.ring.positions[0].y == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(state.learning_rate == doctest::Approx(0.8 * 0.99997).epsilon(1e-15));
}

TEST_CASE("train_iteration matches a direct every-neuron update") {
    // Oracle applies lr * neighborhood_weight to all m neurons without the outward walk.
    Rng setup(77);
    for (int trial = 0; trial < 20; ++trial) {
        const Instance inst = generate_instance(5 + setup.uniform_index(20), 100 + trial);
        SolverConfig config = quick(50, trial);
        config.population_multiplier = 1 + static_cast<std::uint32_t>(setup.uniform_index(6));
        TrainState state = initial_state(inst, config);
        state.radius = 0.5 + 10.0 * setup.uniform01();
        state.step = 3;
        const TrainState before = state;

        Rng rng_a(trial);
        Rng rng_b(trial);
        train_iteration(state, inst, config, 0, rng_a);

        const Point city = inst.cities[rng_b.uniform_index(inst.size())];
        const std::size_t m = before.ring.size();
        std::size_t winner = 0;
        for (std::size_t j = 1; j < m; ++j) {
            if (squared_distance(before.ring.positions[j], city) < squared_distance(before.ring.positions[winner], city)) {
                winner = j;
            }
        }
        for (std::size_t j = 0; j < m; ++j) {
            const double h = before.learning_rate * neighborhood_weight(m, winner, j, before.radius);
            const Point old = before.ring.positions[j];
            CHECK(state.ring.positions[j].x == doctest::Approx(old.x + h * (city.x - old.x)).epsilon(1e-14));
            CHECK(state.ring.positions[j].y == doctest::Approx(old.y + h * (city.y - old.y)).epsilon(1e-14));
        }
    }
}

TEST_CASE("train_iteration moves neurons along the segment toward the city") {
    Rng setup(5);
    for (int trial = 0; trial < 30; ++trial) {
        const Instance inst = generate_instance(12, 300 + trial);
        SolverConfig config = quick(10, trial);
        TrainState state = initial_state(inst, config);
        state.learning_rate = setup.uniform01() * 0.999 + 0.001;
        const TrainState before = state;
        const std::size_t anchor = setup.uniform_index(inst.size());
        Rng rng(trial);
        train_iteration(state, inst, config, anchor, rng);

        const Point city = inst.cities[anchor];
        for (std::size_t j = 0; j < state.ring.size(); ++j) {
            const Point old = before.ring.positions[j];
            const Point now = state.ring.positions[j];
            const double whole = distance(old, city);
            CHECK(distance(old, now) + distance(now, city) == doctest::Approx(whole).epsilon(1e-9));
            CHECK(distance(now, city) <= whole + 1e-12);
        }
    }
}

TEST_CASE("radius and learning rate follow the closed-form decay") {
    const Instance inst = generate_instance(50, 9);
    SolverConfig config = quick(10000);
    TrainState state = initial_state(inst, config);
    const double r0 = state.radius;
    const double lr0 = state.learning_rate;
    CHECK(r0 == 30.0);
    Rng rng(3);
    for (std::uint64_t t = 1; t <= 3000; ++t) {
        train_iteration(state, inst, config, 0, rng);
        CHECK(std::abs(state.radius - r0 * std::pow(0.9997, static_cast<double>(t))) <= 1e-9 * state.radius);
        CHECK(std::abs(state.learning_rate - lr0 * std::pow(0.99997, static_cast<double>(t))) <=
              1e-9 * state.learning_rate);
    }
}

TEST_CASE("non-finite neurons abort training") {
    const Instance inst{"far", {{1e308, 1e308}, {1e308, 1e308}}};
    SolverConfig config = quick(10);
    config.population_multiplier = 1;
    TrainState state{NeuronRing{{{-1e308, -1e308}, {-1e308, -1e308}}}, 5.0, 0.9, 0};
    Rng rng(1);
    CHECK_THROWS_AS(train_iteration(state, inst, config, 0, rng), InternalCorruptionError);

    TrainState done = state;
    done.step = 10;
    CHECK_THROWS_AS(train_iteration(done, inst, config, 0, rng), ValidationError);
}

TEST_CASE("extract_route follows ring order") {
    // Ring of 16 neurons on the unit circle; cities at 225, 45, 315 and 135 degrees.
    NeuronRing ring;
    for (int k = 0; k < 16; ++k) {
        const double a = 2.0 * std::numbers::pi * k / 16.0;
        ring.positions.push_back({std::cos(a), std::sin(a)});
    }
    const double s = std::sqrt(0.5);
    const Instance inst{"circle", {{-s, -s}, {s, s}, {s, -s}, {-s, s}}};
    CHECK(extract_route(ring, inst) == Route{{1, 3, 0, 2}});

    const NeuronRing lone{{{0.5, 0.5}}};
    CHECK(extract_route(lone, generate_instance(6, 1)) == Route{{0, 1, 2, 3, 4, 5}});
    CHECK(extract_route(ring, Instance{"one", {{3, 3}}}) == Route{{0}});
}

TEST_CASE("run_som small cases") {
    const SomRun single = run_som(Instance{"one", {{0.2, 0.7}}}, SolverConfig{});
    CHECK(single.route == Route{{0}});

    const Instance pair{"two", {{0, 0}, {3, 4}}};
    const SomRun two = run_som(pair, quick(1000));
    CHECK(is_valid_route(two.route, 2));
    CHECK(route_length(two.route, pair) == 10.0);

    const Instance ten = generate_instance(10, 21);
    const SomRun run = run_som(ten, quick(10000));
    CHECK(is_valid_route(run.route, 10));
    CHECK(run.state.step <= 10000);
}

TEST_CASE("run_som stops at the radius floor") {
    const Instance inst = generate_instance(20, 8);
    SolverConfig config = quick(100000);
    const SomRun run = run_som(inst, config);
    const double r0 = initial_radius(120);
    // First t with r0 * 0.9997^t < 1.
    std::uint64_t expected = 0;
    double r = r0;
    while (r >= 1.0) {
        r *= 0.9997;
        ++expected;
    }
    CHECK(run.state.step == expected);
    CHECK(run.state.radius < 1.0);

    config.learning_rate_floor = 0.79;
    const SomRun lr_stop = run_som(inst, config);
    CHECK(lr_stop.state.learning_rate < 0.79);
    CHECK(lr_stop.state.step < run.state.step);
}

TEST_CASE("run_som is deterministic and Hamiltonian across seeds") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Instance inst = generate_instance(30 + seed, seed);
        SolverConfig config = quick(3000, seed);
        config.anchor_strategy = kAllAnchorStrategies[seed % 3];
        const SomRun a = run_som(inst, config);
        const SomRun b = run_som(inst, config);
        CHECK(is_valid_route(a.route, inst.size()));
        CHECK(a.route == b.route);
        CHECK(a.state.ring.positions == b.state.ring.positions);
    }
}

TEST_CASE("run_som snapshots") {
    const Instance inst = generate_instance(15, 3);
    RunOptions options;
    options.snapshot_steps = {500, 0, 10, 10, 999999};
    const SomRun run = run_som(inst, quick(2000), options);
    REQUIRE(run.snapshots.size() == 4);
    CHECK(run.snapshots[0].step == 0);
    CHECK(run.snapshots[0].positions == init_ring(inst, quick(2000)).positions);
    CHECK(run.snapshots[1].step == 10);
    CHECK(run.snapshots[2].step == 500);
    CHECK(run.snapshots[3].step == 2000);
    CHECK(run.snapshots[3].positions == run.state.ring.positions);

    // Requesting the last step and a step past the end yields one final frame.
    options.snapshot_steps = {2000, 5000};
    const SomRun again = run_som(inst, quick(2000), options);
    REQUIRE(again.snapshots.size() == 1);
    CHECK(again.snapshots[0].step == 2000);
}
