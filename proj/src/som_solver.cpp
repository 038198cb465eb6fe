#include "somtsp/som_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "somtsp/errors.hpp"

namespace somtsp {

void SolverConfig::validate() const {
    auto unit_interval = [](double v) { return v > 0.0 && v <= 1.0; };
    if (iterations < 1) {
        throw ValidationError("iterations must be at least 1");
    }
    if (!unit_interval(neighborhood_discount)) {
        throw ValidationError("neighborhood_discount must be in (0, 1]");
    }
    if (!unit_interval(learning_rate)) {
        throw ValidationError("learning_rate must be in (0, 1]");
    }
    if (!unit_interval(learning_rate_discount)) {
        throw ValidationError("learning_rate_discount must be in (0, 1]");
    }
    if (population_multiplier < 1) {
        throw ValidationError("population_multiplier must be at least 1");
    }
    if (!(radius_floor >= 0.0) || !std::isfinite(radius_floor)) {
        throw ValidationError("radius_floor must be finite and non-negative");
    }
    if (!(learning_rate_floor >= 0.0) || !std::isfinite(learning_rate_floor)) {
        throw ValidationError("learning_rate_floor must be finite and non-negative");
    }
}

NeuronRing init_ring(const Instance& instance, const SolverConfig& config) {
    validate_instance(instance);
    config.validate();

    const Point anchor = instance.cities[select_anchor(instance, config.anchor_strategy, config.seed)];

    auto [min_x, max_x] = std::minmax_element(instance.cities.begin(), instance.cities.end(),
                                              [](Point a, Point b) { return a.x < b.x; });
    auto [min_y, max_y] = std::minmax_element(instance.cities.begin(), instance.cities.end(),
                                              [](Point a, Point b) { return a.y < b.y; });
    const double diagonal = std::hypot(max_x->x - min_x->x, max_y->y - min_y->y);
    const double circle_radius = 0.1 * diagonal;

    const std::size_t m = static_cast<std::size_t>(config.population_multiplier) * instance.size();
    NeuronRing ring;
    ring.positions.reserve(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m);
        ring.positions.push_back(
            {anchor.x + circle_radius * std::cos(angle), anchor.y + circle_radius * std::sin(angle)});
    }
    for (const Point& p : ring.positions) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
            throw InternalCorruptionError("initial ring has a non-finite neuron position");
        }
    }
    return ring;
}

std::size_t winner_index(const NeuronRing& ring, Point city) {
    if (ring.positions.empty()) {
        throw ValidationError("winner_index on an empty ring");
    }
    std::size_t best = 0;
    double best_d2 = squared_distance(ring.positions[0], city);
    for (std::size_t j = 1; j < ring.positions.size(); ++j) {
        const double d2 = squared_distance(ring.positions[j], city);
        if (d2 < best_d2) {
            best_d2 = d2;
            best = j;
        }
    }
    return best;
}

std::size_t ring_distance(std::size_t ring_size, std::size_t a, std::size_t b) {
    const std::size_t diff = a > b ? a - b : b - a;
    return std::min(diff, ring_size - diff);
}

namespace {

double gaussian(double d, double radius) { return std::exp(-(d * d) / (2.0 * radius * radius)); }

} // namespace

double neighborhood_weight(std::size_t ring_size, std::size_t winner, std::size_t j, double radius) {
    if (!(radius > 0.0)) {
        throw ValidationError("neighborhood radius must be positive");
    }
    return gaussian(static_cast<double>(ring_distance(ring_size, winner, j)), radius);
}

TrainState initial_state(const Instance& instance, const SolverConfig& config) {
    TrainState state;
    state.ring = init_ring(instance, config);
    state.radius = initial_radius(state.ring.size());
    state.learning_rate = config.learning_rate;
    state.step = 0;
    return state;
}

void train_iteration(TrainState& state, const Instance& instance, const SolverConfig& config,
                     std::size_t anchor, Rng& rng) {
    if (state.step >= config.iterations) {
        throw ValidationError("train_iteration past the configured iteration count");
    }
    auto& neurons = state.ring.positions;
    const std::size_t m = neurons.size();
    if (m == 0 || anchor >= instance.size()) {
        throw ValidationError("train_iteration needs a non-empty ring and a valid anchor");
    }

    const std::size_t city_index = state.step == 0 ? anchor : rng.uniform_index(instance.size());
    const Point city = instance.cities[city_index];
    const std::size_t winner = winner_index(state.ring, city);

    auto pull = [&](std::size_t j, double strength) {
        Point& p = neurons[j];
        p.x += strength * (city.x - p.x);
        p.y += strength * (city.y - p.y);
    };

    // Walk outward from the winner; every neuron at ring offset k shares one weight.
    // Once the Gaussian underflows to zero the remaining neurons would not move.
    pull(winner, state.learning_rate);
    if (state.radius > 0.0) {
        const std::size_t half = m / 2;
        for (std::size_t k = 1; k <= half; ++k) {
            const double weight = gaussian(static_cast<double>(k), state.radius);
            if (weight == 0.0) {
                break;
            }
            const double strength = state.learning_rate * weight;
            const std::size_t ahead = (winner + k) % m;
            const std::size_t behind = (winner + m - k) % m;
            pull(ahead, strength);
            if (behind != ahead) {
                pull(behind, strength);
            }
        }
    }

    for (const Point& p : neurons) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
            throw InternalCorruptionError("neuron position became non-finite at step " +
                                          std::to_string(state.step));
        }
    }

    state.radius *= config.neighborhood_discount;
    state.learning_rate *= config.learning_rate_discount;
    ++state.step;
}

Route extract_route(const NeuronRing& ring, const Instance& instance) {
    std::vector<std::size_t> assigned(instance.size());
    for (std::size_t c = 0; c < instance.size(); ++c) {
        assigned[c] = winner_index(ring, instance.cities[c]);
    }
    Route route;
    route.order.resize(instance.size());
    std::iota(route.order.begin(), route.order.end(), std::size_t{0});
    std::stable_sort(route.order.begin(), route.order.end(),
                     [&](std::size_t a, std::size_t b) { return assigned[a] < assigned[b]; });
    return route;
}

SomRun run_som(const Instance& instance, const SolverConfig& config, const RunOptions& options) {
    SomRun run;
    run.state = initial_state(instance, config);
    const std::size_t anchor = select_anchor(instance, config.anchor_strategy, config.seed);
    Rng rng(derive_seed(config.seed, 1));

    std::vector<std::uint64_t> wanted = options.snapshot_steps;
    std::sort(wanted.begin(), wanted.end());
    wanted.erase(std::unique(wanted.begin(), wanted.end()), wanted.end());
    auto next_wanted = wanted.begin();
    auto capture = [&] {
        if (next_wanted != wanted.end() && *next_wanted == run.state.step) {
            run.snapshots.push_back({run.state.step, run.state.ring.positions});
            ++next_wanted;
        }
    };

    capture();
    while (run.state.step < config.iterations && run.state.radius >= config.radius_floor &&
           run.state.learning_rate >= config.learning_rate_floor) {
        train_iteration(run.state, instance, config, anchor, rng);
        capture();
    }
    if (next_wanted != wanted.end() &&
        (run.snapshots.empty() || run.snapshots.back().step != run.state.step)) {
        run.snapshots.push_back({run.state.step, run.state.ring.positions});
    }

    run.route = extract_route(run.state.ring, instance);
    return run;
}

} // namespace somtsp
