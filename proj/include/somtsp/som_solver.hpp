#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "somtsp/instance.hpp"
#include "somtsp/rng.hpp"

namespace somtsp {

/// Hyperparameters of one SOM run. Defaults are the tuned baseline.
struct SolverConfig {
    std::uint64_t iterations = 100'000;
    /// Per-iteration multiplier on the neighborhood radius.
    double neighborhood_discount = 0.9997;
    double learning_rate = 0.8;
    /// Per-iteration multiplier on the learning rate.
    double learning_rate_discount = 0.99997;
    /// Neurons per city.
    std::uint32_t population_multiplier = 6;
    std::uint64_t seed = 0;
    AnchorStrategy anchor_strategy = AnchorStrategy::Random;
    /// Training stops once the radius drops below this (neuron-index units).
    double radius_floor = 1.0;
    /// Training stops once the learning rate drops below this.
    double learning_rate_floor = 1e-3;

    /// Throws ValidationError on out-of-range fields.
    void validate() const;

    friend bool operator==(const SolverConfig&, const SolverConfig&) = default;
};

/// Cyclic neuron chain; ring order is index order.
struct NeuronRing {
    std::vector<Point> positions;

    std::size_t size() const noexcept { return positions.size(); }
};

struct TrainState {
    NeuronRing ring;
    double radius = 0.0;
    double learning_rate = 0.0;
    std::uint64_t step = 0;
};

/// Cyclic visiting order over city indices 0..n-1.
struct Route {
    std::vector<std::size_t> order;

    std::size_t size() const noexcept { return order.size(); }
    friend bool operator==(const Route&, const Route&) = default;
};

struct RingSnapshot {
    std::uint64_t step = 0;
    std::vector<Point> positions;
};

/// Starting radius for a ring of m neurons.
inline double initial_radius(std::size_t ring_size) { return static_cast<double>(ring_size) / 10.0; }

/// m = multiplier * n neurons evenly spaced on a circle of radius 0.1 * bounding-box
/// diagonal, centered on the configured anchor city.
NeuronRing init_ring(const Instance& instance, const SolverConfig& config);

/// Nearest neuron to `city`; ties go to the lowest index.
std::size_t winner_index(const NeuronRing& ring, Point city);

/// min(|a-b|, m-|a-b|)
std::size_t ring_distance(std::size_t ring_size, std::size_t a, std::size_t b);

/// Gaussian exp(-d^2 / (2 radius^2)) over circular index distance d.
double neighborhood_weight(std::size_t ring_size, std::size_t winner, std::size_t j, double radius);

/// Fresh state for a run: circle ring, radius m/10, learning rate from the config.
TrainState initial_state(const Instance& instance, const SolverConfig& config);

/// One winner-take-most update.
///
/// Samples `anchor` on step 0 and a uniform random city afterwards, pulls every
/// neuron toward it by lr * weight, then applies both discounts. Throws
/// InternalCorruptionError if any neuron leaves the finite plane.
void train_iteration(TrainState& state, const Instance& instance, const SolverConfig& config,
                     std::size_t anchor, Rng& rng);

/// Each city goes to its nearest neuron; cities are ordered by (neuron, city index).
Route extract_route(const NeuronRing& ring, const Instance& instance);

struct RunOptions {
    /// Steps at which to copy the ring. Step 0 is the initial ring. Steps past
    /// the last executed step are served by one snapshot of the final ring.
    std::vector<std::uint64_t> snapshot_steps;
};

struct SomRun {
    Route route;
    TrainState state;
    std::vector<RingSnapshot> snapshots;
};

/// Trains until `iterations` steps or a floor is crossed, then extracts the route.
SomRun run_som(const Instance& instance, const SolverConfig& config, const RunOptions& options = {});

} // namespace somtsp
