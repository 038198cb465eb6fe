#include "somtsp/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>

#include "somtsp/errors.hpp"
#include "somtsp/evaluation.hpp"

namespace somtsp {

std::string_view to_string(OracleKind kind) {
    switch (kind) {
    case OracleKind::BruteForce:
        return "brute_force";
    case OracleKind::HeldKarp:
        return "held_karp";
    case OracleKind::TwoOpt:
        return "two_opt";
    }
    return "unknown";
}

OracleKind parse_oracle_kind(std::string_view text) {
    if (text == "brute_force") {
        return OracleKind::BruteForce;
    }
    if (text == "held_karp") {
        return OracleKind::HeldKarp;
    }
    if (text == "two_opt") {
        return OracleKind::TwoOpt;
    }
    throw ValidationError("unknown oracle kind '" + std::string(text) + "'");
}

namespace {

std::vector<double> distance_matrix(const Instance& instance) {
    const std::size_t n = instance.size();
    std::vector<double> d(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            d[i * n + j] = distance(instance.cities[i], instance.cities[j]);
        }
    }
    return d;
}

Route identity_route(std::size_t n) {
    Route route;
    route.order.resize(n);
    std::iota(route.order.begin(), route.order.end(), std::size_t{0});
    return route;
}

} // namespace

ReferenceTour brute_force_optimal(const Instance& instance) {
    validate_instance(instance);
    const std::size_t n = instance.size();
    if (n > kBruteForceMaxCities) {
        throw SizeLimitError("brute force supports at most " + std::to_string(kBruteForceMaxCities) +
                             " cities, got " + std::to_string(n));
    }
    if (n <= 3) {
        Route route = identity_route(n);
        return {route, route_length(route, instance), OracleKind::BruteForce};
    }

    const auto d = distance_matrix(instance);
    std::vector<std::size_t> rest(n - 1);
    std::iota(rest.begin(), rest.end(), std::size_t{1});
    std::vector<std::size_t> best_rest;
    double best = std::numeric_limits<double>::infinity();
    do {
        // Each cycle appears twice (once per direction); keep the orientation
        // whose second city is smaller, which is also the lexicographically smaller one.
        if (rest.front() > rest.back()) {
            continue;
        }
        double length = d[rest.front()] + d[rest.back() * n];
        for (std::size_t i = 0; i + 1 < rest.size(); ++i) {
            length += d[rest[i] * n + rest[i + 1]];
        }
        if (length < best) {
            best = length;
            best_rest = rest;
        }
    } while (std::next_permutation(rest.begin(), rest.end()));

    Route route;
    route.order.push_back(0);
    route.order.insert(route.order.end(), best_rest.begin(), best_rest.end());
    return {route, route_length(route, instance), OracleKind::BruteForce};
}

ReferenceTour held_karp(const Instance& instance) {
    validate_instance(instance);
    const std::size_t n = instance.size();
    if (n > kHeldKarpMaxCities) {
        throw SizeLimitError("Held-Karp supports at most " + std::to_string(kHeldKarpMaxCities) +
                             " cities, got " + std::to_string(n));
    }
    if (n <= 3) {
        Route route = identity_route(n);
        return {route, route_length(route, instance), OracleKind::HeldKarp};
    }

    // City 0 is the fixed start; bit k of a mask stands for city k + 1.
    const auto d = distance_matrix(instance);
    const std::size_t k = n - 1;
    const std::size_t full = (std::size_t{1} << k) - 1;
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> cost((full + 1) * k, kInf);
    std::vector<std::uint8_t> parent((full + 1) * k, 0);

    for (std::size_t j = 0; j < k; ++j) {
        cost[(std::size_t{1} << j) * k + j] = d[j + 1];
    }
    for (std::size_t mask = 1; mask <= full; ++mask) {
        for (std::size_t j = 0; j < k; ++j) {
            if (!(mask & (std::size_t{1} << j))) {
                continue;
            }
            const double here = cost[mask * k + j];
            if (here == kInf) {
                continue;
            }
            for (std::size_t next = 0; next < k; ++next) {
                if (mask & (std::size_t{1} << next)) {
                    continue;
                }
                const std::size_t to = mask | (std::size_t{1} << next);
                const double candidate = here + d[(j + 1) * n + next + 1];
                if (candidate < cost[to * k + next]) {
                    cost[to * k + next] = candidate;
                    parent[to * k + next] = static_cast<std::uint8_t>(j);
                }
            }
        }
    }

    std::size_t last = 0;
    double best = kInf;
    for (std::size_t j = 0; j < k; ++j) {
        const double candidate = cost[full * k + j] + d[(j + 1) * n];
        if (candidate < best) {
            best = candidate;
            last = j;
        }
    }

    std::vector<std::size_t> reversed;
    std::size_t mask = full;
    std::size_t current = last;
    while (true) {
        reversed.push_back(current + 1);
        const std::size_t prev_mask = mask & ~(std::size_t{1} << current);
        if (prev_mask == 0) {
            break;
        }
        current = parent[mask * k + current];
        mask = prev_mask;
    }
    Route route;
    route.order.push_back(0);
    route.order.insert(route.order.end(), reversed.rbegin(), reversed.rend());
    return {route, route_length(route, instance), OracleKind::HeldKarp};
}

Route nearest_neighbor_route(const Instance& instance, std::size_t start) {
    validate_instance(instance);
    const std::size_t n = instance.size();
    if (start >= n) {
        throw ValidationError("start city out of range");
    }
    std::vector<bool> visited(n, false);
    Route route;
    route.order.reserve(n);
    std::size_t current = start;
    visited[current] = true;
    route.order.push_back(current);
    for (std::size_t step = 1; step < n; ++step) {
        std::size_t best = n;
        double best_d2 = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < n; ++c) {
            if (visited[c]) {
                continue;
            }
            const double d2 = squared_distance(instance.cities[current], instance.cities[c]);
            if (d2 < best_d2) {
                best_d2 = d2;
                best = c;
            }
        }
        visited[best] = true;
        route.order.push_back(best);
        current = best;
    }
    return route;
}

ReferenceTour two_opt_improve(const Instance& instance, Route start_route) {
    validate_instance(instance);
    validate_route(start_route, instance.size());
    constexpr double kMinGain = 1e-12;

    auto& tour = start_route.order;
    const std::size_t n = tour.size();
    const auto& pts = instance.cities;
    bool improved = n >= 4;
    while (improved) {
        improved = false;
        for (std::size_t i = 0; i + 2 < n && !improved; ++i) {
            // Edges (i, i+1) and (j, j+1); skip the pair that shares city tour[0].
            const std::size_t j_end = i == 0 ? n - 1 : n;
            for (std::size_t j = i + 2; j < j_end; ++j) {
                const Point a = pts[tour[i]];
                const Point b = pts[tour[i + 1]];
                const Point c = pts[tour[j]];
                const Point e = pts[tour[(j + 1) % n]];
                const double delta = distance(a, c) + distance(b, e) - distance(a, b) - distance(c, e);
                if (delta < -kMinGain) {
                    std::reverse(tour.begin() + static_cast<std::ptrdiff_t>(i + 1),
                                 tour.begin() + static_cast<std::ptrdiff_t>(j + 1));
                    improved = true;
                    break;
                }
            }
        }
    }
    const double length = route_length(start_route, instance);
    return {std::move(start_route), length, OracleKind::TwoOpt};
}

ReferenceTour reference_tour(const Instance& instance) {
    if (instance.size() <= kHeldKarpMaxCities) {
        return held_karp(instance);
    }
    return two_opt_improve(instance, nearest_neighbor_route(instance, 0));
}

} // namespace somtsp
