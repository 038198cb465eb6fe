#pragma once

#include <cstddef>
#include <string_view>

#include "somtsp/instance.hpp"
#include "somtsp/som_solver.hpp"

namespace somtsp {

enum class OracleKind { BruteForce, HeldKarp, TwoOpt };

std::string_view to_string(OracleKind kind);
/// Accepts "brute_force", "held_karp", "two_opt".
OracleKind parse_oracle_kind(std::string_view text);

inline constexpr std::size_t kBruteForceMaxCities = 10;
inline constexpr std::size_t kHeldKarpMaxCities = 18;

struct ReferenceTour {
    Route route;
    double length = 0.0;
    OracleKind kind = OracleKind::TwoOpt;
};

/// Exhaustive search over the (n-1)!/2 distinct cycles. Ties go to the
/// lexicographically smallest route starting at city 0.
ReferenceTour brute_force_optimal(const Instance& instance);

/// Subset/endpoint dynamic program. Exact for n <= 18.
ReferenceTour held_karp(const Instance& instance);

/// Greedy nearest-neighbor tour from `start`; ties to the lowest index.
Route nearest_neighbor_route(const Instance& instance, std::size_t start = 0);

/// First-improvement 2-opt until no exchange gains more than 1e-12.
ReferenceTour two_opt_improve(const Instance& instance, Route start_route);

/// Held-Karp when it applies, otherwise 2-opt from the nearest-neighbor tour at city 0.
ReferenceTour reference_tour(const Instance& instance);

} // namespace somtsp
