#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace somtsp {

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

inline double squared_distance(Point a, Point b) noexcept {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

inline double distance(Point a, Point b) noexcept { return std::sqrt(squared_distance(a, b)); }

/// A Euclidean TSP instance. City indices are positions in `cities`.
struct Instance {
    std::string id;
    std::vector<Point> cities;

    std::size_t size() const noexcept { return cities.size(); }
};

/// Throws ValidationError unless the instance has at least one city and all coordinates are finite.
void validate_instance(const Instance& instance);

enum class AnchorStrategy { Random, Centermost, FurthestFromCentroid };

inline constexpr AnchorStrategy kAllAnchorStrategies[] = {
    AnchorStrategy::Random, AnchorStrategy::Centermost, AnchorStrategy::FurthestFromCentroid};

std::string_view to_string(AnchorStrategy strategy);
/// Accepts "random", "centermost", "furthest" (and "furthest_from_centroid").
AnchorStrategy parse_anchor_strategy(std::string_view text);

/// n cities i.i.d. uniform over [0, bounds]^2. Bit-identical for equal arguments.
Instance generate_instance(std::size_t n, std::uint64_t seed, double bounds = 1.0);

Point centroid(const Instance& instance);

/// Index of the anchor city. Distance ties resolve to the lowest index.
std::size_t select_anchor(const Instance& instance, AnchorStrategy strategy, std::uint64_t seed);

enum class InstanceFormat { TsplibEuc2d, Csv };

Instance read_instance(std::istream& in, InstanceFormat format, std::string id = {});
void write_instance(std::ostream& out, const Instance& instance, InstanceFormat format);

/// Format from extension: ".tsp" is TSPLIB, anything else CSV. The id is the file stem.
InstanceFormat format_for_path(const std::filesystem::path& path);
Instance load_instance(const std::filesystem::path& path);

} // namespace somtsp
