#include "somtsp/evaluation.hpp"

#include <algorithm>
#include <ostream>
#include <string>

#include "somtsp/errors.hpp"

namespace somtsp {

bool is_valid_route(const Route& route, std::size_t city_count) {
    if (route.size() != city_count) {
        return false;
    }
    std::vector<bool> seen(city_count, false);
    for (std::size_t city : route.order) {
        if (city >= city_count || seen[city]) {
            return false;
        }
        seen[city] = true;
    }
    return true;
}

void validate_route(const Route& route, std::size_t city_count) {
    if (!is_valid_route(route, city_count)) {
        throw ValidationError("route is not a permutation of 0.." +
                              std::to_string(city_count == 0 ? 0 : city_count - 1));
    }
}

double route_length(const Route& route, const Instance& instance) {
    validate_route(route, instance.size());
    const std::size_t n = route.size();
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        total += distance(instance.cities[route.order[i]], instance.cities[route.order[(i + 1) % n]]);
    }
    return total;
}

EdgeSet::EdgeSet(std::vector<Edge> edges) {
    for (const auto& [a, b] : edges) {
        insert(a, b);
    }
}

void EdgeSet::insert(std::size_t a, std::size_t b) {
    if (a == b) {
        throw ValidationError("self-loop edge {" + std::to_string(a) + "," + std::to_string(a) + "}");
    }
    const Edge edge{std::min(a, b), std::max(a, b)};
    const auto it = std::lower_bound(edges_.begin(), edges_.end(), edge);
    if (it == edges_.end() || *it != edge) {
        edges_.insert(it, edge);
    }
}

bool EdgeSet::contains(std::size_t a, std::size_t b) const {
    return std::binary_search(edges_.begin(), edges_.end(), Edge{std::min(a, b), std::max(a, b)});
}

std::size_t EdgeSet::intersection_size(const EdgeSet& other) const {
    std::size_t count = 0;
    auto a = edges_.begin();
    auto b = other.edges_.begin();
    while (a != edges_.end() && b != other.edges_.end()) {
        if (*a < *b) {
            ++a;
        } else if (*b < *a) {
            ++b;
        } else {
            ++count;
            ++a;
            ++b;
        }
    }
    return count;
}

EdgeSet edges_of_route(const Route& route) {
    validate_route(route, route.size());
    const std::size_t n = route.size();
    std::vector<EdgeSet::Edge> edges;
    if (n == 2) {
        edges.emplace_back(route.order[0], route.order[1]);
    } else if (n >= 3) {
        for (std::size_t i = 0; i < n; ++i) {
            edges.emplace_back(route.order[i], route.order[(i + 1) % n]);
        }
    }
    return EdgeSet(std::move(edges));
}

F1Report f1_score(const EdgeSet& predicted, const EdgeSet& reference) {
    F1Report report;
    report.true_positive_edges = predicted.intersection_size(reference);
    report.predicted_edges = predicted.size();
    report.reference_edges = reference.size();
    const auto tp = static_cast<double>(report.true_positive_edges);
    report.precision = predicted.empty() ? 0.0 : tp / static_cast<double>(predicted.size());
    report.recall = reference.empty() ? 0.0 : tp / static_cast<double>(reference.size());
    // 2pr/(p+r) rewritten as 2tp/(|P|+|R|): same value, and exactly tp/n for two n-edge tours.
    const std::size_t total = predicted.size() + reference.size();
    report.f1 = report.true_positive_edges > 0 ? 2.0 * tp / static_cast<double>(total) : 0.0;
    return report;
}

void write_adjacency_csv(std::ostream& out, const EdgeSet& edges, std::size_t city_count) {
    for (const auto& [a, b] : edges.edges()) {
        if (b >= city_count) {
            throw ValidationError("edge {" + std::to_string(a) + "," + std::to_string(b) +
                                  "} outside " + std::to_string(city_count) + " cities");
        }
    }
    for (std::size_t i = 0; i < city_count; ++i) {
        for (std::size_t j = 0; j < city_count; ++j) {
            if (j > 0) {
                out << ',';
            }
            out << (i != j && edges.contains(i, j) ? '1' : '0');
        }
        out << '\n';
    }
}

} // namespace somtsp
