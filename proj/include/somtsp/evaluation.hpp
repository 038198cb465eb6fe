#pragma once

#include <cstddef>
#include <iosfwd>
#include <utility>
#include <vector>

#include "somtsp/instance.hpp"
#include "somtsp/som_solver.hpp"

namespace somtsp {

bool is_valid_route(const Route& route, std::size_t city_count);
/// Throws ValidationError unless `route` is a permutation of 0..city_count-1.
void validate_route(const Route& route, std::size_t city_count);

/// Closed tour length, including the edge back to the start.
double route_length(const Route& route, const Instance& instance);

/// Undirected edges stored as sorted (min, max) pairs.
class EdgeSet {
  public:
    using Edge = std::pair<std::size_t, std::size_t>;

    EdgeSet() = default;
    explicit EdgeSet(std::vector<Edge> edges);

    /// Self-loops are rejected with ValidationError; duplicates are ignored.
    void insert(std::size_t a, std::size_t b);
    bool contains(std::size_t a, std::size_t b) const;
    std::size_t size() const noexcept { return edges_.size(); }
    bool empty() const noexcept { return edges_.empty(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    std::size_t intersection_size(const EdgeSet& other) const;

    friend bool operator==(const EdgeSet&, const EdgeSet&) = default;

  private:
    std::vector<Edge> edges_;
};

/// n cyclic edges for n >= 3, one for n == 2, none for n == 1.
EdgeSet edges_of_route(const Route& route);

struct F1Report {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::size_t true_positive_edges = 0;
    std::size_t predicted_edges = 0;
    std::size_t reference_edges = 0;
};

F1Report f1_score(const EdgeSet& predicted, const EdgeSet& reference);

/// Dense n x n 0/1 symmetric matrix, zero diagonal, one CSV row per city.
void write_adjacency_csv(std::ostream& out, const EdgeSet& edges, std::size_t city_count);

} // namespace somtsp
