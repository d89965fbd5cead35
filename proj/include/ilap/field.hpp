#pragma once

#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "ilap/graph.hpp"

namespace ilap {

// Real-valued function on a vertex set. The domain is exactly the key set.
class ScalarField {
  public:
    ScalarField() = default;

    static ScalarField constant(std::span<const Vertex> domain, double value);

    double at(Vertex v) const;
    std::optional<double> try_at(Vertex v) const;
    bool defined_at(Vertex v) const { return values_.find(v) != values_.end(); }
    void set(Vertex v, double value) { values_[v] = value; }

    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }
    const std::unordered_map<Vertex, double>& values() const { return values_; }

    double sup_norm() const;
    double min_value() const;  // PreconditionError on empty field
    double max_value() const;

    // Sorted domain, for deterministic iteration.
    std::vector<Vertex> domain_sorted() const;

    // Generators of truncated fields may certify bounds that hold on the full
    // (partly unexposed) object; checks that need a global inf/sup consult
    // these instead of refusing.
    std::optional<double> known_lower_bound;
    std::optional<double> known_upper_bound;

  private:
    std::unordered_map<Vertex, double> values_;
};

// Interior/boundary split of a graph's vertex set: Y is everything exposed
// that is not interior.
struct Partition {
    std::vector<Vertex> interior;  // sorted
    std::vector<Vertex> boundary;  // sorted
    // sup over interior x of d(Y, x) when it could be determined exactly.
    std::optional<int> width_bound;
    // Interior vertices unreachable from Y in the exposed graph, all of which
    // were excused by truncation (otherwise construction throws).
    bool reachability_truncation_limited = false;

    bool is_interior(Vertex v) const;
    bool is_boundary(Vertex v) const;
};

// width_bound: optional caller-supplied witness; verified when the sweep is
// exact, trusted (and kept) when truncation prevents verification.
Partition make_partition(const Graph& g, std::vector<Vertex> interior,
                         std::optional<int> width_bound = std::nullopt);

struct DirichletProblem {
    std::shared_ptr<const Graph> graph;
    Partition partition;
    ScalarField f;  // on the interior
    ScalarField g;  // on the boundary

    const Graph& graph_ref() const { return *graph; }
    double f_sup_norm() const { return f.empty() ? 0.0 : f.sup_norm(); }
    double g_sup_norm() const { return g.empty() ? 0.0 : g.sup_norm(); }
};

// Validates that f covers the interior and g covers the boundary.
DirichletProblem make_problem(std::shared_ptr<const Graph> graph, std::vector<Vertex> interior,
                              ScalarField f, ScalarField g,
                              std::optional<int> width_bound = std::nullopt);

}  // namespace ilap
