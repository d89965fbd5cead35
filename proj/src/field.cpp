#include "ilap/field.hpp"

#include <algorithm>
#include <cmath>

#include "ilap/search.hpp"

namespace ilap {

ScalarField ScalarField::constant(std::span<const Vertex> domain, double value) {
    ScalarField f;
    for (Vertex v : domain) {
        f.set(v, value);
    }
    return f;
}

double ScalarField::at(Vertex v) const {
    auto it = values_.find(v);
    if (it == values_.end()) {
        throw InputError("field is undefined at vertex " + std::to_string(v));
    }
    return it->second;
}

std::optional<double> ScalarField::try_at(Vertex v) const {
    auto it = values_.find(v);
    if (it == values_.end()) {
        return std::nullopt;
    }
    return it->second;
}

double ScalarField::sup_norm() const {
    double m = 0.0;
    for (const auto& [v, x] : values_) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

double ScalarField::min_value() const {
    if (values_.empty()) {
        throw PreconditionError("min of an empty field");
    }
    double m = values_.begin()->second;
    for (const auto& [v, x] : values_) {
        m = std::min(m, x);
    }
    return m;
}

double ScalarField::max_value() const {
    if (values_.empty()) {
        throw PreconditionError("max of an empty field");
    }
    double m = values_.begin()->second;
    for (const auto& [v, x] : values_) {
        m = std::max(m, x);
    }
    return m;
}

std::vector<Vertex> ScalarField::domain_sorted() const {
    std::vector<Vertex> out;
    out.reserve(values_.size());
    for (const auto& [v, x] : values_) {
        out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool Partition::is_interior(Vertex v) const {
    return std::binary_search(interior.begin(), interior.end(), v);
}

bool Partition::is_boundary(Vertex v) const {
    return std::binary_search(boundary.begin(), boundary.end(), v);
}

Partition make_partition(const Graph& g, std::vector<Vertex> interior,
                         std::optional<int> width_bound) {
    std::sort(interior.begin(), interior.end());
    interior.erase(std::unique(interior.begin(), interior.end()), interior.end());
    for (Vertex v : interior) {
        g.checked_index(v);
    }

    Partition p;
    p.interior = std::move(interior);
    p.boundary.reserve(g.vertex_count() - p.interior.size());
    for (Vertex v : g.vertices()) {
        if (!std::binary_search(p.interior.begin(), p.interior.end(), v)) {
            p.boundary.push_back(v);
        }
    }
    p.width_bound = width_bound;

    // Every interior vertex must reach the boundary, or the failure must be
    // attributable to truncation.
    Sweep s = p.boundary.empty() ? Sweep{std::vector<int>(g.vertex_count(), -1), -1}
                                 : bfs(g, p.boundary);
    int max_dist = 0;
    bool exact = s.min_incomplete_dist < 0 && !g.has_incomplete();
    for (Vertex v : p.interior) {
        int d = s.dist[g.checked_index(v)];
        if (d < 0) {
            if (!g.has_incomplete()) {
                throw InputError("interior vertex " + std::to_string(v) +
                                 " cannot reach the boundary");
            }
            p.reachability_truncation_limited = true;
        } else {
            max_dist = std::max(max_dist, d);
        }
    }
    if (exact && !p.reachability_truncation_limited) {
        if (width_bound && *width_bound < max_dist) {
            throw InputError("declared width bound " + std::to_string(*width_bound) +
                             " is violated: measured width " + std::to_string(max_dist));
        }
        if (!width_bound) {
            p.width_bound = p.interior.empty() ? 0 : max_dist;
        }
    }
    return p;
}

DirichletProblem make_problem(std::shared_ptr<const Graph> graph, std::vector<Vertex> interior,
                              ScalarField f, ScalarField g,
                              std::optional<int> width_bound) {
    if (!graph) {
        throw InputError("null graph");
    }
    DirichletProblem p;
    p.partition = make_partition(*graph, std::move(interior), width_bound);
    for (Vertex v : p.partition.interior) {
        if (!f.defined_at(v)) {
            throw InputError("right-hand side undefined at interior vertex " + std::to_string(v));
        }
    }
    for (Vertex v : p.partition.boundary) {
        if (!g.defined_at(v)) {
            throw InputError("boundary data undefined at vertex " + std::to_string(v));
        }
    }
    p.graph = std::move(graph);
    p.f = std::move(f);
    p.g = std::move(g);
    return p;
}

}  // namespace ilap
