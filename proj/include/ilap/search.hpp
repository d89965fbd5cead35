#pragma once

#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "ilap/graph.hpp"

namespace ilap {

// Multi-source breadth-first sweep over the exposed graph.
// dist is indexed by graph index; -1 means unreachable in the exposed graph.
struct Sweep {
    std::vector<int> dist;
    // Smallest distance at which the sweep settled an incomplete vertex, or
    // -1 when it never touched one. Any path through unexposed territory must
    // leave the exposed graph at an incomplete vertex, so unexposed shortcuts
    // to a target found at distance d are impossible when
    // min_incomplete_dist + 2 >= d.
    int min_incomplete_dist = -1;
};

Sweep bfs(const Graph& g, std::span<const Vertex> sources);

// Combinatorial distance from a vertex set to a vertex.
struct DistanceResult {
    // Shortest-path edge count within the exposed graph; nullopt = unreachable there.
    std::optional<int> hops;
    // True when unexposed vertices could change the answer.
    bool truncation_limited = false;
    // Sound lower bound on the true distance (equals *hops when exact).
    int lower_bound = 0;

    bool exact() const { return hops.has_value() && !truncation_limited; }
};

DistanceResult distance(const Graph& g, std::span<const Vertex> from, Vertex to);

// {y not in X : y ~ x for some x in X}, over the exposed graph.
std::vector<Vertex> boundary_of(const Graph& g, std::span<const Vertex> X);

struct WidthResult {
    // Width of the exposed set: sup over x in X of d(boundary_of(X), x).
    // nullopt = some x in X cannot reach the boundary in the exposed graph.
    std::optional<int> value;
    // Set when incomplete vertices took part in the sweep; then value (if
    // any) describes the exposed truncation only, not the true graph.
    bool truncation_limited = false;
    std::optional<Vertex> witness;  // a vertex realizing the sup
};

WidthResult width_of(const Graph& g, std::span<const Vertex> X);

struct BallResult {
    std::vector<Vertex> members;  // {y : d(x, y) < r} within the exposed graph, sorted
    // True when unexposed vertices may also belong to the ball.
    bool truncation_limited = false;
};

BallResult ball(const Graph& g, Vertex x, int r);

// sup over pairs in X of d(x, y); nullopt value = some pair disconnected.
struct DiameterResult {
    std::optional<int> value;
    bool truncation_limited = false;
};

DiameterResult diameter(const Graph& g, std::span<const Vertex> X);

}  // namespace ilap
