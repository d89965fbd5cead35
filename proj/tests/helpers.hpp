#pragma once

#include <memory>
#include <random>
#include <vector>

#include "ilap/field.hpp"

namespace ilap {
namespace testing {

struct Rng {
    std::mt19937_64 eng;

    explicit Rng(std::uint64_t seed) : eng(seed) {}

    std::int64_t pick(std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(eng);
    }
    double real(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(eng);
    }
    bool flip(double p = 0.5) { return real(0.0, 1.0) < p; }
};

// Random spanning tree plus a few extra edges; vertices 0..n-1.
inline std::vector<Edge> random_connected_edges(Rng& rng, std::int64_t n,
                                                double extra_per_vertex = 0.5) {
    std::vector<Edge> edges;
    for (std::int64_t v = 1; v < n; ++v) {
        edges.emplace_back(rng.pick(0, v - 1), v);
    }
    auto extras = static_cast<std::int64_t>(extra_per_vertex * n);
    for (std::int64_t k = 0; k < extras; ++k) {
        std::int64_t a = rng.pick(0, n - 1);
        std::int64_t b = rng.pick(0, n - 1);
        if (a != b) {
            edges.emplace_back(std::min(a, b), std::max(a, b));
        }
    }
    return edges;
}

inline std::vector<Edge> random_tree_edges(Rng& rng, std::int64_t n) {
    return random_connected_edges(rng, n, 0.0);
}

inline std::vector<Edge> path_edges(std::int64_t length) {
    std::vector<Edge> edges;
    for (std::int64_t k = 0; k < length; ++k) {
        edges.emplace_back(k, k + 1);
    }
    return edges;
}

// Path 0..length with boundary at both ends.
inline DirichletProblem path_problem(std::int64_t length, double g_left, double g_right,
                                     double f_const = 0.0) {
    auto graph = std::make_shared<Graph>(Graph::materialized(path_edges(length)));
    std::vector<Vertex> interior;
    for (std::int64_t k = 1; k < length; ++k) {
        interior.push_back(k);
    }
    ScalarField f = ScalarField::constant(interior, f_const);
    ScalarField g;
    g.set(0, g_left);
    g.set(length, g_right);
    return make_problem(graph, std::move(interior), std::move(f), std::move(g));
}

// Random problem on a random connected graph: a nonempty boundary sampled at
// random, bounded random boundary data and right-hand side.
inline DirichletProblem random_problem(Rng& rng, std::int64_t n, double f_lo, double f_hi) {
    auto graph = std::make_shared<Graph>(Graph::materialized(random_connected_edges(rng, n)));
    std::vector<Vertex> interior;
    std::int64_t boundary_count = rng.pick(1, std::max<std::int64_t>(1, n / 3));
    std::vector<bool> is_boundary(static_cast<std::size_t>(n), false);
    for (std::int64_t k = 0; k < boundary_count; ++k) {
        is_boundary[static_cast<std::size_t>(rng.pick(0, n - 1))] = true;
    }
    bool any = false;
    for (bool b : is_boundary) {
        any = any || b;
    }
    if (!any) {
        is_boundary[0] = true;
    }
    ScalarField f, g;
    for (std::int64_t v = 0; v < n; ++v) {
        if (is_boundary[static_cast<std::size_t>(v)]) {
            g.set(v, rng.real(-2.0, 2.0));
        } else {
            interior.push_back(v);
            f.set(v, rng.real(f_lo, f_hi));
        }
    }
    if (interior.empty()) {
        interior.push_back(0);
        f.set(0, rng.real(f_lo, f_hi));
        g = ScalarField{};
        for (std::int64_t v = 1; v < n; ++v) {
            g.set(v, rng.real(-2.0, 2.0));
        }
    }
    return make_problem(graph, std::move(interior), std::move(f), std::move(g));
}

}  // namespace testing
}  // namespace ilap
