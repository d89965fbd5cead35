#include "ilap/amle.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace ilap {

namespace {

constexpr int kUnset = -1;

// BFS from `source` whose interior steps use unvalued vertices only.
// dist[j] = hops from source to unvalued vertex j along such paths.
// touched[b] = length of the shortest source->...->b walk with b valued.
void bfs_through_unvalued(const Graph& g, std::size_t source, const std::vector<bool>& valued,
                          std::vector<int>& dist, std::vector<int>& touched) {
    std::fill(dist.begin(), dist.end(), kUnset);
    std::fill(touched.begin(), touched.end(), kUnset);
    std::deque<std::size_t> queue;
    for (std::uint32_t j : g.neighbor_indices_at(source)) {
        if (valued[j]) {
            // Direct edge to a valued vertex: nothing to interpolate.
            continue;
        }
        if (dist[j] == kUnset) {
            dist[j] = 1;
            queue.push_back(j);
        }
    }
    while (!queue.empty()) {
        std::size_t i = queue.front();
        queue.pop_front();
        for (std::uint32_t j : g.neighbor_indices_at(i)) {
            if (valued[j]) {
                if (touched[j] == kUnset) {
                    touched[j] = dist[i] + 1;
                }
            } else if (dist[j] == kUnset) {
                dist[j] = dist[i] + 1;
                queue.push_back(j);
            }
        }
    }
}

}  // namespace

ScalarField solve_exact_amle(const DirichletProblem& p) {
    const Graph& g = p.graph_ref();
    if (g.has_incomplete()) {
        throw PreconditionError("solve_exact_amle: graph must be fully materialized");
    }
    for (Vertex x : p.partition.interior) {
        if (p.f.at(x) != 0.0) {
            throw PreconditionError("solve_exact_amle: right-hand side must vanish (got " +
                                    std::to_string(p.f.at(x)) + " at vertex " +
                                    std::to_string(x) + ")");
        }
    }
    if (p.partition.boundary.empty()) {
        throw PreconditionError("solve_exact_amle: empty boundary");
    }

    const std::size_t n = g.vertex_count();
    std::vector<bool> valued(n, false);
    std::vector<double> value(n, 0.0);
    std::size_t unvalued_count = p.partition.interior.size();
    for (Vertex y : p.partition.boundary) {
        std::size_t i = g.checked_index(y);
        valued[i] = true;
        value[i] = p.g.at(y);
    }

    std::vector<int> dist_a(n), touched(n), dist_b(n), touched_b(n);

    while (unvalued_count > 0) {
        // Best candidate: maximal slope, then smallest (a, b) by vertex id.
        bool have = false;
        double best_slope = -std::numeric_limits<double>::infinity();
        std::size_t best_a = 0, best_b = 0;
        int best_len = 0;

        for (std::size_t a = 0; a < n; ++a) {
            if (!valued[a]) {
                continue;
            }
            bfs_through_unvalued(g, a, valued, dist_a, touched);
            for (std::size_t b = 0; b < n; ++b) {
                if (touched[b] == kUnset) {
                    continue;
                }
                double slope = (value[b] - value[a]) / touched[b];
                if (!have || slope > best_slope) {
                    have = true;
                    best_slope = slope;
                    best_a = a;
                    best_b = b;
                    best_len = touched[b];
                }
                // Equal slopes: the scan order (a asc, b asc) already visits
                // candidates in lexicographic order, so keep the first.
            }
        }

        if (!have || best_slope <= 0.0) {
            // Either no valued pair is connected through unvalued vertices, or
            // every connected pair carries the same value (slopes come in +/-
            // pairs, so the maximum is zero only then). The remaining regions
            // take the constant value of their anchors.
            for (std::size_t i = 0; i < n; ++i) {
                if (valued[i]) {
                    continue;
                }
                // Flood the component, collect its unique anchor.
                std::vector<std::size_t> component{i};
                std::vector<std::size_t> stack{i};
                std::vector<bool> seen(n, false);
                seen[i] = true;
                std::optional<std::size_t> anchor;
                while (!stack.empty()) {
                    std::size_t v = stack.back();
                    stack.pop_back();
                    for (std::uint32_t j : g.neighbor_indices_at(v)) {
                        if (valued[j]) {
                            anchor = anchor ? std::min(*anchor, static_cast<std::size_t>(j))
                                            : static_cast<std::size_t>(j);
                        } else if (!seen[j]) {
                            seen[j] = true;
                            component.push_back(j);
                            stack.push_back(j);
                        }
                    }
                }
                if (!anchor) {
                    throw PreconditionError(
                        "solve_exact_amle: unvalued component disconnected from the boundary");
                }
                for (std::size_t v : component) {
                    valued[v] = true;
                    value[v] = value[*anchor];
                    unvalued_count--;
                }
            }
            continue;
        }

        // Reconstruct the lexicographically smallest geodesic from best_a to
        // best_b: forward layers from a, backward layers from b, greedy
        // smallest-id step that keeps both consistent.
        bfs_through_unvalued(g, best_a, valued, dist_a, touched);
        bfs_through_unvalued(g, best_b, valued, dist_b, touched_b);
        std::size_t cur = best_a;
        for (int k = 1; k < best_len; ++k) {
            std::size_t next = n;
            for (std::uint32_t j : g.neighbor_indices_at(cur)) {
                if (valued[j] || dist_a[j] != k || dist_b[j] != best_len - k) {
                    continue;
                }
                if (next == n || g.vertex_at(j) < g.vertex_at(next)) {
                    next = j;
                }
            }
            if (next == n) {
                throw PreconditionError("solve_exact_amle: geodesic reconstruction failed");
            }
            valued[next] = true;
            value[next] = value[best_a] + best_slope * k;
            unvalued_count--;
            cur = next;
        }
    }

    ScalarField out;
    for (std::size_t i = 0; i < n; ++i) {
        out.set(g.vertex_at(i), value[i]);
    }
    return out;
}

}  // namespace ilap
