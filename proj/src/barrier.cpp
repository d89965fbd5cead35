#include "ilap/barrier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ilap/search.hpp"

namespace ilap {

double quad_lower(const BarrierSpec& s, int r) {
    return s.a - s.b * r + s.c * (static_cast<double>(r) * (r - 1)) / 2.0;
}

double quad_upper(const BarrierSpec& s, int r) {
    return s.a + s.b * r - s.c * (static_cast<double>(r) * (r - 1)) / 2.0;
}

double quad(const BarrierSpec& s, int r, Side side) {
    return side == Side::Upper ? quad_upper(s, r) : quad_lower(s, r);
}

ScalarField radial_quadratic(const Graph& g, std::span<const Vertex> anchors,
                             const BarrierSpec& s, Side side) {
    Sweep sweep = bfs(g, anchors);
    ScalarField out;
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
        int d = sweep.dist[i];
        if (d < 0) {
            throw PreconditionError("radial_quadratic: vertex " +
                                    std::to_string(g.vertex_at(i)) +
                                    " is unreachable from the anchor set");
        }
        if (sweep.min_incomplete_dist >= 0 && d > sweep.min_incomplete_dist + 2) {
            throw TruncationError("radial_quadratic: distance to vertex " +
                                  std::to_string(g.vertex_at(i)) +
                                  " may be shortened by unexposed edges");
        }
        out.set(g.vertex_at(i), quad(s, d, side));
    }
    return out;
}

AugmentedGraph augment_with_boundary_paths(const Graph& g, const Partition& part, Vertex y0,
                                           int radius) {
    if (radius < 1) {
        throw InputError("augment_with_boundary_paths: R must be >= 1");
    }
    if (!part.is_boundary(y0)) {
        throw InputError("augment_with_boundary_paths: anchor " + std::to_string(y0) +
                         " is not a boundary vertex");
    }
    AugmentedGraph out;
    std::vector<Edge> edges;
    edges.reserve(g.edge_count() + part.boundary.size() * static_cast<std::size_t>(radius));
    for (Vertex v : g.vertices()) {
        for (Vertex w : g.neighbors(v)) {
            if (v < w) {
                edges.emplace_back(v, w);
            }
        }
    }
    Vertex fresh = g.vertices().empty() ? 0 : g.vertices().back() + 1;
    for (Vertex y : part.boundary) {
        if (y == y0) {
            continue;
        }
        Vertex prev = y0;
        for (int k = 1; k < radius; ++k) {
            Vertex nv = fresh++;
            out.added.push_back(nv);
            edges.emplace_back(std::min(prev, nv), std::max(prev, nv));
            prev = nv;
        }
        edges.emplace_back(std::min(prev, y), std::max(prev, y));
    }
    out.graph = std::make_shared<Graph>(
        Graph::truncation(edges, g.incomplete_vertices(), g.oracle_info(), g.vertices()));
    return out;
}

BarrierResult barrier_field(const Graph& g, const Partition& part, const ScalarField& gdata,
                            Vertex y0, double c, int radius, Side side) {
    if (!part.width_bound.has_value()) {
        throw PreconditionError("barrier_field: the partition has no finite width bound");
    }
    if (c < 0) {
        throw InputError("barrier_field: c must be >= 0");
    }
    if (radius < 1) {
        throw InputError("barrier_field: R must be >= 1");
    }
    const int width = *part.width_bound;

    // a = extremum of g over the boundary vertices within distance R of y0.
    double a;
    if (radius == 1) {
        a = gdata.at(y0);
    } else {
        Vertex src[1] = {y0};
        Sweep s = bfs(g, src);
        if (s.min_incomplete_dist >= 0 && s.min_incomplete_dist + 2 < radius) {
            throw TruncationError("barrier_field: the R-neighborhood of the anchor is not "
                                  "fully exposed");
        }
        bool found = false;
        a = 0.0;
        for (Vertex y : part.boundary) {
            int d = s.dist[g.checked_index(y)];
            if (d >= 0 && d < radius) {
                double val = gdata.at(y);
                if (!found) {
                    a = val;
                    found = true;
                } else {
                    a = side == Side::Upper ? std::max(a, val) : std::min(a, val);
                }
            }
        }
        if (!found) {
            throw PreconditionError("barrier_field: no boundary vertex within R of the anchor");
        }
    }

    BarrierResult out;
    out.anchor = y0;
    out.spec.a = a;
    out.spec.c = c;
    out.spec.radius = radius;
    out.spec.b = 2.0 * gdata.sup_norm() / radius + c * (width + radius);
    out.augmented = augment_with_boundary_paths(g, part, y0, radius);
    Vertex src[1] = {y0};
    out.field = radial_quadratic(*out.augmented.graph, src, out.spec, side);
    return out;
}

namespace {

// d_{G'}(y0, .) for the R=1 augmentation, without materializing G': the extra
// edges make y0 adjacent to every boundary vertex.
std::vector<int> augmented_distance_r1(const Graph& g, const std::vector<std::size_t>& boundary_idx,
                                       std::size_t y0_idx,
                                       const std::vector<bool>& is_boundary_idx) {
    std::vector<int> dist(g.vertex_count(), -1);
    std::vector<std::size_t> frontier{y0_idx};
    dist[y0_idx] = 0;
    int d = 0;
    std::vector<std::size_t> next;
    while (!frontier.empty()) {
        ++d;
        next.clear();
        auto push = [&](std::size_t j) {
            if (dist[j] == -1) {
                dist[j] = d;
                next.push_back(j);
            }
        };
        for (std::size_t i : frontier) {
            for (std::uint32_t j : g.neighbor_indices_at(i)) {
                push(j);
            }
            if (i == y0_idx) {
                for (std::size_t j : boundary_idx) {
                    push(j);
                }
            } else if (is_boundary_idx[i]) {
                push(y0_idx);
            }
        }
        frontier.swap(next);
    }
    return dist;
}

}  // namespace

ScalarField barrier_envelope(const DirichletProblem& p, double c, Side side) {
    const Graph& g = p.graph_ref();
    const Partition& part = p.partition;
    if (!part.width_bound.has_value()) {
        throw PreconditionError("barrier_envelope: the partition has no finite width bound");
    }
    if (part.boundary.empty()) {
        throw PreconditionError("barrier_envelope: empty boundary");
    }
    if (g.has_incomplete()) {
        throw TruncationError("barrier_envelope: graph has incomplete vertices");
    }
    const int width = *part.width_bound;
    const double b = 2.0 * p.g.sup_norm() + c * (width + 1);

    std::vector<bool> is_boundary_idx(g.vertex_count(), false);
    std::vector<std::size_t> boundary_idx;
    boundary_idx.reserve(part.boundary.size());
    for (Vertex y : part.boundary) {
        std::size_t i = g.checked_index(y);
        is_boundary_idx[i] = true;
        boundary_idx.push_back(i);
    }

    std::vector<double> env(g.vertex_count(),
                            std::numeric_limits<double>::quiet_NaN());
    for (Vertex y0 : part.boundary) {
        std::size_t y0_idx = g.checked_index(y0);
        std::vector<int> dist = augmented_distance_r1(g, boundary_idx, y0_idx, is_boundary_idx);
        BarrierSpec spec{p.g.at(y0), b, c, 1};
        for (std::size_t i = 0; i < g.vertex_count(); ++i) {
            if (dist[i] < 0) {
                continue;  // unreachable even through the boundary hub
            }
            double val = quad(spec, dist[i], side);
            if (std::isnan(env[i])) {
                env[i] = val;
            } else {
                env[i] = side == Side::Upper ? std::min(env[i], val) : std::max(env[i], val);
            }
        }
    }
    ScalarField out;
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
        if (std::isnan(env[i])) {
            throw PreconditionError("barrier_envelope: vertex " +
                                    std::to_string(g.vertex_at(i)) +
                                    " is unreachable from the boundary");
        }
        out.set(g.vertex_at(i), env[i]);
    }
    return out;
}

}  // namespace ilap
