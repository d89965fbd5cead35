#include "ilap/search.hpp"

#include <algorithm>
#include <unordered_set>

namespace ilap {

Sweep bfs(const Graph& g, std::span<const Vertex> sources) {
    Sweep s;
    s.dist.assign(g.vertex_count(), -1);
    std::vector<std::size_t> frontier;
    frontier.reserve(sources.size());
    for (Vertex v : sources) {
        std::size_t i = g.checked_index(v);
        if (s.dist[i] == -1) {
            s.dist[i] = 0;
            frontier.push_back(i);
        }
    }
    auto note_incomplete = [&](std::size_t i, int d) {
        if (!g.complete_at(i) && (s.min_incomplete_dist < 0 || d < s.min_incomplete_dist)) {
            s.min_incomplete_dist = d;
        }
    };
    for (std::size_t i : frontier) {
        note_incomplete(i, 0);
    }
    int d = 0;
    std::vector<std::size_t> next;
    while (!frontier.empty()) {
        ++d;
        next.clear();
        for (std::size_t i : frontier) {
            for (std::uint32_t j : g.neighbor_indices_at(i)) {
                if (s.dist[j] == -1) {
                    s.dist[j] = d;
                    note_incomplete(j, d);
                    next.push_back(j);
                }
            }
        }
        frontier.swap(next);
    }
    return s;
}

DistanceResult distance(const Graph& g, std::span<const Vertex> from, Vertex to) {
    if (from.empty()) {
        throw InputError("distance: empty source set");
    }
    std::size_t target = g.checked_index(to);
    Sweep s = bfs(g, from);

    DistanceResult r;
    int found = s.dist[target];
    if (found >= 0) {
        r.hops = found;
    }
    if (s.min_incomplete_dist < 0) {
        r.lower_bound = found >= 0 ? found : 0;
        return r;  // fully inside complete territory: exact
    }
    // A shortcut through unexposed vertices costs at least
    // min_incomplete_dist + 2 edges (leave the exposed graph, come back).
    int shortcut_floor = s.min_incomplete_dist + 2;
    if (found >= 0) {
        if (found <= shortcut_floor) {
            r.lower_bound = found;  // no shorter route can exist
        } else {
            r.truncation_limited = true;
            r.lower_bound = shortcut_floor;
        }
    } else {
        r.truncation_limited = true;
        r.lower_bound = shortcut_floor;
    }
    return r;
}

std::vector<Vertex> boundary_of(const Graph& g, std::span<const Vertex> X) {
    std::unordered_set<Vertex> in_x;
    in_x.reserve(X.size() * 2);
    for (Vertex v : X) {
        g.checked_index(v);
        in_x.insert(v);
    }
    std::vector<Vertex> out;
    for (Vertex v : X) {
        for (Vertex w : g.neighbors(v)) {
            if (in_x.find(w) == in_x.end()) {
                out.push_back(w);
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

WidthResult width_of(const Graph& g, std::span<const Vertex> X) {
    if (X.empty()) {
        throw InputError("width_of: empty set");
    }
    std::vector<Vertex> bd = boundary_of(g, X);
    WidthResult r;
    if (bd.empty()) {
        r.value = std::nullopt;
        r.truncation_limited = g.has_incomplete();
        return r;
    }
    Sweep s = bfs(g, bd);
    int best = -1;
    bool all_reached = true;
    for (Vertex v : X) {
        int d = s.dist[g.checked_index(v)];
        if (d < 0) {
            all_reached = false;
            r.witness = v;
            break;
        }
        if (d > best) {
            best = d;
            r.witness = v;
        }
    }
    if (all_reached) {
        r.value = best;
    }
    // Unexposed edges could both shorten distances and enlarge the boundary,
    // so any contact with incomplete vertices taints the number.
    r.truncation_limited = s.min_incomplete_dist >= 0 || g.has_incomplete();
    return r;
}

BallResult ball(const Graph& g, Vertex x, int r) {
    if (r < 1) {
        throw InputError("ball: radius must be >= 1");
    }
    BallResult out;
    Vertex src[1] = {x};
    Sweep s = bfs(g, src);
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
        int d = s.dist[i];
        if (d >= 0 && d < r) {
            out.members.push_back(g.vertex_at(i));
            // An incomplete member strictly inside the ball may hide
            // unexposed vertices that also belong to it.
            if (!g.complete_at(i) && d + 1 < r) {
                out.truncation_limited = true;
            }
        }
    }
    std::sort(out.members.begin(), out.members.end());
    return out;
}

DiameterResult diameter(const Graph& g, std::span<const Vertex> X) {
    if (X.empty()) {
        throw InputError("diameter: empty set");
    }
    DiameterResult r;
    int best = 0;
    for (Vertex v : X) {
        Vertex src[1] = {v};
        Sweep s = bfs(g, src);
        if (s.min_incomplete_dist >= 0) {
            r.truncation_limited = true;
        }
        for (Vertex w : X) {
            int d = s.dist[g.checked_index(w)];
            if (d < 0) {
                r.value = std::nullopt;
                return r;
            }
            best = std::max(best, d);
        }
    }
    r.value = best;
    return r;
}

}  // namespace ilap
