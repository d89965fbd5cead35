#include "ilap/graph.hpp"

#include <algorithm>
#include <deque>

namespace ilap {

Graph Graph::materialized(std::span<const Edge> edges, std::span<const Vertex> isolated) {
    return build(edges, isolated, {}, std::nullopt);
}

Graph Graph::truncation(std::span<const Edge> edges, std::span<const Vertex> incomplete,
                        std::optional<OracleInfo> info, std::span<const Vertex> isolated) {
    return build(edges, isolated, incomplete, info);
}

Graph Graph::build(std::span<const Edge> edges, std::span<const Vertex> isolated,
                   std::span<const Vertex> incomplete, std::optional<OracleInfo> info) {
    Graph g;

    std::vector<Vertex> ids;
    ids.reserve(edges.size() * 2 + isolated.size());
    for (const auto& [a, b] : edges) {
        if (a == b) {
            throw InputError("self-loop at vertex " + std::to_string(a));
        }
        ids.push_back(a);
        ids.push_back(b);
    }
    ids.insert(ids.end(), isolated.begin(), isolated.end());
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

    g.vertices_ = std::move(ids);
    g.index_.reserve(g.vertices_.size() * 2);
    for (std::size_t i = 0; i < g.vertices_.size(); ++i) {
        g.index_.emplace(g.vertices_[i], i);
    }

    const std::size_t n = g.vertices_.size();
    std::vector<std::size_t> deg(n, 0);
    for (const auto& [a, b] : edges) {
        deg[g.index_.at(a)]++;
        deg[g.index_.at(b)]++;
    }
    g.offsets_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        g.offsets_[i + 1] = g.offsets_[i] + deg[i];
    }
    g.adjacency_.resize(g.offsets_[n]);
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& [a, b] : edges) {
        g.adjacency_[cursor[g.index_.at(a)]++] = b;
        g.adjacency_[cursor[g.index_.at(b)]++] = a;
    }
    // Sort and strip duplicate edges per vertex.
    std::size_t write = 0;
    std::vector<std::size_t> new_offsets(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        auto first = g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i]);
        auto last = g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i + 1]);
        std::sort(first, last);
        auto uniq_last = std::unique(first, last);
        for (auto it = first; it != uniq_last; ++it) {
            g.adjacency_[write++] = *it;
        }
        new_offsets[i + 1] = write;
    }
    g.adjacency_.resize(write);
    g.offsets_ = std::move(new_offsets);
    g.adjacency_idx_.resize(g.adjacency_.size());
    for (std::size_t k = 0; k < g.adjacency_.size(); ++k) {
        g.adjacency_idx_[k] = static_cast<std::uint32_t>(g.index_.at(g.adjacency_[k]));
    }

    g.complete_.assign(n, true);
    for (Vertex v : incomplete) {
        auto it = g.index_.find(v);
        if (it == g.index_.end()) {
            throw InputError("incomplete vertex " + std::to_string(v) + " is not in the graph");
        }
        if (g.complete_[it->second]) {
            g.complete_[it->second] = false;
            g.incomplete_count_++;
        }
    }
    g.oracle_info_ = info;
    return g;
}

Graph Graph::from_oracle(Vertex root, int radius,
                         const std::function<std::vector<Vertex>(Vertex)>& neighbor_fn) {
    if (radius < 1) {
        throw InputError("oracle truncation radius must be >= 1");
    }
    std::unordered_map<Vertex, int> dist;
    dist.emplace(root, 0);
    std::deque<Vertex> queue{root};
    std::vector<Edge> edges;
    std::unordered_map<Vertex, std::vector<Vertex>> enumerated;
    while (!queue.empty()) {
        Vertex v = queue.front();
        queue.pop_front();
        int d = dist.at(v);
        if (d >= radius) {
            continue;  // exposed but its neighborhood is not expanded
        }
        auto nbrs = neighbor_fn(v);
        for (Vertex w : nbrs) {
            if (w == v) {
                throw InputError("oracle returned a self-loop at vertex " + std::to_string(v));
            }
            if (dist.emplace(w, d + 1).second) {
                queue.push_back(w);
            }
            edges.emplace_back(std::min(v, w), std::max(v, w));
        }
        enumerated.emplace(v, std::move(nbrs));
    }
    // Vertices at the truncation radius are exposed but never expanded, so an
    // edge between two frontier vertices may be missing; both endpoints are
    // flagged incomplete below, which is what keeps downstream sound.
    std::vector<Vertex> incomplete;
    std::vector<Vertex> exposed;
    exposed.reserve(dist.size());
    for (const auto& [v, d] : dist) {
        exposed.push_back(v);
        auto it = enumerated.find(v);
        if (it == enumerated.end()) {
            incomplete.push_back(v);  // never expanded
            continue;
        }
        for (Vertex w : it->second) {
            if (dist.find(w) == dist.end()) {
                incomplete.push_back(v);
                break;
            }
        }
    }
    return build(edges, exposed, incomplete, OracleInfo{root, radius});
}

std::span<const Vertex> Graph::neighbors_at(std::size_t idx) const {
    return {adjacency_.data() + offsets_[idx], offsets_[idx + 1] - offsets_[idx]};
}

std::span<const std::uint32_t> Graph::neighbor_indices_at(std::size_t idx) const {
    return {adjacency_idx_.data() + offsets_[idx], offsets_[idx + 1] - offsets_[idx]};
}

std::vector<Vertex> Graph::incomplete_vertices() const {
    std::vector<Vertex> out;
    out.reserve(incomplete_count_);
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (!complete_[i]) {
            out.push_back(vertices_[i]);
        }
    }
    return out;
}

bool Graph::adjacent(Vertex a, Vertex b) const {
    auto nb = neighbors(a);
    return std::binary_search(nb.begin(), nb.end(), b);
}

std::size_t Graph::checked_index(Vertex v) const {
    auto it = index_.find(v);
    if (it == index_.end()) {
        throw InputError("unknown vertex id " + std::to_string(v));
    }
    return it->second;
}

std::optional<std::size_t> Graph::try_index(Vertex v) const {
    auto it = index_.find(v);
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

}  // namespace ilap
