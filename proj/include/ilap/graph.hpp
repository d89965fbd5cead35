#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ilap/errors.hpp"

namespace ilap {

using Vertex = std::int64_t;
using Edge = std::pair<Vertex, Vertex>;

// Truncation metadata for graphs materialized from a neighbor oracle.
struct OracleInfo {
    Vertex root = 0;
    int radius = 0;
};

// Undirected simple graph, immutable after construction.
//
// A graph is either fully materialized (every vertex knows all of its true
// neighbors) or a truncation of a larger, possibly infinite graph. In a
// truncation each exposed vertex carries a completeness flag: complete means
// the stored neighbor list is the full true neighborhood, incomplete means
// the true graph may attach further, unexposed neighbors to it. Operators
// that would give a different answer if incomplete vertices gained neighbors
// must flag or refuse instead of returning a plain number.
class Graph {
  public:
    // Fully materialized graph. Rejects self-loops; duplicate edges collapse.
    static Graph materialized(std::span<const Edge> edges,
                              std::span<const Vertex> isolated = {});

    // Truncated graph with an explicit incomplete-vertex list. The edge list
    // describes the exposed part only.
    static Graph truncation(std::span<const Edge> edges,
                            std::span<const Vertex> incomplete,
                            std::optional<OracleInfo> info = std::nullopt,
                            std::span<const Vertex> isolated = {});

    // Expand a neighbor oracle breadth-first to the given radius around root.
    // The oracle must enumerate the full true neighborhood of any vertex it
    // is asked about (locally finite case). A vertex is complete iff all of
    // its true neighbors fell inside the exposed radius.
    static Graph from_oracle(Vertex root, int radius,
                             const std::function<std::vector<Vertex>(Vertex)>& neighbor_fn);

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return adjacency_.size() / 2; }

    // Sorted ascending.
    const std::vector<Vertex>& vertices() const { return vertices_; }

    bool contains(Vertex v) const { return index_.find(v) != index_.end(); }

    // Sorted neighbor list of an exposed vertex.
    std::span<const Vertex> neighbors(Vertex v) const { return neighbors_at(checked_index(v)); }
    std::span<const Vertex> neighbors_at(std::size_t idx) const;

    // Same adjacency as graph indices, for traversal hot paths.
    std::span<const std::uint32_t> neighbor_indices_at(std::size_t idx) const;

    std::size_t degree(Vertex v) const { return neighbors(v).size(); }

    bool complete(Vertex v) const { return complete_[checked_index(v)]; }
    bool complete_at(std::size_t idx) const { return complete_[idx]; }

    bool has_incomplete() const { return incomplete_count_ > 0; }
    std::size_t incomplete_count() const { return incomplete_count_; }
    std::vector<Vertex> incomplete_vertices() const;

    bool adjacent(Vertex a, Vertex b) const;

    const std::optional<OracleInfo>& oracle_info() const { return oracle_info_; }

    std::size_t checked_index(Vertex v) const;
    std::optional<std::size_t> try_index(Vertex v) const;
    Vertex vertex_at(std::size_t idx) const { return vertices_[idx]; }

  private:
    Graph() = default;

    static Graph build(std::span<const Edge> edges, std::span<const Vertex> isolated,
                       std::span<const Vertex> incomplete, std::optional<OracleInfo> info);

    std::vector<Vertex> vertices_;                     // sorted ids
    std::unordered_map<Vertex, std::size_t> index_;
    std::vector<std::size_t> offsets_;                 // CSR offsets, size n+1
    std::vector<Vertex> adjacency_;                    // CSR neighbor ids, sorted per vertex
    std::vector<std::uint32_t> adjacency_idx_;         // same entries as graph indices
    std::vector<bool> complete_;
    std::size_t incomplete_count_ = 0;
    std::optional<OracleInfo> oracle_info_;
};

}  // namespace ilap
