#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dgcurv {

using VertexId = std::size_t;
using Edge = std::pair<VertexId, VertexId>;

/// Finite simple directed graph on dense vertex ids 0..n-1.
///
/// Self-loops and duplicate edges are rejected at construction; laziness of
/// the random walk is modelled by α, never by loop edges. Neighbor lists are
/// sorted ascending. Immutable after construction.
class DirectedGraph {
public:
    /// Throws ParseError on self-loops, duplicate edges, out-of-range ids or n == 0.
    DirectedGraph(std::size_t n, std::span<const Edge> edges, std::vector<std::string> labels = {});

    std::size_t size() const { return out_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }

    /// S^out(v): heads of edges leaving v.
    std::span<const VertexId> out_neighbors(VertexId v) const { return out_[v]; }
    /// S^in(v): tails of edges entering v.
    std::span<const VertexId> in_neighbors(VertexId v) const { return in_[v]; }
    std::size_t out_degree(VertexId v) const { return out_[v].size(); }
    std::size_t in_degree(VertexId v) const { return in_[v].size(); }
    bool has_edge(VertexId u, VertexId v) const;

    const std::string& label(VertexId v) const { return labels_[v]; }
    const std::vector<std::string>& labels() const { return labels_; }

    /// Graph with vertex v renamed to perm[v].
    DirectedGraph permuted(std::span<const VertexId> perm) const;

private:
    std::vector<Edge> edges_;
    std::vector<std::vector<VertexId>> out_;
    std::vector<std::vector<VertexId>> in_;
    std::vector<std::string> labels_;
};

/// Parses "u v" lines; '#' lines and blank lines are skipped. Vertices are
/// numbered in order of first appearance.
DirectedGraph parse_edge_list(std::string_view text);

/// Parses {"vertices": [...], "edges": [[u, v], ...]}. Edge endpoints refer to
/// vertex labels; labels may be strings or integers.
DirectedGraph parse_json_graph(std::string_view text);

/// Serializes as the edge-list format, one "u v" line per edge, using labels.
std::string to_edge_list(const DirectedGraph& g);

bool is_strongly_connected(const DirectedGraph& g);

/// Length of a shortest directed path from x to y; nullopt when y is unreachable.
std::optional<std::size_t> distance(const DirectedGraph& g, VertexId x, VertexId y);

/// BFS distances from `source`; unreachable vertices hold nullopt.
std::vector<std::optional<std::size_t>> distances_from(const DirectedGraph& g, VertexId source);

// Generators. Labels are the decimal vertex ids.

DirectedGraph make_cycle(std::size_t n);
DirectedGraph make_bidirected_complete(std::size_t n);

/// Draws each ordered pair (u, v), u != v, with probability p and resamples
/// until the result is strongly connected. Throws std::invalid_argument for
/// n < 2 or p outside (0, 1], std::runtime_error when `budget` draws fail.
DirectedGraph make_random_strongly_connected(std::size_t n, double p, std::uint64_t seed,
                                             int budget = 1000);

}  // namespace dgcurv
