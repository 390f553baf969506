#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gibbscert/common.hpp"

namespace gibbscert {

/// Simple, connected, finite graph. Vertex ids are opaque strings; handles
/// are positions in the lexicographically sorted id list, so every iteration
/// order in the library is a function of the ids alone.
class Graph {
public:
    [[nodiscard]] std::size_t vertex_count() const noexcept { return ids_.size(); }
    [[nodiscard]] const std::vector<std::string>& ids() const noexcept { return ids_; }
    [[nodiscard]] const std::string& id(Vertex v) const { return ids_.at(v); }
    [[nodiscard]] const std::vector<Vertex>& neighbors(Vertex v) const { return adjacency_.at(v); }
    [[nodiscard]] std::size_t degree(Vertex v) const { return adjacency_.at(v).size(); }
    [[nodiscard]] bool adjacent(Vertex a, Vertex b) const;
    /// Position of b inside neighbors(a); throws if not adjacent.
    [[nodiscard]] std::size_t neighbor_slot(Vertex a, Vertex b) const;
    [[nodiscard]] Vertex index_of(const std::string& id) const;
    [[nodiscard]] bool contains(const std::string& id) const;
    /// Undirected edges as (lower, higher) handle pairs, sorted.
    [[nodiscard]] std::vector<std::pair<Vertex, Vertex>> edges() const;

private:
    friend Graph build_graph(const std::vector<std::pair<std::string, std::string>>& edges);
    std::vector<std::string> ids_;
    std::vector<std::vector<Vertex>> adjacency_;
};

/// Independent classes V_0 ... V_{chi-1}; each class is sorted ascending.
struct ColorPartition {
    std::vector<VertexSet> classes;
    std::vector<int> color_of;

    [[nodiscard]] std::size_t class_count() const noexcept { return classes.size(); }
};

/// Validates and builds a graph. Rejects self-loops, duplicate edges (in
/// either orientation) and disconnected inputs, naming the offender.
Graph build_graph(const std::vector<std::pair<std::string, std::string>>& edges);

std::size_t max_degree(const Graph& g);

/// Greedy coloring in ascending handle order, smallest free color first.
ColorPartition greedy_color(const Graph& g);

/// True if classes partition the vertex set and every class is independent.
bool is_valid_partition(const Graph& g, const ColorPartition& p);

/// BFS edge count between two vertices.
std::size_t path_distance(const Graph& g, Vertex a, Vertex b);
std::size_t path_distance(const Graph& g, const std::string& a, const std::string& b);

/// {v not in D : some neighbor of v is in D}.
VertexSet external_boundary(const Graph& g, const VertexSet& region);

/// D_0 = {center}, D_k = D_{k-1} plus its external boundary; returns D_0..D_{count-1}.
std::vector<VertexSet> shells(const Graph& g, Vertex center, std::size_t count);

VertexSet all_vertices(const Graph& g);
bool set_contains(const VertexSet& s, Vertex v);

}  // namespace gibbscert
