#include "gibbscert/graph.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <set>

namespace gibbscert {

bool Graph::adjacent(Vertex a, Vertex b) const {
    const auto& nb = adjacency_.at(a);
    return std::binary_search(nb.begin(), nb.end(), b);
}

std::size_t Graph::neighbor_slot(Vertex a, Vertex b) const {
    const auto& nb = adjacency_.at(a);
    auto it = std::lower_bound(nb.begin(), nb.end(), b);
    if (it == nb.end() || *it != b) {
        throw ModelError("vertices '" + id(a) + "' and '" + id(b) + "' are not adjacent");
    }
    return static_cast<std::size_t>(it - nb.begin());
}

Vertex Graph::index_of(const std::string& id) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) throw ModelError("unknown vertex '" + id + "'");
    return static_cast<Vertex>(it - ids_.begin());
}

bool Graph::contains(const std::string& id) const {
    return std::binary_search(ids_.begin(), ids_.end(), id);
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (Vertex v = 0; v < adjacency_.size(); ++v) {
        for (Vertex w : adjacency_[v]) {
            if (v < w) out.emplace_back(v, w);
        }
    }
    return out;
}

Graph build_graph(const std::vector<std::pair<std::string, std::string>>& edges) {
    if (edges.empty()) throw ModelError("edge list is empty");

    std::set<std::string> idset;
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& [a, b] : edges) {
        if (a.empty() || b.empty()) throw ModelError("empty vertex id in edge list");
        if (a == b) throw ModelError("self-loop at vertex '" + a + "'");
        auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
        if (!seen.insert(key).second) {
            throw ModelError("duplicate edge '" + key.first + "-" + key.second + "'");
        }
        idset.insert(a);
        idset.insert(b);
    }

    Graph g;
    g.ids_.assign(idset.begin(), idset.end());
    g.adjacency_.resize(g.ids_.size());
    for (const auto& [a, b] : seen) {
        const Vertex va = g.index_of(a);
        const Vertex vb = g.index_of(b);
        g.adjacency_[va].push_back(vb);
        g.adjacency_[vb].push_back(va);
    }
    for (auto& nb : g.adjacency_) std::sort(nb.begin(), nb.end());

    // single BFS component
    std::vector<bool> reached(g.vertex_count(), false);
    std::queue<Vertex> frontier;
    frontier.push(0);
    reached[0] = true;
    std::size_t count = 1;
    while (!frontier.empty()) {
        const Vertex v = frontier.front();
        frontier.pop();
        for (Vertex w : g.adjacency_[v]) {
            if (!reached[w]) {
                reached[w] = true;
                ++count;
                frontier.push(w);
            }
        }
    }
    if (count != g.vertex_count()) {
        const auto it = std::find(reached.begin(), reached.end(), false);
        const auto lost = static_cast<Vertex>(it - reached.begin());
        throw ModelError("graph is disconnected: vertex '" + g.ids_[lost] + "' is unreachable from '" +
                         g.ids_[0] + "'");
    }
    return g;
}

std::size_t max_degree(const Graph& g) {
    std::size_t d = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v) d = std::max(d, g.degree(v));
    return d;
}

ColorPartition greedy_color(const Graph& g) {
    const std::size_t n = g.vertex_count();
    ColorPartition p;
    p.color_of.assign(n, -1);
    for (Vertex v = 0; v < n; ++v) {
        std::vector<bool> used(g.degree(v) + 1, false);
        for (Vertex w : g.neighbors(v)) {
            const int c = p.color_of[w];
            if (c >= 0 && static_cast<std::size_t>(c) < used.size()) used[static_cast<std::size_t>(c)] = true;
        }
        int color = 0;
        while (used[static_cast<std::size_t>(color)]) ++color;
        p.color_of[v] = color;
        if (static_cast<std::size_t>(color) >= p.classes.size()) p.classes.resize(static_cast<std::size_t>(color) + 1);
        p.classes[static_cast<std::size_t>(color)].push_back(v);
    }
    return p;
}

bool is_valid_partition(const Graph& g, const ColorPartition& p) {
    std::vector<int> owner(g.vertex_count(), -1);
    for (std::size_t j = 0; j < p.classes.size(); ++j) {
        for (Vertex v : p.classes[j]) {
            if (v >= g.vertex_count() || owner[v] != -1) return false;
            owner[v] = static_cast<int>(j);
        }
    }
    if (std::find(owner.begin(), owner.end(), -1) != owner.end()) return false;
    for (const auto& cls : p.classes) {
        for (Vertex v : cls) {
            for (Vertex w : g.neighbors(v)) {
                if (owner[w] == owner[v]) return false;
            }
        }
    }
    return true;
}

std::size_t path_distance(const Graph& g, Vertex a, Vertex b) {
    const std::size_t n = g.vertex_count();
    if (a >= n || b >= n) throw ModelError("unknown vertex handle");
    constexpr auto kUnset = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> dist(n, kUnset);
    std::queue<Vertex> frontier;
    dist[a] = 0;
    frontier.push(a);
    while (!frontier.empty()) {
        const Vertex v = frontier.front();
        frontier.pop();
        if (v == b) return dist[v];
        for (Vertex w : g.neighbors(v)) {
            if (dist[w] == kUnset) {
                dist[w] = dist[v] + 1;
                frontier.push(w);
            }
        }
    }
    return dist[b];  // connected by construction
}

std::size_t path_distance(const Graph& g, const std::string& a, const std::string& b) {
    return path_distance(g, g.index_of(a), g.index_of(b));
}

VertexSet external_boundary(const Graph& g, const VertexSet& region) {
    std::vector<bool> inside(g.vertex_count(), false);
    for (Vertex v : region) inside.at(v) = true;
    VertexSet out;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (inside[v]) continue;
        for (Vertex w : g.neighbors(v)) {
            if (inside[w]) {
                out.push_back(v);
                break;
            }
        }
    }
    return out;
}

std::vector<VertexSet> shells(const Graph& g, Vertex center, std::size_t count) {
    if (center >= g.vertex_count()) throw ModelError("unknown vertex handle");
    if (count == 0) throw ModelError("shell count must be at least 1");
    std::vector<VertexSet> out;
    out.reserve(count);
    out.push_back({center});
    while (out.size() < count) {
        VertexSet next = out.back();
        const VertexSet rim = external_boundary(g, next);
        next.insert(next.end(), rim.begin(), rim.end());
        std::sort(next.begin(), next.end());
        out.push_back(std::move(next));
    }
    return out;
}

VertexSet all_vertices(const Graph& g) {
    VertexSet out(g.vertex_count());
    for (Vertex v = 0; v < out.size(); ++v) out[v] = v;
    return out;
}

bool set_contains(const VertexSet& s, Vertex v) {
    return std::binary_search(s.begin(), s.end(), v);
}

}  // namespace gibbscert
