#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "error.hpp"

namespace quorum {

using Vertex = std::size_t;
using Edge = std::pair<Vertex, Vertex>;

/// Simple undirected graph with sorted adjacency lists.
class Graph {
public:
    Graph() = default;

    explicit Graph(std::size_t n) : adj_(n) {}

    /// Builds from an edge list. Rejects self-loops, duplicate edges and
    /// out-of-range endpoints.
    static Graph from_edges(std::size_t n, std::span<const Edge> edges) {
        Graph g(n);
        for (auto [u, v] : edges) {
            if (u >= n || v >= n)
                throw Error(ErrorCode::IndexOutOfRange, "edge endpoint out of range");
            if (u == v)
                throw Error(ErrorCode::InvalidArgument, "self-loop on vertex " + std::to_string(u));
            g.adj_[u].push_back(v);
            g.adj_[v].push_back(u);
        }
        for (auto& nb : g.adj_) {
            std::sort(nb.begin(), nb.end());
            if (std::adjacent_find(nb.begin(), nb.end()) != nb.end())
                throw Error(ErrorCode::InvalidArgument, "duplicate edge");
        }
        return g;
    }

    std::size_t size() const noexcept { return adj_.size(); }

    std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }

    std::size_t degree(Vertex v) const { return adj_[v].size(); }

    std::size_t edge_count() const {
        std::size_t twice = 0;
        for (const auto& nb : adj_) twice += nb.size();
        return twice / 2;
    }

    /// Edges with u < v, in lexicographic order.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        for (Vertex u = 0; u < adj_.size(); ++u)
            for (Vertex v : adj_[u])
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    bool has_edge(Vertex u, Vertex v) const {
        return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
    }

    std::size_t max_degree() const {
        std::size_t d = 0;
        for (const auto& nb : adj_) d = std::max(d, nb.size());
        return d;
    }

    std::size_t min_degree() const {
        if (adj_.empty()) return 0;
        std::size_t d = adj_.front().size();
        for (const auto& nb : adj_) d = std::min(d, nb.size());
        return d;
    }

    /// L(G): vertices of degree exactly one.
    std::vector<Vertex> leaves() const {
        std::vector<Vertex> out;
        for (Vertex v = 0; v < adj_.size(); ++v)
            if (adj_[v].size() == 1) out.push_back(v);
        return out;
    }

private:
    std::vector<std::vector<Vertex>> adj_;
};

inline Graph complete_graph(std::size_t n) {
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    return Graph::from_edges(n, edges);
}

inline Graph edgeless_graph(std::size_t n) { return Graph(n); }

/// Vertices of `b` are shifted by a.size().
inline Graph disjoint_union(const Graph& a, const Graph& b) {
    auto edges = a.edges();
    for (auto [u, v] : b.edges()) edges.emplace_back(u + a.size(), v + a.size());
    return Graph::from_edges(a.size() + b.size(), edges);
}

/// Number of connected components (isolated vertices count as components).
inline std::size_t component_count(const Graph& g) {
    std::vector<char> seen(g.size(), 0);
    std::vector<Vertex> stack;
    std::size_t count = 0;
    for (Vertex s = 0; s < g.size(); ++s) {
        if (seen[s]) continue;
        ++count;
        seen[s] = 1;
        stack.push_back(s);
        while (!stack.empty()) {
            Vertex u = stack.back();
            stack.pop_back();
            for (Vertex w : g.neighbors(u))
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
    }
    return count;
}

inline bool is_forest(const Graph& g) {
    return g.edge_count() + component_count(g) == g.size();
}

} // namespace quorum
