#pragma once

#include <cstddef>
#include <vector>

#include "error.hpp"
#include "graph.hpp"

namespace quorum {

struct Matching {
    std::vector<Edge> edges;  // each with first < second
    std::size_t size() const noexcept { return edges.size(); }
};

/// Maximum matching of a forest by leaf elimination: a leaf is always matched
/// to its only neighbor in some maximum matching, so match the pair, delete
/// both and repeat. Linear in the forest size.
inline Matching matching_number_forest(const Graph& forest) {
    if (!is_forest(forest)) throw Error(ErrorCode::NotAForest, "input graph contains a cycle");

    const std::size_t n = forest.size();
    std::vector<std::size_t> deg(n);
    std::vector<char> removed(n, 0);
    std::vector<Vertex> queue;
    for (Vertex v = 0; v < n; ++v) {
        deg[v] = forest.degree(v);
        if (deg[v] == 1) queue.push_back(v);
    }

    Matching m;
    auto remove = [&](Vertex x) {
        removed[x] = 1;
        for (Vertex y : forest.neighbors(x))
            if (!removed[y] && --deg[y] == 1) queue.push_back(y);
    };

    for (std::size_t head = 0; head < queue.size(); ++head) {
        const Vertex leaf = queue[head];
        if (removed[leaf] || deg[leaf] != 1) continue;
        Vertex mate = leaf;
        for (Vertex y : forest.neighbors(leaf))
            if (!removed[y]) {
                mate = y;
                break;
            }
        m.edges.emplace_back(std::min(leaf, mate), std::max(leaf, mate));
        removed[leaf] = 1;
        remove(mate);
    }
    return m;
}

} // namespace quorum
