#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "coloring.hpp"
#include "error.hpp"
#include "graph.hpp"
#include "tree.hpp"

namespace quorum {

struct TreeOracleResult {
    std::size_t psi_q = 1;
    Coloring witness;
    /// Bit e set = the edge from the e-th non-root vertex (ascending index)
    /// to its parent is cut.
    std::uint64_t cut_mask = 0;
};

/// Exhaustive psi_q of a tree. A psi_q-coloring has connected classes, so it
/// suffices to scan the 2^(n-1) edge cuts; the classes of a cut are the
/// components left after deleting it, and a vertex stays in quorum iff it
/// loses at most floor((d+1)/2) of its edges. Returns the numerically smallest
/// cut mask among the maximizers.
inline TreeOracleResult brute_force_tree(const RootedTree& tree, std::size_t limit = 20) {
    const std::size_t n = tree.size();
    if (n > limit) throw Error(ErrorCode::TooLarge, "tree has " + std::to_string(n) + " vertices, limit is " + std::to_string(limit));
    if (n > 41) throw Error(ErrorCode::TooLarge, "edge cuts beyond 40 edges are not enumerable");

    std::vector<Vertex> edge_child;
    std::vector<std::size_t> edge_of(n, 0);
    for (Vertex v = 0; v < n; ++v)
        if (v != tree.root()) {
            edge_of[v] = edge_child.size();
            edge_child.push_back(v);
        }
    const std::size_t m = edge_child.size();

    std::vector<std::uint64_t> incident(n, 0);
    std::vector<int> budget(n);
    for (std::size_t e = 0; e < m; ++e) {
        const Vertex c = edge_child[e];
        incident[c] |= std::uint64_t{1} << e;
        incident[*tree.parent(c)] |= std::uint64_t{1} << e;
    }
    for (Vertex v = 0; v < n; ++v) budget[v] = static_cast<int>((tree.degree(v) + 1) / 2);

    std::uint64_t best_mask = 0;
    int best_cuts = 0;
    const std::uint64_t end = std::uint64_t{1} << m;
    for (std::uint64_t mask = 1; mask < end; ++mask) {
        const int cuts = std::popcount(mask);
        if (cuts <= best_cuts) continue;
        bool ok = true;
        for (Vertex v = 0; v < n && ok; ++v) ok = std::popcount(mask & incident[v]) <= budget[v];
        if (ok) {
            best_cuts = cuts;
            best_mask = mask;
        }
    }

    std::vector<std::size_t> label(n, 0);
    std::size_t next = 1;
    for (Vertex v : tree.level_order()) {
        if (v == tree.root()) continue;
        label[v] = (best_mask >> edge_of[v]) & 1 ? next++ : label[*tree.parent(v)];
    }
    return {static_cast<std::size_t>(best_cuts) + 1, Coloring::from_labels(label), best_mask};
}

struct GraphOracleResult {
    std::size_t psi_q = 0;
    Coloring witness;
};

/// Exhaustive psi_q of an arbitrary graph over all set partitions, enumerated
/// as restricted-growth strings in lexicographic order. The witness is the
/// first maximizer in that order.
inline GraphOracleResult brute_force_graph(const Graph& graph, std::size_t limit = 10) {
    const std::size_t n = graph.size();
    if (n > limit) throw Error(ErrorCode::TooLarge, "graph has " + std::to_string(n) + " vertices, limit is " + std::to_string(limit));
    if (n == 0) return {0, Coloring()};

    std::vector<ClassId> rgs(n, 0);
    std::vector<ClassId> best;
    std::size_t best_k = 0;

    auto valid = [&]() {
        for (Vertex v = 0; v < n; ++v) {
            std::size_t same = 1;
            for (Vertex w : graph.neighbors(v))
                if (rgs[w] == rgs[v]) ++same;
            if (same < quorum_need(graph.degree(v) + 1)) return false;
        }
        return true;
    };

    // rgs[0..pos) fixed, `used` distinct classes so far
    auto recurse = [&](auto&& self, std::size_t pos, std::size_t used) -> void {
        if (used + (n - pos) <= best_k) return;
        if (pos == n) {
            if (valid()) {
                best_k = used;
                best = rgs;
            }
            return;
        }
        for (ClassId c = 0; c <= used; ++c) {
            rgs[pos] = c;
            self(self, pos + 1, c == used ? used + 1 : used);
        }
    };
    rgs[0] = 0;
    recurse(recurse, 1, 1);
    return {best_k, Coloring(best)};
}

} // namespace quorum
