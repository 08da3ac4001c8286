#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <algorithm>
#include <vector>

#include <quorum/quorum.hpp>

namespace quorum::testing {

inline RootedTree tree_from(std::initializer_list<long> parents) {
    std::vector<std::optional<Vertex>> p;
    for (long x : parents) p.push_back(x < 0 ? std::nullopt : std::optional<Vertex>(static_cast<Vertex>(x)));
    return build_from_parent_array(p);
}

inline RootedTree p3_star() { return tree_from({-1, 0, 0}); }
inline RootedTree k2_tree() { return tree_from({-1, 0}); }
inline RootedTree path4() { return tree_from({-1, 0, 1, 2}); }
inline RootedTree star(std::size_t leaves) {
    std::vector<std::optional<Vertex>> p(leaves + 1, Vertex{0});
    p[0] = std::nullopt;
    return build_from_parent_array(p);
}

/// The worked-example tree, level counts (3, 4, 1), n = 28. In level-major
/// numbering v_{1,j} = j, v_{2,j} = 3 + j, v_{3,j} = 15 + j.
inline RootedTree example_tree() {
    const std::vector<std::size_t> counts{3, 4, 1};
    return gen_perfect_per_level(counts);
}

inline Vertex example_vertex(std::size_t depth, std::size_t j) {
    constexpr std::size_t offset[] = {0, 1, 4, 16};
    return offset[depth] + j - 1;
}

/// Class labels of the reference initial coloring of the worked example (10 classes).
inline Coloring example_initial_coloring() {
    const std::vector<int> labels{
        1,                                      // v_{0,1}
        1, 1, 1,                                // depth 1
        1, 2, 3, 4, 1, 1, 5, 6, 1, 1, 1, 7,     // depth 2
        1, 2, 3, 4, 1, 8, 5, 6, 9, 10, 1, 7,    // depth 3
    };
    return Coloring::from_labels(labels);
}

/// Class labels of the reference cost-effective coloring of the worked example (15 classes).
inline Coloring example_final_coloring() {
    const std::vector<int> labels{
        1,
        11, 12, 1,
        11, 11, 3, 4, 12, 12, 5, 6, 1, 2, 13, 7,
        10, 14, 3, 4, 15, 8, 5, 6, 9, 2, 13, 7,
    };
    return Coloring::from_labels(labels);
}

/// Test-only oracle: psi_q by trying every set partition, built by placing
/// vertices one at a time into an existing block or a new one. Independent of
/// the library's oracles (no restricted-growth pruning, no edge-cut shortcut).
inline std::size_t exhaustive_psi_q(const Graph& g) {
    const std::size_t n = g.size();
    std::vector<std::size_t> block(n, 0);
    std::size_t best = 0;
    auto ok = [&] {
        for (Vertex v = 0; v < n; ++v) {
            std::size_t same = 1, closed = 1;
            for (Vertex w : g.neighbors(v)) {
                ++closed;
                same += block[w] == block[v];
            }
            if (2 * same < closed) return false;
        }
        return true;
    };
    auto place = [&](auto&& self, std::size_t v, std::size_t blocks) -> void {
        if (v == n) {
            if (blocks > best && ok()) best = blocks;
            return;
        }
        for (std::size_t b = 0; b <= blocks; ++b) {
            block[v] = b;
            self(self, v + 1, b == blocks ? blocks + 1 : blocks);
        }
    };
    place(place, 0, 0);
    return best;
}

/// Test-only oracle: maximum matching size by scanning every edge subset.
inline std::size_t exhaustive_matching(const Graph& g) {
    const auto edges = g.edges();
    std::size_t best = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << edges.size()); ++mask) {
        std::vector<char> used(g.size(), 0);
        bool ok = true;
        std::size_t size = 0;
        for (std::size_t e = 0; e < edges.size() && ok; ++e)
            if (mask >> e & 1) {
                auto [u, v] = edges[e];
                ok = !used[u] && !used[v];
                used[u] = used[v] = 1;
                ++size;
            }
        if (ok) best = std::max(best, size);
    }
    return best;
}

/// Random tree with maximum degree <= max_deg: each new vertex attaches to a
/// uniformly chosen earlier vertex that still has room.
inline RootedTree random_bounded_degree_tree(std::size_t n, std::size_t max_deg, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Vertex> parent(n, RootedTree::kNoParent);
    std::vector<std::size_t> deg(n, 0);
    for (Vertex v = 1; v < n; ++v) {
        std::vector<Vertex> room;
        for (Vertex u = 0; u < v; ++u)
            if (deg[u] < max_deg) room.push_back(u);
        const Vertex p = room[std::uniform_int_distribution<std::size_t>(0, room.size() - 1)(rng)];
        parent[v] = p;
        ++deg[p];
        ++deg[v];
    }
    return build_from_parent_table(std::move(parent));
}

/// Every per-level count vector with entries in [1, max_entry], height in
/// [1, max_height] and order at most max_n.
inline std::vector<std::vector<std::size_t>> small_count_vectors(std::size_t max_entry, std::size_t max_height,
                                                                 std::size_t max_n) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t n, std::size_t width) -> void {
        if (!cur.empty()) out.push_back(cur);
        if (cur.size() == max_height) return;
        for (std::size_t c = 1; c <= max_entry; ++c) {
            if (n + width * c > max_n) continue;
            cur.push_back(c);
            self(self, n + width * c, width * c);
            cur.pop_back();
        }
    };
    rec(rec, 1, 1);
    return out;
}

} // namespace quorum::testing
