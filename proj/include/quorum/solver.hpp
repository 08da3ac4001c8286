#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "coloring.hpp"
#include "error.hpp"
#include "tree.hpp"

namespace quorum {

/// New-color contribution of one internal vertex v_{i,j}: the value
/// alpha_{i+1}^j, where i = depth and j = position (1-based).
struct AlphaEntry {
    std::size_t depth = 0;
    std::size_t position = 0;
    Vertex vertex = 0;
    std::uint64_t value = 0;
};

struct AlphaTrace {
    std::vector<AlphaEntry> entries;  // canonical (level-major) order
    std::uint64_t alpha = 0;
    /// sharing[i-1] = s_i, the number of depth-i vertices colored like their
    /// parent, for i = 1..h.
    std::vector<std::uint64_t> sharing;

    std::vector<std::uint64_t> values() const {
        std::vector<std::uint64_t> out;
        out.reserve(entries.size());
        for (const auto& e : entries) out.push_back(e.value);
        return out;
    }
};

struct SolveResult {
    Coloring coloring;
    AlphaTrace trace;
    /// Elementary operations: parent-color comparisons, color assignments,
    /// alpha computations (two per internal vertex) and summation steps.
    std::uint64_t operations = 0;
};

struct SolveOptions {
    /// Optional reference coloring. When set, the children that inherit their
    /// parent's color are picked first among those that share the parent's
    /// class in the reference, then by ascending index. Without it the
    /// lowest-index children inherit.
    const Coloring* guide = nullptr;
    /// Record the per-vertex entries of the alpha trace.
    bool record_trace = true;
};

/// Linear-time cost-effective psi_q-coloring of a perfect tree whose
/// same-depth vertices all have the same number of children.
///
/// The root keeps its color on floor(N_0/2) children. Below the root a vertex
/// that shares its parent's color passes it to ceil(N_i/2) - 1 children,
/// otherwise to ceil(N_i/2); every other child opens a new class. The class
/// count alpha is psi_q(T).
inline SolveResult algo2_solve(const RootedTree& tree, const SolveOptions& options = {}) {
    const std::size_t n = tree.size();
    if (n == 0) throw Error(ErrorCode::EmptyTree, "tree has no vertices");
    if (!classify_shape(tree).is_per_level())
        throw Error(ErrorCode::NotPerLevel, "same-depth vertices do not all have the same number of children");
    const Coloring* guide = options.guide;
    if (guide && guide->size() != n) throw Error(ErrorCode::SizeMismatch, "guide coloring size differs from tree");

    SolveResult result;
    auto& trace = result.trace;
    std::uint64_t ops = 0;

    constexpr ClassId kUnset = std::numeric_limits<ClassId>::max();
    std::vector<ClassId> color(n, kUnset);
    ClassId next = 0;

    const std::size_t h = tree.height();
    trace.sharing.assign(h, 0);

    // Hands v's color to exactly `keep` children, new colors to the rest.
    auto color_children = [&](Vertex v, std::size_t keep) {
        auto kids = tree.children(v);
        std::size_t kept = 0;
        if (guide) {
            for (Vertex c : kids)
                if (kept < keep && (*guide)[c] == (*guide)[v]) {
                    color[c] = color[v];
                    ++kept;
                }
        }
        for (Vertex c : kids) {
            if (color[c] != kUnset) continue;
            if (kept < keep) {
                color[c] = color[v];
                ++kept;
            } else {
                color[c] = next++;
            }
        }
        ops += kids.size();
        if (!kids.empty()) trace.sharing[tree.depth(v)] += kept;
    };

    const Vertex root = tree.root();
    color[root] = next++;
    ++ops;

    if (n == 1) {
        trace.alpha = 1;
        result.coloring = Coloring(std::move(color));
        result.operations = ops;
        return result;
    }

    const bool record = options.record_trace;
    if (record) trace.entries.reserve(n - tree.level_size(h));
    std::uint64_t internal = 1;
    {
        const std::size_t n0 = tree.child_count(root);
        color_children(root, n0 / 2);
        const std::uint64_t fresh = (n0 + 1) / 2 + 1;
        trace.alpha += fresh;
        if (record) trace.entries.push_back({0, 1, root, fresh});
        ops += 2;
    }
    for (std::size_t i = 1; i < h; ++i) {
        for (Vertex v : tree.level(i)) {
            const bool inherits = color[v] == color[*tree.parent(v)];
            ++ops;
            const std::size_t ni = tree.child_count(v);
            std::size_t keep;
            std::uint64_t fresh;
            if (inherits) {
                keep = (ni + 1) / 2 - 1;
                fresh = ni / 2 + 1;
            } else {
                keep = (ni + 1) / 2;
                fresh = ni / 2;
            }
            ops += 2;
            color_children(v, keep);
            trace.alpha += fresh;
            ++internal;
            if (record) trace.entries.push_back({i, tree.position_in_level(v), v, fresh});
        }
    }
    ops += internal;  // one summation step per alpha term

    result.coloring = Coloring::adopt_dense(std::move(color), next);
    result.operations = ops;
    return result;
}

struct AlphaRecurrence {
    std::uint64_t alpha = 1;
    std::vector<std::uint64_t> sharing;  // s_1..s_h
};

/// alpha computed from the level counts alone, in O(h):
///   alpha = ceil(N_0/2) + 1 + sum_{i>=1} (l_i * floor(N_i/2) + s_i),
///   s_1 = floor(N_0/2),  s_{i+1} = l_i * ceil(N_i/2) - s_i.
inline AlphaRecurrence alpha_recurrence(std::span<const std::size_t> counts) {
    AlphaRecurrence r;
    if (counts.empty()) return r;
    for (std::size_t c : counts)
        if (c == 0) throw Error(ErrorCode::InvalidArgument, "level child counts must be positive");

    auto mul = [](std::uint64_t a, std::uint64_t b) {
        std::uint64_t out;
        if (__builtin_mul_overflow(a, b, &out)) throw Error(ErrorCode::Overflow, "level size overflows 64 bits");
        return out;
    };
    auto add = [](std::uint64_t a, std::uint64_t b) {
        std::uint64_t out;
        if (__builtin_add_overflow(a, b, &out)) throw Error(ErrorCode::Overflow, "alpha overflows 64 bits");
        return out;
    };

    const std::uint64_t n0 = counts[0];
    r.alpha = (n0 + 1) / 2 + 1;
    std::uint64_t s = n0 / 2;
    std::uint64_t level = n0;  // l_1
    r.sharing.push_back(s);
    for (std::size_t i = 1; i < counts.size(); ++i) {
        const std::uint64_t ni = counts[i];
        r.alpha = add(r.alpha, add(mul(level, ni / 2), s));
        s = mul(level, (ni + 1) / 2) - s;
        level = mul(level, ni);
        r.sharing.push_back(s);
    }
    return r;
}

inline std::uint64_t alpha_closed(std::span<const std::size_t> counts) { return alpha_recurrence(counts).alpha; }

} // namespace quorum
