#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "graph.hpp"

namespace quorum {

/// Rooted tree T = (V, E, r) stored as parent links plus CSR child and level
/// tables. Children are in ascending index order, and so is every level, which
/// fixes the v_{i,j} ordering used by the solvers.
class RootedTree {
public:
    static constexpr Vertex kNoParent = std::numeric_limits<Vertex>::max();

    RootedTree() = default;

    std::size_t size() const noexcept { return parent_.size(); }
    Vertex root() const noexcept { return root_; }
    std::size_t height() const noexcept { return level_offsets_.size() - 2; }

    std::optional<Vertex> parent(Vertex v) const {
        if (parent_[v] == kNoParent) return std::nullopt;
        return parent_[v];
    }
    /// Raw parent table; the root holds kNoParent.
    std::span<const Vertex> parent_table() const noexcept { return parent_; }

    std::span<const Vertex> children(Vertex v) const {
        return {child_list_.data() + child_offsets_[v], child_offsets_[v + 1] - child_offsets_[v]};
    }
    std::size_t child_count(Vertex v) const { return child_offsets_[v + 1] - child_offsets_[v]; }

    std::size_t depth(Vertex v) const { return depth_[v]; }

    /// D_i, ascending by vertex index.
    std::span<const Vertex> level(std::size_t i) const {
        return {level_list_.data() + level_offsets_[i], level_offsets_[i + 1] - level_offsets_[i]};
    }
    std::size_t level_size(std::size_t i) const { return level_offsets_[i + 1] - level_offsets_[i]; }
    /// Every vertex, level-major (the canonical order).
    std::span<const Vertex> level_order() const noexcept { return level_list_; }

    /// Undirected degree d_T(v).
    std::size_t degree(Vertex v) const { return child_count(v) + (v == root_ ? 0 : 1); }

    bool is_leaf(Vertex v) const { return degree(v) == 1; }

    std::size_t max_degree() const {
        std::size_t d = 0;
        for (Vertex v = 0; v < size(); ++v) d = std::max(d, degree(v));
        return d;
    }

    /// 1-based position j of v inside its level (the j in v_{i,j}).
    std::size_t position_in_level(Vertex v) const { return position_[v] + 1; }

    /// Parent array with std::nullopt at the root.
    std::vector<std::optional<Vertex>> parents() const {
        std::vector<std::optional<Vertex>> out(size());
        for (Vertex v = 0; v < size(); ++v) out[v] = parent(v);
        return out;
    }

    friend RootedTree build_from_parent_array(std::span<const std::optional<Vertex>> parents);
    friend RootedTree build_from_parent_table(std::vector<Vertex> parent);

private:
    Vertex root_ = 0;
    std::vector<Vertex> parent_;
    std::vector<std::size_t> child_offsets_;
    std::vector<Vertex> child_list_;
    std::vector<std::size_t> depth_;
    std::vector<std::size_t> position_;
    std::vector<std::size_t> level_offsets_;
    std::vector<Vertex> level_list_;
};

/// Same as build_from_parent_array but takes the raw table (root marked with
/// RootedTree::kNoParent). Used by the generators to avoid the optional copy.
inline RootedTree build_from_parent_table(std::vector<Vertex> parent) {
    const std::size_t n = parent.size();
    if (n == 0) throw Error(ErrorCode::NoRoot, "empty parent array");

    RootedTree t;
    std::optional<Vertex> root;
    std::vector<std::size_t> counts(n + 1, 0);
    for (Vertex v = 0; v < n; ++v) {
        if (parent[v] == RootedTree::kNoParent) {
            if (root)
                throw Error(ErrorCode::MultipleRoots,
                            "vertices " + std::to_string(*root) + " and " + std::to_string(v) + " have no parent");
            root = v;
            continue;
        }
        if (parent[v] >= n)
            throw Error(ErrorCode::IndexOutOfRange,
                        "parent of " + std::to_string(v) + " is " + std::to_string(parent[v]));
        if (parent[v] == v) throw Error(ErrorCode::CycleDetected, "vertex " + std::to_string(v) + " is its own parent");
        ++counts[parent[v] + 1];
    }
    if (!root) throw Error(ErrorCode::NoRoot, "every vertex has a parent");

    t.root_ = *root;
    t.child_offsets_.assign(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) t.child_offsets_[v + 1] = t.child_offsets_[v] + counts[v + 1];
    t.child_list_.resize(n - 1);
    {
        std::vector<std::size_t> fill(t.child_offsets_.begin(), t.child_offsets_.end() - 1);
        // ascending v keeps every child list sorted
        for (Vertex v = 0; v < n; ++v)
            if (parent[v] != RootedTree::kNoParent) t.child_list_[fill[parent[v]]++] = v;
    }
    t.parent_ = std::move(parent);

    // Breadth-first from the root. Within a level vertices come out grouped by
    // parent, so each level is sorted afterwards to get ascending index order.
    t.depth_.assign(n, 0);
    t.level_list_.clear();
    t.level_list_.reserve(n);
    t.level_offsets_.assign(1, 0);
    t.level_list_.push_back(t.root_);
    std::size_t begin = 0;
    while (begin < t.level_list_.size()) {
        const std::size_t end = t.level_list_.size();
        t.level_offsets_.push_back(end);
        for (std::size_t k = begin; k < end; ++k) {
            const Vertex u = t.level_list_[k];
            for (Vertex c : t.children(u)) {
                t.depth_[c] = t.depth_[u] + 1;
                t.level_list_.push_back(c);
            }
        }
        if (t.level_list_.size() > end)
            std::sort(t.level_list_.begin() + static_cast<std::ptrdiff_t>(end), t.level_list_.end());
        begin = end;
    }
    if (t.level_list_.size() != n)
        throw Error(ErrorCode::CycleDetected,
                    std::to_string(n - t.level_list_.size()) + " vertices are not reachable from the root");

    t.position_.assign(n, 0);
    for (std::size_t i = 0; i + 1 < t.level_offsets_.size(); ++i)
        for (std::size_t k = t.level_offsets_[i]; k < t.level_offsets_[i + 1]; ++k)
            t.position_[t.level_list_[k]] = k - t.level_offsets_[i];
    return t;
}

inline RootedTree build_from_parent_array(std::span<const std::optional<Vertex>> parents) {
    std::vector<Vertex> table(parents.size());
    for (std::size_t v = 0; v < parents.size(); ++v) table[v] = parents[v].value_or(RootedTree::kNoParent);
    return build_from_parent_table(std::move(table));
}

inline Graph to_graph(const RootedTree& tree) {
    std::vector<Edge> edges;
    edges.reserve(tree.size());
    for (Vertex v = 0; v < tree.size(); ++v)
        if (auto p = tree.parent(v)) edges.emplace_back(*p, v);
    return Graph::from_edges(tree.size(), edges);
}

enum class ShapeKind { PerfectNary, PerfectPerLevel, LocallyPerfect, PerfectOnly, General };

constexpr std::string_view to_string(ShapeKind k) noexcept {
    switch (k) {
    case ShapeKind::PerfectNary: return "PerfectNary";
    case ShapeKind::PerfectPerLevel: return "PerfectPerLevel";
    case ShapeKind::LocallyPerfect: return "LocallyPerfect";
    case ShapeKind::PerfectOnly: return "PerfectOnly";
    case ShapeKind::General: return "General";
    }
    return "General";
}

/// Most specific structural class of a rooted tree. For the two per-level
/// kinds `counts` holds N_0..N_{h-1}; `arity` is N for PerfectNary.
struct ShapeClass {
    ShapeKind kind = ShapeKind::General;
    std::size_t height = 0;
    std::vector<std::size_t> counts;
    std::size_t arity = 0;

    bool is_per_level() const noexcept {
        return kind == ShapeKind::PerfectNary || kind == ShapeKind::PerfectPerLevel;
    }
    bool is_perfect() const noexcept { return kind != ShapeKind::General; }

    friend bool operator==(const ShapeClass&, const ShapeClass&) = default;
};

/// Perfect N-ary needs a constant N >= 2; constant-1 trees (paths) stay
/// PerfectPerLevel, as does the single vertex with empty counts.
inline ShapeClass classify_shape(const RootedTree& tree) {
    ShapeClass shape;
    shape.height = tree.height();
    const std::size_t h = tree.height();

    for (Vertex v = 0; v < tree.size(); ++v)
        if (tree.child_count(v) == 0 && tree.depth(v) != h) return shape;  // General

    shape.kind = ShapeKind::PerfectOnly;
    for (Vertex v = 0; v < tree.size(); ++v) {
        auto kids = tree.children(v);
        for (Vertex c : kids)
            if (tree.child_count(c) != tree.child_count(kids.front())) return shape;
    }

    shape.kind = ShapeKind::LocallyPerfect;
    std::vector<std::size_t> counts(h);
    for (std::size_t i = 0; i < h; ++i) {
        auto lvl = tree.level(i);
        counts[i] = tree.child_count(lvl.front());
        for (Vertex v : lvl)
            if (tree.child_count(v) != counts[i]) return shape;
    }

    shape.kind = ShapeKind::PerfectPerLevel;
    shape.counts = std::move(counts);
    if (!shape.counts.empty() && shape.counts.front() >= 2 &&
        std::all_of(shape.counts.begin(), shape.counts.end(),
                    [&](std::size_t c) { return c == shape.counts.front(); })) {
        shape.kind = ShapeKind::PerfectNary;
        shape.arity = shape.counts.front();
    }
    return shape;
}

/// T[V \ L]: the subgraph induced by vertices of degree >= 2.
struct InternalForest {
    Graph graph;
    std::vector<Vertex> original;  // forest vertex -> tree vertex
};

inline InternalForest internal_forest(const RootedTree& tree) {
    InternalForest out;
    std::vector<Vertex> index(tree.size(), RootedTree::kNoParent);
    for (Vertex v = 0; v < tree.size(); ++v)
        if (tree.degree(v) >= 2) {
            index[v] = out.original.size();
            out.original.push_back(v);
        }
    std::vector<Edge> edges;
    for (Vertex v : out.original)
        if (auto p = tree.parent(v); p && index[*p] != RootedTree::kNoParent)
            edges.emplace_back(index[*p], index[v]);
    out.graph = Graph::from_edges(out.original.size(), edges);
    return out;
}

} // namespace quorum
