#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "tree.hpp"

namespace quorum {

using ClassId = std::size_t;

/// A partition of the vertex set, stored as a class id per vertex. Ids are
/// dense: every id in [0, k) labels at least one vertex.
class Coloring {
public:
    Coloring() = default;

    /// Takes dense ids as-is; throws InvalidArgument if some id in [0, k) is unused.
    explicit Coloring(std::vector<ClassId> class_of) : class_of_(std::move(class_of)) {
        std::size_t k = 0;
        for (ClassId c : class_of_) k = std::max(k, c + 1);
        std::vector<char> used(k, 0);
        for (ClassId c : class_of_) used[c] = 1;
        if (std::find(used.begin(), used.end(), 0) != used.end())
            throw Error(ErrorCode::InvalidArgument, "class ids are not dense");
        k_ = k;
    }

    /// Takes ids already known to be dense in [0, k) without re-checking.
    static Coloring adopt_dense(std::vector<ClassId> class_of, std::size_t k) {
        Coloring c;
        c.class_of_ = std::move(class_of);
        c.k_ = k;
        return c;
    }

    /// Relabels arbitrary labels by first appearance in vertex order.
    template <typename Label>
    static Coloring from_labels(const std::vector<Label>& labels) {
        std::vector<ClassId> out(labels.size());
        std::map<Label, ClassId> seen;
        for (std::size_t v = 0; v < labels.size(); ++v)
            out[v] = seen.try_emplace(labels[v], seen.size()).first->second;
        Coloring c;
        c.class_of_ = std::move(out);
        c.k_ = seen.size();
        return c;
    }

    static Coloring monochromatic(std::size_t n) {
        return Coloring(std::vector<ClassId>(n, 0));
    }

    static Coloring singletons(std::size_t n) {
        std::vector<ClassId> ids(n);
        for (std::size_t v = 0; v < n; ++v) ids[v] = v;
        return Coloring(std::move(ids));
    }

    std::size_t size() const noexcept { return class_of_.size(); }
    std::size_t class_count() const noexcept { return k_; }
    ClassId operator[](Vertex v) const { return class_of_[v]; }
    const std::vector<ClassId>& class_of() const noexcept { return class_of_; }

    /// V_1..V_k, each ascending.
    std::vector<std::vector<Vertex>> classes() const {
        std::vector<std::vector<Vertex>> out(k_);
        for (Vertex v = 0; v < class_of_.size(); ++v) out[class_of_[v]].push_back(v);
        return out;
    }

    /// Ids renumbered by first appearance in vertex-index order.
    Coloring canonical() const {
        std::vector<ClassId> remap(k_, k_);
        std::vector<ClassId> out(class_of_.size());
        ClassId next = 0;
        for (Vertex v = 0; v < class_of_.size(); ++v) {
            ClassId& r = remap[class_of_[v]];
            if (r == k_) r = next++;
            out[v] = r;
        }
        Coloring c;
        c.class_of_ = std::move(out);
        c.k_ = k_;
        return c;
    }

    /// Equality up to renaming of classes.
    friend bool operator==(const Coloring& a, const Coloring& b) {
        return a.k_ == b.k_ && a.canonical().class_of_ == b.canonical().class_of_;
    }

private:
    std::vector<ClassId> class_of_;
    std::size_t k_ = 0;
};

/// Smallest same-class count that keeps a vertex with this closed
/// neighborhood size in quorum: ceil(closed / 2).
constexpr std::size_t quorum_need(std::size_t closed_size) noexcept { return (closed_size + 1) / 2; }

struct VertexQuorum {
    std::size_t closed_size = 0;  // |N[v]|
    std::size_t same_count = 0;   // |N[v] ∩ π(v)|
    bool satisfied = false;
    bool tight = false;

    std::size_t need() const noexcept { return quorum_need(closed_size); }
};

struct QuorumReport {
    std::vector<VertexQuorum> vertices;
    std::vector<Vertex> violations;
    bool valid = false;
};

inline QuorumReport verify_quorum(const Graph& graph, const Coloring& coloring) {
    if (coloring.size() != graph.size())
        throw Error(ErrorCode::SizeMismatch, "coloring has " + std::to_string(coloring.size()) +
                                                 " entries, graph has " + std::to_string(graph.size()) + " vertices");
    QuorumReport report;
    report.vertices.resize(graph.size());
    for (Vertex v = 0; v < graph.size(); ++v) {
        auto& q = report.vertices[v];
        q.closed_size = graph.degree(v) + 1;
        q.same_count = 1;
        for (Vertex w : graph.neighbors(v))
            if (coloring[w] == coloring[v]) ++q.same_count;
        q.satisfied = q.same_count >= q.need();
        q.tight = q.same_count == q.need();
        if (!q.satisfied) report.violations.push_back(v);
    }
    report.valid = report.violations.empty();
    return report;
}

inline QuorumReport verify_quorum(const RootedTree& tree, const Coloring& coloring) {
    return verify_quorum(to_graph(tree), coloring);
}

/// Every non-leaf vertex meets the quorum threshold with equality. Leaves
/// (degree one) are exempt: a leaf sharing its neighbor's class always has
/// a surplus of one.
inline bool is_cost_effective(const Graph& graph, const Coloring& coloring) {
    const auto report = verify_quorum(graph, coloring);
    if (!report.valid)
        throw Error(ErrorCode::NotAQuorumColoring,
                    "vertex " + std::to_string(report.violations.front()) + " is below quorum");
    for (Vertex v = 0; v < graph.size(); ++v)
        if (graph.degree(v) != 1 && !report.vertices[v].tight) return false;
    return true;
}

inline bool is_cost_effective(const RootedTree& tree, const Coloring& coloring) {
    return is_cost_effective(to_graph(tree), coloring);
}

/// For each class, whether G[V_i] is connected.
inline std::vector<bool> check_class_connectivity(const Graph& graph, const Coloring& coloring) {
    if (coloring.size() != graph.size()) throw Error(ErrorCode::SizeMismatch, "coloring size differs from graph");
    const std::size_t k = coloring.class_count();
    std::vector<std::size_t> class_size(k, 0);
    for (Vertex v = 0; v < graph.size(); ++v) ++class_size[coloring[v]];

    std::vector<bool> connected(k, false);
    std::vector<char> seen(graph.size(), 0);
    std::vector<char> started(k, 0);
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < graph.size(); ++s) {
        const ClassId c = coloring[s];
        if (started[c]) continue;
        started[c] = 1;
        std::size_t reached = 1;
        seen[s] = 1;
        stack.push_back(s);
        while (!stack.empty()) {
            Vertex u = stack.back();
            stack.pop_back();
            for (Vertex w : graph.neighbors(u))
                if (!seen[w] && coloring[w] == c) {
                    seen[w] = 1;
                    ++reached;
                    stack.push_back(w);
                }
        }
        connected[c] = reached == class_size[c];
    }
    return connected;
}

inline std::vector<bool> check_class_connectivity(const RootedTree& tree, const Coloring& coloring) {
    return check_class_connectivity(to_graph(tree), coloring);
}

struct CorollaryViolation {
    enum class Kind { ClassTooSmall, SingletonOfHighDegree } kind;
    Vertex vertex;
    ClassId class_id;
    std::string message;
};

/// Class-size consequences of the quorum property: |V_i| >= floor(d(v)/2) + 1
/// for every v in V_i, and a singleton class holds only a vertex of degree <= 1.
/// Always empty for a valid quorum coloring.
inline std::vector<CorollaryViolation> check_corollaries(const Graph& graph, const Coloring& coloring) {
    const auto report = verify_quorum(graph, coloring);
    if (!report.valid) throw Error(ErrorCode::NotAQuorumColoring, "coloring is not a quorum coloring");
    std::vector<std::size_t> class_size(coloring.class_count(), 0);
    for (Vertex v = 0; v < graph.size(); ++v) ++class_size[coloring[v]];

    std::vector<CorollaryViolation> out;
    for (Vertex v = 0; v < graph.size(); ++v) {
        const ClassId c = coloring[v];
        const std::size_t d = graph.degree(v);
        if (class_size[c] < d / 2 + 1)
            out.push_back({CorollaryViolation::Kind::ClassTooSmall, v, c,
                           "class " + std::to_string(c) + " has " + std::to_string(class_size[c]) +
                               " vertices, vertex " + std::to_string(v) + " needs " + std::to_string(d / 2 + 1)});
        if (class_size[c] == 1 && d > 1)
            out.push_back({CorollaryViolation::Kind::SingletonOfHighDegree, v, c,
                           "singleton class holds vertex " + std::to_string(v) + " of degree " + std::to_string(d)});
    }
    return out;
}

inline std::vector<CorollaryViolation> check_corollaries(const RootedTree& tree, const Coloring& coloring) {
    return check_corollaries(to_graph(tree), coloring);
}

} // namespace quorum
