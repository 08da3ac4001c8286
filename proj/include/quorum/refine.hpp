#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "coloring.hpp"
#include "error.hpp"
#include "tree.hpp"

namespace quorum {

/// What happened while processing one internal vertex v_{i,j}.
struct RefineStep {
    Vertex vertex = 0;
    std::size_t depth = 0;
    std::size_t position = 0;
    std::vector<Vertex> surplus;                 // S_{i,j}, recolored with new colors
    std::vector<std::pair<Vertex, Vertex>> repairs;  // (s, w): w joined s's new class
    std::size_t classes_before = 0;
    std::size_t classes_after = 0;
};

struct RefineTrace {
    std::vector<RefineStep> steps;
};

struct RefineResult {
    Coloring coloring;
    RefineTrace trace;
};

/// Raised when the refined coloring fails a validity or tightness check.
/// Carries the trace up to the failing point.
class RefineError : public Error {
public:
    RefineError(const std::string& what, RefineTrace trace)
        : Error(ErrorCode::InternalInvariantViolation, what), trace_(std::move(trace)) {}
    const RefineTrace& trace() const noexcept { return trace_; }

private:
    RefineTrace trace_;
};

struct RefineOptions {
#ifdef NDEBUG
    bool verify_each_step = false;
#else
    bool verify_each_step = true;
#endif
};

namespace detail {

class RefineState {
public:
    RefineState(const RootedTree& tree, const Coloring& input) : tree_(tree), color_(input.class_of()) {
        class_size_.assign(input.class_count(), 0);
        for (ClassId c : color_) ++class_size_[c];
        classes_ = input.class_count();
    }

    std::size_t classes() const noexcept { return classes_; }
    ClassId color(Vertex v) const { return color_[v]; }
    const std::vector<ClassId>& colors() const noexcept { return color_; }

    ClassId fresh() {
        class_size_.push_back(0);
        return class_size_.size() - 1;
    }

    std::size_t same_count(Vertex v) const {
        std::size_t same = 1;
        if (auto p = tree_.parent(v); p && color_[*p] == color_[v]) ++same;
        for (Vertex c : tree_.children(v))
            if (color_[c] == color_[v]) ++same;
        return same;
    }

    std::size_t need(Vertex v) const { return quorum_need(tree_.degree(v) + 1); }

    /// Moves `top` and every strict descendant of `top` currently colored
    /// `from` into class `to`.
    void absorb_subtree(Vertex top, ClassId from, ClassId to) {
        set(top, to);
        stack_.assign(1, top);
        while (!stack_.empty()) {
            Vertex u = stack_.back();
            stack_.pop_back();
            for (Vertex c : tree_.children(u)) {
                if (color_[c] == from) set(c, to);
                stack_.push_back(c);
            }
        }
    }

private:
    void set(Vertex v, ClassId to) {
        const ClassId from = color_[v];
        if (from == to) return;
        if (--class_size_[from] == 0) --classes_;
        if (class_size_[to]++ == 0) ++classes_;
        color_[v] = to;
    }

    const RootedTree& tree_;
    std::vector<ClassId> color_;
    std::vector<std::size_t> class_size_;
    std::size_t classes_ = 0;
    std::vector<Vertex> stack_;
};

} // namespace detail

/// Turns any quorum coloring of a tree into a cost-effective one with at least
/// as many classes. Vertices are processed top-down in canonical order. A
/// vertex with surplus recolors its lowest-index same-class children (with
/// their same-class descendants) using fresh colors; a recolored child that
/// drops below quorum pulls in its lowest-index child of another class,
/// together with that child's descendants from the same old class.
inline RefineResult algo1_refine(const RootedTree& tree, const Coloring& input, const RefineOptions& options = {}) {
    if (input.size() != tree.size()) throw Error(ErrorCode::SizeMismatch, "coloring size differs from tree");
    const Graph graph = to_graph(tree);
    {
        const auto report = verify_quorum(graph, input);
        if (!report.valid)
            throw Error(ErrorCode::NotAQuorumColoring,
                        "vertex " + std::to_string(report.violations.front()) + " is below quorum");
    }

    detail::RefineState state(tree, input);
    RefineResult result;
    auto& steps = result.trace.steps;

    auto fail = [&](const std::string& what) -> void { throw RefineError(what, result.trace); };

    for (std::size_t i = 0; i < tree.height(); ++i) {
        for (Vertex v : tree.level(i)) {
            if (tree.child_count(v) == 0) continue;
            RefineStep step;
            step.vertex = v;
            step.depth = i;
            step.position = tree.position_in_level(v);
            step.classes_before = state.classes();

            const ClassId c = state.color(v);
            const std::size_t same = state.same_count(v);
            const std::size_t need = state.need(v);
            if (same > need) {
                std::size_t surplus = same - need;
                for (Vertex ch : tree.children(v))
                    if (surplus > 0 && state.color(ch) == c) {
                        step.surplus.push_back(ch);
                        --surplus;
                    }
                if (surplus != 0) {
                    steps.push_back(step);
                    fail("vertex " + std::to_string(v) + " has surplus but too few same-class children");
                }
                for (Vertex s : step.surplus) state.absorb_subtree(s, c, state.fresh());
            }

            for (Vertex s : step.surplus) {
                if (state.same_count(s) >= state.need(s)) continue;
                const ClassId cs = state.color(s);
                Vertex w = s;
                for (Vertex g : tree.children(s))
                    if (state.color(g) != cs) {
                        w = g;
                        break;
                    }
                if (w == s) {
                    steps.push_back(step);
                    fail("vertex " + std::to_string(s) + " is deficient and has no child outside its class");
                }
                state.absorb_subtree(w, state.color(w), cs);
                step.repairs.emplace_back(s, w);
            }

            step.classes_after = state.classes();
            steps.push_back(std::move(step));

            if (options.verify_each_step) {
                const auto report = verify_quorum(graph, Coloring::from_labels(state.colors()));
                if (!report.valid)
                    fail("vertex " + std::to_string(report.violations.front()) + " below quorum after processing " +
                         std::to_string(v));
            }
        }
    }

    result.coloring = Coloring::from_labels(state.colors());
    const auto report = verify_quorum(graph, result.coloring);
    if (!report.valid) fail("refined coloring violates quorum at vertex " + std::to_string(report.violations.front()));
    for (Vertex v = 0; v < tree.size(); ++v)
        if (graph.degree(v) != 1 && !report.vertices[v].tight)
            fail("refined coloring is not tight at internal vertex " + std::to_string(v));
    if (result.coloring.class_count() < input.class_count()) fail("refinement lost classes");
    return result;
}

} // namespace quorum
