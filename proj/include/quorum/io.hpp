#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "coloring.hpp"
#include "error.hpp"
#include "graph.hpp"
#include "refine.hpp"
#include "solver.hpp"
#include "tree.hpp"

namespace quorum {

inline constexpr std::string_view kFormatVersion = "1";

enum class TreeFormat { ParentArray, Json, EdgeList };

inline TreeFormat parse_tree_format(std::string_view name) {
    if (name == "parent" || name == "parent-array" || name == "txt") return TreeFormat::ParentArray;
    if (name == "json") return TreeFormat::Json;
    if (name == "edges" || name == "edge-list" || name == "edge-list-rooted") return TreeFormat::EdgeList;
    throw Error(ErrorCode::InvalidArgument, "unknown tree format '" + std::string(name) + "'");
}

namespace detail {

inline Error syntax_error(std::size_t line, std::size_t column, const std::string& what) {
    return Error(ErrorCode::SyntaxError, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what);
}

/// Splits text into lines and whitespace-separated integer tokens, keeping
/// 1-based positions for error messages.
struct Token {
    long long value;
    std::size_t line;
    std::size_t column;
};

inline std::vector<std::vector<Token>> tokenize_lines(std::string_view text) {
    std::vector<std::vector<Token>> lines;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        ++line_no;
        std::vector<Token> tokens;
        std::size_t i = 0;
        while (i < line.size()) {
            if (std::isspace(static_cast<unsigned char>(line[i]))) {
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
            long long value = 0;
            auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + j, value);
            if (ec != std::errc() || ptr != line.data() + j)
                throw syntax_error(line_no, i + 1, "expected an integer, got '" + std::string(line.substr(i, j - i)) + "'");
            tokens.push_back({value, line_no, i + 1});
            i = j;
        }
        if (!tokens.empty()) lines.push_back(std::move(tokens));
        if (eol == text.size()) break;
        pos = eol + 1;
    }
    return lines;
}

template <typename F>
RootedTree semantic(F&& build) {
    try {
        return build();
    } catch (const Error& e) {
        if (e.code() == ErrorCode::SyntaxError) throw;
        throw Error(ErrorCode::SemanticError, e.what());
    }
}

inline std::size_t last_line(std::string_view text) {
    return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) + 1;
}

} // namespace detail

/// Parent-array text: n, then n lines holding the parent index or -1.
/// JSON: {"n", "root", "parents": [null at the root]}.
/// Edge list: "n root", then n-1 lines "u v" (orientation is ignored).
inline RootedTree parse_tree(std::string_view text, TreeFormat format) {
    using detail::syntax_error;
    switch (format) {
    case TreeFormat::ParentArray: {
        auto lines = detail::tokenize_lines(text);
        if (lines.empty()) throw syntax_error(1, 1, "missing vertex count");
        if (lines[0].size() != 1 || lines[0][0].value < 1)
            throw syntax_error(lines[0][0].line, lines[0][0].column, "first line must be a positive vertex count");
        const auto n = static_cast<std::size_t>(lines[0][0].value);
        if (lines.size() - 1 < n)
            throw syntax_error(detail::last_line(text), 1,
                               "expected " + std::to_string(n) + " parent lines, found " + std::to_string(lines.size() - 1));
        if (lines.size() - 1 > n) throw syntax_error(lines[n + 1][0].line, 1, "unexpected extra line");
        std::vector<std::optional<Vertex>> parents(n);
        for (std::size_t v = 0; v < n; ++v) {
            const auto& row = lines[v + 1];
            if (row.size() != 1) throw syntax_error(row[1].line, row[1].column, "one parent index per line");
            if (row[0].value < -1) throw syntax_error(row[0].line, row[0].column, "parent index must be -1 or >= 0");
            if (row[0].value >= 0) parents[v] = static_cast<Vertex>(row[0].value);
        }
        return detail::semantic([&] { return build_from_parent_array(parents); });
    }
    case TreeFormat::Json: {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw Error(ErrorCode::SyntaxError, e.what());
        }
        if (!doc.is_object() || !doc.contains("parents") || !doc["parents"].is_array())
            throw Error(ErrorCode::SyntaxError, "tree JSON needs a \"parents\" array");
        if (doc.contains("kind") && doc["kind"] != "tree")
            throw Error(ErrorCode::SemanticError, "document kind is " + doc["kind"].dump() + ", expected \"tree\"");
        std::vector<std::optional<Vertex>> parents;
        for (const auto& p : doc["parents"]) {
            if (p.is_null())
                parents.emplace_back();
            else if (p.is_number_integer() && p.get<long long>() >= 0)
                parents.emplace_back(p.get<Vertex>());
            else
                throw Error(ErrorCode::SyntaxError, "parent entries must be null or non-negative integers");
        }
        if (doc.contains("n") && doc["n"] != parents.size())
            throw Error(ErrorCode::SemanticError, "\"n\" disagrees with the parents array length");
        auto tree = detail::semantic([&] { return build_from_parent_array(parents); });
        if (doc.contains("root") && doc["root"] != tree.root())
            throw Error(ErrorCode::SemanticError, "\"root\" disagrees with the parents array");
        return tree;
    }
    case TreeFormat::EdgeList: {
        auto lines = detail::tokenize_lines(text);
        if (lines.empty() || lines[0].size() != 2 || lines[0][0].value < 1 || lines[0][1].value < 0)
            throw syntax_error(1, 1, "first line must be \"n root\"");
        const auto n = static_cast<std::size_t>(lines[0][0].value);
        const auto root = static_cast<Vertex>(lines[0][1].value);
        if (lines.size() - 1 != n - 1)
            throw syntax_error(detail::last_line(text), 1,
                               "expected " + std::to_string(n - 1) + " edge lines, found " + std::to_string(lines.size() - 1));
        std::vector<Edge> edges;
        for (std::size_t k = 1; k < lines.size(); ++k) {
            const auto& row = lines[k];
            if (row.size() != 2) throw syntax_error(row[0].line, 1, "edge lines hold two vertex indices");
            for (const auto& t : row)
                if (t.value < 0) throw syntax_error(t.line, t.column, "negative vertex index");
            edges.emplace_back(static_cast<Vertex>(row[0].value), static_cast<Vertex>(row[1].value));
        }
        return detail::semantic([&] {
            if (root >= n) throw Error(ErrorCode::IndexOutOfRange, "root out of range");
            const Graph g = Graph::from_edges(n, edges);
            std::vector<Vertex> parent(n, RootedTree::kNoParent);
            std::vector<char> seen(n, 0);
            std::vector<Vertex> queue{root};
            seen[root] = 1;
            for (std::size_t head = 0; head < queue.size(); ++head)
                for (Vertex w : g.neighbors(queue[head]))
                    if (!seen[w]) {
                        seen[w] = 1;
                        parent[w] = queue[head];
                        queue.push_back(w);
                    }
            if (queue.size() != n) throw Error(ErrorCode::CycleDetected, "edge list is not a spanning tree");
            return build_from_parent_table(std::move(parent));
        });
    }
    }
    throw Error(ErrorCode::InvalidArgument, "unknown tree format");
}

inline nlohmann::json tree_to_json(const RootedTree& tree) {
    nlohmann::json parents = nlohmann::json::array();
    for (Vertex v = 0; v < tree.size(); ++v) {
        if (auto p = tree.parent(v))
            parents.push_back(*p);
        else
            parents.push_back(nullptr);
    }
    return {{"kind", "tree"}, {"version", kFormatVersion}, {"n", tree.size()}, {"root", tree.root()}, {"parents", parents}};
}

inline std::string emit_tree(const RootedTree& tree, TreeFormat format) {
    std::string out;
    switch (format) {
    case TreeFormat::ParentArray:
        out = std::to_string(tree.size()) + "\n";
        for (Vertex v = 0; v < tree.size(); ++v) {
            auto p = tree.parent(v);
            out += (p ? std::to_string(*p) : std::string("-1")) + "\n";
        }
        return out;
    case TreeFormat::Json:
        return tree_to_json(tree).dump() + "\n";
    case TreeFormat::EdgeList:
        out = std::to_string(tree.size()) + " " + std::to_string(tree.root()) + "\n";
        for (Vertex v = 0; v < tree.size(); ++v)
            if (auto p = tree.parent(v)) out += std::to_string(*p) + " " + std::to_string(v) + "\n";
        return out;
    }
    return out;
}

inline nlohmann::json coloring_to_json(const Coloring& c) {
    return {{"kind", "coloring"}, {"version", kFormatVersion}, {"k", c.class_count()}, {"class_of", c.class_of()}};
}

inline Coloring coloring_from_json(const nlohmann::json& doc) {
    const nlohmann::json* body = &doc;
    if (doc.is_object() && doc.contains("witness")) body = &doc["witness"];
    if (!body->is_object() || !body->contains("class_of") || !(*body)["class_of"].is_array())
        throw Error(ErrorCode::SyntaxError, "coloring JSON needs a \"class_of\" array");
    std::vector<ClassId> ids;
    for (const auto& x : (*body)["class_of"]) {
        if (!x.is_number_integer() || x.get<long long>() < 0)
            throw Error(ErrorCode::SyntaxError, "class ids must be non-negative integers");
        ids.push_back(x.get<ClassId>());
    }
    Coloring c;
    try {
        c = Coloring(std::move(ids));
    } catch (const Error& e) {
        throw Error(ErrorCode::SemanticError, e.what());
    }
    if (body->contains("k") && (*body)["k"] != c.class_count())
        throw Error(ErrorCode::SemanticError, "\"k\" disagrees with the class ids");
    return c;
}

/// Accepts a coloring document or a result record carrying a "witness".
inline Coloring parse_coloring(std::string_view text) {
    try {
        return coloring_from_json(nlohmann::json::parse(text));
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::SyntaxError, e.what());
    }
}

inline std::string emit_coloring(const Coloring& c) { return coloring_to_json(c).dump() + "\n"; }

inline nlohmann::json graph_to_json(const Graph& g) {
    nlohmann::json edges = nlohmann::json::array();
    for (auto [u, v] : g.edges()) edges.push_back({u, v});
    return {{"kind", "graph"}, {"version", kFormatVersion}, {"n", g.size()}, {"edges", edges}};
}

inline Graph parse_graph(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::SyntaxError, e.what());
    }
    if (!doc.is_object() || !doc.contains("n") || !doc.contains("edges"))
        throw Error(ErrorCode::SyntaxError, "graph JSON needs \"n\" and \"edges\"");
    std::vector<Edge> edges;
    try {
        for (const auto& e : doc["edges"]) edges.emplace_back(e.at(0).get<Vertex>(), e.at(1).get<Vertex>());
        return Graph::from_edges(doc["n"].get<std::size_t>(), edges);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::SyntaxError, e.what());
    } catch (const Error& e) {
        throw Error(ErrorCode::SemanticError, e.what());
    }
}

inline std::string emit_graph(const Graph& g) { return graph_to_json(g).dump() + "\n"; }

inline nlohmann::json report_to_json(const QuorumReport& r) {
    nlohmann::json vertices = nlohmann::json::array();
    for (const auto& q : r.vertices)
        vertices.push_back({{"closed_size", q.closed_size},
                            {"same_count", q.same_count},
                            {"satisfied", q.satisfied},
                            {"tight", q.tight}});
    return {{"kind", "report"}, {"version", kFormatVersion}, {"valid", r.valid}, {"violations", r.violations}, {"vertices", vertices}};
}

/// "vertex v: same=s need=t", one per violating vertex.
inline std::string format_violations(const QuorumReport& r) {
    std::string out;
    for (Vertex v : r.violations)
        out += "vertex " + std::to_string(v) + ": same=" + std::to_string(r.vertices[v].same_count) +
               " need=" + std::to_string(r.vertices[v].need()) + "\n";
    return out;
}

inline nlohmann::json alpha_trace_to_json(const AlphaTrace& t) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : t.entries)
        entries.push_back({{"depth", e.depth}, {"position", e.position}, {"vertex", e.vertex}, {"alpha", e.value}});
    return {{"kind", "trace"}, {"version", kFormatVersion}, {"alpha", t.alpha}, {"sharing", t.sharing}, {"entries", entries}};
}

inline nlohmann::json refine_trace_to_json(const RefineTrace& t) {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s : t.steps) {
        nlohmann::json repairs = nlohmann::json::array();
        for (auto [a, b] : s.repairs) repairs.push_back({a, b});
        steps.push_back({{"vertex", s.vertex},
                         {"depth", s.depth},
                         {"position", s.position},
                         {"surplus", s.surplus},
                         {"repairs", repairs},
                         {"classes_before", s.classes_before},
                         {"classes_after", s.classes_after}});
    }
    return {{"kind", "trace"}, {"version", kFormatVersion}, {"steps", steps}};
}

/// One line of a result log.
struct ResultRecord {
    ResultRecord() = default;
    ResultRecord(std::string instance_, std::string method_) : instance(std::move(instance_)), method(std::move(method_)) {}

    std::string instance;
    std::string method;
    std::string value_key = "psi_q";  // "value" for bounds
    std::uint64_t value = 0;
    std::optional<std::size_t> n;
    std::optional<Coloring> witness;
    std::optional<nlohmann::json> trace;
    std::optional<double> elapsed_ms;
};

inline nlohmann::json result_to_json(const ResultRecord& r) {
    nlohmann::json j = {{"kind", "result"}, {"version", kFormatVersion}, {"instance", r.instance}, {"method", r.method}};
    j[r.value_key] = r.value;
    if (r.n) j["n"] = *r.n;
    if (r.witness) j["witness"] = coloring_to_json(*r.witness);
    if (r.trace) j["trace"] = *r.trace;
    if (r.elapsed_ms) j["elapsed_ms"] = *r.elapsed_ms;
    return j;
}

inline std::string emit_result(const ResultRecord& r) { return result_to_json(r).dump() + "\n"; }

// ---------------------------------------------------------------------------
// DOT export

struct DotOptions {
    std::string name = "T";
    bool show_class = true;
};

/// Fill color for a class id: a fixed 24-entry palette, then hue rotation.
inline std::string palette_color(ClassId c) {
    static constexpr const char* kPalette[24] = {
        "#e6194b", "#3cb44b", "#ffe119", "#4363d8", "#f58231", "#911eb4", "#46f0f0", "#f032e6",
        "#bcf60c", "#fabebe", "#008080", "#e6beff", "#9a6324", "#fffac8", "#800000", "#aaffc3",
        "#808000", "#ffd8b1", "#000075", "#808080", "#a9a9a9", "#ff7f50", "#6495ed", "#dc143c",
    };
    if (c < 24) return kPalette[c];
    // golden-angle hue steps stay distinct for a long while
    const double hue = std::fmod(static_cast<double>(c - 24) * 0.618033988749895, 1.0);
    const double sat = 0.45 + 0.1 * static_cast<double>((c / 24) % 4);
    const double val = 0.95 - 0.1 * static_cast<double>((c / 96) % 3);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f %.3f %.3f", hue, sat, val);
    return buf;
}

inline std::string emit_dot(const RootedTree& tree, const Coloring& coloring, const DotOptions& options = {}) {
    if (coloring.size() != tree.size()) throw Error(ErrorCode::SizeMismatch, "coloring size differs from tree");
    const Coloring canon = coloring.canonical();
    std::ostringstream out;
    out << "digraph \"" << options.name << "\" {\n  node [style=filled];\n";
    for (Vertex v : tree.level_order()) {
        out << "  " << v << " [label=\"v_{" << tree.depth(v) << "," << tree.position_in_level(v) << "}";
        if (options.show_class) out << " / " << canon[v] + 1;
        out << "\", fillcolor=\"" << palette_color(canon[v]) << "\"];\n";
    }
    for (Vertex v : tree.level_order())
        if (auto p = tree.parent(v)) out << "  " << *p << " -> " << v << ";\n";
    out << "}\n";
    return out.str();
}

inline std::string emit_dot(const Graph& graph, const Coloring& coloring, const DotOptions& options = {}) {
    if (coloring.size() != graph.size()) throw Error(ErrorCode::SizeMismatch, "coloring size differs from graph");
    const Coloring canon = coloring.canonical();
    std::ostringstream out;
    out << "graph \"" << options.name << "\" {\n  node [style=filled];\n";
    for (Vertex v = 0; v < graph.size(); ++v) {
        out << "  " << v << " [label=\"" << v;
        if (options.show_class) out << " / " << canon[v] + 1;
        out << "\", fillcolor=\"" << palette_color(canon[v]) << "\"];\n";
    }
    for (auto [u, v] : graph.edges()) out << "  " << u << " -- " << v << ";\n";
    out << "}\n";
    return out.str();
}

} // namespace quorum
