#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <queue>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "coloring.hpp"
#include "error.hpp"
#include "tree.hpp"

namespace quorum {

inline constexpr std::size_t kDefaultSizeCap = 10'000'000;

/// Perfect tree with N_i children at every depth-i vertex. Vertices are
/// numbered level by level, left to right, so v_{i,j} has index
/// l_0 + ... + l_{i-1} + j - 1.
inline RootedTree gen_perfect_per_level(std::span<const std::size_t> counts, std::size_t cap = kDefaultSizeCap) {
    std::size_t n = 1;
    std::size_t level = 1;
    for (std::size_t c : counts) {
        if (c == 0) throw Error(ErrorCode::InvalidArgument, "level child counts must be positive");
        if (__builtin_mul_overflow(level, c, &level) || __builtin_add_overflow(n, level, &n) || n > cap)
            throw Error(ErrorCode::SizeOverflow, "tree exceeds the cap of " + std::to_string(cap) + " vertices");
    }
    std::vector<Vertex> parent(n);
    parent[0] = RootedTree::kNoParent;
    std::size_t first = 0, width = 1, next = 1;
    for (std::size_t c : counts) {
        for (std::size_t k = 0; k < width; ++k)
            for (std::size_t j = 0; j < c; ++j) parent[next++] = first + k;
        first += width;
        width *= c;
    }
    return build_from_parent_table(std::move(parent));
}

inline RootedTree gen_perfect_nary(std::size_t arity, std::size_t height, std::size_t cap = kDefaultSizeCap) {
    if (arity == 0) throw Error(ErrorCode::InvalidArgument, "arity must be positive");
    const std::vector<std::size_t> counts(height, arity);
    return gen_perfect_per_level(counts, cap);
}

/// Uniform random labeled tree decoded from a random Pruefer sequence and
/// rooted at vertex 0.
inline RootedTree gen_random_tree(std::size_t n, std::uint64_t seed) {
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "tree needs at least one vertex");
    std::vector<Vertex> parent(n, RootedTree::kNoParent);
    if (n == 1) return build_from_parent_table(std::move(parent));

    std::vector<std::vector<Vertex>> adj(n);
    if (n == 2) {
        adj[0].push_back(1);
        adj[1].push_back(0);
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<Vertex> pick(0, n - 1);
        std::vector<Vertex> code(n - 2);
        for (auto& x : code) x = pick(rng);

        std::vector<std::size_t> deg(n, 1);
        for (Vertex x : code) ++deg[x];
        std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> leaves;
        for (Vertex v = 0; v < n; ++v)
            if (deg[v] == 1) leaves.push(v);
        for (Vertex x : code) {
            const Vertex leaf = leaves.top();
            leaves.pop();
            adj[leaf].push_back(x);
            adj[x].push_back(leaf);
            if (--deg[x] == 1) leaves.push(x);
        }
        const Vertex u = leaves.top();
        leaves.pop();
        const Vertex v = leaves.top();
        adj[u].push_back(v);
        adj[v].push_back(u);
    }

    std::vector<char> seen(n, 0);
    std::vector<Vertex> queue{0};
    seen[0] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head)
        for (Vertex w : adj[queue[head]])
            if (!seen[w]) {
                seen[w] = 1;
                parent[w] = queue[head];
                queue.push_back(w);
            }
    return build_from_parent_table(std::move(parent));
}

/// Perfect tree of height h in which each sibling group shares a child count.
/// The root and then every depth-i vertex (i < h - 1) draw one count from
/// `choices` for all of their children. Draws that exceed `cap` are retried.
inline RootedTree gen_locally_perfect(std::size_t height, std::span<const std::size_t> choices, std::uint64_t seed,
                                      std::size_t cap = kDefaultSizeCap, std::size_t retries = 64) {
    if (choices.empty()) throw Error(ErrorCode::InvalidArgument, "no child counts to choose from");
    for (std::size_t c : choices)
        if (c == 0) throw Error(ErrorCode::InvalidArgument, "child counts must be positive");

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, choices.size() - 1);
    for (std::size_t attempt = 0; attempt < retries; ++attempt) {
        std::vector<Vertex> parent{RootedTree::kNoParent};
        // children count of every vertex on the current level
        std::vector<std::size_t> kids_of{height == 0 ? 0 : choices[pick(rng)]};
        std::size_t first = 0;
        bool overflow = false;
        for (std::size_t depth = 0; depth < height && !overflow; ++depth) {
            std::vector<std::size_t> next_kids;
            const std::size_t width = kids_of.size();
            for (std::size_t k = 0; k < width && !overflow; ++k) {
                const std::size_t grand = depth + 1 < height ? choices[pick(rng)] : 0;
                for (std::size_t j = 0; j < kids_of[k]; ++j) {
                    parent.push_back(first + k);
                    next_kids.push_back(grand);
                }
                overflow = parent.size() > cap;
            }
            first += width;
            kids_of = std::move(next_kids);
        }
        if (!overflow) return build_from_parent_table(std::move(parent));
    }
    throw Error(ErrorCode::SizeOverflow, "no locally perfect tree within the cap of " + std::to_string(cap));
}

enum class SeedMode { Monochromatic, RandomConnected };

/// A quorum coloring to start refinement from. RandomConnected cuts each edge
/// independently and rejects invalid draws; the cut probability shrinks
/// linearly over the retry budget.
inline Coloring gen_seed_coloring(const RootedTree& tree, SeedMode mode, std::uint64_t seed, std::size_t retries = 1000) {
    const std::size_t n = tree.size();
    if (mode == SeedMode::Monochromatic) return Coloring::monochromatic(n);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<std::size_t> cuts(n);
    std::vector<char> cut(n);
    std::vector<std::size_t> label(n);
    for (std::size_t attempt = 0; attempt < retries; ++attempt) {
        const double p = 0.5 * (1.0 - static_cast<double>(attempt) / static_cast<double>(retries));
        std::fill(cuts.begin(), cuts.end(), 0);
        for (Vertex v = 0; v < n; ++v) {
            cut[v] = v != tree.root() && unit(rng) < p;
            if (cut[v]) {
                ++cuts[v];
                ++cuts[*tree.parent(v)];
            }
        }
        bool ok = true;
        for (Vertex v = 0; v < n && ok; ++v) ok = cuts[v] <= (tree.degree(v) + 1) / 2;
        if (!ok) continue;
        std::size_t next = 0;
        for (Vertex v : tree.level_order())
            label[v] = v == tree.root() || cut[v] ? next++ : label[*tree.parent(v)];
        return Coloring::from_labels(label);
    }
    throw Error(ErrorCode::RetriesExhausted, "no valid random coloring in " + std::to_string(retries) + " draws");
}

/// Instance families addressable from the command line:
///   "nary:N,h"  "levels:3,4,1"  "random:n,seed"  "local:h,{2,3},seed"
struct NarySpec {
    std::size_t arity = 2;
    std::size_t height = 0;
};
struct PerLevelSpec {
    std::vector<std::size_t> counts;
};
struct LocallyPerfectSpec {
    std::size_t height = 0;
    std::vector<std::size_t> choices;
    std::uint64_t seed = 0;
};
struct RandomTreeSpec {
    std::size_t n = 1;
    std::uint64_t seed = 0;
};
using ShapeSpec = std::variant<NarySpec, PerLevelSpec, LocallyPerfectSpec, RandomTreeSpec>;

namespace detail {

inline std::vector<std::uint64_t> parse_numbers(std::string_view text, std::string_view whole) {
    std::vector<std::uint64_t> out;
    if (text.empty()) return out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = text.find(',', pos);
        const std::string_view item = text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos);
        std::uint64_t value = 0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
        if (item.empty() || ec != std::errc() || ptr != item.data() + item.size())
            throw Error(ErrorCode::SyntaxError, "bad number '" + std::string(item) + "' in shape '" + std::string(whole) + "'");
        out.push_back(value);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

} // namespace detail

inline ShapeSpec parse_shape_spec(std::string_view text) {
    const std::size_t colon = text.find(':');
    if (colon == std::string_view::npos)
        throw Error(ErrorCode::SyntaxError, "shape '" + std::string(text) + "' lacks a family prefix");
    const std::string_view family = text.substr(0, colon);
    const std::string_view args = text.substr(colon + 1);
    auto bad_arity = [&] { return Error(ErrorCode::SyntaxError, "wrong number of arguments in '" + std::string(text) + "'"); };

    if (family == "nary") {
        auto v = detail::parse_numbers(args, text);
        if (v.size() != 2) throw bad_arity();
        return NarySpec{v[0], v[1]};
    }
    if (family == "levels") {
        auto v = detail::parse_numbers(args, text);
        return PerLevelSpec{{v.begin(), v.end()}};
    }
    if (family == "random") {
        auto v = detail::parse_numbers(args, text);
        if (v.size() != 2) throw bad_arity();
        return RandomTreeSpec{v[0], v[1]};
    }
    if (family == "local") {
        const std::size_t open = args.find('{');
        const std::size_t close = args.find('}');
        if (open == args.npos || close == args.npos || close < open)
            throw Error(ErrorCode::SyntaxError, "local shape needs a {..} set: '" + std::string(text) + "'");
        auto head = detail::parse_numbers(args.substr(0, open == 0 ? 0 : open - 1), text);
        auto set = detail::parse_numbers(args.substr(open + 1, close - open - 1), text);
        std::string_view tail = args.substr(close + 1);
        if (head.size() != 1 || tail.size() < 2 || tail.front() != ',' || args[open - 1] != ',') throw bad_arity();
        auto seed = detail::parse_numbers(tail.substr(1), text);
        if (seed.size() != 1) throw bad_arity();
        return LocallyPerfectSpec{head[0], {set.begin(), set.end()}, seed[0]};
    }
    throw Error(ErrorCode::SyntaxError, "unknown shape family '" + std::string(family) + "'");
}

inline std::string to_string(const ShapeSpec& spec) {
    auto join = [](const auto& xs) {
        std::string s;
        for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
        return s;
    };
    return std::visit(
        [&](const auto& s) -> std::string {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, NarySpec>)
                return "nary:" + std::to_string(s.arity) + "," + std::to_string(s.height);
            else if constexpr (std::is_same_v<T, PerLevelSpec>)
                return "levels:" + join(s.counts);
            else if constexpr (std::is_same_v<T, RandomTreeSpec>)
                return "random:" + std::to_string(s.n) + "," + std::to_string(s.seed);
            else
                return "local:" + std::to_string(s.height) + ",{" + join(s.choices) + "}," + std::to_string(s.seed);
        },
        spec);
}

inline RootedTree generate(const ShapeSpec& spec, std::size_t cap = kDefaultSizeCap) {
    return std::visit(
        [&](const auto& s) -> RootedTree {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, NarySpec>)
                return gen_perfect_nary(s.arity, s.height, cap);
            else if constexpr (std::is_same_v<T, PerLevelSpec>)
                return gen_perfect_per_level(s.counts, cap);
            else if constexpr (std::is_same_v<T, RandomTreeSpec>) {
                if (s.n > cap) throw Error(ErrorCode::SizeOverflow, "tree exceeds the size cap");
                return gen_random_tree(s.n, s.seed);
            } else
                return gen_locally_perfect(s.height, s.choices, s.seed, cap);
        },
        spec);
}

} // namespace quorum
