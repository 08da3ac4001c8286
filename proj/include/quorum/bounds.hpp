#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

#include "error.hpp"
#include "matching.hpp"
#include "tree.hpp"

namespace quorum {

/// Lower bound mu(T[V \ L]) + n - sum_{v in V \ L} floor(d(v)/2), linear time.
inline std::size_t bound_theorem1(const RootedTree& tree) {
    if (tree.size() < 2) throw Error(ErrorCode::TrivialTree, "bound needs at least two vertices");
    const auto forest = internal_forest(tree);
    std::size_t halves = 0;
    for (Vertex v : forest.original) halves += tree.degree(v) / 2;
    return matching_number_forest(forest.graph).size() + tree.size() - halves;
}

/// Exact psi_q for trees with maximum degree at most 3: mu(T[V \ L]) + |L|.
inline std::size_t exact_binary(const RootedTree& tree) {
    if (tree.size() < 2) throw Error(ErrorCode::TrivialTree, "formula needs at least two vertices");
    if (tree.max_degree() > 3)
        throw Error(ErrorCode::NotBinary, "maximum degree is " + std::to_string(tree.max_degree()));
    const auto forest = internal_forest(tree);
    const std::size_t leaves = tree.size() - forest.original.size();
    return matching_number_forest(forest.graph).size() + leaves;
}

/// psi_q of the perfect binary tree of height h, (2^(h+2) - 2^(h mod 2)) / 3.
/// This is the integer form of 2^(h+2)/3 * (1 - (1/4)^(floor(h/2)+1)).
inline std::uint64_t closed_form_perfect_binary(std::size_t h) {
    if (h > 61) throw Error(ErrorCode::Overflow, "height " + std::to_string(h) + " overflows 64-bit arithmetic");
    const std::uint64_t top = std::uint64_t{1} << (h + 2);
    return (top - (std::uint64_t{1} << (h % 2))) / 3;
}

/// psi_q is additive over connected components.
inline std::uint64_t psi_q_forest(std::span<const std::uint64_t> components) {
    std::uint64_t sum = 0;
    for (auto c : components) {
        if (c == 0) throw Error(ErrorCode::InvalidArgument, "a component has psi_q >= 1");
        sum += c;
    }
    return sum;
}

} // namespace quorum
