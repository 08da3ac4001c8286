#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace quorum;
using namespace quorum::testing;

TEST(BruteForceTree, Examples) {
    EXPECT_EQ(brute_force_tree(k2_tree()).psi_q, 2u);
    EXPECT_EQ(brute_force_tree(star(5)).psi_q, 4u);
    EXPECT_EQ(brute_force_tree(gen_perfect_nary(2, 3)).psi_q, 10u);
    EXPECT_EQ(brute_force_tree(gen_perfect_nary(2, 2)).psi_q, 5u);
    EXPECT_EQ(brute_force_tree(p3_star()).psi_q, 2u);
    EXPECT_EQ(brute_force_tree(path4()).psi_q, 3u);
    EXPECT_EQ(brute_force_tree(tree_from({-1})).psi_q, 1u);
}

TEST(BruteForceTree, WitnessIsValidAndDeterministic) {
    const auto t = gen_perfect_nary(2, 3);
    const auto a = brute_force_tree(t);
    const auto b = brute_force_tree(t);
    EXPECT_EQ(a.cut_mask, b.cut_mask);
    EXPECT_EQ(a.witness, b.witness);
    EXPECT_EQ(a.witness.class_count(), a.psi_q);
    EXPECT_TRUE(verify_quorum(t, a.witness).valid);
    for (bool c : check_class_connectivity(t, a.witness)) EXPECT_TRUE(c);
}

TEST(BruteForceTree, SmallestMaximizingCutMask) {
    // P3: cutting either edge gives 2 classes; mask 0b01 (edge to vertex 1) wins
    const auto r = brute_force_tree(p3_star());
    EXPECT_EQ(r.cut_mask, 1u);
    EXPECT_EQ(r.witness, Coloring(std::vector<ClassId>{0, 1, 0}));
}

TEST(BruteForceTree, TooLarge) {
    try {
        brute_force_tree(gen_random_tree(21, 1));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::TooLarge);
    }
    EXPECT_NO_THROW(brute_force_tree(gen_random_tree(8, 1), 8));
}

TEST(BruteForceTree, AgreesWithExhaustivePartitionSearch) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const auto t = gen_random_tree(1 + seed % 9, seed);
        EXPECT_EQ(brute_force_tree(t).psi_q, exhaustive_psi_q(to_graph(t))) << seed;
    }
}

TEST(BruteForceGraph, SmallFamilies) {
    EXPECT_EQ(brute_force_graph(complete_graph(3)).psi_q, 1u);
    EXPECT_EQ(brute_force_graph(complete_graph(4)).psi_q, 2u);
    EXPECT_EQ(brute_force_graph(complete_graph(5)).psi_q, 1u);
    EXPECT_EQ(brute_force_graph(complete_graph(6)).psi_q, 2u);
    EXPECT_EQ(brute_force_graph(edgeless_graph(5)).psi_q, 5u);
    EXPECT_EQ(brute_force_graph(disjoint_union(complete_graph(3), complete_graph(4))).psi_q, 3u);
}

TEST(BruteForceGraph, WitnessAndLimit) {
    const auto r = brute_force_graph(complete_graph(4));
    EXPECT_TRUE(verify_quorum(complete_graph(4), r.witness).valid);
    EXPECT_EQ(r.witness.class_count(), 2u);
    // 0001 and 0010 isolate a vertex of degree 3, so 0011 is the first maximizer
    EXPECT_EQ(r.witness.class_of(), (std::vector<ClassId>{0, 0, 1, 1}));
    EXPECT_THROW(brute_force_graph(edgeless_graph(11)), Error);
}

TEST(BruteForceGraph, RandomGraphsAgreeWithIndependentSearch) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 1 + rng() % 7;
        std::vector<Edge> edges;
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v)
                if (rng() % 2) edges.emplace_back(u, v);
        const Graph g = Graph::from_edges(n, edges);
        const auto r = brute_force_graph(g);
        EXPECT_EQ(r.psi_q, exhaustive_psi_q(g));
        EXPECT_GE(r.psi_q, 1u);
        EXPECT_LE(r.psi_q, n);
        EXPECT_EQ(r.psi_q == n, g.max_degree() <= 1);
    }
}
