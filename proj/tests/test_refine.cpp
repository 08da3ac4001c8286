#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace quorum;
using namespace quorum::testing;

TEST(Algo1, ExampleInitialColoringRefinesToFifteen) {
    const auto t = example_tree();
    const auto input = example_initial_coloring();
    ASSERT_EQ(input.class_count(), 10u);
    ASSERT_TRUE(verify_quorum(t, input).valid);

    const auto r = algo1_refine(t, input);
    EXPECT_EQ(r.coloring.class_count(), 15u);
    EXPECT_TRUE(is_cost_effective(t, r.coloring));

    // first iteration recolors v_{1,1} and v_{1,2}, then v_{1,1} absorbs v_{2,2}
    ASSERT_FALSE(r.trace.steps.empty());
    const auto& root_step = r.trace.steps.front();
    EXPECT_EQ(root_step.vertex, example_vertex(0, 1));
    EXPECT_EQ(root_step.surplus, (std::vector<Vertex>{example_vertex(1, 1), example_vertex(1, 2)}));
    ASSERT_EQ(root_step.repairs.size(), 1u);
    EXPECT_EQ(root_step.repairs[0], std::make_pair(example_vertex(1, 1), example_vertex(2, 2)));
    EXPECT_EQ(root_step.classes_before, 10u);
    EXPECT_EQ(root_step.classes_after, 11u);
    // v_{3,2} followed v_{2,2} and was split off again one level down
    EXPECT_NE(r.coloring[example_vertex(3, 2)], r.coloring[example_vertex(1, 1)]);
    EXPECT_EQ(r.coloring[example_vertex(2, 2)], r.coloring[example_vertex(1, 1)]);
    // below v_{1,3} the reference recolors other same-shaped children; elsewhere the partitions agree
    const auto fig = example_final_coloring();
    auto outside = [&](Vertex v) {
        for (auto p = t.parent(v); p; p = t.parent(*p))
            if (*p == example_vertex(1, 3)) return false;
        return true;
    };
    for (Vertex u = 0; u < t.size(); ++u)
        for (Vertex v = 0; v < t.size(); ++v)
            if (outside(u) && outside(v)) {
                EXPECT_EQ(r.coloring[u] == r.coloring[v], fig[u] == fig[v]) << u << " " << v;
            }
}

TEST(Algo1, MatchesSolverWhenSolverIsGuidedByRefinedColoring) {
    const auto t = example_tree();
    const auto refined = algo1_refine(t, example_initial_coloring()).coloring;
    const auto guided = algo2_solve(t, {.guide = &refined});
    EXPECT_EQ(guided.coloring, refined);
}

TEST(Algo1, P3Monochromatic) {
    const auto t = p3_star();
    const auto r = algo1_refine(t, Coloring::monochromatic(3));
    EXPECT_EQ(r.coloring.class_count(), 2u);
    EXPECT_EQ(r.coloring, Coloring(std::vector<ClassId>{0, 1, 0}));  // child 1 split off
    // isomorphic to the solver's {root, child 1}, {child 2}
    const auto solved = algo2_solve(t).coloring;
    const auto swapped = Coloring(std::vector<ClassId>{solved[0], solved[2], solved[1]});
    EXPECT_EQ(r.coloring, swapped);
}

TEST(Algo1, CostEffectiveInputUnchanged) {
    const auto t = example_tree();
    const auto fig = example_final_coloring();
    const auto r = algo1_refine(t, fig);
    EXPECT_EQ(r.coloring, fig);
    for (const auto& s : r.trace.steps) {
        EXPECT_TRUE(s.surplus.empty());
        EXPECT_TRUE(s.repairs.empty());
    }
}

TEST(Algo1, Errors) {
    try {
        algo1_refine(p3_star(), Coloring::singletons(3));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotAQuorumColoring);
    }
    EXPECT_THROW(algo1_refine(p3_star(), Coloring::monochromatic(4)), Error);
}

TEST(Algo1, SingleVertexAndEdge) {
    EXPECT_EQ(algo1_refine(tree_from({-1}), Coloring::monochromatic(1)).coloring.class_count(), 1u);
    EXPECT_EQ(algo1_refine(k2_tree(), Coloring::monochromatic(2)).coloring.class_count(), 2u);
}

TEST(Algo1, RandomTreesAndSeeds) {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const auto t = gen_random_tree(1 + seed % 30, seed);
        for (auto mode : {SeedMode::Monochromatic, SeedMode::RandomConnected}) {
            const auto input = gen_seed_coloring(t, mode, seed);
            const auto r = algo1_refine(t, input, {.verify_each_step = true});
            ASSERT_TRUE(verify_quorum(t, r.coloring).valid);
            EXPECT_TRUE(is_cost_effective(t, r.coloring));
            EXPECT_GE(r.coloring.class_count(), input.class_count());
            for (bool b : check_class_connectivity(t, r.coloring)) EXPECT_TRUE(b);
            for (const auto& s : r.trace.steps) {
                EXPECT_GE(s.classes_after, s.classes_before);
                EXPECT_LE(s.repairs.size(), s.surplus.size());
            }
        }
    }
}

TEST(Algo1, PerLevelTreesReachSolverCount) {
    for (const auto& counts : small_count_vectors(4, 4, 120)) {
        const auto t = gen_perfect_per_level(counts);
        const auto alpha = algo2_solve(t).trace.alpha;
        for (std::uint64_t seed = 0; seed < 4; ++seed) {
            const auto input = gen_seed_coloring(t, seed == 0 ? SeedMode::Monochromatic : SeedMode::RandomConnected, seed);
            EXPECT_EQ(algo1_refine(t, input).coloring.class_count(), alpha) << ::testing::PrintToString(counts);
        }
    }
}

TEST(Algo1, DisconnectedInputClassesStayValid) {
    // path 0-1-2-3-4-5 with class {0,1,4,5} split in two pieces around {2,3}
    const auto t = tree_from({-1, 0, 1, 2, 3, 4});
    const Coloring input(std::vector<ClassId>{0, 0, 1, 1, 0, 0});
    ASSERT_TRUE(verify_quorum(t, input).valid);
    const auto r = algo1_refine(t, input, {.verify_each_step = true});
    EXPECT_TRUE(is_cost_effective(t, r.coloring));
    EXPECT_GE(r.coloring.class_count(), 2u);
}
