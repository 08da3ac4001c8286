#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "qc_app.hpp"

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run qc_run(std::vector<std::string> args, const std::string& input = {}) {
    std::istringstream in(input);
    std::ostringstream out, err;
    const int code = qc::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

class TempDir {
public:
    TempDir() {
        path_ = std::filesystem::temp_directory_path() /
                ("qc_cli_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)) + "_" +
                 ::testing::UnitTest::GetInstance()->current_test_info()->name());
        std::filesystem::create_directories(path_);
    }
    ~TempDir() { std::filesystem::remove_all(path_); }
    std::string file(const std::string& name, const std::string& content) const {
        const auto p = (path_ / name).string();
        std::ofstream(p) << content;
        return p;
    }
    std::string path(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

nlohmann::json json_of(const Run& r) { return nlohmann::json::parse(r.out); }

} // namespace

TEST(Cli, SolveExampleShape) {
    const auto r = qc_run({"solve", "--shape", "levels:3,4,1"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json_of(r);
    EXPECT_EQ(j["psi_q"], 15);
    EXPECT_EQ(j["n"], 28);
    EXPECT_EQ(j["method"], "algo2");
    EXPECT_LT(j["operations"].get<std::size_t>(), 5u * 28u);
}

TEST(Cli, SolveWithTraceAndWitness) {
    const auto r = qc_run({"solve", "--shape", "nary:2,2", "--witness", "--trace", "--pretty"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json_of(r);
    EXPECT_EQ(j["psi_q"], 5);
    EXPECT_EQ(j["witness"]["k"], 5);
    EXPECT_TRUE(j.contains("trace"));
}

TEST(Cli, SolveRejectsNonPerLevelTree) {
    TempDir dir;
    const auto path = dir.file("t.txt", "4\n-1\n0\n0\n1\n");
    const auto r = qc_run({"solve", "--tree", path});
    EXPECT_EQ(r.code, 1);
    EXPECT_FALSE(r.err.empty());
}

TEST(Cli, VerifyReportsViolations) {
    TempDir dir;
    const auto tree = dir.file("p3.txt", "3\n-1\n0\n0\n");
    const auto col = dir.file("c.json", R"({"class_of":[0,1,2]})");
    const auto r = qc_run({"verify", "--tree", tree, "--coloring", col});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("vertex 0"), std::string::npos) << r.err;
    EXPECT_EQ(json_of(r)["valid"], false);
}

TEST(Cli, SolveThenVerifyPipeline) {
    TempDir dir;
    const auto result = dir.path("solve.json");
    ASSERT_EQ(qc_run({"solve", "--shape", "levels:3,4,1", "--witness", "-o", result}).code, 0);
    const auto r = qc_run({"verify", "--shape", "levels:3,4,1", "--coloring", result});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json_of(r);
    EXPECT_EQ(j["valid"], true);
    EXPECT_EQ(j["cost_effective"], true);
    EXPECT_EQ(j["classes_connected"], true);
    EXPECT_EQ(j["k"], 15);
}

TEST(Cli, VerifyFromStdin) {
    const auto r = qc_run({"verify", "--shape", "levels:2", "--coloring", "-"}, R"({"class_of":[0,0,1]})");
    EXPECT_EQ(r.code, 0) << r.err;
}

TEST(Cli, RefineThenVerify) {
    TempDir dir;
    const auto tree = dir.path("t.json");
    ASSERT_EQ(qc_run({"gen", "--shape", "random:14,3", "-o", tree}).code, 0);
    const auto refined = dir.path("r.json");
    const auto r = qc_run({"refine", "--tree", tree, "--seed-mode", "random", "--seed", "5", "--trace", "-o", refined});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto v = qc_run({"verify", "--tree", tree, "--coloring", refined});
    ASSERT_EQ(v.code, 0) << v.err;
    EXPECT_EQ(json_of(v)["cost_effective"], true);
}

TEST(Cli, GenFormatsRoundTrip) {
    TempDir dir;
    for (const std::string fmt : {"parent", "json", "edges"}) {
        const auto path = dir.path("t." + fmt);
        ASSERT_EQ(qc_run({"gen", "--shape", "nary:3,2", "--format", fmt, "-o", path}).code, 0);
        const auto r = qc_run({"bound", "--tree", path, "--format", fmt});
        ASSERT_EQ(r.code, 0) << r.err;
        EXPECT_EQ(json_of(r)["n"], 13);
    }
}

TEST(Cli, ExactPicksMethod) {
    auto j = json_of(qc_run({"exact", "--shape", "nary:2,3"}));
    EXPECT_EQ(j["method"], "closed_form");
    EXPECT_EQ(j["psi_q"], 10);
    j = json_of(qc_run({"exact", "--shape", "levels:1,1,1"}));
    EXPECT_EQ(j["method"], "matching_formula");
    EXPECT_EQ(j["psi_q"], 3);
    j = json_of(qc_run({"exact", "--shape", "levels:3,4,1"}));
    EXPECT_EQ(j["method"], "algo2");
    EXPECT_EQ(j["psi_q"], 15);
    const auto r = qc_run({"exact", "--shape", "local:2,{2,4},3"});
    if (r.code != 0) {
        EXPECT_NE(r.err.find("bruteforce"), std::string::npos);
    }
}

TEST(Cli, BruteforceTreeAndGraph) {
    auto j = json_of(qc_run({"bruteforce", "--shape", "nary:2,2", "--witness"}));
    EXPECT_EQ(j["psi_q"], 5);
    EXPECT_EQ(j["witness"]["k"], 5);
    TempDir dir;
    const auto g = dir.file("k4.json", quorum::emit_graph(quorum::complete_graph(4)));
    j = json_of(qc_run({"bruteforce", "--graph", g}));
    EXPECT_EQ(j["psi_q"], 2);
    const auto r = qc_run({"bruteforce", "--shape", "nary:2,3", "--limit", "10"});
    EXPECT_EQ(r.code, 1);
}

TEST(Cli, ClosedFormAndDot) {
    EXPECT_EQ(json_of(qc_run({"closed-form", "--height", "2"}))["psi_q"], 5);
    const auto r = qc_run({"export-dot", "--shape", "levels:2"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("digraph", 0), 0u);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(qc_run({}).code, 2);
    EXPECT_EQ(qc_run({"frobnicate"}).code, 2);
    EXPECT_EQ(qc_run({"solve"}).code, 2);
    EXPECT_EQ(qc_run({"solve", "--shape", "nary:2,2", "--tree", "x"}).code, 2);
    EXPECT_EQ(qc_run({"solve", "--bogus"}).code, 2);
    EXPECT_EQ(qc_run({"--help"}).code, 0);
    EXPECT_EQ(qc_run({"solve", "--shape", "nary:"}).code, 1);
}

TEST(Cli, BenchSmoke) {
    const auto r = qc_run({"bench", "--family", "nary:2", "--heights", "4..6", "--reps", "1", "--json"});
    EXPECT_EQ(r.code, 0) << r.err;
    std::istringstream lines(r.out);
    std::string line;
    std::size_t rows = 0;
    while (std::getline(lines, line)) {
        const auto j = nlohmann::json::parse(line);
        EXPECT_EQ(j["ops_ok"], true);
        ++rows;
    }
    EXPECT_EQ(rows, 3u);
    EXPECT_EQ(qc_run({"bench", "--family", "tri", "--heights", "4"}).code, 1);
}
