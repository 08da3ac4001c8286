#pragma once

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <quorum/quorum.hpp>

namespace qc {

using namespace quorum;

/// Exit codes: 0 success, 1 domain error, 2 usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

struct InstanceArgs {
    std::string tree_path;
    std::string shape;
    std::string format;
};

struct OutputArgs {
    std::string out_path;
    bool pretty = false;
};

class App {
public:
    App(std::istream& in, std::ostream& out, std::ostream& err) : in_(in), out_(out), err_(err) {}

    int run(const std::vector<std::string>& args);

private:
    std::string read_source(const std::string& path) {
        if (path == "-") return {std::istreambuf_iterator<char>(in_), {}};
        std::ifstream f(path, std::ios::binary);
        if (!f) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
        return {std::istreambuf_iterator<char>(f), {}};
    }

    RootedTree load_tree(const InstanceArgs& a, std::string& descriptor) {
        if (!a.shape.empty() && !a.tree_path.empty())
            throw CLI::ValidationError("--tree and --shape are mutually exclusive");
        if (!a.shape.empty()) {
            descriptor = a.shape;
            return generate(parse_shape_spec(a.shape));
        }
        if (a.tree_path.empty()) throw CLI::ValidationError("an instance is required: --tree FILE or --shape SPEC");
        descriptor = a.tree_path;
        TreeFormat fmt = TreeFormat::ParentArray;
        if (!a.format.empty())
            fmt = parse_tree_format(a.format);
        else if (a.tree_path.ends_with(".json"))
            fmt = TreeFormat::Json;
        else if (a.tree_path.ends_with(".edges"))
            fmt = TreeFormat::EdgeList;
        return parse_tree(read_source(a.tree_path), fmt);
    }

    void write(const OutputArgs& o, const std::string& text) {
        if (o.out_path.empty() || o.out_path == "-") {
            out_ << text;
            return;
        }
        std::ofstream f(o.out_path, std::ios::binary);
        if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write '" + o.out_path + "'");
        f << text;
    }

    void write_json(const OutputArgs& o, const nlohmann::json& j) { write(o, (o.pretty ? j.dump(2) : j.dump()) + "\n"); }

    static std::size_t brute_limit(std::size_t fallback) {
        if (const char* env = std::getenv("QC_BRUTE_LIMIT")) {
            char* end = nullptr;
            const unsigned long v = std::strtoul(env, &end, 10);
            if (end && *end == '\0' && v > 0) return v;
        }
        return fallback;
    }

    static std::vector<std::size_t> parse_heights(const std::string& text) {
        std::vector<std::size_t> out;
        if (auto dots = text.find(".."); dots != std::string::npos) {
            const auto lo = detail::parse_numbers(std::string_view(text).substr(0, dots), text);
            const auto hi = detail::parse_numbers(std::string_view(text).substr(dots + 2), text);
            if (lo.size() != 1 || hi.size() != 1 || lo[0] > hi[0])
                throw CLI::ValidationError("--heights", "expected A..B with A <= B");
            for (auto h = lo[0]; h <= hi[0]; ++h) out.push_back(h);
            return out;
        }
        for (auto h : detail::parse_numbers(text, text)) out.push_back(h);
        if (out.empty()) throw CLI::ValidationError("--heights", "no heights given");
        return out;
    }

    std::istream& in_;
    std::ostream& out_;
    std::ostream& err_;
};

inline int App::run(const std::vector<std::string>& args) {
    CLI::App app{"Quorum colorings of perfect trees: solve, refine, verify, bound and benchmark."};
    app.name("qc");
    app.require_subcommand(1);

    auto add_instance = [](CLI::App* sub, InstanceArgs& a) {
        sub->add_option("--tree", a.tree_path, "Tree file, '-' for stdin");
        sub->add_option("--shape", a.shape, "Generated instance: nary:N,h | levels:3,4,1 | random:n,seed | local:h,{2,3},seed");
        sub->add_option("--format", a.format, "Tree format: parent | json | edges (default: by extension)");
    };
    auto add_output = [](CLI::App* sub, OutputArgs& o) {
        sub->add_option("-o,--out", o.out_path, "Output file (default stdout)");
        sub->add_flag("--pretty", o.pretty, "Indented JSON");
    };

    InstanceArgs inst;
    OutputArgs outp;
    bool witness = false, trace = false;
    std::string coloring_path, graph_path, seed_mode = "mono";
    std::uint64_t seed = 0;
    std::size_t limit = 0, height = 0, reps = 5;
    std::string family = "nary:2", heights = "10..18";
    double threshold = 3.0;
    bool bench_json = false;
    std::string gen_format = "json";

    auto* gen = app.add_subcommand("gen", "Generate a tree instance");
    gen->add_option("--shape", inst.shape, "Shape spec")->required();
    gen->add_option("--format", gen_format, "Output format: parent | json | edges");
    add_output(gen, outp);

    auto* solve = app.add_subcommand("solve", "Linear-time psi_q-coloring of a per-level perfect tree");
    add_instance(solve, inst);
    add_output(solve, outp);
    solve->add_flag("--witness", witness, "Include the coloring");
    solve->add_flag("--trace", trace, "Include the per-vertex alpha trace");

    auto* refine = app.add_subcommand("refine", "Refine a quorum coloring into a cost-effective one");
    add_instance(refine, inst);
    add_output(refine, outp);
    refine->add_option("--coloring", coloring_path, "Input coloring JSON (default: generated seed coloring)");
    refine->add_option("--seed-mode", seed_mode, "Seed coloring mode: mono | random")->check(CLI::IsMember({"mono", "random"}));
    refine->add_option("--seed", seed, "RNG seed for --seed-mode random");
    refine->add_flag("--trace", trace, "Include the refinement trace");

    auto* verify = app.add_subcommand("verify", "Check the quorum property of a coloring");
    add_instance(verify, inst);
    add_output(verify, outp);
    verify->add_option("--graph", graph_path, "General graph JSON instead of a tree");
    verify->add_option("--coloring", coloring_path, "Coloring JSON or result record with a witness")->required();

    auto* bound = app.add_subcommand("bound", "Matching-based lower bound on psi_q of a tree");
    add_instance(bound, inst);
    add_output(bound, outp);

    auto* exact = app.add_subcommand("exact", "Exact psi_q by the most specific applicable method");
    add_instance(exact, inst);
    add_output(exact, outp);

    auto* brute = app.add_subcommand("bruteforce", "Exhaustive psi_q of a small tree or graph");
    add_instance(brute, inst);
    add_output(brute, outp);
    brute->add_option("--graph", graph_path, "General graph JSON instead of a tree");
    brute->add_option("--limit", limit, "Maximum order (default 20 for trees, 10 for graphs; env QC_BRUTE_LIMIT)");
    brute->add_flag("--witness", witness, "Include a maximizing coloring");

    auto* closed = app.add_subcommand("closed-form", "psi_q of the perfect binary tree of a given height");
    closed->add_option("--height", height, "Height h")->required();
    add_output(closed, outp);

    auto* dot = app.add_subcommand("export-dot", "Render a colored tree as Graphviz DOT");
    add_instance(dot, inst);
    dot->add_option("-o,--out", outp.out_path, "Output file (default stdout)");
    dot->add_option("--coloring", coloring_path, "Coloring JSON (default: solver output, else one class)");

    auto* bench = app.add_subcommand("bench", "Scaling benchmark of the linear-time solver");
    bench->add_option("--family", family, "nary:N or path")->default_val("nary:2");
    bench->add_option("--heights", heights, "A..B or comma list")->default_val("10..18");
    bench->add_option("--reps", reps, "Timed samples per height")->default_val(5);
    bench->add_option("--threshold", threshold, "Maximum time ratio per doubling")->default_val(3.0);
    bench->add_flag("--json", bench_json, "JSON-lines rows instead of a table");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out_ << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out_ << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err_ << "error: " << e.what() << "\n" << app.help();
        return kExitUsage;
    }

    try {
        std::string descriptor;
        using clock = std::chrono::steady_clock;
        auto ms_since = [](clock::time_point t0) {
            return std::chrono::duration<double, std::milli>(clock::now() - t0).count();
        };

        if (*gen) {
            const RootedTree tree = generate(parse_shape_spec(inst.shape));
            write(outp, emit_tree(tree, parse_tree_format(gen_format)));
            return kExitOk;
        }

        if (*solve) {
            const RootedTree tree = load_tree(inst, descriptor);
            const auto t0 = clock::now();
            SolveOptions opts;
            opts.record_trace = trace;
            auto res = algo2_solve(tree, opts);
            ResultRecord rec{descriptor, "algo2"};
            rec.value = res.trace.alpha;
            rec.elapsed_ms = ms_since(t0);
            rec.n = tree.size();
            if (witness) rec.witness = res.coloring;
            if (trace) rec.trace = alpha_trace_to_json(res.trace);
            auto j = result_to_json(rec);
            j["operations"] = res.operations;
            write_json(outp, j);
            return kExitOk;
        }

        if (*refine) {
            const RootedTree tree = load_tree(inst, descriptor);
            const Coloring input = coloring_path.empty()
                                       ? gen_seed_coloring(tree, seed_mode == "mono" ? SeedMode::Monochromatic : SeedMode::RandomConnected, seed)
                                       : parse_coloring(read_source(coloring_path));
            const auto t0 = clock::now();
            auto res = algo1_refine(tree, input);
            ResultRecord rec{descriptor, "algo1_refine"};
            rec.value_key = "classes";
            rec.value = res.coloring.class_count();
            rec.elapsed_ms = ms_since(t0);
            rec.n = tree.size();
            rec.witness = res.coloring;
            if (trace) rec.trace = refine_trace_to_json(res.trace);
            auto j = result_to_json(rec);
            j["input_classes"] = input.class_count();
            write_json(outp, j);
            return kExitOk;
        }

        if (*verify) {
            const Coloring coloring = parse_coloring(read_source(coloring_path));
            Graph graph;
            if (!graph_path.empty()) {
                if (!inst.tree_path.empty() || !inst.shape.empty())
                    throw CLI::ValidationError("--graph excludes --tree/--shape");
                graph = parse_graph(read_source(graph_path));
            } else {
                graph = to_graph(load_tree(inst, descriptor));
            }
            const auto report = verify_quorum(graph, coloring);
            auto j = report_to_json(report);
            j.erase("vertices");
            j["k"] = coloring.class_count();
            if (report.valid) {
                j["cost_effective"] = is_cost_effective(graph, coloring);
                const auto conn = check_class_connectivity(graph, coloring);
                j["classes_connected"] = std::all_of(conn.begin(), conn.end(), [](bool b) { return b; });
                j["corollary_violations"] = check_corollaries(graph, coloring).size();
            }
            write_json(outp, j);
            err_ << format_violations(report);
            return report.valid ? kExitOk : kExitDomain;
        }

        if (*bound) {
            const RootedTree tree = load_tree(inst, descriptor);
            ResultRecord rec{descriptor, "matching_bound"};
            rec.value_key = "value";
            rec.value = bound_theorem1(tree);
            rec.n = tree.size();
            write_json(outp, result_to_json(rec));
            return kExitOk;
        }

        if (*exact) {
            const RootedTree tree = load_tree(inst, descriptor);
            const ShapeClass shape = classify_shape(tree);
            ResultRecord rec{descriptor, ""};
            rec.n = tree.size();
            if (shape.kind == ShapeKind::PerfectNary && shape.arity == 2) {
                rec.method = "closed_form";
                rec.value = closed_form_perfect_binary(shape.height);
            } else if (tree.size() >= 2 && tree.max_degree() <= 3) {
                rec.method = "matching_formula";
                rec.value = exact_binary(tree);
            } else if (shape.is_per_level()) {
                rec.method = "algo2";
                rec.value = algo2_solve(tree).trace.alpha;
            } else {
                err_ << "no exact method applies (shape " << to_string(shape.kind)
                     << ", max degree " << tree.max_degree() << "); try 'bruteforce' or 'bound'\n";
                return kExitDomain;
            }
            write_json(outp, result_to_json(rec));
            return kExitOk;
        }

        if (*brute) {
            const auto t0 = clock::now();
            if (!graph_path.empty()) {
                const Graph g = parse_graph(read_source(graph_path));
                auto res = brute_force_graph(g, limit ? limit : brute_limit(10));
                ResultRecord rec{graph_path, "bruteforce_graph"};
                rec.value = res.psi_q;
                rec.n = g.size();
                if (witness) rec.witness = res.witness;
                rec.elapsed_ms = ms_since(t0);
                write_json(outp, result_to_json(rec));
                return kExitOk;
            }
            const RootedTree tree = load_tree(inst, descriptor);
            auto res = brute_force_tree(tree, limit ? limit : brute_limit(20));
            ResultRecord rec{descriptor, "bruteforce_tree"};
            rec.value = res.psi_q;
            rec.n = tree.size();
            if (witness) rec.witness = res.witness;
            rec.elapsed_ms = ms_since(t0);
            write_json(outp, result_to_json(rec));
            return kExitOk;
        }

        if (*closed) {
            ResultRecord rec{"nary:2," + std::to_string(height), "closed_form"};
            rec.value = closed_form_perfect_binary(height);
            write_json(outp, result_to_json(rec));
            return kExitOk;
        }

        if (*dot) {
            const RootedTree tree = load_tree(inst, descriptor);
            Coloring coloring;
            if (!coloring_path.empty())
                coloring = parse_coloring(read_source(coloring_path));
            else if (classify_shape(tree).is_per_level())
                coloring = algo2_solve(tree).coloring;
            else
                coloring = Coloring::monochromatic(tree.size());
            write(outp, emit_dot(tree, coloring));
            return kExitOk;
        }

        if (*bench) {
            const auto fam = BenchFamily::parse(family);
            BenchOptions opts;
            opts.repetitions = reps;
            opts.ratio_threshold = threshold;
            const auto hs = parse_heights(heights);
            const auto report = bench_linear(fam, hs, opts);
            if (bench_json) {
                for (const auto& r : report.rows)
                    out_ << nlohmann::json{{"family", report.family}, {"height", r.height}, {"n", r.n},
                                           {"median_ns", r.median_ns}, {"operations", r.operations},
                                           {"ops_ok", r.ops_ok}, {"doubling_ratio", r.doubling_ratio},
                                           {"ratio_ok", r.ratio_ok}}
                                .dump()
                         << "\n";
            } else {
                out_ << std::left << std::setw(8) << "height" << std::setw(12) << "n" << std::setw(14) << "median_us"
                     << std::setw(12) << "ops" << std::setw(12) << "ops/n" << "ratio\n";
                for (const auto& r : report.rows) {
                    std::ostringstream ratio;
                    if (r.doubling_ratio > 0) ratio << std::fixed << std::setprecision(2) << r.doubling_ratio;
                    else ratio << "-";
                    out_ << std::setw(8) << r.height << std::setw(12) << r.n << std::setw(14) << std::fixed
                         << std::setprecision(1) << r.median_ns / 1000.0 << std::setw(12) << r.operations
                         << std::setw(12) << std::setprecision(3)
                         << static_cast<double>(r.operations) / static_cast<double>(r.n) << ratio.str()
                         << (r.ops_ok && r.ratio_ok ? "" : "  FAIL") << "\n";
                }
            }
            if (!report.ok) err_ << "scaling check failed\n";
            return report.ok ? kExitOk : kExitDomain;
        }
    } catch (const CLI::ValidationError& e) {
        err_ << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err_ << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        err_ << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    return kExitUsage;
}

inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    return App(in, out, err).run(args);
}

} // namespace qc
