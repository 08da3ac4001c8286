#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "generators.hpp"
#include "solver.hpp"

namespace quorum {

/// "nary:N" (height h gives the perfect N-ary tree) or "path" (height h gives
/// the path on h + 1 vertices, i.e. counts [1] * h).
struct BenchFamily {
    std::size_t arity = 0;  // 0 = path

    static BenchFamily parse(std::string_view text) {
        if (text == "path") return {0};
        if (text.starts_with("nary:")) {
            auto v = detail::parse_numbers(text.substr(5), text);
            if (v.size() != 1 || v[0] < 1) throw Error(ErrorCode::SyntaxError, "expected nary:N with N >= 1");
            return {v[0]};
        }
        throw Error(ErrorCode::SyntaxError, "unknown bench family '" + std::string(text) + "'");
    }

    RootedTree make(std::size_t height, std::size_t cap) const {
        if (arity == 0) return gen_perfect_nary(1, height, cap);
        return gen_perfect_nary(arity, height, cap);
    }

    std::string name() const { return arity == 0 ? "path" : "nary:" + std::to_string(arity); }
};

struct BenchRow {
    std::size_t height = 0;
    std::size_t n = 0;
    double median_ns = 0;
    std::uint64_t operations = 0;
    bool ops_ok = false;
    /// time(n_k) / time(n_{k-1}), rescaled to a doubling of n; 0 if unchecked.
    double doubling_ratio = 0;
    bool ratio_ok = true;
};

struct BenchOptions {
    std::size_t repetitions = 5;
    double ratio_threshold = 3.0;
    /// Rows smaller than this are warm-up: timed and reported, not ratio-checked.
    std::size_t warmup_n = 1024;
    /// Each timed sample repeats the solve until it spans at least this long.
    std::chrono::nanoseconds min_sample = std::chrono::milliseconds(2);
    std::size_t cap = kDefaultSizeCap;
};

struct BenchReport {
    std::string family;
    std::vector<BenchRow> rows;
    bool ok = true;
};

/// Times algo2_solve (without the per-vertex trace) across heights and checks the operation counter against
/// 5n and the wall time against linear growth.
inline BenchReport bench_linear(const BenchFamily& family, std::span<const std::size_t> heights,
                                const BenchOptions& options = {}) {
    using clock = std::chrono::steady_clock;
    BenchReport report;
    report.family = family.name();

    for (std::size_t h : heights) {
        const RootedTree tree = family.make(h, options.cap);
        BenchRow row;
        row.height = h;
        row.n = tree.size();

        SolveOptions solve_opts;
        solve_opts.record_trace = false;
        const auto warm = algo2_solve(tree, solve_opts);  // also the op count
        row.operations = warm.operations;
        row.ops_ok = row.operations < 5 * static_cast<std::uint64_t>(row.n);

        auto t0 = clock::now();
        (void)algo2_solve(tree, solve_opts);
        const auto single = std::max<std::chrono::nanoseconds>(clock::now() - t0, std::chrono::nanoseconds(1));
        const std::size_t batch =
            std::max<std::size_t>(1, static_cast<std::size_t>(options.min_sample / single) + 1);

        std::vector<double> samples;
        for (std::size_t r = 0; r < std::max<std::size_t>(1, options.repetitions); ++r) {
            t0 = clock::now();
            std::uint64_t sink = 0;
            for (std::size_t b = 0; b < batch; ++b) sink += algo2_solve(tree, solve_opts).trace.alpha;
            const auto elapsed = std::chrono::duration<double, std::nano>(clock::now() - t0).count();
            if (sink == 0) throw Error(ErrorCode::InternalInvariantViolation, "solver returned zero classes");
            samples.push_back(elapsed / static_cast<double>(batch));
        }
        std::nth_element(samples.begin(), samples.begin() + samples.size() / 2, samples.end());
        row.median_ns = samples[samples.size() / 2];

        if (!report.rows.empty()) {
            const BenchRow& prev = report.rows.back();
            if (prev.n >= options.warmup_n && row.n > prev.n) {
                const double size_ratio = static_cast<double>(row.n) / static_cast<double>(prev.n);
                row.doubling_ratio = row.median_ns / prev.median_ns * (2.0 / size_ratio);
                row.ratio_ok = row.doubling_ratio <= options.ratio_threshold;
            }
        }
        report.ok = report.ok && row.ops_ok && row.ratio_ok;
        report.rows.push_back(row);
    }
    return report;
}

} // namespace quorum
