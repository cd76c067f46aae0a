#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "zo/bench/aggregate.hpp"
#include "zo/io.hpp"
#include "zo/trace.hpp"

namespace zo::bench {

inline constexpr const char* kTraceHeader =
    "label,seed,iteration,dd_queries,fn_evals,f_value,log10_rel_err,c_t,d_t,theta_t,restart";
inline constexpr const char* kAggregateHeader = "label,dd_queries,mean,lower,upper,n_seeds";

/// One row per logged iteration; missing optional values are empty cells.
inline std::string traces_csv(const std::vector<RunTrace>& traces) {
    std::string out = kTraceHeader;
    out += '\n';
    for (const auto& t : traces) {
        if (t.label.find_first_of(",\n\"") != std::string::npos)
            throw DomainError("traces_csv: label '" + t.label + "' contains a comma, quote or newline");
        for (const auto& r : t.rows) {
            out += t.label;
            out += ',' + io::format_number(t.seed);
            out += ',' + io::format_number(r.iteration);
            out += ',' + io::format_number(r.dd_queries);
            out += ',' + io::format_number(r.fn_evals);
            out += ',' + io::format_number(r.f_value);
            out += ',' + io::format_optional(r.log10_rel_err);
            out += ',' + io::format_optional(r.c_t);
            out += ',' + io::format_optional(r.d_t);
            out += ',' + io::format_optional(r.theta_t);
            out += r.restart ? ",1\n" : ",0\n";
        }
    }
    return out;
}

inline void emit_csv(const std::vector<RunTrace>& traces, const std::string& path) {
    io::write_text_file(path, traces_csv(traces));
}

/// Parses `traces_csv` output. Consecutive rows with the same (label, seed)
/// form one trace.
inline std::vector<RunTrace> parse_traces_csv(std::string_view text, const std::string& source = "<csv>") {
    std::vector<RunTrace> out;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!header_seen) {
            if (line != kTraceHeader) throw IoError(source, "unexpected CSV header");
            header_seen = true;
            continue;
        }
        if (line.empty()) continue;
        const auto f = io::split_fields(line);
        const std::string ctx = source + ":" + std::to_string(line_no);
        if (f.size() != 11) throw IoError(ctx, "expected 11 fields");
        const std::string label(f[0]);
        const std::uint64_t seed = io::parse_uint(f[1], ctx);
        if (out.empty() || out.back().label != label || out.back().seed != seed) {
            RunTrace t;
            t.label = label;
            t.seed = seed;
            out.push_back(std::move(t));
        }
        TraceRow r;
        r.iteration = io::parse_uint(f[2], ctx);
        r.dd_queries = io::parse_uint(f[3], ctx);
        r.fn_evals = io::parse_uint(f[4], ctx);
        r.f_value = io::parse_double(f[5], ctx);
        r.log10_rel_err = io::parse_optional(f[6], ctx);
        r.c_t = io::parse_optional(f[7], ctx);
        r.d_t = io::parse_optional(f[8], ctx);
        r.theta_t = io::parse_optional(f[9], ctx);
        if (f[10] != "0" && f[10] != "1") throw IoError(ctx, "restart must be 0 or 1");
        r.restart = f[10] == "1";
        out.back().rows.push_back(r);
    }
    if (!header_seen) throw IoError(source, "missing CSV header");
    return out;
}

inline std::vector<RunTrace> read_csv(const std::string& path) {
    return parse_traces_csv(io::read_text_file(path), path);
}

inline std::string aggregates_csv(const std::vector<Aggregate>& aggs) {
    std::string out = kAggregateHeader;
    out += '\n';
    for (const auto& a : aggs)
        for (std::size_t i = 0; i < a.grid.size(); ++i)
            out += a.label + ',' + io::format_number(a.grid[i]) + ',' + io::format_number(a.mean[i]) + ',' +
                   io::format_number(a.lower[i]) + ',' + io::format_number(a.upper[i]) + ',' +
                   io::format_number(static_cast<std::uint64_t>(a.n_seeds)) + '\n';
    return out;
}

/// All traces of a batch in series order, then seed order.
inline std::vector<RunTrace> flatten(const BatchResult& batch) {
    std::vector<RunTrace> out;
    for (const auto& s : batch.series)
        for (const auto& t : s.traces) out.push_back(t);
    return out;
}

}  // namespace zo::bench
