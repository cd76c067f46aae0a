#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "zo/bench/run.hpp"
#include "zo/trace.hpp"

namespace zo::bench {

/// Seed statistics of log10 relative error on a common query grid.
struct Aggregate {
    std::string label;
    std::string group;
    bool uses_prior = false;
    std::size_t n_seeds = 0;
    std::vector<std::uint64_t> grid;
    std::vector<double> mean;
    std::vector<double> lower;  // 95% t-interval
    std::vector<double> upper;

    double final_mean() const { return mean.empty() ? 0.0 : mean.back(); }
};

/// budget * i / points for i = 0..points, deduplicated.
inline std::vector<std::uint64_t> query_grid(std::uint64_t budget, std::size_t points) {
    if (points < 1) throw ConfigError("query_grid: need at least one point");
    std::vector<std::uint64_t> grid;
    for (std::size_t i = 0; i <= points; ++i) {
        const auto g = static_cast<std::uint64_t>(static_cast<long double>(budget) * i / points);
        if (grid.empty() || grid.back() != g) grid.push_back(g);
    }
    return grid;
}

/// log10 relative error of the last logged row with dd_queries <= queries.
inline double value_at(const RunTrace& trace, std::uint64_t queries) {
    if (trace.empty()) throw DomainError("value_at: empty trace");
    const auto it = std::upper_bound(trace.rows.begin(), trace.rows.end(), queries,
                                     [](std::uint64_t q, const TraceRow& r) { return q < r.dd_queries; });
    if (it == trace.rows.begin()) throw DomainError("value_at: trace starts after the requested query count");
    const TraceRow& row = *(it - 1);
    if (!row.log10_rel_err) throw DomainError("value_at: trace '" + trace.label + "' has no relative error (f* unknown)");
    return *row.log10_rel_err;
}

/// Two-sided t quantile for the given confidence with n-1 degrees of freedom.
inline double t_quantile(std::size_t n, double confidence = 0.95) {
    if (n < 2) return 0.0;
    const boost::math::students_t dist(static_cast<double>(n - 1));
    return boost::math::quantile(boost::math::complement(dist, (1.0 - confidence) / 2.0));
}

namespace detail {

// Sums in sorted order so the result does not depend on seed order.
inline double sorted_sum(std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

}  // namespace detail

inline Aggregate aggregate(const std::string& label, const std::vector<RunTrace>& traces,
                           const std::vector<std::uint64_t>& grid, double confidence = 0.95) {
    if (traces.empty()) throw DomainError("aggregate: no traces for '" + label + "'");
    Aggregate a;
    a.label = label;
    a.n_seeds = traces.size();
    a.grid = grid;
    const double n = static_cast<double>(traces.size());
    const double t = t_quantile(traces.size(), confidence);
    std::vector<double> vals(traces.size()), dev(traces.size());
    for (std::uint64_t g : grid) {
        for (std::size_t i = 0; i < traces.size(); ++i) vals[i] = value_at(traces[i], g);
        const double m = detail::sorted_sum(vals) / n;
        double half = 0.0;
        if (traces.size() > 1) {
            for (std::size_t i = 0; i < vals.size(); ++i) dev[i] = (vals[i] - m) * (vals[i] - m);
            const double var = detail::sorted_sum(dev) / (n - 1.0);
            half = t * std::sqrt(var / n);
        }
        a.mean.push_back(m);
        a.lower.push_back(m - half);
        a.upper.push_back(m + half);
    }
    return a;
}

/// Aggregates every series that produced traces; diverged grid candidates
/// are skipped.
inline std::vector<Aggregate> aggregate_batch(const BatchResult& batch) {
    const auto grid = query_grid(batch.config.budget, batch.config.grid_points);
    std::vector<Aggregate> out;
    for (const auto& s : batch.series) {
        if (s.failure || s.traces.empty()) continue;
        Aggregate a = aggregate(s.spec.label, s.traces, grid);
        a.group = s.spec.group;
        a.uses_prior = uses_prior(s.spec.algorithm);
        out.push_back(std::move(a));
    }
    return out;
}

/// Keeps, per non-empty group, the aggregate with the lowest final mean.
inline std::vector<Aggregate> best_of_groups(const std::vector<Aggregate>& aggs) {
    std::map<std::string, std::size_t> best;
    for (std::size_t i = 0; i < aggs.size(); ++i) {
        if (aggs[i].group.empty()) continue;
        auto [it, inserted] = best.emplace(aggs[i].group, i);
        if (!inserted && aggs[i].final_mean() < aggs[it->second].final_mean()) it->second = i;
    }
    std::vector<Aggregate> out;
    for (std::size_t i = 0; i < aggs.size(); ++i)
        if (aggs[i].group.empty() || best.at(aggs[i].group) == i) out.push_back(aggs[i]);
    return out;
}

/// Mean over seeds of the queries needed to reach `level`; nullopt when some
/// seed never reaches it.
inline std::optional<double> mean_queries_to_reach(const std::vector<RunTrace>& traces, double level) {
    if (traces.empty()) return std::nullopt;
    std::vector<double> q;
    for (const auto& t : traces) {
        const auto r = t.queries_to_reach(level);
        if (!r) return std::nullopt;
        q.push_back(static_cast<double>(*r));
    }
    return detail::sorted_sum(q) / static_cast<double>(q.size());
}

}  // namespace zo::bench
