#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "zo/core.hpp"

namespace zo {

/// One logged point of a run.
///
/// Row k describes the iterate after k completed iterations: `f_value` is
/// f(x_k) and the counters are cumulative. The diagnostics (`c_t`, `d_t`,
/// `theta_t`) belong to the iteration that produced x_k, i.e. step k-1;
/// row 0 (the initial point) has none.
struct TraceRow {
    std::uint64_t iteration = 0;
    std::uint64_t dd_queries = 0;
    std::uint64_t fn_evals = 0;
    double f_value = 0.0;
    std::optional<double> log10_rel_err;
    std::optional<double> c_t;
    std::optional<double> d_t;
    std::optional<double> theta_t;
    bool restart = false;
};

struct RunTrace {
    std::string label;
    std::uint64_t seed = 0;
    std::vector<TraceRow> rows;

    bool empty() const noexcept { return rows.empty(); }
    const TraceRow& back() const { return rows.back(); }

    std::size_t restarts() const {
        std::size_t n = 0;
        for (const auto& r : rows) n += r.restart ? 1 : 0;
        return n;
    }

    /// First logged query count at which log10_rel_err <= level.
    std::optional<std::uint64_t> queries_to_reach(double level) const {
        for (const auto& r : rows)
            if (r.log10_rel_err && *r.log10_rel_err <= level) return r.dd_queries;
        return std::nullopt;
    }
};

/// log10((f - f*) / (f0 - f*)), floored at -300 when f reaches f* exactly.
inline std::optional<double> log10_relative_error(double f, double f0, std::optional<double> f_star) {
    if (!f_star) return std::nullopt;
    const double denom = f0 - *f_star;
    if (!(denom > 0.0)) return std::nullopt;
    const double num = f - *f_star;
    if (num <= 0.0) return -300.0;
    return std::log10(num / denom);
}

/// Squared cosine between two vectors; zero if either vanishes.
inline double squared_cosine(const Vector& a, const Vector& b) {
    const double na = a.squaredNorm();
    const double nb = b.squaredNorm();
    if (!(na > 0.0) || !(nb > 0.0)) return 0.0;
    const double dot = a.dot(b);
    return std::min(1.0, dot * dot / (na * nb));
}

/// Options shared by every run driver.
struct RunOptions {
    double mu = kDefaultMu;
    OracleMode oracle_mode = OracleMode::finite_difference;
    bool diagnostics = true;   // log C_t / D_t when a true gradient exists
    std::uint64_t log_every = 1;
    std::optional<double> target_log10_rel_err;  // stop once reached
    std::string label;
};

}  // namespace zo
