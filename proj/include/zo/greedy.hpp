#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "zo/core.hpp"
#include "zo/estimators.hpp"
#include "zo/trace.hpp"

namespace zo {

enum class PriorSource {
    none,        // RGF
    historical,  // History-PRGF: prior = previous estimate direction
    external,    // PRGF with a caller-supplied prior
};

/// Supplies a prior direction for the current iterate. Costs no queries.
using PriorFeed = std::function<Vector(const Vector& x)>;

struct GreedyConfig {
    double L_hat = 1.0;
    Index q = 1;
    PriorSource prior_source = PriorSource::none;
    std::uint64_t budget = 0;  // directional-derivative queries

    std::uint64_t iteration_cost() const noexcept {
        return static_cast<std::uint64_t>(q) + (prior_source == PriorSource::none ? 0 : 1);
    }

    void validate(Index d) const {
        if (!(L_hat > 0.0)) throw ConfigError("greedy: L_hat must be > 0");
        if (q < 1) throw ConfigError("greedy: q must be >= 1");
        const Index cap = prior_source == PriorSource::none ? d : d - 1;
        if (q > cap) throw ConfigError("greedy: q must be <= d (or <= d-1 with a prior)");
    }
};

struct GreedyState {
    Vector x;
    std::optional<Vector> prior;  // unit when present
    std::uint64_t iteration = 0;
};

struct GreedyStepReport {
    Vector x_prev;
    Vector g1;
    std::optional<Vector> prior;
    std::uint64_t cost = 0;
};

/// x_0 from the objective; the historical prior starts as a fixed random
/// unit vector drawn from the run's stream.
inline GreedyState init_greedy(const ObjectiveSpec& objective, const GreedyConfig& config, Rng& rng) {
    GreedyState state;
    state.x = objective.x0;
    if (config.prior_source == PriorSource::historical) state.prior = sample_unit_sphere(rng, objective.dim);
    return state;
}

/// One step of greedy descent: x <- x - g1 / L_hat, with g1 the subspace
/// estimate over the frame built around the current prior.
inline GreedyStepReport greedy_step(GreedyState& state, Oracle& oracle, const GreedyConfig& config, Rng& rng,
                                    const PriorFeed& feed = {}) {
    check_length(state.x, oracle.dim(), "greedy_step(x)");
    oracle.new_iteration();

    GreedyStepReport report;
    switch (config.prior_source) {
        case PriorSource::none: break;
        case PriorSource::historical: report.prior = state.prior; break;
        case PriorSource::external:
            if (!feed) throw ConfigError("greedy: external prior source requires a prior feed");
            report.prior = feed(state.x);
            break;
    }
    if (config.prior_source != PriorSource::none && !report.prior)
        throw RequiresPrior("greedy_step: prior source configured but no prior available");

    const auto before = oracle.dd_queries();
    auto frame = build_frame(rng, oracle.dim(), config.q, report.prior);
    if (frame.prior) report.prior = frame.prior;  // normalized copy
    const ProbeSet probes = probe(oracle, state.x, std::move(frame));
    report.g1 = subspace_estimate(probes);
    report.cost = oracle.dd_queries() - before;

    report.x_prev = state.x;
    state.x -= report.g1 / config.L_hat;
    if (config.prior_source == PriorSource::historical) {
        const double n = report.g1.norm();
        if (n > 0.0) state.prior = report.g1 / n;
    }
    ++state.iteration;
    return report;
}

namespace detail {

struct TraceLogger {
    const ObjectiveSpec& objective;
    const RunOptions& options;
    double f0;
    RunTrace trace;
    bool last_logged = true;
    TraceRow pending;

    TraceLogger(const ObjectiveSpec& obj, const RunOptions& opts, std::uint64_t seed)
        : objective(obj), options(opts), f0(obj.eval(obj.x0)) {
        trace.label = opts.label;
        trace.seed = seed;
        TraceRow row;
        row.f_value = f0;
        row.log10_rel_err = log10_relative_error(f0, f0, objective.f_star);
        trace.rows.push_back(row);
    }

    bool wants_gradient() const { return options.diagnostics && objective.has_gradient(); }

    /// Records a row; returns true when the target accuracy was reached.
    bool record(TraceRow row, const Vector& x) {
        row.f_value = objective.eval(x);
        row.log10_rel_err = log10_relative_error(row.f_value, f0, objective.f_star);
        const std::uint64_t every = options.log_every == 0 ? 1 : options.log_every;
        const bool reached = options.target_log10_rel_err && row.log10_rel_err &&
                             *row.log10_rel_err <= *options.target_log10_rel_err;
        if (row.iteration % every == 0 || reached) {
            trace.rows.push_back(row);
            last_logged = true;
        } else {
            pending = row;
            last_logged = false;
        }
        return reached;
    }

    RunTrace finish() {
        if (!last_logged) trace.rows.push_back(pending);
        return std::move(trace);
    }
};

}  // namespace detail

/// Runs greedy descent until the next iteration would exceed the query
/// budget (or the optional target accuracy is reached).
inline RunTrace run_greedy(const ObjectiveSpec& objective, const GreedyConfig& config, std::uint64_t seed,
                           const PriorFeed& feed = {}, const RunOptions& options = {}) {
    objective.validate();
    config.validate(objective.dim);
    const std::uint64_t cost = config.iteration_cost();
    if (config.budget < cost) throw ConfigError("greedy: budget is smaller than one iteration's cost");
    if (config.prior_source == PriorSource::external && !feed)
        throw ConfigError("greedy: external prior source requires a prior feed");

    Oracle oracle(objective, options.mu, options.oracle_mode);
    Rng rng(seed);
    GreedyState state = init_greedy(objective, config, rng);
    detail::TraceLogger log(objective, options, seed);

    while (oracle.dd_queries() + cost <= config.budget) {
        const GreedyStepReport step = greedy_step(state, oracle, config, rng, feed);
        TraceRow row;
        row.iteration = state.iteration;
        row.dd_queries = oracle.dd_queries();
        row.fn_evals = oracle.fn_evals();
        if (log.wants_gradient()) {
            const Vector grad = objective.true_gradient(step.x_prev);
            row.c_t = squared_cosine(grad, step.g1);
            if (step.prior) row.d_t = squared_cosine(grad, *step.prior);
        }
        if (log.record(row, state.x)) break;
    }
    return log.finish();
}

}  // namespace zo
