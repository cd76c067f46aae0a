#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "zo/ars.hpp"
#include "zo/bench/config.hpp"
#include "zo/greedy.hpp"
#include "zo/testfns.hpp"

namespace zo::bench {

inline constexpr std::uint64_t kPriorStreamSalt = 0xb1a5ed;

struct SeriesResult {
    SeriesSpec spec;
    std::vector<RunTrace> traces;    // in seed order
    std::optional<std::string> failure;  // set when a grid candidate diverged
};

struct BatchResult {
    RunConfig config;
    std::vector<SeriesResult> series;
};

inline std::uint64_t resolve_log_every(const RunConfig& config, std::uint64_t cost) {
    if (config.log_every > 0) return config.log_every;
    const std::uint64_t iters = config.budget / std::max<std::uint64_t>(1, cost);
    return std::max<std::uint64_t>(1, iters / 1000);
}

/// One seed of one series.
inline RunTrace run_single(const RunConfig& config, const SeriesSpec& spec, std::uint64_t seed) {
    const BenchFunction f(config.function, config.dim);
    const ObjectiveSpec objective = f.objective();

    RunOptions options;
    options.mu = config.mu;
    options.diagnostics = config.diagnostics;
    options.label = spec.label;
    options.log_every = resolve_log_every(config, iteration_cost(spec, f, config.budget));

    PriorFeed feed;
    if (needs_external_prior(spec.algorithm)) {
        auto gen = std::make_shared<BiasedPriorGen>(config.dim, Rng(seed).fork(kPriorStreamSalt), config.noise_norm);
        feed = [gen, f](const Vector& x) { return (*gen)(f.gradient(x)); };
    }

    if (is_ars_family(spec.algorithm)) return run_ars(objective, ars_config(spec, f, config.budget), seed, feed, options);
    return run_greedy(objective, greedy_config(spec, f, config.budget), seed, feed, options);
}

/// Runs every (series, seed) pair, optionally on several threads. Results
/// are stored by index, so the output does not depend on scheduling.
/// A diverging run (oracle error) only fails its series when the series is
/// one candidate of a grid group; otherwise the error propagates.
inline BatchResult run_batch(const RunConfig& config) {
    config.validate();
    const std::size_t n_series = config.series.size();
    const std::size_t n_seeds = config.seeds.size();
    const std::size_t n_tasks = n_series * n_seeds;

    std::vector<RunTrace> traces(n_tasks);
    std::vector<std::exception_ptr> errors(n_tasks);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t t = next++; t < n_tasks; t = next++) {
            try {
                traces[t] = run_single(config, config.series[t / n_seeds], config.seeds[t % n_seeds]);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        }
    };
    const std::size_t n_threads = std::min(config.threads, std::max<std::size_t>(1, n_tasks));
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    }

    BatchResult out;
    out.config = config;
    for (std::size_t s = 0; s < n_series; ++s) {
        SeriesResult r;
        r.spec = config.series[s];
        for (std::size_t k = 0; k < n_seeds; ++k) {
            const std::size_t t = s * n_seeds + k;
            if (errors[t]) {
                try {
                    std::rethrow_exception(errors[t]);
                } catch (const OracleError& e) {
                    if (r.spec.group.empty()) throw;
                    r.failure = e.what();
                }
                continue;
            }
            r.traces.push_back(std::move(traces[t]));
        }
        if (r.failure) r.traces.clear();
        out.series.push_back(std::move(r));
    }
    return out;
}

}  // namespace zo::bench
