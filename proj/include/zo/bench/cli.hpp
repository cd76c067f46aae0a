#pragma once

#include <cstdio>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zo/bench/aggregate.hpp"
#include "zo/bench/config.hpp"
#include "zo/bench/csv.hpp"
#include "zo/bench/run.hpp"
#include "zo/bench/svg.hpp"
#include "zo/diagnostics.hpp"

namespace zo::bench {

/// Exit status when a diagnostics check fails (not an error category).
inline constexpr int kChecksFailedExit = 1;

/// Parses "0-9", "4" or comma-separated mixes such as "0-4,10,12".
inline std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
    std::vector<std::uint64_t> out;
    for (auto part : io::split_fields(text)) {
        if (part.empty()) throw ConfigError("seeds: empty entry in '" + text + "'");
        const auto dash = part.find('-');
        if (dash == std::string_view::npos) {
            out.push_back(io::parse_uint(part, "seeds"));
            continue;
        }
        const auto lo = io::parse_uint(part.substr(0, dash), "seeds");
        const auto hi = io::parse_uint(part.substr(dash + 1), "seeds");
        if (hi < lo) throw ConfigError("seeds: descending range '" + std::string(part) + "'");
        for (auto s = lo; s <= hi; ++s) out.push_back(s);
    }
    return out;
}

/// Raw command-line values; unset optionals fall back to preset or defaults.
struct CliOptions {
    std::string preset;
    std::string function;
    std::optional<Index> dim;
    std::vector<std::string> algos;
    std::optional<Index> q;
    std::optional<double> lhat;
    std::optional<double> lhat_scale;
    std::optional<double> tau_hat;
    std::optional<double> mu;
    std::optional<std::uint64_t> budget;
    std::string seeds;
    std::string prior;
    bool restart = false;
    std::string out = "zo_bench_out";
    std::size_t threads = 1;
    std::uint64_t log_every = 0;
    std::size_t grid_points = 200;
    bool log_diagnostics = false;
};

inline RunConfig build_config(const CliOptions& o) {
    RunConfig cfg;
    if (!o.preset.empty()) {
        const bool conflicting = !o.function.empty() || !o.algos.empty() || o.q || o.lhat || o.lhat_scale ||
                                 o.tau_hat || !o.prior.empty() || o.restart;
        if (conflicting)
            throw ConfigError("--preset fixes function, algorithms, q, L_hat, tau_hat, prior and restart; "
                              "only --dim, --budget, --seeds, --mu and output options may be combined with it");
        cfg = preset(o.preset);
        if (o.dim) {
            cfg.dim = *o.dim;
            if (!o.budget) cfg.budget = cfg.budget / figure_unit(preset(o.preset).dim) * figure_unit(cfg.dim);
        }
    } else {
        if (o.function.empty()) throw ConfigError("--function is required without --preset");
        if (o.algos.empty()) throw ConfigError("--algo is required without --preset");
        if (o.lhat && o.lhat_scale) throw ConfigError("--lhat and --lhat-scale are mutually exclusive");
        cfg.function = parse_function_id(o.function);
        cfg.dim = o.dim.value_or(256);
        cfg.prior = o.prior.empty() ? PriorMode::none : parse_prior_mode(o.prior);
        cfg.budget = 100 * figure_unit(cfg.dim);
        for (const auto& name : o.algos) {
            const Algorithm a = resolve_for_prior(parse_algorithm(name), cfg.prior);
            SeriesSpec s = detail::eleven_query(a);
            if (o.q) s.q = *o.q;
            s.L_hat = o.lhat;
            if (o.lhat_scale) s.L_hat_scale = *o.lhat_scale;
            s.tau_hat = o.tau_hat;
            s.restart = o.restart;
            if (o.lhat_scale && *o.lhat_scale != 1.0) s.label += "-x" + io::format_number(*o.lhat_scale);
            cfg.series.push_back(s);
        }
    }
    if (o.mu) cfg.mu = *o.mu;
    if (o.budget) cfg.budget = *o.budget;
    if (!o.seeds.empty()) cfg.seeds = parse_seed_list(o.seeds);
    if (cfg.seeds.empty()) cfg.seeds = seed_range(0, 10);
    cfg.out = o.out;
    cfg.threads = o.threads;
    cfg.log_every = o.log_every;
    cfg.grid_points = o.grid_points;
    cfg.diagnostics = o.log_diagnostics;
    cfg.validate();
    return cfg;
}

/// Runs the batch and writes <out>.csv (traces), <out>_summary.csv (grid
/// statistics) and <out>.svg (best member of each group).
inline void run_and_emit(const RunConfig& cfg, std::ostream& log) {
    const BatchResult batch = run_batch(cfg);
    const auto aggs = aggregate_batch(batch);
    emit_csv(flatten(batch), cfg.out + ".csv");
    io::write_text_file(cfg.out + "_summary.csv", aggregates_csv(aggs));
    emit_svg(best_of_groups(aggs), cfg.out + ".svg",
             std::string(to_string(cfg.function)) + ", d=" + std::to_string(cfg.dim));
    for (const auto& s : batch.series)
        if (s.failure) log << s.spec.label << ": diverged (" << *s.failure << ")\n";
    for (const auto& a : aggs) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%-24s final log10 rel err %9.4f  [%9.4f, %9.4f]  (%zu seeds)\n",
                      a.label.c_str(), a.final_mean(), a.lower.back(), a.upper.back(), a.n_seeds);
        log << buf;
    }
    log << "wrote " << cfg.out << ".csv, " << cfg.out << "_summary.csv, " << cfg.out << ".svg\n";
}

/// Monte-Carlo and bound checks with the documented sample counts.
inline std::vector<diagnostics::DiagnosticRecord> diagnostics_suite(std::uint64_t seed) {
    using diagnostics::DiagnosticRecord;
    std::vector<DiagnosticRecord> out;
    Rng rng(seed);

    const auto rgf = diagnostics::mc_rgf_drift(50, 5, 20000, rng);
    out.push_back({"rgf_drift", "d=50 q=5 n=20000", rgf.mean, 0.1, 3 * rgf.std_error, rgf.within(0.1)});
    for (double D : {0.0, 0.25, 0.5, 0.9}) {
        const auto e = diagnostics::mc_prgf_drift(101, 10, D, 20000, rng);
        const double expected = D + (1.0 - D) / 10.0;
        out.push_back({"prgf_drift", "d=101 q=10 D=" + io::format_number(D) + " n=20000", e.mean, expected,
                       3 * e.std_error, e.within(expected)});
    }
    for (Index d : {3, 5, 8}) {
        const double m = diagnostics::subspace_optimality_margin(d, 2, 1000, rng);
        out.push_back({"subspace_optimality", "d=" + std::to_string(d) + " q=2 n=1000", m, 0.0, 1e-12, m >= -1e-12});
    }

    const BenchFunction f2(FunctionId::f2, 100);
    RunOptions exact;
    exact.oracle_mode = OracleMode::exact;
    for (double scale : {1.0, 10.0, 50.0}) {
        GreedyConfig c{.L_hat = 2.0 * scale, .q = 5, .prior_source = PriorSource::historical, .budget = 6 * 1000};
        const auto res = diagnostics::check_history_prior_quality(run_greedy(f2.objective(), c, seed, {}, exact), 2.0, c.L_hat);
        out.push_back({"history_prior_quality", "f2 d=100 q=5 L_hat=" + io::format_number(scale) + "L",
                       static_cast<double>(res.violations), 0.0, 0.0, res.violations == 0});
    }

    const BenchFunction f2s(FunctionId::f2, 50);
    std::vector<RunTrace> traces;
    for (std::uint64_t s = 0; s < 20; ++s)
        traces.push_back(run_greedy(f2s.objective(), {.L_hat = 2.0, .q = 5, .budget = 5 * 100}, seed + s, {}, exact));
    diagnostics::BoundInputs in{.form = diagnostics::BoundForm::rgf_linear, .L = 2.0, .L_hat = 2.0, .tau = 2.0 / 50,
                                .R = 50.0, .q = 5, .d = 50, .f_star = 0.0};
    const auto rep = diagnostics::check_convergence_bounds(traces, in, {100});
    out.push_back({"rgf_linear_bound", "f2 d=50 q=5 T=100 seeds=20", rep.points[0].mean_delta, rep.points[0].bound, 0.0,
                   rep.ok()});
    return out;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& log = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Zeroth-order optimization benchmark runner"};
    app.set_config("--config", "", "Flat key = value file; command-line flags override it");
    CliOptions o;
    app.add_option("--preset", o.preset, "fig1_f1, fig1_f2, fig1_f3, fig2_f1, fig2_f2 or fig2_f4");
    app.add_option("--function", o.function, "f1, f2, f3 or f4");
    app.add_option("--dim", o.dim, "Problem dimension");
    app.add_option("--algo", o.algos,
                   "rgf, prgf, history_prgf, ars, pars_naive, pars_impl, pars_est, history_pars (repeatable)")
        ->delimiter(',');
    app.add_option("--q", o.q, "Random directions per iteration (default: 11 queries per iteration)");
    app.add_option("--lhat", o.lhat, "Absolute L_hat (step size 1/L_hat)");
    app.add_option("--lhat-scale", o.lhat_scale, "L_hat as a multiple of the true L");
    app.add_option("--tau-hat", o.tau_hat, "Strong convexity estimate for ARS variants");
    app.add_option("--mu", o.mu, "Finite-difference step");
    app.add_option("--budget", o.budget, "Directional-derivative query budget per run");
    app.add_option("--seeds", o.seeds, "Seeds, e.g. 0-9 or 1,5,7");
    app.add_option("--prior", o.prior, "none, historical or biased");
    app.add_flag("--restart", o.restart, "Adaptive restart for ARS variants");
    app.add_option("--out", o.out, "Output path stem");
    app.add_option("--threads", o.threads, "Worker threads");
    app.add_option("--log-every", o.log_every, "Trace logging stride (0: automatic)");
    app.add_option("--grid-points", o.grid_points, "Points of the aggregation grid");
    app.add_flag("--log-diagnostics", o.log_diagnostics, "Record C_t and D_t from the true gradient");

    auto* diag = app.add_subcommand("diagnostics", "Run the Monte-Carlo and bound checks and write a CSV report");
    std::string report = "zo_diagnostics.csv";
    std::uint64_t diag_seed = 0;
    diag->add_option("--out", report, "Report path");
    diag->add_option("--seed", diag_seed, "Seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        log << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return static_cast<int>(ErrorCategory::config);
    }

    try {
        if (*diag) {
            const auto records = diagnostics_suite(diag_seed);
            diagnostics::write_report(records, report);
            bool all = true;
            for (const auto& r : records) {
                log << (r.passed ? "PASS " : "FAIL ") << r.check << " " << r.detail << " observed "
                    << io::format_number(r.observed) << " expected " << io::format_number(r.expected) << "\n";
                all = all && r.passed;
            }
            log << "wrote " << report << "\n";
            return all ? 0 : kChecksFailedExit;
        }
        run_and_emit(build_config(o), log);
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return static_cast<int>(e.category());
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return static_cast<int>(ErrorCategory::internal);
    }
}

}  // namespace zo::bench
