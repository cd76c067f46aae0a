#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zo/ars.hpp"
#include "zo/greedy.hpp"
#include "zo/testfns.hpp"

namespace zo::bench {

enum class Algorithm { rgf, prgf, history_prgf, ars, pars_naive, pars_impl, pars_est, history_pars };

inline constexpr Algorithm kAllAlgorithms[] = {Algorithm::rgf,        Algorithm::prgf,      Algorithm::history_prgf,
                                               Algorithm::ars,        Algorithm::pars_naive, Algorithm::pars_impl,
                                               Algorithm::pars_est,   Algorithm::history_pars};

inline const char* to_string(Algorithm a) {
    switch (a) {
        case Algorithm::rgf: return "rgf";
        case Algorithm::prgf: return "prgf";
        case Algorithm::history_prgf: return "history_prgf";
        case Algorithm::ars: return "ars";
        case Algorithm::pars_naive: return "pars_naive";
        case Algorithm::pars_impl: return "pars_impl";
        case Algorithm::pars_est: return "pars_est";
        case Algorithm::history_pars: return "history_pars";
    }
    return "?";
}

/// Legend name used in plots.
inline const char* display_name(Algorithm a) {
    switch (a) {
        case Algorithm::rgf: return "RGF";
        case Algorithm::prgf: return "PRGF";
        case Algorithm::history_prgf: return "History-PRGF";
        case Algorithm::ars: return "ARS";
        case Algorithm::pars_naive: return "PARS-Naive";
        case Algorithm::pars_impl: return "PARS";
        case Algorithm::pars_est: return "PARS-Est";
        case Algorithm::history_pars: return "History-PARS";
    }
    return "?";
}

inline Algorithm parse_algorithm(std::string_view name) {
    for (Algorithm a : kAllAlgorithms)
        if (name == to_string(a)) return a;
    throw ConfigError("unknown algorithm '" + std::string(name) + "'");
}

inline bool is_ars_family(Algorithm a) {
    return a == Algorithm::ars || a == Algorithm::pars_naive || a == Algorithm::pars_impl || a == Algorithm::pars_est ||
           a == Algorithm::history_pars;
}

inline bool needs_external_prior(Algorithm a) {
    return a == Algorithm::prgf || a == Algorithm::pars_naive || a == Algorithm::pars_impl || a == Algorithm::pars_est;
}

inline bool uses_prior(Algorithm a) { return a != Algorithm::rgf && a != Algorithm::ars; }

inline ArsVariant ars_variant(Algorithm a) {
    switch (a) {
        case Algorithm::ars: return ArsVariant::ars;
        case Algorithm::pars_naive: return ArsVariant::pars_naive;
        case Algorithm::pars_impl: return ArsVariant::pars_impl;
        case Algorithm::pars_est: return ArsVariant::pars_est;
        case Algorithm::history_pars: return ArsVariant::history_pars;
        default: break;
    }
    throw ConfigError(std::string("algorithm ") + to_string(a) + " is not an ARS variant");
}

/// Where prior-guided algorithms get their prior from.
enum class PriorMode { none, historical, biased };

inline const char* to_string(PriorMode m) {
    switch (m) {
        case PriorMode::none: return "none";
        case PriorMode::historical: return "historical";
        case PriorMode::biased: return "biased";
    }
    return "?";
}

inline PriorMode parse_prior_mode(std::string_view name) {
    for (PriorMode m : {PriorMode::none, PriorMode::historical, PriorMode::biased})
        if (name == to_string(m)) return m;
    throw ConfigError("unknown prior mode '" + std::string(name) + "'");
}

/// Maps a generic algorithm name onto its historical-prior form when the
/// prior mode is `historical`: prgf becomes history_prgf, pars_impl becomes
/// history_pars.
inline Algorithm resolve_for_prior(Algorithm a, PriorMode mode) {
    if (mode != PriorMode::historical) return a;
    if (a == Algorithm::prgf) return Algorithm::history_prgf;
    if (a == Algorithm::pars_impl) return Algorithm::history_pars;
    return a;
}

/// One curve of a batch.
struct SeriesSpec {
    std::string label;
    Algorithm algorithm = Algorithm::rgf;
    Index q = 1;
    std::optional<double> L_hat;  // absolute; otherwise L_hat_scale * L
    double L_hat_scale = 1.0;
    std::optional<double> tau_hat;  // ARS family; 0 when unset
    bool tau_hat_truth = false;     // use the function's true tau instead
    bool restart = false;
    std::string group;  // series sharing a group compete; only the best is plotted
};

struct RunConfig {
    FunctionId function = FunctionId::f1;
    Index dim = 256;
    std::vector<SeriesSpec> series;
    double mu = kDefaultMu;
    std::uint64_t budget = 0;
    std::vector<std::uint64_t> seeds;
    PriorMode prior = PriorMode::none;
    std::string out;
    std::size_t threads = 1;
    std::uint64_t log_every = 0;  // 0: about 1000 rows per run
    std::size_t grid_points = 200;
    bool diagnostics = false;  // log C_t / D_t (costs a true-gradient call per step)
    double noise_norm = 1.5;   // biased prior noise

    void validate() const;
};

inline double resolve_L_hat(const SeriesSpec& s, const BenchFunction& f) {
    if (s.L_hat) {
        if (!(*s.L_hat > 0.0)) throw ConfigError(s.label + ": L_hat must be > 0");
        return *s.L_hat;
    }
    const auto L = f.smoothness_L();
    if (!L) throw ConfigError(s.label + ": " + to_string(f.id()) + " has no known L; give an absolute L_hat");
    if (!(s.L_hat_scale > 0.0)) throw ConfigError(s.label + ": L_hat scale must be > 0");
    return s.L_hat_scale * *L;
}

inline double resolve_tau_hat(const SeriesSpec& s, const BenchFunction& f) {
    if (s.tau_hat_truth) return f.smoothness_constants().tau;
    return s.tau_hat.value_or(0.0);
}

inline GreedyConfig greedy_config(const SeriesSpec& s, const BenchFunction& f, std::uint64_t budget) {
    GreedyConfig c;
    c.L_hat = resolve_L_hat(s, f);
    c.q = s.q;
    c.budget = budget;
    c.prior_source = s.algorithm == Algorithm::rgf            ? PriorSource::none
                     : s.algorithm == Algorithm::history_prgf ? PriorSource::historical
                                                              : PriorSource::external;
    return c;
}

inline ArsConfig ars_config(const SeriesSpec& s, const BenchFunction& f, std::uint64_t budget) {
    ArsConfig c;
    c.variant = ars_variant(s.algorithm);
    c.L_hat = resolve_L_hat(s, f);
    c.tau_hat = resolve_tau_hat(s, f);
    c.q = s.q;
    c.restart = s.restart;
    c.budget = budget;
    return c;
}

inline std::uint64_t iteration_cost(const SeriesSpec& s, const BenchFunction& f, std::uint64_t budget) {
    return is_ars_family(s.algorithm) ? ars_config(s, f, budget).iteration_cost()
                                      : greedy_config(s, f, budget).iteration_cost();
}

inline void RunConfig::validate() const {
    if (dim < 1) throw ConfigError("dim must be >= 1");
    if (function == FunctionId::f3 && dim < 2) throw ConfigError("f3 needs dim >= 2");
    if (series.empty()) throw ConfigError("no algorithm selected");
    if (seeds.empty()) throw ConfigError("at least one seed is required");
    if (!(mu > 0.0)) throw ConfigError("mu must be > 0");
    if (threads < 1) throw ConfigError("threads must be >= 1");
    if (grid_points < 1) throw ConfigError("grid_points must be >= 1");
    if (!(noise_norm >= 0.0)) throw ConfigError("noise_norm must be >= 0");
    const BenchFunction f(function, dim);
    for (const auto& s : series) {
        if (s.label.empty()) throw ConfigError("series label must not be empty");
        if (s.label.find_first_of(",\n\"") != std::string::npos)
            throw ConfigError("series label '" + s.label + "' must not contain commas, quotes or newlines");
        if (needs_external_prior(s.algorithm) && prior != PriorMode::biased)
            throw ConfigError(s.label + ": " + to_string(s.algorithm) + " needs prior mode 'biased'");
        if (s.tau_hat_truth && function == FunctionId::f3) throw ConfigError(s.label + ": f3 has no true tau");
        if (is_ars_family(s.algorithm))
            ars_config(s, f, budget).validate(dim);
        else
            greedy_config(s, f, budget).validate(dim);
        const std::uint64_t cost = iteration_cost(s, f, budget);
        if (budget < cost)
            throw ConfigError(s.label + ": budget " + std::to_string(budget) + " is below one iteration's cost " +
                              std::to_string(cost));
    }
    for (std::size_t i = 0; i < series.size(); ++i)
        for (std::size_t j = i + 1; j < series.size(); ++j)
            if (series[i].label == series[j].label) throw ConfigError("duplicate series label '" + series[i].label + "'");
}

/// Number of queries that corresponds to one x-axis unit in the paper's
/// figures (floor(d/11) iterations of 11 queries).
inline std::uint64_t figure_unit(Index d) { return 11 * static_cast<std::uint64_t>(std::max<Index>(1, d / 11)); }

inline std::vector<std::uint64_t> seed_range(std::uint64_t first, std::uint64_t count) {
    std::vector<std::uint64_t> out(count);
    for (std::uint64_t i = 0; i < count; ++i) out[i] = first + i;
    return out;
}

inline constexpr const char* kPresetNames[] = {"fig1_f1", "fig1_f2", "fig1_f3", "fig2_f1", "fig2_f2", "fig2_f4"};

namespace detail {

// q chosen so every iteration costs 11 queries.
inline SeriesSpec eleven_query(Algorithm a) {
    SeriesSpec s;
    s.algorithm = a;
    s.label = display_name(a);
    switch (a) {
        case Algorithm::rgf:
        case Algorithm::ars: s.q = 11; break;
        case Algorithm::pars_impl: s.q = 8; break;
        default: s.q = 10; break;
    }
    return s;
}

inline RunConfig fig1(FunctionId id) {
    RunConfig c;
    c.function = id;
    c.dim = 256;
    c.prior = PriorMode::biased;
    c.budget = 300 * figure_unit(c.dim);
    c.seeds = seed_range(0, 10);
    const Algorithm algos[] = {Algorithm::rgf, Algorithm::prgf, Algorithm::ars, Algorithm::pars_naive,
                               Algorithm::pars_impl};
    for (Algorithm a : algos) {
        SeriesSpec s = eleven_query(a);
        if (id == FunctionId::f2 && is_ars_family(a)) s.tau_hat_truth = true;
        if (id != FunctionId::f3) {
            c.series.push_back(s);
            continue;
        }
        // no global L: each algorithm keeps its best L_hat from a grid
        for (double lh : {250.0, 500.0, 1000.0, 2000.0, 4000.0}) {
            SeriesSpec g = s;
            g.L_hat = lh;
            g.group = s.label;
            g.label = s.label + "-Lhat" + std::to_string(static_cast<int>(lh));
            c.series.push_back(g);
        }
    }
    return c;
}

inline RunConfig fig2(FunctionId id) {
    RunConfig c;
    c.function = id;
    c.dim = 500;
    c.prior = PriorMode::historical;
    c.budget = 500 * figure_unit(c.dim);
    c.seeds = seed_range(0, 10);
    const Algorithm algos[] = {Algorithm::rgf, Algorithm::history_prgf, Algorithm::ars, Algorithm::history_pars};
    for (Algorithm a : algos) {
        SeriesSpec s = eleven_query(a);
        s.restart = is_ars_family(a);
        c.series.push_back(s);
        if (id == FunctionId::f4) continue;
        SeriesSpec slow = s;
        slow.L_hat_scale = 50.0;
        slow.label = s.label + "-0.02";
        c.series.push_back(slow);
    }
    return c;
}

}  // namespace detail

inline RunConfig preset(std::string_view name) {
    if (name == "fig1_f1") return detail::fig1(FunctionId::f1);
    if (name == "fig1_f2") return detail::fig1(FunctionId::f2);
    if (name == "fig1_f3") return detail::fig1(FunctionId::f3);
    if (name == "fig2_f1") return detail::fig2(FunctionId::f1);
    if (name == "fig2_f2") return detail::fig2(FunctionId::f2);
    if (name == "fig2_f4") return detail::fig2(FunctionId::f4);
    throw ConfigError("unknown preset '" + std::string(name) + "'");
}

}  // namespace zo::bench
