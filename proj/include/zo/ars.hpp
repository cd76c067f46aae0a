#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <numeric>
#include <optional>
#include <string>
#include <utility>

#include "zo/core.hpp"
#include "zo/estimators.hpp"
#include "zo/greedy.hpp"
#include "zo/trace.hpp"

namespace zo {

enum class ArsVariant { ars, pars_naive, pars_est, pars_impl, history_pars };

inline const char* to_string(ArsVariant v) {
    switch (v) {
        case ArsVariant::ars: return "ars";
        case ArsVariant::pars_naive: return "pars_naive";
        case ArsVariant::pars_est: return "pars_est";
        case ArsVariant::pars_impl: return "pars_impl";
        case ArsVariant::history_pars: return "history_pars";
    }
    return "?";
}

/// Variants driven by a caller-supplied prior.
inline bool needs_external_prior(ArsVariant v) {
    return v == ArsVariant::pars_naive || v == ArsVariant::pars_est || v == ArsVariant::pars_impl;
}

struct ArsConfig {
    ArsVariant variant = ArsVariant::ars;
    double L_hat = 1.0;
    double tau_hat = 0.0;
    std::optional<double> gamma0;  // defaults to L_hat
    Index q = 1;
    double B_ub = 0.6;
    std::size_t avg_window_k = 10;
    bool restart = false;
    std::uint64_t budget = 0;
    double kappa = 0.9;   // PARS-Est guess discount
    int max_guesses = 8;  // PARS-Est retries before falling back to the floor

    double gamma_init() const { return gamma0.value_or(L_hat); }

    /// Worst-case dd queries of one iteration.
    std::uint64_t iteration_cost() const {
        const auto qq = static_cast<std::uint64_t>(q);
        switch (variant) {
            case ArsVariant::ars: return qq;
            case ArsVariant::pars_naive:
            case ArsVariant::history_pars: return qq + 1;
            case ArsVariant::pars_impl: return qq + 3;
            case ArsVariant::pars_est: return (qq + 1) * (2 + static_cast<std::uint64_t>(max_guesses));
        }
        return qq;
    }

    void validate(Index d) const {
        if (!(L_hat > 0.0)) throw ConfigError("ars: L_hat must be > 0");
        if (!(tau_hat >= 0.0)) throw ConfigError("ars: tau_hat must be >= 0");
        if (!(gamma_init() > 0.0)) throw ConfigError("ars: gamma0 must be > 0");
        if (gamma_init() < tau_hat) throw ConfigError("ars: gamma0 must be >= tau_hat");
        if (q < 1) throw ConfigError("ars: q must be >= 1");
        const Index cap = variant == ArsVariant::ars ? d : d - 1;
        if (q > cap) throw ConfigError("ars: q must be <= d (or <= d-1 for prior-guided variants)");
        if (!(B_ub > 0.0 && B_ub <= 1.0)) throw ConfigError("ars: B_ub must lie in (0, 1]");
        if (avg_window_k < 1) throw ConfigError("ars: avg_window_k must be >= 1");
        if (!(kappa > 0.0 && kappa <= 1.0)) throw ConfigError("ars: kappa must lie in (0, 1]");
        if (max_guesses < 1) throw ConfigError("ars: max_guesses must be >= 1");
    }
};

struct ArsState {
    Vector x;
    Vector m;
    double gamma = 0.0;
    double theta_prev = 0.0;
    std::optional<Vector> v_prev;  // history prior
    std::deque<double> norm_sq_history;
    std::optional<double> last_f_y;
    std::uint64_t iteration = 0;
};

struct ArsStepReport {
    Vector y;
    Vector g1;
    std::optional<Vector> prior;
    double theta = 0.0;  // theta_t as computed this step
    std::optional<double> d_hat;
    int guesses = 0;
    bool restarted = false;
    std::uint64_t cost = 0;
};

/// theta = (D + (q/(d-1))(1-D)) / (L_hat (D + ((d-1)/q)(1-D))).
inline double theta_from_D(double D, Index q, Index d, double L_hat) {
    if (!(D >= 0.0 && D <= 1.0)) throw DomainError("theta_from_D: D must lie in [0, 1]");
    if (d < 2 || q < 1 || q > d - 1) throw DomainError("theta_from_D: requires 1 <= q <= d-1");
    if (!(L_hat > 0.0)) throw DomainError("theta_from_D: L_hat must be > 0");
    const double r = static_cast<double>(q) / static_cast<double>(d - 1);
    return (D + r * (1.0 - D)) / (L_hat * (D + (1.0 - D) / r));
}

/// theta_from_D at D = 0: q^2 / (L_hat (d-1)^2).
inline double theta_floor(Index q, Index d, double L_hat) {
    const double r = static_cast<double>(q) / static_cast<double>(d - 1);
    return r * r / L_hat;
}

/// The RGF value q^2 / (L_hat d^2) used by ARS and PARS-Naive.
inline double theta_rgf(Index q, Index d, double L_hat) {
    const double r = static_cast<double>(q) / static_cast<double>(d);
    return r * r / L_hat;
}

struct AlphaBetaGamma {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma_next = 0.0;
    double lambda = 0.0;
};

/// Positive root of alpha^2 = theta ((1-alpha) gamma + alpha tau_hat), with
/// beta = alpha gamma / (gamma + alpha tau_hat), gamma' = (1-alpha) gamma + alpha tau_hat
/// and lambda = alpha tau_hat / gamma'.
inline AlphaBetaGamma alpha_beta_gamma(double theta, double gamma, double tau_hat) {
    if (!(theta >= 0.0) || !(gamma > 0.0) || !(tau_hat >= 0.0))
        throw DomainError("alpha_beta_gamma: requires theta >= 0, gamma > 0, tau_hat >= 0");
    AlphaBetaGamma out;
    if (theta == 0.0) {
        out.gamma_next = gamma;
        return out;
    }
    // alpha^2 + theta (gamma - tau) alpha - theta gamma = 0, in the
    // cancellation-free form of the positive root.
    const double b = theta * (gamma - tau_hat);
    const double disc = b * b + 4.0 * theta * gamma;
    const double alpha = 2.0 * theta * gamma / (b + std::sqrt(disc));
    if (!std::isfinite(alpha) || !(alpha > 0.0)) throw InvariantViolation("alpha_beta_gamma: no positive root");
    out.alpha = alpha;
    out.beta = alpha * gamma / (gamma + alpha * tau_hat);
    out.gamma_next = (1.0 - alpha) * gamma + alpha * tau_hat;
    if (!(out.gamma_next > 0.0)) throw InvariantViolation("alpha_beta_gamma: gamma_next is not positive");
    out.lambda = alpha * tau_hat / out.gamma_next;
    return out;
}

inline ArsState init_ars(const ObjectiveSpec& objective, const ArsConfig& config, Rng& rng) {
    ArsState state;
    state.x = objective.x0;
    state.m = objective.x0;
    state.gamma = config.gamma_init();
    if (config.variant == ArsVariant::history_pars) state.v_prev = sample_unit_sphere(rng, objective.dim);
    return state;
}

/// Adaptive restart: when f(y_t) > f(y_{t-1}), reset m to the new iterate and
/// gamma to gamma0. Expects `state.x` to already hold x_{t+1}.
inline bool maybe_restart(ArsState& state, double f_y_current, const ArsConfig& config) {
    bool restarted = false;
    if (config.restart && state.last_f_y && f_y_current > *state.last_f_y) {
        state.m = state.x;
        state.gamma = config.gamma_init();
        restarted = true;
    }
    state.last_f_y = f_y_current;
    return restarted;
}

namespace detail {

inline Vector interpolate(const ArsState& state, const AlphaBetaGamma& abg) {
    return (1.0 - abg.beta) * state.x + abg.beta * state.m;
}

/// x_{t+1} = y - g1 / L_hat;  m_{t+1} = (1-lambda) m + lambda y - (theta/alpha) g2.
inline void apply_update(ArsState& state, const ArsConfig& config, const Vector& y, const AlphaBetaGamma& abg,
                         double theta, const Vector& g1, const Vector& g2) {
    const double step = abg.alpha > 0.0 ? theta / abg.alpha : 0.0;
    state.m = (1.0 - abg.lambda) * state.m + abg.lambda * y - step * g2;
    state.x = y - g1 / config.L_hat;
    state.gamma = abg.gamma_next;
}

inline double f_at_y(Oracle& oracle, const Vector& y) {
    if (auto cached = oracle.cached_value(y)) return *cached;
    return oracle.value(y);  // exact-oracle mode: one extra counted evaluation
}

inline std::optional<Vector> fetch_prior(const ArsConfig& config, const ArsState& state, const PriorFeed& feed) {
    if (!needs_external_prior(config.variant)) return std::nullopt;
    if (!feed) throw RequiresPrior(std::string("ars: variant ") + to_string(config.variant) + " requires a prior feed");
    return feed(state.x);
}

}  // namespace detail

/// One iteration of any ARS-family variant. Prior-guided variants other than
/// History-PARS obtain p_t from `feed(x_t)`.
inline ArsStepReport ars_family_step(ArsState& state, Oracle& oracle, const ArsConfig& config, Rng& rng,
                                     const PriorFeed& feed = {}) {
    const Index d = oracle.dim();
    const Index q = config.q;
    check_length(state.x, d, "ars_step(x)");
    oracle.new_iteration();
    const auto before = oracle.dd_queries();

    ArsStepReport report;
    AlphaBetaGamma abg;
    Vector g2;

    switch (config.variant) {
        case ArsVariant::ars: {
            report.theta = theta_rgf(q, d, config.L_hat);
            abg = alpha_beta_gamma(report.theta, state.gamma, config.tau_hat);
            report.y = detail::interpolate(state, abg);
            const ProbeSet probes = probe(oracle, report.y, build_frame(rng, d, q));
            report.g1 = subspace_estimate(probes);
            g2 = (static_cast<double>(d) / static_cast<double>(q)) * report.g1;
            break;
        }
        case ArsVariant::pars_naive: {
            const auto prior = detail::fetch_prior(config, state, feed);
            report.theta = theta_rgf(q, d, config.L_hat);
            abg = alpha_beta_gamma(report.theta, state.gamma, config.tau_hat);
            report.y = detail::interpolate(state, abg);
            const ProbeSet probes = probe(oracle, report.y, build_frame(rng, d, q, prior));
            report.prior = probes.frame.prior;
            report.g1 = subspace_estimate(probes);
            g2 = (static_cast<double>(d) / static_cast<double>(q)) * report.g1;
            break;
        }
        case ArsVariant::pars_impl: {
            const auto raw_prior = detail::fetch_prior(config, state, feed);
            const Vector p = detail::normalized_prior(*raw_prior, d);
            double avg = 0.0;
            if (!state.norm_sq_history.empty())
                avg = std::accumulate(state.norm_sq_history.begin(), state.norm_sq_history.end(), 0.0) /
                      static_cast<double>(state.norm_sq_history.size());
            auto d_hat_at = [&](const Vector& y) {
                const double pd = oracle.directional_derivative(y, p);
                if (!(avg > 0.0)) return 0.0;
                return std::clamp(pd * pd / avg, 0.0, config.B_ub);
            };
            // Two fixed-point passes on theta = g(theta), starting from y = x_t.
            double dh = d_hat_at(state.x);
            double theta = theta_from_D(dh, q, d, config.L_hat);
            abg = alpha_beta_gamma(theta, state.gamma, config.tau_hat);
            dh = d_hat_at(detail::interpolate(state, abg));
            theta = theta_from_D(dh, q, d, config.L_hat);
            abg = alpha_beta_gamma(theta, state.gamma, config.tau_hat);
            report.theta = theta;
            report.d_hat = dh;
            report.y = detail::interpolate(state, abg);

            const ProbeSet probes = probe(oracle, report.y, build_frame(rng, d, q, p));
            report.prior = probes.frame.prior;
            report.g1 = subspace_estimate(probes);
            g2 = g2_unbiased(probes);
            state.norm_sq_history.push_back(estimate_grad_norm_sq(probes));
            while (state.norm_sq_history.size() > config.avg_window_k) state.norm_sq_history.pop_front();
            break;
        }
        case ArsVariant::pars_est: {
            const auto raw_prior = detail::fetch_prior(config, state, feed);
            const Vector p = detail::normalized_prior(*raw_prior, d);
            const double floor = theta_floor(q, d, config.L_hat);
            auto theta_prime_at = [&](const Vector& y) {
                const ProbeSet probes = probe(oracle, y, build_frame(rng, d, q, p));
                return theta_from_D(estimate_dt(probes, true), q, d, config.L_hat);
            };
            // Guess theta = kappa * theta', then verify against theta' at the
            // induced y. theta' never drops below the floor, so clamping the
            // guess there keeps the fallback reachable and the floor intact.
            double theta_prime = theta_prime_at(state.x);
            double theta = floor;
            for (int g = 0; g < config.max_guesses; ++g) {
                const double guess = std::max(config.kappa * theta_prime, floor);
                ++report.guesses;
                const AlphaBetaGamma trial = alpha_beta_gamma(guess, state.gamma, config.tau_hat);
                theta_prime = theta_prime_at(detail::interpolate(state, trial));
                if (guess <= theta_prime) {
                    theta = guess;
                    break;
                }
            }
            report.theta = theta;
            abg = alpha_beta_gamma(theta, state.gamma, config.tau_hat);
            report.y = detail::interpolate(state, abg);

            const ProbeSet probes = probe(oracle, report.y, build_frame(rng, d, q, p));
            report.prior = probes.frame.prior;
            report.d_hat = estimate_dt(probes, true);
            report.g1 = subspace_estimate(probes);
            g2 = g2_unbiased(probes);
            break;
        }
        case ArsVariant::history_pars: {
            abg = alpha_beta_gamma(state.theta_prev, state.gamma, config.tau_hat);
            report.y = detail::interpolate(state, abg);
            const ProbeSet probes = probe(oracle, report.y, build_frame(rng, d, q, state.v_prev));
            report.prior = probes.frame.prior;
            report.g1 = subspace_estimate(probes);
            g2 = g2_unbiased(probes);
            report.d_hat = estimate_dt(probes);
            report.theta = theta_from_D(*report.d_hat, q, d, config.L_hat);
            // The update uses theta_{t-1}, which produced alpha_t.
            detail::apply_update(state, config, report.y, abg, state.theta_prev, report.g1, g2);
            const double n = report.g1.norm();
            if (n > 0.0) state.v_prev = report.g1 / n;
            state.theta_prev = report.theta;
            break;
        }
    }

    if (config.variant != ArsVariant::history_pars) {
        detail::apply_update(state, config, report.y, abg, report.theta, report.g1, g2);
        state.theta_prev = report.theta;
    }
    if (config.restart) report.restarted = maybe_restart(state, detail::f_at_y(oracle, report.y), config);
    ++state.iteration;
    report.cost = oracle.dd_queries() - before;
    return report;
}

/// Runs an ARS-family variant until the next iteration could exceed the
/// budget (or the optional target accuracy is reached).
inline RunTrace run_ars(const ObjectiveSpec& objective, const ArsConfig& config, std::uint64_t seed,
                        const PriorFeed& feed = {}, const RunOptions& options = {}) {
    objective.validate();
    config.validate(objective.dim);
    const std::uint64_t cost = config.iteration_cost();
    if (config.budget < cost) throw ConfigError("ars: budget is smaller than one iteration's cost");
    if (needs_external_prior(config.variant) && !feed)
        throw ConfigError(std::string("ars: variant ") + to_string(config.variant) + " requires a prior feed");

    Oracle oracle(objective, options.mu, options.oracle_mode);
    Rng rng(seed);
    ArsState state = init_ars(objective, config, rng);
    detail::TraceLogger log(objective, options, seed);

    while (oracle.dd_queries() + cost <= config.budget) {
        const ArsStepReport step = ars_family_step(state, oracle, config, rng, feed);
        TraceRow row;
        row.iteration = state.iteration;
        row.dd_queries = oracle.dd_queries();
        row.fn_evals = oracle.fn_evals();
        row.theta_t = step.theta;
        row.restart = step.restarted;
        if (log.wants_gradient()) {
            const Vector grad = objective.true_gradient(step.y);
            row.c_t = squared_cosine(grad, step.g1);
            if (step.prior) row.d_t = squared_cosine(grad, *step.prior);
        }
        if (log.record(row, state.x)) break;
    }
    return log.finish();
}

}  // namespace zo
