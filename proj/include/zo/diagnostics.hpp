#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/accumulators/accumulators.hpp>
#include <boost/accumulators/statistics/count.hpp>
#include <boost/accumulators/statistics/mean.hpp>
#include <boost/accumulators/statistics/stats.hpp>
#include <boost/accumulators/statistics/variance.hpp>

#include "zo/core.hpp"
#include "zo/estimators.hpp"
#include "zo/io.hpp"
#include "zo/trace.hpp"

namespace zo::diagnostics {

inline constexpr std::size_t kMinDriftSamples = 1000;

struct MonteCarloEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t samples = 0;

    bool within(double expected, double n_stderr = 3.0) const {
        return std::abs(mean - expected) <= n_stderr * std_error;
    }
};

/// Per-iteration diagnostics pulled out of a trace.
struct DriftSample {
    double C_t = 0.0;
    double D_t = 0.0;
    std::optional<double> theta_t;
    std::uint64_t iteration = 0;
};

namespace detail {

class MeanAccumulator {
public:
    void add(double v) { acc_(v); }

    MonteCarloEstimate result() const {
        namespace ba = boost::accumulators;
        MonteCarloEstimate out;
        out.samples = ba::count(acc_);
        out.mean = ba::mean(acc_);
        if (out.samples > 1) {
            const double n = static_cast<double>(out.samples);
            const double unbiased = ba::variance(acc_) * n / (n - 1.0);
            out.std_error = std::sqrt(unbiased / n);
        }
        return out;
    }

private:
    boost::accumulators::accumulator_set<double, boost::accumulators::stats<boost::accumulators::tag::mean,
                                                                            boost::accumulators::tag::variance>>
        acc_;
};

/// f(x) = g^T x probed at the origin with an exact oracle, so g1 is the
/// projection of g onto the frame.
inline ObjectiveSpec linear_objective(const Vector& g) {
    ObjectiveSpec spec;
    spec.dim = g.size();
    spec.eval = [g](const Vector& x) { return g.dot(x); };
    spec.true_gradient = [g](const Vector&) { return g; };
    spec.x0 = Vector::Zero(g.size());
    return spec;
}

inline void check_samples(std::size_t n, const char* who) {
    if (n < kMinDriftSamples) throw DomainError(std::string(who) + ": need at least 1000 samples");
}

/// Unit vector with squared cosine D to the unit vector p.
inline Vector with_squared_cosine(const Vector& p, double D, Rng& rng) {
    Vector h;
    do {
        h = rng.gaussian(p.size());
        h -= p.dot(h) * p;
    } while (!(h.norm() > 1e-8));
    h.normalize();
    return std::sqrt(D) * p + std::sqrt(1.0 - D) * h;
}

}  // namespace detail

/// MC mean of C_t = cos^2(grad, g1) for q random orthonormal directions and
/// a fixed gradient.
inline MonteCarloEstimate mc_rgf_drift(Index d, Index q, std::size_t n_samples, Rng& rng) {
    if (q < 1 || q > d) throw DomainError("mc_rgf_drift: need 1 <= q <= d");
    detail::check_samples(n_samples, "mc_rgf_drift");
    const Vector g = sample_unit_sphere(rng, d);
    Oracle oracle(detail::linear_objective(g), kDefaultMu, OracleMode::exact);
    const Vector x = Vector::Zero(d);
    detail::MeanAccumulator acc;
    for (std::size_t i = 0; i < n_samples; ++i) {
        const ProbeSet probes = probe(oracle, x, build_frame(rng, d, q));
        acc.add(squared_cosine(g, subspace_estimate(probes)));
    }
    return acc.result();
}

/// Same with a prior p whose squared cosine to the gradient is D_fixed.
inline MonteCarloEstimate mc_prgf_drift(Index d, Index q, double D_fixed, std::size_t n_samples, Rng& rng) {
    if (q < 1 || q > d - 1) throw DomainError("mc_prgf_drift: need 1 <= q <= d-1");
    if (!(D_fixed >= 0.0 && D_fixed <= 1.0)) throw DomainError("mc_prgf_drift: D must lie in [0, 1]");
    detail::check_samples(n_samples, "mc_prgf_drift");
    const Vector p = sample_unit_sphere(rng, d);
    const Vector g = detail::with_squared_cosine(p, D_fixed, rng);
    Oracle oracle(detail::linear_objective(g), kDefaultMu, OracleMode::exact);
    const Vector x = Vector::Zero(d);
    detail::MeanAccumulator acc;
    for (std::size_t i = 0; i < n_samples; ++i) {
        const ProbeSet probes = probe(oracle, x, build_frame(rng, d, q, p));
        acc.add(squared_cosine(g, subspace_estimate(probes)));
    }
    return acc.result();
}

/// Brute-force check that g1 is the best direction inside its own span:
/// returns cos^2(grad, g1) minus the best cos^2 over `n_random` random unit
/// vectors of span(frame). Nonnegative up to rounding.
inline double subspace_optimality_margin(Index d, Index q, std::size_t n_random, Rng& rng, bool with_prior = false) {
    const Vector g = rng.gaussian(d);
    std::optional<Vector> prior;
    if (with_prior) prior = sample_unit_sphere(rng, d);
    Oracle oracle(detail::linear_objective(g), kDefaultMu, OracleMode::exact);
    const ProbeSet probes = probe(oracle, Vector::Zero(d), build_frame(rng, d, q, prior));
    const double best = squared_cosine(g, subspace_estimate(probes));

    Matrix basis(d, probes.frame.size());
    basis.leftCols(q) = probes.frame.directions;
    if (prior) basis.col(q) = *probes.frame.prior;
    double best_random = 0.0;
    for (std::size_t i = 0; i < n_random; ++i) {
        const Vector v = basis * sample_unit_sphere(rng, basis.cols());
        best_random = std::max(best_random, squared_cosine(g, v));
    }
    return best - best_random;
}

inline std::vector<DriftSample> drift_samples(const RunTrace& trace) {
    std::vector<DriftSample> out;
    for (const auto& r : trace.rows) {
        if (!r.c_t || !r.d_t) continue;
        // row k carries the diagnostics of step k-1
        out.push_back({*r.c_t, *r.d_t, r.theta_t, r.iteration - 1});
    }
    return out;
}

struct HistoryPriorCheck {
    std::size_t checked = 0;
    std::size_t violations = 0;
    double worst_margin = 0.0;  // min of D_t - (1 - L/L_hat)^2 C_{t-1}
};

/// Counts steps t >= 1 with D_t < (1 - L/L_hat)^2 C_{t-1} - 1e-9 in a
/// History-PRGF trace logged every iteration.
inline HistoryPriorCheck check_history_prior_quality(const RunTrace& trace, double L, double L_hat) {
    if (!(L > 0.0) || !(L_hat > 0.0)) throw DomainError("check_history_prior_quality: L and L_hat must be > 0");
    const double shrink = (1.0 - L / L_hat) * (1.0 - L / L_hat);
    HistoryPriorCheck out;
    bool first = true;
    for (std::size_t k = 2; k < trace.rows.size(); ++k) {
        const TraceRow& prev = trace.rows[k - 1];
        const TraceRow& cur = trace.rows[k];
        if (cur.iteration != prev.iteration + 1) throw DomainError("check_history_prior_quality: trace must be logged every iteration");
        if (!prev.c_t || !cur.d_t) throw UnsupportedDiagnostic("check_history_prior_quality: trace lacks C_t/D_t diagnostics");
        const double margin = *cur.d_t - shrink * *prev.c_t;
        if (first || margin < out.worst_margin) out.worst_margin = margin;
        first = false;
        ++out.checked;
        if (margin < -1e-9) ++out.violations;
    }
    return out;
}

/// L' = L / (1 - (1 - L/L_hat)^2), the effective smoothness of a greedy
/// step with step size 1/L_hat.
inline double effective_smoothness(double L, double L_hat) {
    const double r = 1.0 - L / L_hat;
    const double denom = 1.0 - r * r;
    if (!(L > 0.0) || !(denom > 0.0)) throw DomainError("effective_smoothness: need L > 0 and L_hat > L/2");
    return L / denom;
}

enum class BoundForm {
    rgf_sublinear,      // 2 L' R^2 (d/q) / (T+1)
    rgf_linear,         // delta_0 exp(-(tau/L')(q/d) T)
    history_sublinear,  // (32/q + 2) 2 L (d/q) R^2 / (T - ceil(d/q) + 1), T >= ceil(d/q)
    history_linear,     // 2 exp(-0.1 (q/d)(tau/L) T) delta_0, T >= 5 d/q
};

inline const char* to_string(BoundForm f) {
    switch (f) {
        case BoundForm::rgf_sublinear: return "rgf_sublinear";
        case BoundForm::rgf_linear: return "rgf_linear";
        case BoundForm::history_sublinear: return "history_sublinear";
        case BoundForm::history_linear: return "history_linear";
    }
    return "?";
}

struct BoundInputs {
    BoundForm form = BoundForm::rgf_sublinear;
    double L = 0.0;
    double L_hat = 0.0;
    double tau = 0.0;
    double R = 0.0;  // distance from x_0 to the minimizer set
    Index q = 1;
    Index d = 1;
    double f_star = 0.0;
    double slack = 0.2;
    std::size_t min_seeds = 20;
};

struct BoundPoint {
    std::uint64_t T = 0;
    double mean_delta = 0.0;
    double bound = 0.0;  // already multiplied by (1 + slack)
    bool ok = true;
};

struct BoundReport {
    BoundForm form = BoundForm::rgf_sublinear;
    bool hypotheses_hold = true;
    std::vector<BoundPoint> points;

    std::size_t violations() const {
        return static_cast<std::size_t>(std::count_if(points.begin(), points.end(), [](const BoundPoint& p) { return !p.ok; }));
    }
    bool ok() const { return violations() == 0; }
};

namespace detail {

inline bool bound_applies(const BoundInputs& in, std::uint64_t T) {
    const double dq = static_cast<double>(in.d) / static_cast<double>(in.q);
    switch (in.form) {
        case BoundForm::history_sublinear: return static_cast<double>(T) >= std::ceil(dq);
        case BoundForm::history_linear: return static_cast<double>(T) >= 5.0 * dq;
        default: return true;
    }
}

inline double bound_value(const BoundInputs& in, std::uint64_t T_, double delta0) {
    const double T = static_cast<double>(T_);
    const double q = static_cast<double>(in.q);
    const double d = static_cast<double>(in.d);
    switch (in.form) {
        case BoundForm::rgf_sublinear:
            return 2.0 * effective_smoothness(in.L, in.L_hat) * in.R * in.R * (d / q) / (T + 1.0);
        case BoundForm::rgf_linear:
            return delta0 * std::exp(-(in.tau / effective_smoothness(in.L, in.L_hat)) * (q / d) * T);
        case BoundForm::history_sublinear:
            return (32.0 / q + 2.0) * 2.0 * in.L * (d / q) * in.R * in.R / (T - std::ceil(d / q) + 1.0);
        case BoundForm::history_linear:
            return 2.0 * std::exp(-0.1 * (q / d) * (in.tau / in.L) * T) * delta0;
    }
    return 0.0;
}

/// Conditions under which the History-PRGF bounds are stated.
inline bool history_hypotheses(const BoundInputs& in) {
    const double q = static_cast<double>(in.q);
    const double d = static_cast<double>(in.d);
    const double ratio = in.L / in.L_hat;
    bool ok = in.d >= 4 && q / (d - 1.0) <= ratio && ratio <= 1.0;
    if (in.form == BoundForm::history_linear) ok = ok && in.tau > 0.0 && q / d <= 0.2 * in.L / in.tau;
    return ok;
}

}  // namespace detail

/// Seed-averaged delta_T = f(x_T) - f* against the chosen bound at each T in
/// `T_values` (every iteration present in all traces when empty).
inline BoundReport check_convergence_bounds(const std::vector<RunTrace>& traces, const BoundInputs& in,
                                        std::vector<std::uint64_t> T_values = {}) {
    if (traces.size() < in.min_seeds) throw DomainError("check_convergence_bounds: not enough seeds");
    if (traces.empty()) throw DomainError("check_convergence_bounds: no traces");
    if (!(in.L > 0.0) || !(in.L_hat > 0.0) || in.q < 1 || in.d < in.q)
        throw DomainError("check_convergence_bounds: invalid L, L_hat, q or d");
    if ((in.form == BoundForm::rgf_linear || in.form == BoundForm::history_linear) && !(in.tau > 0.0))
        throw DomainError("check_convergence_bounds: linear-rate forms need tau > 0");

    std::vector<std::map<std::uint64_t, double>> by_iter(traces.size());
    for (std::size_t s = 0; s < traces.size(); ++s) {
        if (traces[s].empty() || traces[s].rows.front().iteration != 0)
            throw DomainError("check_convergence_bounds: every trace must start at iteration 0");
        for (const auto& r : traces[s].rows) by_iter[s][r.iteration] = r.f_value - in.f_star;
    }
    if (T_values.empty())
        for (const auto& [T, _] : by_iter.front()) T_values.push_back(T);

    double delta0 = 0.0;
    for (const auto& m : by_iter) delta0 += m.at(0);
    delta0 /= static_cast<double>(traces.size());

    BoundReport report;
    report.form = in.form;
    if (in.form == BoundForm::history_sublinear || in.form == BoundForm::history_linear)
        report.hypotheses_hold = detail::history_hypotheses(in);
    else
        report.hypotheses_hold = in.L_hat >= in.L;

    for (std::uint64_t T : T_values) {
        if (!detail::bound_applies(in, T)) continue;
        double sum = 0.0;
        bool everywhere = true;
        for (const auto& m : by_iter) {
            const auto it = m.find(T);
            if (it == m.end()) {
                everywhere = false;
                break;
            }
            sum += it->second;
        }
        if (!everywhere) continue;
        BoundPoint p;
        p.T = T;
        p.mean_delta = sum / static_cast<double>(traces.size());
        p.bound = detail::bound_value(in, T, delta0) * (1.0 + in.slack);
        p.ok = p.mean_delta <= p.bound;
        report.points.push_back(p);
    }
    return report;
}

/// One line of the diagnostics report.
struct DiagnosticRecord {
    std::string check;
    std::string detail;  // free text, no commas
    double observed = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

inline constexpr const char* kReportHeader = "check,detail,observed,expected,tolerance,passed";

inline std::string report_csv(const std::vector<DiagnosticRecord>& records) {
    std::string out = kReportHeader;
    out += '\n';
    for (const auto& r : records) {
        if (r.check.find(',') != std::string::npos || r.detail.find(',') != std::string::npos)
            throw DomainError("report_csv: fields must not contain commas");
        out += r.check + ',' + r.detail + ',' + io::format_number(r.observed) + ',' + io::format_number(r.expected) +
               ',' + io::format_number(r.tolerance) + ',' + (r.passed ? "1" : "0") + '\n';
    }
    return out;
}

inline void write_report(const std::vector<DiagnosticRecord>& records, const std::string& path) {
    io::write_text_file(path, report_csv(records));
}

}  // namespace zo::diagnostics
