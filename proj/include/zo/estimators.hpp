#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>

#include "zo/core.hpp"

namespace zo {

/// Residual norm (relative to the raw Gaussian draw) below which a
/// projected direction is discarded and redrawn.
inline constexpr double kResampleThreshold = 1e-12;

/// A unit prior p plus q orthonormal directions, all mutually orthogonal.
/// Directions are stored as the columns of a dim x q matrix.
struct OrthonormalFrame {
    std::optional<Vector> prior;
    Matrix directions;

    Index dim() const noexcept { return directions.rows(); }
    Index q() const noexcept { return directions.cols(); }
    bool has_prior() const noexcept { return prior.has_value(); }
    Index size() const noexcept { return q() + (has_prior() ? 1 : 0); }
};

/// Directional derivatives measured along every vector of a frame.
struct ProbeSet {
    OrthonormalFrame frame;
    std::optional<double> prior_deriv;
    Vector dir_derivs;

    Index dim() const noexcept { return frame.dim(); }
    Index q() const noexcept { return frame.q(); }
};

/// Everything the optimizers read off one probe set.
struct EstimatorOutput {
    Vector g1;                 // projection of the gradient onto span(frame)
    std::optional<Vector> g2;  // unbiased estimate, only with a prior
    double grad_norm_sq_est = 0.0;
    double d_hat = 0.0;
};

namespace detail {

inline Vector normalized_prior(const Vector& prior, Index d) {
    check_length(prior, d, "build_frame(prior)");
    const double n = prior.norm();
    if (!(n > 0.0) || !std::isfinite(n)) throw InvalidPrior("build_frame: prior must have nonzero finite norm");
    return prior / n;
}

}  // namespace detail

/// Samples q directions uniformly, orthogonalized against the (normalized)
/// prior and against each other, in that order:
///   u_j = normalize((I - p p^T - sum_{i<j} u_i u_i^T) xi_j),  xi_j ~ U(S^{d-1}).
/// The prior itself is only normalized, never rotated.
inline OrthonormalFrame build_frame(Rng& rng, Index d, Index q, const std::optional<Vector>& prior = std::nullopt) {
    if (d < 1) throw DomainError("build_frame: dimension must be >= 1");
    if (q < 1) throw DomainError("build_frame: q must be >= 1");
    if (q + (prior ? 1 : 0) > d) throw DomainError("build_frame: q (+1 with a prior) must not exceed d");

    OrthonormalFrame frame;
    if (prior) frame.prior = detail::normalized_prior(*prior, d);
    frame.directions.resize(d, q);

    Vector coeffs;
    for (Index j = 0; j < q; ++j) {
        auto v = frame.directions.col(j);
        for (;;) {
            rng.fill_gaussian(v);
            const double raw = v.norm();
            if (!(raw > 0.0)) continue;

            // Classical Gram-Schmidt with one reorthogonalization pass when
            // cancellation is severe (twice is enough).
            double before = raw;
            for (int pass = 0; pass < 2; ++pass) {
                if (frame.prior) v -= frame.prior->dot(v) * *frame.prior;
                if (j > 0) {
                    coeffs.noalias() = frame.directions.leftCols(j).transpose() * v;
                    v.noalias() -= frame.directions.leftCols(j) * coeffs;
                }
                const double after = v.norm();
                if (after >= 0.5 * before) break;
                before = after;
            }
            const double residual = v.norm();
            if (residual < kResampleThreshold * raw) continue;
            v /= residual;
            break;
        }
    }
    return frame;
}

/// Queries one directional derivative per frame vector at x.
inline ProbeSet probe(Oracle& oracle, const Vector& x, OrthonormalFrame frame) {
    if (frame.dim() != oracle.dim()) throw DomainError("probe: frame dimension does not match the oracle");
    ProbeSet out;
    if (frame.prior) out.prior_deriv = oracle.directional_derivative(x, *frame.prior);
    out.dir_derivs.resize(frame.q());
    Vector u(frame.dim());
    for (Index i = 0; i < frame.q(); ++i) {
        u = frame.directions.col(i);
        out.dir_derivs[i] = oracle.directional_derivative(x, u);
    }
    out.frame = std::move(frame);
    return out;
}

/// g1 = sum_i (grad^T u_i) u_i + (grad^T p) p, the projection of the gradient
/// onto span(frame) under an exact oracle.
inline Vector subspace_estimate(const ProbeSet& probes) {
    Vector g = probes.frame.directions * probes.dir_derivs;
    if (probes.frame.prior) g += *probes.prior_deriv * *probes.frame.prior;
    return g;
}

inline void require_prior(const ProbeSet& probes, const char* who) {
    if (!probes.frame.prior || !probes.prior_deriv)
        throw RequiresPrior(std::string(who) + ": probe set has no prior direction");
}

/// Unbiased estimate g2 = (grad^T p) p + ((d-1)/q) sum_i (grad^T u_i) u_i,
/// for directions sampled in the complement of p.
inline Vector g2_unbiased(const ProbeSet& probes) {
    require_prior(probes, "g2_unbiased");
    const double scale = static_cast<double>(probes.dim() - 1) / static_cast<double>(probes.q());
    Vector g = scale * (probes.frame.directions * probes.dir_derivs);
    g += *probes.prior_deriv * *probes.frame.prior;
    return g;
}

/// Control-variate form: directions are plain uniform (not orthogonalized
/// against the prior) and the prior derivative is queried separately.
///   g2 = (d/q) sum_i (c_i - (c_p p)^T u_i) u_i + c_p p
inline Vector g2_variance_reduced(const ProbeSet& probes_plain, const Vector& prior_orig, double prior_deriv_orig) {
    if (probes_plain.frame.prior)
        throw DomainError("g2_variance_reduced: probe directions must not be orthogonalized against the prior");
    check_length(prior_orig, probes_plain.dim(), "g2_variance_reduced(prior)");
    if (std::abs(prior_orig.norm() - 1.0) > kUnitTolerance)
        throw InvalidPrior("g2_variance_reduced: prior must be unit-norm");
    const auto& U = probes_plain.frame.directions;
    const double scale = static_cast<double>(probes_plain.dim()) / static_cast<double>(probes_plain.q());
    const Vector control = prior_deriv_orig * (U.transpose() * prior_orig);
    Vector g = scale * (U * (probes_plain.dir_derivs - control));
    g += prior_deriv_orig * prior_orig;
    return g;
}

/// ||grad||^2 ~ (grad^T p)^2 + ((d-1)/q) sum_i (grad^T u_i)^2, unbiased.
inline double estimate_grad_norm_sq(const ProbeSet& probes) {
    require_prior(probes, "estimate_grad_norm_sq");
    const double scale = static_cast<double>(probes.dim() - 1) / static_cast<double>(probes.q());
    const double pd = *probes.prior_deriv;
    return pd * pd + scale * probes.dir_derivs.squaredNorm();
}

/// Estimated squared cosine between prior and gradient. The conservative
/// variant doubles the weight of the random-direction term.
inline double estimate_dt(const ProbeSet& probes, bool conservative = false) {
    require_prior(probes, "estimate_dt");
    const double scale = (conservative ? 2.0 : 1.0) * static_cast<double>(probes.dim() - 1) /
                         static_cast<double>(probes.q());
    const double pd2 = *probes.prior_deriv * *probes.prior_deriv;
    const double denom = pd2 + scale * probes.dir_derivs.squaredNorm();
    if (!(denom > 0.0)) return 0.0;
    return std::clamp(pd2 / denom, 0.0, 1.0);
}

/// All estimates from one probe set. Without a prior, g2 is absent, d_hat is
/// zero and the norm estimate is the plain (d/q) sum_i c_i^2.
inline EstimatorOutput summarize(const ProbeSet& probes) {
    EstimatorOutput out;
    out.g1 = subspace_estimate(probes);
    if (probes.frame.prior) {
        out.g2 = g2_unbiased(probes);
        out.grad_norm_sq_est = estimate_grad_norm_sq(probes);
        out.d_hat = estimate_dt(probes);
    } else {
        out.grad_norm_sq_est = static_cast<double>(probes.dim()) / static_cast<double>(probes.q()) *
                               probes.dir_derivs.squaredNorm();
    }
    return out;
}

}  // namespace zo
