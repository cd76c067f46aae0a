#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>

#include <Eigen/Dense>
#include <boost/random/normal_distribution.hpp>

#include "zo/errors.hpp"

namespace zo {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Default forward-difference step.
inline constexpr double kDefaultMu = 1e-6;

/// Tolerance on ||v|| - 1 for query directions.
inline constexpr double kUnitTolerance = 1e-8;

/// Seeded random source. Identical seeds give identical streams.
///
/// Gaussians come from Boost's ziggurat sampler driven by a 64-bit Mersenne
/// twister; sampling directions dominates the per-iteration cost in high
/// dimension, and the ziggurat is about twice as fast as the polar method.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }

    double normal() { return normal_(engine_); }

    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

    template <class Derived>
    void fill_gaussian(Eigen::DenseBase<Derived>& out) {
        for (Index i = 0; i < out.size(); ++i) out.derived().coeffRef(i) = normal_(engine_);
    }

    Vector gaussian(Index d) {
        Vector out(d);
        fill_gaussian(out);
        return out;
    }

    /// Derives an independent child stream; used to keep prior noise apart
    /// from direction sampling so that enabling one does not shift the other.
    Rng fork(std::uint64_t salt) const {
        std::seed_seq seq{static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32),
                          static_cast<std::uint32_t>(salt), static_cast<std::uint32_t>(salt >> 32)};
        std::array<std::uint32_t, 2> words{};
        seq.generate(words.begin(), words.end());
        return Rng((static_cast<std::uint64_t>(words[0]) << 32) | words[1]);
    }

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    boost::random::normal_distribution<double> normal_;
};

/// Uniform sample from the unit sphere in R^d (normalized Gaussian).
inline Vector sample_unit_sphere(Rng& rng, Index d) {
    if (d < 1) throw DomainError("sample_unit_sphere: dimension must be >= 1");
    Vector v(d);
    for (;;) {
        rng.fill_gaussian(v);
        const double n = v.norm();
        if (n > 0.0 && std::isfinite(n)) {
            v /= n;
            return v;
        }
    }
}

/// A black-box objective plus whatever side information is known about it.
/// `true_gradient` is for diagnostics only and never counted as a query.
struct ObjectiveSpec {
    Index dim = 0;
    std::function<double(const Vector&)> eval;
    std::function<Vector(const Vector&)> true_gradient;
    std::optional<double> smoothness_L;
    std::optional<double> strong_convexity_tau;
    std::optional<double> f_star;
    Vector x0;

    bool has_gradient() const noexcept { return static_cast<bool>(true_gradient); }

    void validate() const {
        if (dim < 1) throw ConfigError("objective: dim must be >= 1");
        if (!eval) throw ConfigError("objective: eval is required");
        if (x0.size() != dim) throw ConfigError("objective: x0 has wrong length");
        if (smoothness_L && *smoothness_L < 0.0) throw ConfigError("objective: smoothness_L must be >= 0");
        if (strong_convexity_tau && *strong_convexity_tau < 0.0)
            throw ConfigError("objective: strong_convexity_tau must be >= 0");
    }
};

inline void check_length(const Vector& x, Index dim, const char* what) {
    if (x.size() != dim) {
        std::ostringstream os;
        os << what << ": expected length " << dim << ", got " << x.size();
        throw DomainError(os.str());
    }
}

/// grad f(x)^T v from the analytic gradient. Not query-counted.
inline double exact_directional_derivative(const ObjectiveSpec& objective, const Vector& x, const Vector& v) {
    if (!objective.has_gradient()) throw UnsupportedDiagnostic("exact_directional_derivative: objective has no true_gradient");
    check_length(x, objective.dim, "exact_directional_derivative(x)");
    check_length(v, objective.dim, "exact_directional_derivative(v)");
    return objective.true_gradient(x).dot(v);
}

enum class OracleMode {
    finite_difference,  // (f(x + mu v) - f(x)) / mu
    exact,              // grad f(x)^T v; still counted as a query
};

/// Directional-derivative oracle with exact query accounting.
///
/// `dd_queries` counts directional-derivative requests, one per call.
/// `fn_evals` counts raw evaluations of f: the base value f(x) is evaluated
/// once per base point and reused by every probe at that point until
/// `new_iteration()` drops the cache.
class Oracle {
public:
    explicit Oracle(ObjectiveSpec objective, double mu = kDefaultMu,
                    OracleMode mode = OracleMode::finite_difference)
        : objective_(std::move(objective)), mu_(mu), mode_(mode) {
        objective_.validate();
        if (!(mu_ > 0.0) || !std::isfinite(mu_)) throw ConfigError("oracle: mu must be > 0");
        if (mode_ == OracleMode::exact && !objective_.has_gradient())
            throw ConfigError("oracle: exact mode requires true_gradient");
        scratch_.resize(objective_.dim);
    }

    const ObjectiveSpec& objective() const noexcept { return objective_; }
    Index dim() const noexcept { return objective_.dim; }
    double mu() const noexcept { return mu_; }
    OracleMode mode() const noexcept { return mode_; }
    std::uint64_t dd_queries() const noexcept { return dd_queries_; }
    std::uint64_t fn_evals() const noexcept { return fn_evals_; }

    double directional_derivative(const Vector& x, const Vector& v) {
        check_length(x, dim(), "directional_derivative(x)");
        check_length(v, dim(), "directional_derivative(v)");
        if (std::abs(v.norm() - 1.0) > kUnitTolerance)
            throw DomainError("directional_derivative: direction is not unit-norm");
        ++dd_queries_;
        if (mode_ == OracleMode::exact) return base_gradient(x).dot(v);

        const double fx = value(x);
        scratch_ = x + mu_ * v;
        const double fxv = evaluate(scratch_);
        return (fxv - fx) / mu_;
    }

    /// f(x), reusing the cached base value when x is the current base point.
    double value(const Vector& x) {
        check_length(x, dim(), "value(x)");
        if (has_value_ && value_point_ == x) return value_;
        value_ = evaluate(x);
        value_point_ = x;
        has_value_ = true;
        return value_;
    }

    /// Cached f at x if this iteration already evaluated it.
    std::optional<double> cached_value(const Vector& x) const {
        if (has_value_ && value_point_ == x) return value_;
        return std::nullopt;
    }

    /// Start of an iteration: base values are not reused across iterations.
    void new_iteration() noexcept {
        has_value_ = false;
        has_gradient_ = false;
    }

private:
    double evaluate(const Vector& x) {
        ++fn_evals_;
        const double fx = objective_.eval(x);
        if (!std::isfinite(fx)) throw OracleError(x, "objective returned a non-finite value");
        return fx;
    }

    const Vector& base_gradient(const Vector& x) {
        if (!has_gradient_ || gradient_point_ != x) {
            gradient_ = objective_.true_gradient(x);
            if (!gradient_.allFinite()) throw OracleError(x, "true_gradient returned a non-finite value");
            gradient_point_ = x;
            has_gradient_ = true;
        }
        return gradient_;
    }

    ObjectiveSpec objective_;
    double mu_;
    OracleMode mode_;
    std::uint64_t dd_queries_ = 0;
    std::uint64_t fn_evals_ = 0;

    Vector scratch_;
    bool has_value_ = false;
    Vector value_point_;
    double value_ = 0.0;
    bool has_gradient_ = false;
    Vector gradient_point_;
    Vector gradient_;
};

}  // namespace zo
