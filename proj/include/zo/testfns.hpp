#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include <Eigen/Eigenvalues>

#include "zo/core.hpp"

namespace zo {

enum class FunctionId { f1, f2, f3, f4 };

inline const char* to_string(FunctionId id) {
    switch (id) {
        case FunctionId::f1: return "f1";
        case FunctionId::f2: return "f2";
        case FunctionId::f3: return "f3";
        case FunctionId::f4: return "f4";
    }
    return "?";
}

inline FunctionId parse_function_id(std::string_view name) {
    if (name == "f1") return FunctionId::f1;
    if (name == "f2") return FunctionId::f2;
    if (name == "f3") return FunctionId::f3;
    if (name == "f4") return FunctionId::f4;
    throw ConfigError("unknown function '" + std::string(name) + "' (expected f1, f2, f3 or f4)");
}

struct SmoothnessConstants {
    double L = 0.0;
    double tau = 0.0;
};

/// The benchmark objectives:
///   f1  chain quadratic  1/2 x_1^2 + 1/2 sum (x_{i+1} - x_i)^2 + 1/2 x_d^2 - x_1,  x0 = 0
///   f2  (1/d) sum i x_i^2,  x0 = d e_1
///   f3  Rosenbrock  sum 100 (x_i^2 - x_{i+1})^2 + (x_i - 1)^2,  x0 = 0
///   f4  1/2 r^2 (r <= 1), r - 1/2 (r > 1) with r = sqrt(f2),  x0 = 5 sqrt(d) e_1
class BenchFunction {
public:
    BenchFunction(FunctionId id, Index dim) : id_(id), dim_(dim) {
        if (dim < 1) throw ConfigError("bench function: dim must be >= 1");
        if (id == FunctionId::f3 && dim < 2) throw ConfigError("f3: dim must be >= 2");
        x0_ = Vector::Zero(dim);
        switch (id) {
            case FunctionId::f1: solve_f1(); break;
            case FunctionId::f2:
                x0_[0] = static_cast<double>(dim);
                f_star_ = 0.0;
                break;
            case FunctionId::f3: f_star_ = 0.0; break;
            case FunctionId::f4:
                x0_[0] = 5.0 * std::sqrt(static_cast<double>(dim));
                f_star_ = 0.0;
                break;
        }
    }

    FunctionId id() const noexcept { return id_; }
    Index dim() const noexcept { return dim_; }
    const Vector& x0() const noexcept { return x0_; }
    double f_star() const noexcept { return f_star_; }
    /// Minimizer; available for f1, f2, f4 and f3 (all-ones).
    Vector x_star() const {
        switch (id_) {
            case FunctionId::f1: return x_star_;
            case FunctionId::f3: return Vector::Ones(dim_);
            default: return Vector::Zero(dim_);
        }
    }

    double value(const Vector& x) const {
        check_length(x, dim_, "bench function value(x)");
        switch (id_) {
            case FunctionId::f1: {
                double s = 0.5 * x[0] * x[0] + 0.5 * x[dim_ - 1] * x[dim_ - 1] - x[0];
                for (Index i = 0; i + 1 < dim_; ++i) {
                    const double t = x[i + 1] - x[i];
                    s += 0.5 * t * t;
                }
                return s;
            }
            case FunctionId::f2: return f2_value(x);
            case FunctionId::f3: {
                double s = 0.0;
                for (Index i = 0; i + 1 < dim_; ++i) {
                    const double a = x[i] * x[i] - x[i + 1];
                    const double b = x[i] - 1.0;
                    s += 100.0 * a * a + b * b;
                }
                return s;
            }
            case FunctionId::f4: {
                const double f2 = f2_value(x);
                return f2 <= 1.0 ? 0.5 * f2 : std::sqrt(f2) - 0.5;
            }
        }
        return 0.0;
    }

    Vector gradient(const Vector& x) const {
        check_length(x, dim_, "bench function gradient(x)");
        Vector g(dim_);
        switch (id_) {
            case FunctionId::f1:
                for (Index i = 0; i < dim_; ++i) {
                    const double left = i > 0 ? x[i - 1] : 0.0;
                    const double right = i + 1 < dim_ ? x[i + 1] : 0.0;
                    g[i] = 2.0 * x[i] - left - right;
                }
                g[0] -= 1.0;
                return g;
            case FunctionId::f2: return f2_gradient(x);
            case FunctionId::f3:
                g.setZero();
                for (Index i = 0; i + 1 < dim_; ++i) {
                    const double a = x[i] * x[i] - x[i + 1];
                    g[i] += 400.0 * a * x[i] + 2.0 * (x[i] - 1.0);
                    g[i + 1] -= 200.0 * a;
                }
                return g;
            case FunctionId::f4: {
                const double f2 = f2_value(x);
                g = f2_gradient(x);
                return f2 <= 1.0 ? Vector(0.5 * g) : Vector(g / (2.0 * std::sqrt(f2)));
            }
        }
        return g;
    }

    /// Global (L, tau). f3 has no certificate and is rejected.
    SmoothnessConstants smoothness_constants() const {
        switch (id_) {
            case FunctionId::f1: return {f1_L_, f1_tau_};
            case FunctionId::f2: return {2.0, 2.0 / static_cast<double>(dim_)};
            case FunctionId::f4: return {1.0, 0.0};
            case FunctionId::f3: break;
        }
        throw DomainError("smoothness_constants: f3 is nonconvex; tune L_hat by search");
    }

    std::optional<double> smoothness_L() const {
        if (id_ == FunctionId::f3) return std::nullopt;
        return smoothness_constants().L;
    }

    ObjectiveSpec objective() const {
        ObjectiveSpec spec;
        spec.dim = dim_;
        auto self = *this;
        spec.eval = [self](const Vector& x) { return self.value(x); };
        spec.true_gradient = [self](const Vector& x) { return self.gradient(x); };
        if (id_ != FunctionId::f3) {
            const auto c = smoothness_constants();
            spec.smoothness_L = c.L;
            spec.strong_convexity_tau = c.tau;
        }
        spec.f_star = f_star_;
        spec.x0 = x0_;
        return spec;
    }

private:
    double f2_value(const Vector& x) const {
        double s = 0.0;
        for (Index i = 0; i < dim_; ++i) s += static_cast<double>(i + 1) * x[i] * x[i];
        return s / static_cast<double>(dim_);
    }

    Vector f2_gradient(const Vector& x) const {
        Vector g(dim_);
        const double inv = 2.0 / static_cast<double>(dim_);
        for (Index i = 0; i < dim_; ++i) g[i] = inv * static_cast<double>(i + 1) * x[i];
        return g;
    }

    // Hessian of f1 is tridiag(-1, 2, -1); grad f1 = H x - e_1.
    void solve_f1() {
        const Index d = dim_;
        // Thomas algorithm for H x = e_1.
        Vector c(d), r(d);
        double denom = 2.0;
        c[0] = -1.0 / denom;
        r[0] = 1.0 / denom;
        for (Index i = 1; i < d; ++i) {
            denom = 2.0 + c[i - 1];
            c[i] = -1.0 / denom;
            r[i] = r[i - 1] / denom;
        }
        x_star_.resize(d);
        x_star_[d - 1] = r[d - 1];
        for (Index i = d - 2; i >= 0; --i) x_star_[i] = r[i] - c[i] * x_star_[i + 1];
        f_star_ = -0.5 * x_star_[0];  // f(x*) = -1/2 e_1^T x*

        Eigen::SelfAdjointEigenSolver<Matrix> eig;
        const Vector diag = Vector::Constant(d, 2.0);
        const Vector sub = Vector::Constant(std::max<Index>(d - 1, 0), -1.0);
        eig.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
        if (eig.info() != Eigen::Success) throw InvariantViolation("f1: tridiagonal eigen-solve failed");
        f1_tau_ = eig.eigenvalues().minCoeff();
        f1_L_ = eig.eigenvalues().maxCoeff();
    }

    FunctionId id_;
    Index dim_;
    Vector x0_;
    Vector x_star_;
    double f_star_ = 0.0;
    double f1_L_ = 0.0;
    double f1_tau_ = 0.0;
};

/// Biased gradient prior p = normalize(normalize(grad) + b + n) with ||b|| = 1
/// fixed per run and ||n|| = noise_norm redrawn on every call.
class BiasedPriorGen {
public:
    static constexpr double kDefaultNoiseNorm = 1.5;

    BiasedPriorGen(Index dim, Rng rng, double noise_norm = kDefaultNoiseNorm)
        : rng_(std::move(rng)), noise_norm_(noise_norm) {
        if (!(noise_norm >= 0.0)) throw ConfigError("biased prior: noise_norm must be >= 0");
        b_ = sample_unit_sphere(rng_, dim);
    }

    BiasedPriorGen(Vector b, Rng rng, double noise_norm)
        : rng_(std::move(rng)), b_(std::move(b)), noise_norm_(noise_norm) {
        const double n = b_.norm();
        if (!(n > 0.0)) throw InvalidPrior("biased prior: b must be nonzero");
        b_ /= n;
    }

    const Vector& bias() const noexcept { return b_; }
    double noise_norm() const noexcept { return noise_norm_; }

    Vector operator()(const Vector& grad) {
        check_length(grad, b_.size(), "biased_prior(grad)");
        Vector p = b_;
        if (noise_norm_ > 0.0) p += noise_norm_ * sample_unit_sphere(rng_, b_.size());
        const double gn = grad.norm();
        if (gn > 0.0) p += grad / gn;
        const double pn = p.norm();
        if (!(pn > 0.0)) return b_;  // measure-zero cancellation
        return p / pn;
    }

private:
    Rng rng_;
    Vector b_;
    double noise_norm_;
};

}  // namespace zo
