#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "zo/ars.hpp"
#include "zo/testfns.hpp"

namespace {

using zo::ArsVariant;
using zo::Index;
using zo::Vector;

constexpr ArsVariant kAllVariants[] = {ArsVariant::ars, ArsVariant::pars_naive, ArsVariant::pars_est,
                                       ArsVariant::pars_impl, ArsVariant::history_pars};

zo::PriorFeed gradient_feed(const zo::ObjectiveSpec& obj) {
    return [obj](const Vector& x) { return obj.true_gradient(x); };
}

zo::PriorFeed biased_feed(const zo::ObjectiveSpec& obj, std::uint64_t seed) {
    auto gen = std::make_shared<zo::BiasedPriorGen>(obj.dim, zo::Rng(seed));
    return [obj, gen](const Vector& x) { return (*gen)(obj.true_gradient(x)); };
}

zo::RunOptions exact_options() {
    zo::RunOptions o;
    o.oracle_mode = zo::OracleMode::exact;
    return o;
}

TEST(ThetaFromD, TabulatedValues) {
    EXPECT_NEAR(zo::theta_from_D(0.0, 10, 101, 1.0), 0.01, 1e-15);
    EXPECT_NEAR(zo::theta_from_D(0.5, 10, 101, 1.0), 0.1, 1e-15);
    EXPECT_NEAR(zo::theta_from_D(1.0, 10, 101, 4.0), 0.25, 1e-15);
    EXPECT_NEAR(zo::theta_from_D(1.0, 3, 7, 0.5), 2.0, 1e-15);
}

TEST(ThetaFromD, FloorAndMonotone) {
    for (Index d : {3, 20, 500})
        for (Index q : {Index{1}, d / 2, d - 1}) {
            EXPECT_NEAR(zo::theta_from_D(0.0, q, d, 3.0), zo::theta_floor(q, d, 3.0), 1e-18);
            double prev = 0.0;
            for (int i = 0; i <= 100; ++i) {
                const double t = zo::theta_from_D(i / 100.0, q, d, 3.0);
                ASSERT_GE(t, prev);
                prev = t;
            }
        }
}

TEST(ThetaFromD, Errors) {
    EXPECT_THROW(zo::theta_from_D(-0.1, 2, 10, 1.0), zo::DomainError);
    EXPECT_THROW(zo::theta_from_D(1.1, 2, 10, 1.0), zo::DomainError);
    EXPECT_THROW(zo::theta_from_D(0.5, 10, 10, 1.0), zo::DomainError);
}

TEST(AlphaBetaGamma, GoldenRatioRoot) {
    const auto r = zo::alpha_beta_gamma(0.5, 2.0, 0.0);
    EXPECT_NEAR(r.alpha, (std::sqrt(5.0) - 1.0) / 2.0, 1e-15);
    EXPECT_DOUBLE_EQ(r.beta, r.alpha);
    EXPECT_DOUBLE_EQ(r.lambda, 0.0);
}

TEST(AlphaBetaGamma, ZeroTheta) {
    const auto r = zo::alpha_beta_gamma(0.0, 3.0, 0.5);
    EXPECT_EQ(r.alpha, 0.0);
    EXPECT_EQ(r.beta, 0.0);
    EXPECT_EQ(r.gamma_next, 3.0);
}

TEST(AlphaBetaGamma, CriticalCouplingKeepsGamma) {
    for (double theta : {1e-6, 0.01, 0.3}) {
        const auto r = zo::alpha_beta_gamma(theta, 2.0, 2.0);
        EXPECT_DOUBLE_EQ(r.gamma_next, 2.0);
    }
}

TEST(AlphaBetaGamma, RootResidualOverWideRange) {
    zo::Rng rng(1);
    for (int i = 0; i < 20000; ++i) {
        // theta <= 1/L_hat and gamma <= gamma0 = L_hat keep theta * gamma <= 1 in practice.
        const double gamma = std::pow(10.0, -4.0 + 8.0 * rng.uniform());
        const double theta = std::pow(10.0, -12.0 + 12.5 * rng.uniform()) / gamma;
        const double tau = rng.uniform() < 0.3 ? 0.0 : gamma * rng.uniform();
        const auto r = zo::alpha_beta_gamma(theta, gamma, tau);
        const double rhs = theta * ((1.0 - r.alpha) * gamma + r.alpha * tau);
        ASSERT_LE(std::abs(r.alpha * r.alpha - rhs), 1e-12 * std::max(rhs, 1e-300)) << theta << " " << gamma;
        ASSERT_GE(r.alpha, 0.0);
        ASSERT_GT(r.gamma_next, 0.0);
        ASSERT_DOUBLE_EQ(r.gamma_next, (1.0 - r.alpha) * gamma + r.alpha * tau);
        ASSERT_NEAR(r.beta, r.alpha * gamma / (gamma + r.alpha * tau), 1e-15);
    }
}

TEST(AlphaBetaGamma, Errors) {
    EXPECT_THROW(zo::alpha_beta_gamma(-1.0, 1.0, 0.0), zo::DomainError);
    EXPECT_THROW(zo::alpha_beta_gamma(1.0, 0.0, 0.0), zo::DomainError);
}

// First-order accelerated method driven by the true gradient, written out
// separately: with q = d the ARS step must follow it exactly.
std::vector<Vector> reference_accelerated(const zo::ObjectiveSpec& obj, double L_hat, double tau, int T) {
    Vector x = obj.x0, m = obj.x0;
    double gamma = L_hat;
    const double theta = 1.0 / L_hat;
    std::vector<Vector> xs{x};
    for (int t = 0; t < T; ++t) {
        const double b = theta * (gamma - tau);
        const double alpha = (-b + std::sqrt(b * b + 4.0 * theta * gamma)) / 2.0;
        const double beta = alpha * gamma / (gamma + alpha * tau);
        const Vector y = (1.0 - beta) * x + beta * m;
        const double gamma_next = (1.0 - alpha) * gamma + alpha * tau;
        const double lambda = alpha * tau / gamma_next;
        const Vector g = obj.true_gradient(y);
        x = y - g / L_hat;
        m = (1.0 - lambda) * m + lambda * y - (theta / alpha) * g;
        gamma = gamma_next;
        xs.push_back(x);
    }
    return xs;
}

TEST(ArsStep, FullBasisMatchesFirstOrderAcceleration) {
    for (double tau : {0.0, 0.2}) {
        const Index d = 6;
        zo::BenchFunction f(zo::FunctionId::f2, d);
        const auto obj = f.objective();
        const auto ref = reference_accelerated(obj, 2.0, tau, 30);
        zo::ArsConfig cfg{.variant = ArsVariant::ars, .L_hat = 2.0, .tau_hat = tau, .q = d};
        zo::Oracle oracle(obj, zo::kDefaultMu, zo::OracleMode::exact);
        zo::Rng rng(2);
        auto state = zo::init_ars(obj, cfg, rng);
        for (int t = 0; t < 30; ++t) {
            zo::ars_family_step(state, oracle, cfg, rng);
            ASSERT_LE((state.x - ref[t + 1]).norm(), 1e-9 * (1.0 + ref[t + 1].norm())) << "t=" << t;
        }
    }
}

TEST(ArsStep, ReplayIsIdentical) {
    zo::BenchFunction f(zo::FunctionId::f1, 40);
    for (ArsVariant v : kAllVariants) {
        zo::ArsConfig cfg{.variant = v, .L_hat = 4.0, .q = 5, .restart = true, .budget = 3000};
        const auto obj = f.objective();
        const auto a = zo::run_ars(obj, cfg, 5, biased_feed(obj, 1));
        const auto b = zo::run_ars(obj, cfg, 5, biased_feed(obj, 1));
        ASSERT_EQ(a.rows.size(), b.rows.size());
        for (std::size_t k = 0; k < a.rows.size(); ++k) {
            ASSERT_EQ(a.rows[k].f_value, b.rows[k].f_value);
            ASSERT_EQ(a.rows[k].theta_t, b.rows[k].theta_t);
        }
    }
}

TEST(ArsStep, GammaNonincreasingWithoutStrongConvexity) {
    zo::BenchFunction f(zo::FunctionId::f2, 30);
    const auto obj = f.objective();
    for (ArsVariant v : kAllVariants) {
        zo::ArsConfig cfg{.variant = v, .L_hat = 2.0, .q = 4};
        zo::Oracle oracle(obj);
        zo::Rng rng(3);
        auto feed = biased_feed(obj, 2);
        auto state = zo::init_ars(obj, cfg, rng);
        double prev = state.gamma;
        for (int t = 0; t < 100; ++t) {
            zo::ars_family_step(state, oracle, cfg, rng, feed);
            ASSERT_LE(state.gamma, prev);
            prev = state.gamma;
        }
    }
}

TEST(ParsImpl, OrthogonalPriorSitsOnFloor) {
    // f ignores x_1, so e_1 is orthogonal to every gradient.
    const Index d = 21, q = 4;
    zo::ObjectiveSpec s;
    s.dim = d;
    s.eval = [](const Vector& x) { return 0.5 * x.tail(x.size() - 1).squaredNorm(); };
    s.true_gradient = [](const Vector& x) {
        Vector g = x;
        g[0] = 0.0;
        return g;
    };
    s.x0 = Vector::Ones(d);
    zo::ArsConfig cfg{.variant = ArsVariant::pars_impl, .L_hat = 1.0, .q = q};
    zo::Oracle oracle(s, zo::kDefaultMu, zo::OracleMode::exact);
    zo::Rng rng(4);
    auto state = zo::init_ars(s, cfg, rng);
    for (int t = 0; t < 30; ++t) {
        const auto r = zo::ars_family_step(state, oracle, cfg, rng, [d](const Vector&) { return Vector(Vector::Unit(d, 0)); });
        EXPECT_EQ(*r.d_hat, 0.0);
        EXPECT_DOUBLE_EQ(r.theta, zo::theta_floor(q, d, 1.0));
    }
}

TEST(ParsImpl, ExactGradientPriorIsClipped) {
    const Index d = 20;
    zo::ObjectiveSpec s;
    s.dim = d;
    s.eval = [](const Vector& x) { return 0.5 * x.squaredNorm(); };
    s.true_gradient = [](const Vector& x) { return x; };
    s.x0 = Vector::Ones(d);
    zo::ArsConfig cfg{.variant = ArsVariant::pars_impl, .L_hat = 100.0, .q = 4};
    zo::Oracle oracle(s, zo::kDefaultMu, zo::OracleMode::exact);
    zo::Rng rng(5);
    auto state = zo::init_ars(s, cfg, rng);
    const auto first = zo::ars_family_step(state, oracle, cfg, rng, gradient_feed(s));
    EXPECT_EQ(*first.d_hat, 0.0);  // empty norm history
    for (int t = 1; t < 20; ++t) {
        const auto r = zo::ars_family_step(state, oracle, cfg, rng, gradient_feed(s));
        EXPECT_EQ(*r.d_hat, 0.6);
        EXPECT_DOUBLE_EQ(r.theta, zo::theta_from_D(0.6, 4, d, 100.0));
    }
}

TEST(ParsImpl, CostIsQPlusThree) {
    zo::BenchFunction f(zo::FunctionId::f2, 50);
    const auto obj = f.objective();
    zo::ArsConfig cfg{.variant = ArsVariant::pars_impl, .L_hat = 2.0, .q = 8};
    zo::Oracle oracle(obj);
    zo::Rng rng(6);
    auto state = zo::init_ars(obj, cfg, rng);
    auto feed = biased_feed(obj, 3);
    for (int t = 0; t < 10; ++t) EXPECT_EQ(zo::ars_family_step(state, oracle, cfg, rng, feed).cost, 11u);
    EXPECT_LE(state.norm_sq_history.size(), cfg.avg_window_k);
}

TEST(ParsImpl, DHatStaysInClipRange) {
    zo::BenchFunction f(zo::FunctionId::f1, 64);
    const auto obj = f.objective();
    zo::ArsConfig cfg{.variant = ArsVariant::pars_impl, .L_hat = f.smoothness_constants().L, .q = 8, .budget = 11 * 300};
    zo::Oracle oracle(obj);
    zo::Rng rng(7);
    auto state = zo::init_ars(obj, cfg, rng);
    auto feed = biased_feed(obj, 4);
    for (int t = 0; t < 300; ++t) {
        const auto r = zo::ars_family_step(state, oracle, cfg, rng, feed);
        ASSERT_GE(*r.d_hat, 0.0);
        ASSERT_LE(*r.d_hat, cfg.B_ub);
    }
}

TEST(ParsEst, ConservativeThetaIsAtLeastHalfOfPlain) {
    zo::Rng rng(8);
    for (int i = 0; i < 3000; ++i) {
        const Index d = 3 + i % 60;
        const Index q = 1 + i % (d - 1);
        const Vector g = rng.gaussian(d);
        zo::ObjectiveSpec s;
        s.dim = d;
        s.eval = [g](const Vector& x) { return g.dot(x); };
        s.true_gradient = [g](const Vector&) { return g; };
        s.x0 = Vector::Zero(d);
        zo::Oracle oracle(s, zo::kDefaultMu, zo::OracleMode::exact);
        const Vector p = rng.uniform() < 0.5 ? Vector(rng.gaussian(d)) : Vector(g + 0.3 * rng.gaussian(d));
        const auto probes = zo::probe(oracle, Vector::Zero(d), zo::build_frame(rng, d, q, p));
        const double cons = zo::theta_from_D(zo::estimate_dt(probes, true), q, d, 1.0);
        const double plain = zo::theta_from_D(zo::estimate_dt(probes), q, d, 1.0);
        ASSERT_GE(cons, 0.5 * plain * (1.0 - 1e-12));
        ASSERT_GE(cons, zo::theta_floor(q, d, 1.0) * (1.0 - 1e-15));
    }
}

TEST(ParsEst, OrthogonalPriorKeepsFloor) {
    const Index d = 30, q = 5;
    zo::ObjectiveSpec s;
    s.dim = d;
    s.eval = [](const Vector& x) { return 0.5 * x.tail(x.size() - 1).squaredNorm(); };
    s.true_gradient = [](const Vector& x) {
        Vector g = x;
        g[0] = 0.0;
        return g;
    };
    s.x0 = Vector::Ones(d);
    zo::ArsConfig cfg{.variant = ArsVariant::pars_est, .L_hat = 1.0, .q = q};
    zo::Oracle oracle(s);
    zo::Rng rng(9);
    auto state = zo::init_ars(s, cfg, rng);
    for (int t = 0; t < 40; ++t) {
        const auto before = oracle.dd_queries();
        const auto r = zo::ars_family_step(state, oracle, cfg, rng, [d](const Vector&) { return Vector(Vector::Unit(d, 0)); });
        ASSERT_GE(r.theta, zo::theta_floor(q, d, 1.0) - 1e-15);
        ASSERT_GE(r.guesses, 1);
        ASSERT_LE(r.guesses, cfg.max_guesses);
        ASSERT_EQ(oracle.dd_queries() - before, static_cast<std::uint64_t>((q + 1) * (2 + r.guesses)));
    }
}

TEST(HistoryPars, FirstStepStartsAtInitialPoint) {
    zo::BenchFunction f(zo::FunctionId::f2, 40);
    const auto obj = f.objective();
    zo::ArsConfig cfg{.variant = ArsVariant::history_pars, .L_hat = 2.0, .q = 10};
    zo::Oracle oracle(obj);
    zo::Rng rng(10);
    auto state = zo::init_ars(obj, cfg, rng);
    EXPECT_EQ(state.theta_prev, 0.0);
    ASSERT_TRUE(state.v_prev.has_value());
    const auto r = zo::ars_family_step(state, oracle, cfg, rng);
    EXPECT_EQ(r.y, obj.x0);
    EXPECT_EQ(r.cost, 11u);
    EXPECT_EQ(state.m, obj.x0);  // theta_{-1} = 0 leaves m in place
    EXPECT_LE((*state.v_prev - r.g1.normalized()).norm(), 1e-12);
    EXPECT_EQ(state.theta_prev, r.theta);
}

TEST(ParsNaive, ThetaConstant) {
    zo::BenchFunction f(zo::FunctionId::f2, 40);
    const auto obj = f.objective();
    zo::ArsConfig cfg{.variant = ArsVariant::pars_naive, .L_hat = 2.0, .q = 10, .budget = 11 * 50};
    const auto trace = zo::run_ars(obj, cfg, 1, biased_feed(obj, 5));
    for (std::size_t k = 1; k < trace.rows.size(); ++k)
        EXPECT_EQ(*trace.rows[k].theta_t, zo::theta_rgf(10, 40, 2.0));
}

TEST(ParsNaive, UselessPriorBehavesLikeArsOnAverage) {
    // With the prior orthogonal to the gradient, C_t averages q/(d-1) for
    // PARS-Naive versus q/d for ARS.
    const Index d = 40, q = 4;
    zo::ObjectiveSpec s;
    s.dim = d;
    s.eval = [](const Vector& x) { return 0.5 * x.tail(x.size() - 1).squaredNorm(); };
    s.true_gradient = [](const Vector& x) {
        Vector g = x;
        g[0] = 0.0;
        return g;
    };
    s.x0 = Vector::Ones(d);
    auto feed = [d](const Vector&) { return Vector(Vector::Unit(d, 0)); };
    double naive = 0.0, ars = 0.0;
    int n = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        zo::ArsConfig cn{.variant = ArsVariant::pars_naive, .L_hat = 1.0, .q = q, .budget = (q + 1) * 100};
        zo::ArsConfig ca{.variant = ArsVariant::ars, .L_hat = 1.0, .q = q, .budget = q * 100};
        const auto tn = zo::run_ars(s, cn, seed, feed);
        const auto ta = zo::run_ars(s, ca, seed);
        for (std::size_t k = 1; k <= 100; ++k, ++n) {
            naive += *tn.rows[k].c_t;
            ars += *ta.rows[k].c_t;
        }
    }
    naive /= n;
    ars /= n;
    EXPECT_NEAR(naive, static_cast<double>(q) / (d - 1), 0.01);
    EXPECT_NEAR(ars, static_cast<double>(q) / d, 0.01);
}

TEST(MaybeRestart, Rules) {
    zo::ArsConfig cfg{.L_hat = 3.0, .restart = true};
    zo::ArsState st;
    st.x = Vector::Ones(2);
    st.m = Vector::Zero(2);
    st.gamma = 0.5;
    EXPECT_FALSE(zo::maybe_restart(st, 10.0, cfg));  // no previous value
    EXPECT_FALSE(zo::maybe_restart(st, 9.0, cfg));
    EXPECT_EQ(st.m, Vector::Zero(2));
    EXPECT_EQ(st.gamma, 0.5);
    EXPECT_FALSE(zo::maybe_restart(st, 9.0, cfg));  // equal is not an increase
    EXPECT_TRUE(zo::maybe_restart(st, 9.5, cfg));
    EXPECT_EQ(st.m, st.x);
    EXPECT_EQ(st.gamma, 3.0);
    EXPECT_EQ(*st.last_f_y, 9.5);
}

TEST(MaybeRestart, StrictlyDecreasingRunHasNoRestarts) {
    // On a 1-d quadratic with a full basis, f(y_t) decreases monotonically
    // for the first few accelerated steps.
    zo::ObjectiveSpec s;
    s.dim = 1;
    s.eval = [](const Vector& x) { return 0.5 * x.squaredNorm(); };
    s.true_gradient = [](const Vector& x) { return x; };
    s.f_star = 0.0;
    s.x0 = Vector::Constant(1, 1.0);
    zo::ArsConfig cfg{.variant = ArsVariant::ars, .L_hat = 4.0, .q = 1, .restart = true, .budget = 5};
    const auto trace = zo::run_ars(s, cfg, 1, {}, exact_options());
    for (std::size_t k = 1; k < trace.rows.size(); ++k) ASSERT_LT(trace.rows[k].f_value, trace.rows[k - 1].f_value);
    EXPECT_EQ(trace.restarts(), 0u);
}

TEST(MaybeRestart, ExactModeCountsOneEvaluation) {
    zo::BenchFunction f(zo::FunctionId::f2, 10);
    zo::ArsConfig cfg{.variant = ArsVariant::ars, .L_hat = 2.0, .q = 3, .restart = true, .budget = 30};
    const auto trace = zo::run_ars(f.objective(), cfg, 1, {}, exact_options());
    EXPECT_EQ(trace.back().fn_evals, 10u);
    cfg.restart = false;
    EXPECT_EQ(zo::run_ars(f.objective(), cfg, 1, {}, exact_options()).back().fn_evals, 0u);
}

TEST(RunArs, AccountingMatchesAnalyticCost) {
    zo::BenchFunction f(zo::FunctionId::f2, 64);
    const auto obj = f.objective();
    const Index q = 8;
    for (ArsVariant v : kAllVariants) {
        zo::ArsConfig cfg{.variant = v, .L_hat = 2.0, .q = q, .restart = true};
        zo::Oracle oracle(obj);
        zo::Rng rng(11);
        auto feed = biased_feed(obj, 6);
        auto state = zo::init_ars(obj, cfg, rng);
        std::uint64_t expected = 0;
        for (int t = 0; t < 100; ++t) {
            const auto r = zo::ars_family_step(state, oracle, cfg, rng, feed);
            switch (v) {
                case ArsVariant::ars: expected += q; break;
                case ArsVariant::pars_naive:
                case ArsVariant::history_pars: expected += q + 1; break;
                case ArsVariant::pars_impl: expected += q + 3; break;
                case ArsVariant::pars_est: expected += (q + 1) * (2 + r.guesses); break;
            }
        }
        EXPECT_EQ(oracle.dd_queries(), expected) << zo::to_string(v);
    }
}

TEST(RunArs, ThetaFloorForPriorGuidedVariants) {
    const Index d = 100, q = 10;
    zo::BenchFunction f(zo::FunctionId::f2, d);
    const auto obj = f.objective();
    for (ArsVariant v : {ArsVariant::pars_est, ArsVariant::pars_impl, ArsVariant::history_pars}) {
        zo::ArsConfig cfg{.variant = v, .L_hat = 2.0, .q = q, .restart = true, .budget = 20000};
        const auto trace = zo::run_ars(obj, cfg, 2, biased_feed(obj, 7));
        for (std::size_t k = 1; k < trace.rows.size(); ++k)
            ASSERT_GE(*trace.rows[k].theta_t, zo::theta_floor(q, d, 2.0) - 1e-15) << zo::to_string(v);
    }
}

TEST(RunArs, BudgetFidelity) {
    zo::BenchFunction f(zo::FunctionId::f1, 50);
    const auto obj = f.objective();
    for (ArsVariant v : kAllVariants) {
        zo::ArsConfig cfg{.variant = v, .L_hat = 4.0, .q = 6, .budget = 1234};
        const auto trace = zo::run_ars(obj, cfg, 3, biased_feed(obj, 8));
        EXPECT_LE(trace.back().dd_queries, cfg.budget);
        EXPECT_GT(trace.back().dd_queries + cfg.iteration_cost(), cfg.budget) << zo::to_string(v);
    }
}

TEST(RunArs, ConfigErrors) {
    zo::BenchFunction f(zo::FunctionId::f2, 10);
    const auto obj = f.objective();
    zo::ArsConfig cfg{.variant = ArsVariant::pars_impl, .L_hat = 2.0, .q = 3, .budget = 100};
    EXPECT_THROW(zo::run_ars(obj, cfg, 1), zo::ConfigError);  // missing prior feed
    cfg.variant = ArsVariant::ars;
    cfg.budget = 2;
    EXPECT_THROW(zo::run_ars(obj, cfg, 1), zo::ConfigError);
    cfg.budget = 100;
    cfg.tau_hat = 5.0;  // exceeds gamma0 = L_hat
    EXPECT_THROW(zo::run_ars(obj, cfg, 1), zo::ConfigError);
    cfg.tau_hat = 0.0;
    cfg.B_ub = 0.0;
    EXPECT_THROW(zo::run_ars(obj, cfg, 1), zo::ConfigError);
    cfg.B_ub = 0.6;
    cfg.variant = ArsVariant::history_pars;
    cfg.q = 10;
    EXPECT_THROW(zo::run_ars(obj, cfg, 1), zo::ConfigError);
}

TEST(RunArs, AcceleratesOverGreedyOnChainQuadratic) {
    const Index d = 128;
    zo::BenchFunction f(zo::FunctionId::f1, d);
    const auto obj = f.objective();
    const double L = f.smoothness_constants().L;
    double ars = 0.0, rgf = 0.0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        zo::ArsConfig ca{.variant = ArsVariant::ars, .L_hat = L, .q = 11, .budget = 11 * 600};
        zo::GreedyConfig cg{.L_hat = L, .q = 11, .budget = 11 * 600};
        ars += *zo::run_ars(obj, ca, seed).back().log10_rel_err;
        rgf += *zo::run_greedy(obj, cg, seed).back().log10_rel_err;
    }
    EXPECT_LT(ars, rgf);
}

}  // namespace
