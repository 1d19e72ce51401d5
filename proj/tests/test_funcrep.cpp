#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "gausslab/error.hpp"
#include "gausslab/funcrep.hpp"

namespace fr = gausslab::funcrep;

namespace {

fr::FunctionRep poles(std::vector<fr::PoleTerm> t) { return fr::PoleSum{std::move(t), false}; }

fr::FunctionRep cheb_of(const fr::Sampler& s, int order, double lo = -1.0, double hi = 1.0) {
    return fr::fit_chebyshev(s, order, lo, hi);
}

// exact integral of |p| over [a, b] for p = c prod (x - r_i), roots given
double abs_integral_from_roots(double c, std::vector<double> roots, double a, double b) {
    // expand to monomial coefficients
    std::vector<double> coef{c};
    for (double r : roots) {
        std::vector<double> next(coef.size() + 1, 0.0);
        for (std::size_t i = 0; i < coef.size(); ++i) {
            next[i + 1] += coef[i];
            next[i] -= r * coef[i];
        }
        coef = next;
    }
    auto anti = [&coef](double x) {
        double s = 0.0;
        for (std::size_t i = coef.size(); i-- > 0;) s = s * x + coef[i] / static_cast<double>(i + 1);
        return s * x;
    };
    std::vector<double> cuts{a};
    std::sort(roots.begin(), roots.end());
    for (double r : roots)
        if (r > a && r < b) cuts.push_back(r);
    cuts.push_back(b);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) total += std::fabs(anti(cuts[i + 1]) - anti(cuts[i]));
    return total;
}

fr::FunctionRep random_rep(std::mt19937& gen, int depth = 0) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> pick(0, depth < 2 ? 4 : 3);
    switch (pick(gen)) {
    case 0: {
        std::vector<double> c(6);
        for (double& v : c) v = u(gen);
        fr::ChebSeries s;
        s.coeffs = c;
        return s;
    }
    case 1: return poles({{u(gen), 1.5 + std::fabs(u(gen))}, {u(gen), -1.5 - std::fabs(u(gen))}});
    case 2: return fr::CotSum{{{u(gen), 0.5 + 0.4 * u(gen)}}};
    case 3: {
        fr::KernelParams kp;
        kp.t = 0.9 * u(gen);
        return fr::FunctionRep::kernel(u(gen) > 0 ? fr::KernelKind::K1 : fr::KernelKind::k1, kp);
    }
    default: {
        std::vector<std::pair<double, fr::FunctionRep>> terms;
        terms.emplace_back(u(gen), random_rep(gen, depth + 1));
        terms.emplace_back(u(gen), random_rep(gen, depth + 1));
        return fr::FunctionRep::lin_comb(std::move(terms));
    }
    }
}

} // namespace

TEST(Evaluate, KappaAtZero) {
    fr::KernelParams kp;
    kp.alpha = 1.0;
    EXPECT_DOUBLE_EQ(fr::evaluate(fr::FunctionRep::kernel(fr::KernelKind::kappa, kp), 0.0), 1.0);
}

TEST(Evaluate, PoleSum) {
    const auto f = poles({{1.0, 2.0}, {-1.0, -2.0}});
    EXPECT_DOUBLE_EQ(fr::evaluate(f, 0.0), -1.0);
}

TEST(Evaluate, PoleSumGuard) {
    const auto f = poles({{1.0, 0.3}});
    EXPECT_THROW(fr::evaluate(f, 0.3), gausslab::PoleProximityError);
    fr::PoleSum pv{{{1.0, 0.3}}, true};
    EXPECT_EQ(fr::evaluate(pv, 0.3), 0.0);
}

TEST(Evaluate, ChebSeriesSquare) {
    const auto c = fr::fit_chebyshev([](double x) { return x * x; }, 4);
    EXPECT_NEAR(fr::evaluate(c, 0.5), 0.25, 1e-15);
    EXPECT_THROW(c(1.5), gausslab::DomainError);
}

TEST(Evaluate, CotSum) {
    const fr::FunctionRep f = fr::CotSum{{{2.0, 0.0}}};
    EXPECT_NEAR(fr::evaluate(f, 0.5), 2.0 * std::acos(-1.0) / 2.0, 1e-14);
}

TEST(Evaluate, DepthLimit) {
    fr::FunctionRep f = fr::FunctionRep::constant(1.0);
    for (int i = 0; i < fr::FunctionRep::kMaxDepth; ++i) f = fr::FunctionRep::lin_comb({{1.0, f}});
    EXPECT_THROW(fr::FunctionRep::lin_comb({{1.0, f}}), gausslab::DomainError);
}

TEST(ParitySplit, CubeIsOdd) {
    const auto f = cheb_of([](double x) { return x * x * x; }, 8);
    const auto [even, odd] = fr::parity_split(f);
    for (double x : {-0.8, -0.2, 0.1, 0.7}) {
        EXPECT_NEAR(fr::evaluate(even, x), 0.0, 1e-15);
        EXPECT_NEAR(fr::evaluate(odd, x), x * x * x, 1e-15);
    }
}

TEST(ParitySplit, HilbertKernelConvention) {
    fr::KernelParams kp;
    kp.t = 0.6;
    const auto k = fr::FunctionRep::kernel(fr::KernelKind::K1, kp);
    const auto kI = fr::FunctionRep::kernel(fr::KernelKind::K1_I, kp);
    const auto kII = fr::FunctionRep::kernel(fr::KernelKind::K1_II, kp);
    const auto [even, odd] = fr::parity_split(k);
    for (double x : {-0.9, -0.4, 0.0, 0.3, 0.95}) {
        EXPECT_NEAR(fr::evaluate(even, x), fr::evaluate(kI, x), 1e-15);
        EXPECT_NEAR(fr::evaluate(odd, x), -fr::evaluate(kII, x), 1e-15);
        EXPECT_NEAR(fr::evaluate(kI, x), 0.6 / (1.0 - 0.36 * x * x), 1e-15);
    }
}

TEST(ParitySplit, SimplePoleReconstruction) {
    const auto f = poles({{1.0, 2.0}});
    const auto [even, odd] = fr::parity_split(f);
    EXPECT_NEAR(fr::evaluate(even, 0.5) + fr::evaluate(odd, 0.5), 1.0 / (0.5 - 2.0), 1e-15);
    // even part of 1/(x-2) is 2/(x^2-4)
    EXPECT_NEAR(fr::evaluate(even, 0.5), 2.0 / (0.25 - 4.0), 1e-15);
}

TEST(ParitySplit, ReconstructionProperty) {
    std::mt19937 gen(99);
    std::uniform_real_distribution<double> ux(-0.95, 0.95);
    for (int n = 0; n < 20; ++n) {
        std::vector<std::pair<double, fr::FunctionRep>> terms;
        terms.emplace_back(1.0, random_rep(gen));
        terms.emplace_back(-0.5, random_rep(gen));
        const auto f = fr::FunctionRep::lin_comb(std::move(terms));
        const auto [even, odd] = fr::parity_split(f);
        for (int i = 0; i < 100; ++i) {
            const double x = ux(gen);
            double fx;
            try {
                fx = fr::evaluate(f, x);
            } catch (const gausslab::PoleProximityError&) {
                continue;
            }
            const double s = fr::evaluate(even, x) + fr::evaluate(odd, x);
            EXPECT_NEAR(s, fx, 1e-12 * (1.0 + std::fabs(fx))) << "input " << n << " x=" << x;
            EXPECT_NEAR(fr::evaluate(even, x), fr::evaluate(even, -x), 1e-12 * (1.0 + std::fabs(fx)));
        }
    }
}

TEST(SingularPoints, PoleAndKernel) {
    const auto f = poles({{1.0, 0.4}, {2.0, 3.0}});
    const auto sp = fr::singular_points(f);
    EXPECT_NE(std::find(sp.begin(), sp.end(), 0.4), sp.end());
    fr::KernelParams kp;
    kp.alpha = 0.5;
    const auto k = fr::singular_points(fr::FunctionRep::kernel(fr::KernelKind::kappa, kp));
    EXPECT_EQ(k.size(), 2u);
}

TEST(L1Norm, Examples) {
    EXPECT_NEAR(fr::l1_norm(fr::FunctionRep::constant(1.0), 1.0).value, 2.0, 1e-13);
    const auto id = cheb_of([](double x) { return x; }, 2);
    EXPECT_NEAR(fr::l1_norm(id, 1.0).value, 1.0, 1e-13);
    fr::KernelParams kp;
    kp.alpha = 1.0;
    const auto k = fr::l1_norm(fr::FunctionRep::kernel(fr::KernelKind::kappa, kp), 0.9);
    // antiderivative (1/2) ln((1+x)/(1-x))
    EXPECT_NEAR(k.value, std::log(19.0), 1e-10);
    EXPECT_NEAR(std::log(19.0), 2.9444389791664403, 1e-15);
}

TEST(L1Norm, SingularityRejected) {
    EXPECT_THROW(fr::l1_norm(poles({{1.0, 0.2}}), 1.0), gausslab::SingularityError);
    EXPECT_THROW(fr::l1_norm(fr::FunctionRep::constant(1.0), 1.5), gausslab::DomainError);
}

TEST(L1Norm, PolynomialConsistency) {
    std::mt19937 gen(2024);
    std::uniform_real_distribution<double> ur(-1.2, 1.2);
    std::uniform_int_distribution<int> ud(1, 10);
    for (int n = 0; n < 40; ++n) {
        const int deg = ud(gen);
        std::vector<double> roots(static_cast<std::size_t>(deg));
        for (double& r : roots) r = ur(gen);
        const double c = 0.5 + std::fabs(ur(gen));
        fr::Sampler p = [&roots, c](double x) {
            double v = c;
            for (double r : roots) v *= (x - r);
            return v;
        };
        const double eta = 0.5 + 0.5 * std::fabs(ur(gen)) / 1.2;
        const double exact = abs_integral_from_roots(c, roots, -eta, eta);
        const auto got = fr::l1_norm(p, eta);
        EXPECT_NEAR(got.value, exact, 1e-10 * std::max(1.0, exact)) << "deg " << deg;
    }
}

TEST(WeakL1, ConstantNeedsLevelBelowValue) {
    auto grid = fr::default_lambda_grid();
    grid.push_back(0.999999);
    const double w = fr::weak_l1_quasinorm(fr::FunctionRep::constant(-1.0), 1.0, grid);
    EXPECT_NEAR(w, 2.0, 1e-5);
}

TEST(WeakL1, Reciprocal) {
    const auto grid = fr::default_lambda_grid();
    EXPECT_NEAR(fr::weak_l1_quasinorm(poles({{1.0, 0.0}}), 1.0, grid), 2.0, 1e-9);
}

TEST(WeakL1, KappaFromLevelSets) {
    fr::KernelParams kp;
    kp.alpha = 1.0;
    const auto f = fr::FunctionRep::kernel(fr::KernelKind::kappa, kp);
    const auto grid = fr::default_lambda_grid();
    const double w = fr::weak_l1_quasinorm(f, 0.9, grid);
    // {kappa_1 > lam} on [-0.9, 0.9] is |x| > sqrt(1 - 1/lam), clipped
    double oracle = 0.0;
    for (double lam : grid) {
        double meas;
        if (lam < 1.0) meas = 1.8;
        else meas = 2.0 * std::max(0.0, 0.9 - std::sqrt(1.0 - 1.0 / lam));
        oracle = std::max(oracle, lam * meas);
    }
    EXPECT_TRUE(std::isfinite(w));
    EXPECT_NEAR(w, oracle, 2e-3 * oracle);
}

TEST(WeakL1, GridMustCoverRange) {
    std::vector<double> g{0.1, 1.0};
    EXPECT_THROW(fr::weak_l1_quasinorm(fr::FunctionRep::constant(1.0), 1.0, g), gausslab::DomainError);
}

TEST(WeakL1, DominatedByL1) {
    std::mt19937 gen(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const auto grid = fr::default_lambda_grid();
    for (int n = 0; n < 20; ++n) {
        const double a = 3.0 * u(gen), b = 3.0 * u(gen), c = 3.0 * u(gen);
        fr::Sampler f = [a, b, c](double x) { return a + b * x + c * std::sin(4.0 * x); };
        EXPECT_LE(fr::weak_l1_quasinorm(f, 1.0, grid), fr::l1_norm(f, 1.0).value * (1.0 + 1e-9));
    }
}

TEST(FitChebyshev, QuinticExact) {
    const auto c = fr::fit_chebyshev([](double x) { return std::pow(x, 5); }, 8);
    // x^5 = (10 T1 + 5 T3 + T5) / 16
    const std::vector<double> expect{0.0, 10.0 / 16, 0.0, 5.0 / 16, 0.0, 1.0 / 16};
    for (std::size_t k = 0; k < 9; ++k) {
        const double ck = k < c.coeffs.size() ? c.coeffs[k] : 0.0;
        const double ek = k < expect.size() ? expect[k] : 0.0;
        EXPECT_NEAR(ck, ek, 1e-14) << k;
    }
}

TEST(FitChebyshev, ReducedKernelDecays) {
    fr::KernelParams kp;
    kp.t = 0.5;
    const auto k = fr::FunctionRep::kernel(fr::KernelKind::k1_II, kp);
    const auto c = fr::fit_chebyshev([&k](double x) { return fr::evaluate(k, x); }, 64);
    ASSERT_GT(c.envelope.size(), 40u);
    EXPECT_LT(c.envelope[40], 1e-10);
}

TEST(FitChebyshev, KappaDoesNotDecay) {
    // kappa_1 is infinite at +-1; the endpoint samples are clamped
    fr::Sampler s = [](double x) { return 1.0 / std::max(1.0 - x * x, 1e-12); };
    const auto c = fr::fit_chebyshev(s, 64);
    ASSERT_GT(c.envelope.size(), 60u);
    EXPECT_GT(c.envelope[60], 1e-3);
}

TEST(FitChebyshev, NonFiniteRejected) {
    EXPECT_THROW(fr::fit_chebyshev([](double x) { return 1.0 / (1.0 - x * x); }, 16), gausslab::DomainError);
}

TEST(TaylorFromChebyshev, Polynomial) {
    const auto c = fr::fit_chebyshev([](double x) { return 1.0 - 2.0 * x + 3.0 * x * x * x; }, 6, -1.0, 1.0);
    const auto a = fr::taylor_from_chebyshev(c, 5);
    EXPECT_NEAR(a[0], 1.0, 1e-14);
    EXPECT_NEAR(a[1], -2.0, 1e-14);
    EXPECT_NEAR(a[2], 0.0, 1e-14);
    EXPECT_NEAR(a[3], 3.0, 1e-14);
    EXPECT_NEAR(a[4], 0.0, 1e-14);
}

TEST(GridFunction, RoundTrip) {
    const auto g = fr::GridFunction::sample([](double x) { return std::exp(x); }, 32, 0.8);
    EXPECT_NO_THROW(g.validate());
    const auto c = g.to_cheb();
    EXPECT_NEAR(c(0.3), std::exp(0.3), 1e-14);
    std::ostringstream os;
    g.write_csv(os);
    EXPECT_EQ(os.str().rfind("node,value\n", 0), 0u);
    EXPECT_THROW(fr::GridFunction::sample([](double x) { return x; }, 8, 1.5), gausslab::DomainError);
}
