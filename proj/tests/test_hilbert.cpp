#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "gausslab/error.hpp"
#include "gausslab/hilbert.hpp"

namespace hb = gausslab::hilbert;
using std::numbers::pi;

TEST(GGamma, Examples) {
    const hb::GammaProfile p{0.1, 200};
    EXPECT_EQ(hb::g_gamma(p, 0.0), 0.0);
    EXPECT_EQ(hb::g_gamma(p, 0.2), 0.0);
    EXPECT_NEAR(hb::g_gamma(p, 0.1 / std::sqrt(2.0)), 0.005, 1e-17);
    double grid_max = 0.0;
    for (int i = 0; i <= 100000; ++i) grid_max = std::max(grid_max, hb::g_gamma(p, 0.1 * i / 100000.0));
    EXPECT_NEAR(grid_max, 0.005, 1e-9);
}

TEST(GammaProfile, Validation) {
    EXPECT_THROW((hb::GammaProfile{0.0, 200}.validate()), gausslab::DomainError);
    EXPECT_THROW((hb::GammaProfile{0.6, 200}.validate()), gausslab::DomainError);
    EXPECT_THROW((hb::GammaProfile{0.1, 50}.validate()), gausslab::DomainError);
}

TEST(HgGamma, Examples) {
    const hb::GammaProfile p{0.1, 200};
    EXPECT_DOUBLE_EQ(hb::hg_gamma(p, 0.0), -0.005);
    EXPECT_NEAR(hb::hg_gamma(p, 0.1), 0.005, 1e-17);
    const double far = hb::hg_gamma(p, 10.0);
    // leading asymptotic gamma^4 / (8 x^2)
    EXPECT_NEAR(far, 1e-4 / 800.0, 0.1 * 1e-4 / 800.0);
    // direct evaluation of the uncancelled closed form
    const double direct = 100.0 - 0.005 - 10.0 * std::sqrt(100.0 - 0.01);
    EXPECT_NEAR(far, direct, 1e-12);
}

TEST(HgGamma, EvenAndOdd) {
    std::mt19937 gen(41);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    std::uniform_real_distribution<double> ug(0.01, 0.5);
    for (int i = 0; i < 1000; ++i) {
        const hb::GammaProfile p{ug(gen), 200};
        const double x = u(gen);
        EXPECT_EQ(hb::hg_gamma(p, x), hb::hg_gamma(p, -x));
        EXPECT_EQ(hb::g_gamma(p, -x), -hb::g_gamma(p, x));
    }
}

TEST(HgGamma, Range) {
    for (double g : {0.05, 0.1, 0.3}) {
        const hb::GammaProfile p{g, 200};
        double m = 0.0;
        for (int i = 0; i <= 10000; ++i) m = std::max(m, std::fabs(hb::hg_gamma(p, -1.0 + 2.0 * i / 10000.0)));
        EXPECT_NEAR(m, g * g / 2.0, 1e-10);
    }
}

TEST(HgGamma, SingleSupportOverlap) {
    std::mt19937 gen(43);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (double g : {0.1, 0.5}) {
        const hb::GammaProfile p{g, 200};
        for (int i = 0; i < 1000; ++i) {
            const double x = u(gen);
            int nonzero = 0;
            for (int j = -5; j <= 5; ++j)
                if (hb::g_gamma(p, x + 2.0 * j) != 0.0) ++nonzero;
            EXPECT_LE(nonzero, 1);
        }
    }
}

TEST(PeriodizedSum, AtTwo) {
    const double g = 0.1;
    const auto s = hb::periodized_sum({g, 200}, 2.0);
    const double predicted = -g * g / 2.0 + (pi * pi - 3.0) / 96.0 * std::pow(g, 4);
    EXPECT_NEAR(s.value, predicted, std::pow(g, 6));
}

TEST(PeriodizedSum, LimitSurrogate) {
    const double g = 0.1;
    const auto s = hb::periodized_sum({g, 200}, g + 2000.0);
    const double predicted = g * g / 2.0 + pi * pi * std::pow(g, 4) / 96.0;
    EXPECT_NEAR(s.value, predicted, std::pow(g, 6));
}

TEST(PeriodizedSum, VanishesWithGamma) {
    double prev = INFINITY;
    for (double g : {0.2, 0.1, 0.05, 0.01, 0.001}) {
        const double v = std::fabs(hb::periodized_sum({g, 200}, 0.7).value);
        EXPECT_LT(v, prev);
        prev = v;
    }
    EXPECT_LT(prev, 1e-11);
}

TEST(PeriodizedSum, TailOrder) {
    // doubling the explicit terms leaves the value unchanged to the error estimate
    const auto a = hb::periodized_sum({0.1, 200}, 0.3);
    const auto b = hb::periodized_sum({0.1, 400}, 0.3);
    EXPECT_NEAR(a.value, b.value, a.error_estimate + b.error_estimate + 1e-17);
}

TEST(NormGap, Examples) {
    const auto a = hb::norm_gap({0.1, 200});
    EXPECT_NEAR(a.D_minus_gamma2, 3.125e-6, 0.5 * 3.125e-6);
    EXPECT_DOUBLE_EQ(a.predicted, 1e-4 / 32.0);
    const auto b = hb::norm_gap({0.05, 200});
    EXPECT_GT(b.D, 0.0025);
    EXPECT_THROW(hb::norm_gap({0.3, 200}), gausslab::DomainError);
}

TEST(NormGap, Positivity) {
    for (double g : {0.02, 0.05, 0.1, 0.2}) {
        const auto r = hb::norm_gap({g, 200});
        EXPECT_GT(r.D_minus_gamma2, r.tail_estimate) << g;
        EXPECT_GT(r.D, g * g);
    }
}
