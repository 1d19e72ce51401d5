#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "gausslab/error.hpp"
#include "gausslab/specfun.hpp"

namespace sf = gausslab::specfun;
using std::numbers::pi;

namespace {

// sum_{k<K} (x+k)^{-s} plus the midpoint integral tail; independent of the library.
double zeta_direct(double s, double x, long K = 200000) {
    long double acc = 0.0L;
    for (long k = K - 1; k >= 0; --k) acc += std::pow(static_cast<long double>(x + k), -static_cast<long double>(s));
    const long double a = x + K - 0.5L;
    acc += std::pow(a, 1.0L - s) / (s - 1.0L);
    return static_cast<double>(acc);
}

} // namespace

TEST(HurwitzZeta, BaselValue) {
    EXPECT_NEAR(sf::hurwitz_zeta(2.0, 1.0).value, pi * pi / 6.0, 1e-15);
}

TEST(HurwitzZeta, ZetaFourAtOne) {
    const auto z = sf::hurwitz_zeta(4.0, 1.0);
    EXPECT_NEAR(z.value, std::pow(pi, 4) / 90.0, 4e-16);
    EXPECT_NEAR(z.value, zeta_direct(4.0, 1.0), 1e-12);
}

TEST(HurwitzZeta, QuarterShift) {
    // series value frozen at 0.4636906681980660038
    const auto z = sf::hurwitz_zeta(4.0, 1.25);
    EXPECT_NEAR(z.value, 0.4636906681980660038, 1e-15);
    EXPECT_NEAR(z.value, zeta_direct(4.0, 1.25), 1e-8);
    EXPECT_LE(z.error_bound, 1e-15);
}

TEST(HurwitzZeta, DomainErrors) {
    EXPECT_THROW(sf::hurwitz_zeta(1.5, 1.0), gausslab::DomainError);
    EXPECT_THROW(sf::hurwitz_zeta(3.0, 0.0), gausslab::DomainError);
    EXPECT_THROW(sf::hurwitz_zeta(3.0, -1.0), gausslab::DomainError);
}

TEST(HurwitzZeta, BudgetValidation) {
    sf::PrecisionBudget bad;
    bad.rel_tol = 0.0;
    EXPECT_THROW(sf::hurwitz_zeta(3.0, 1.0, bad), gausslab::DomainError);
    bad.rel_tol = 1e-10;
    bad.max_terms = 4;
    EXPECT_THROW(bad.validate(), gausslab::DomainError);
}

TEST(HurwitzZeta, RecurrenceProperty) {
    std::mt19937 gen(1234);
    std::uniform_real_distribution<double> ds(2.0, 40.0);
    std::uniform_real_distribution<double> dx(1e-3, 4.0);
    for (int i = 0; i < 100; ++i) {
        const double s = ds(gen);
        const double x = dx(gen);
        const auto a = sf::hurwitz_zeta(s, x);
        const auto b = sf::hurwitz_zeta(s, 1.0 + x);
        const double lhs = std::fabs(a.value - std::pow(x, -s) - b.value);
        // rounding of x^{-s} itself is counted with the two bounds
        const double slack = 4e-16 * std::pow(x, -s);
        EXPECT_LE(lhs, a.error_bound + b.error_bound + slack) << "s=" << s << " x=" << x;
    }
}

TEST(HurwitzZeta, ExtendedAgreesWithDouble) {
    for (int s : {2, 4, 7, 12, 30}) {
        for (double x : {0.25, 1.0, 1.75, 3.0}) {
            const auto e = sf::hurwitz_zeta_extended(s, gausslab::DoubleDouble(x));
            const auto d = sf::hurwitz_zeta(s, x);
            EXPECT_NEAR(e.value.to_double(), d.value, 4e-16 * d.value + d.error_bound) << s << " " << x;
            EXPECT_LE(e.error_bound, 1e-28 * std::fabs(e.value.to_double()));
        }
    }
}

TEST(Polygamma, Examples) {
    EXPECT_NEAR(sf::polygamma(1, 1.0).value, pi * pi / 6.0, 1e-15);
    EXPECT_NEAR(sf::polygamma(3, 1.0).value, std::pow(pi, 4) / 15.0, 1e-14);
    EXPECT_NEAR(sf::polygamma(3, 2.0).value, sf::polygamma(3, 1.0).value - 6.0, 1e-14);
}

TEST(Polygamma, SignConvention) {
    EXPECT_LT(sf::polygamma(2, 1.0).value, 0.0);
    EXPECT_NEAR(sf::polygamma(2, 1.0).value, -2.0 * sf::hurwitz_zeta(3.0, 1.0).value, 1e-15);
}

TEST(Polygamma, DirectSummationUpToNine) {
    double fact = 1.0;
    for (int m = 1; m <= 9; ++m) {
        fact *= m;
        const double sign = (m % 2 == 1) ? 1.0 : -1.0;
        const double oracle = sign * fact * zeta_direct(m + 1.0, 1.0);
        const double v = sf::polygamma(m, 1.0).value;
        EXPECT_NEAR(v, oracle, 1e-10 * std::fabs(oracle)) << "m=" << m;
        const double via_zeta = sign * fact * sf::hurwitz_zeta(m + 1.0, 1.0).value;
        EXPECT_NEAR(v, via_zeta, 4e-16 * std::fabs(via_zeta));
    }
}

TEST(LambdaTau, QuarterAtFour) {
    // frozen from direct summation: 0.49598711139327321857
    EXPECT_NEAR(sf::lambda_tau(0.25, 4.0).value, 0.49598711139327321857, 1e-14);
    const double oracle =
        std::pow(0.75, 4) * (2.0 * zeta_direct(4.0, 1.0) - zeta_direct(4.0, 1.75) - zeta_direct(4.0, 1.25));
    EXPECT_NEAR(sf::lambda_tau(0.25, 4.0).value, oracle, 1e-10);
}

TEST(LambdaTau, DecreasesBetweenThreeAndFour) {
    EXPECT_GT(sf::lambda_tau(0.5, 3.0).value, sf::lambda_tau(0.5, 4.0).value);
}

TEST(LambdaTau, TendsToZero) {
    for (double tau : {0.1, 0.3, 0.5}) {
        double prev = sf::lambda_tau(tau, 3.0).value;
        for (double s = 5.0; s <= 80.0; s += 2.0) {
            const double v = sf::lambda_tau(tau, s).value;
            EXPECT_LT(v, prev);
            prev = v;
        }
        EXPECT_LT(prev, 1e-3);
    }
}

TEST(LambdaTau, PositiveOnGrid) {
    for (int i = 1; i <= 10; ++i) {
        const double tau = 0.05 * i;
        for (int s = 3; s <= 30; ++s) {
            const auto v = sf::lambda_tau(tau, s);
            EXPECT_GT(v.value - v.error_bound, 0.0) << tau << " " << s;
        }
    }
}

TEST(LambdaTau, StrictlyDecreasingHalfSteps) {
    for (int i = 1; i <= 10; ++i) {
        const double tau = 0.05 * i;
        double prev = sf::lambda_tau(tau, 3.0).value;
        for (double s = 3.5; s <= 30.0; s += 0.5) {
            const double v = sf::lambda_tau(tau, s).value;
            EXPECT_LT(v, prev) << tau << " " << s;
            prev = v;
        }
    }
}

TEST(LambdaTau, DerivativeBound) {
    const double h = 1e-3;
    for (double tau : {0.1, 0.25, 0.5}) {
        for (double s = 3.5; s <= 20.0; s += 0.5) {
            const double slope =
                (sf::lambda_tau(tau, s + h).value - sf::lambda_tau(tau, s - h).value) / (2.0 * h);
            const double bound = -(143.0 / 810.0) * tau * tau * std::pow(1.0 - tau, s) * 0.9;
            EXPECT_LE(slope, bound) << tau << " " << s;
        }
    }
}

TEST(LambdaTau, Domain) {
    EXPECT_THROW(sf::lambda_tau(0.0, 4.0), gausslab::DomainError);
    EXPECT_THROW(sf::lambda_tau(0.25, 2.5), gausslab::DomainError);
}

TEST(CotHalfPi, Examples) {
    EXPECT_NEAR(sf::cot_half_pi(1.0), 0.0, 1e-15);
    EXPECT_NEAR(sf::cot_half_pi(0.5), pi / 2.0, 1e-15);
    EXPECT_NEAR(sf::cot_half_pi(2.5), sf::cot_half_pi(0.5), 1e-14);
    EXPECT_THROW(sf::cot_half_pi(2.0), gausslab::PoleProximityError);
    EXPECT_THROW(sf::cot_half_pi(1e-10), gausslab::PoleProximityError);
}

TEST(CotHalfPi, RegularPart) {
    EXPECT_EQ(sf::cot_half_pi_regular(0.0), 0.0);
    for (double y : {-1.7, -0.9, -0.3, 1e-6, 0.4, 1.0, 1.95}) {
        const double direct = (pi / 2.0) / std::tan(pi * y / 2.0) - 1.0 / y;
        EXPECT_NEAR(sf::cot_half_pi_regular(y), direct, 1e-9 * (1.0 + std::fabs(direct))) << y;
    }
    // odd and analytic through 0: c(y) ~ -pi^2 y / 12
    EXPECT_NEAR(sf::cot_half_pi_regular(1e-5), -pi * pi / 12.0 * 1e-5, 1e-15);
    EXPECT_NEAR(sf::cot_half_pi_regular(-0.6), -sf::cot_half_pi_regular(0.6), 1e-15);
}

TEST(LatticeTail, MatchesDirectSum) {
    for (int m : {2, 3, 4}) {
        for (double x : {-0.7, 0.0, 0.35, 1.0}) {
            const long N = 50;
            long double direct = 0.0L;
            const long J = 200000;
            for (long j = J; j > N; --j) {
                direct += std::pow(static_cast<long double>(x + 2.0 * j), -m);
                direct += std::pow(static_cast<long double>(x - 2.0 * j), -m);
            }
            // midpoint integral tails beyond J
            direct += std::pow(static_cast<long double>(x + 2.0 * J + 1.0), 1 - m) / (2.0L * (m - 1));
            direct += std::pow(static_cast<long double>(-x + 2.0 * J + 1.0), 1 - m) / (2.0L * (m - 1)) *
                      (m % 2 == 0 ? 1.0L : -1.0L);
            const double v = sf::lattice_tail_sum(m, x, N);
            EXPECT_NEAR(v, static_cast<double>(direct), 1e-9 * std::fabs(static_cast<double>(direct)) + 1e-12)
                << m << " " << x;
            EXPECT_GE(sf::lattice_tail_abs_sum(m, x, N), std::fabs(v));
        }
    }
}
