#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "gausslab/error.hpp"
#include "gausslab/kernels.hpp"
#include "gausslab/quadrature.hpp"
#include "gausslab/totpos.hpp"

namespace tp = gausslab::totpos;
namespace fr = gausslab::funcrep;
using std::numbers::pi;

namespace {

// Riemann zeta by direct summation with an Euler-Maclaurin correction of two terms
double zeta_oracle(int s) {
    const int K = 1000;
    long double acc = 0.0L;
    for (int k = K; k >= 1; --k) acc += std::pow(static_cast<long double>(k), -s);
    const long double Kd = K;
    acc += std::pow(Kd, 1.0L - s) / (s - 1) - 0.5L * std::pow(Kd, -static_cast<long double>(s)) +
           s / 12.0L * std::pow(Kd, -static_cast<long double>(s) - 1.0L);
    return static_cast<double>(acc);
}

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// b_{j,k} = C(2j+2k+3, 2j+2) zeta(2j+2k+4) / 2^{2j+2k+3}
double b_oracle(int j, int k) {
    const int n = 2 * j + 2 * k + 3;
    return binom(n, 2 * j + 2) * zeta_oracle(n + 1) / std::ldexp(1.0, n);
}

std::vector<double> random_one_change(std::mt19937& gen) {
    std::uniform_int_distribution<int> len(2, 12);
    std::uniform_real_distribution<double> mag(0.05, 1.0);
    const int n = len(gen);
    std::uniform_int_distribution<int> cut(1, n - 1);
    const int c = cut(gen);
    std::vector<double> a(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i)] = (i < c ? 1.0 : -1.0) * mag(gen);
    return a;
}

} // namespace

TEST(BEntry, Values) {
    EXPECT_NEAR(tp::b_entry(0, 0), std::pow(pi, 4) / 240.0, 1e-15);
    EXPECT_NEAR(tp::b_entry(0, 1), 0.31791970687014035616, 1e-15);
    EXPECT_NEAR(tp::b_entry(1, 0), 0.15895985343507017808, 1e-15);
    EXPECT_NEAR(tp::b_entry(1, 1), 0.2745524020853754053, 1e-15);
}

TEST(BEntry, BinomialOracle) {
    for (int j = 0; j <= 8; ++j) {
        for (int k = 0; k <= 8; ++k) {
            const double o = b_oracle(j, k);
            EXPECT_NEAR(tp::b_entry(j, k), o, 1e-13 * o) << j << " " << k;
            EXPECT_NEAR(tp::b_entry_extended(j, k).value.to_double(), o, 1e-13 * o);
        }
    }
    EXPECT_THROW(tp::b_entry(40, 30), gausslab::DomainError);
}

TEST(HankelMoment, Values) {
    EXPECT_NEAR(tp::hankel_moment(0), std::pow(pi, 4) / 15.0, 1e-14);
    EXPECT_NEAR(tp::hankel_moment(1), 122.08116743813389677, 1e-12);
    EXPECT_NEAR(tp::hankel_moment(2), 5060.5498752376394705, 1e-10);
}

TEST(HankelMoment, IntegralRepresentation) {
    for (int j = 0; j <= 5; ++j) {
        const int p = 2 * j + 3;
        auto f = [p](double t) { return t == 0.0 ? 0.0 : std::pow(t, p) * std::exp(-t) / -std::expm1(-t); };
        const auto r = gausslab::quadrature::integrate(f, 0.0, 200.0, 1e-12, 1e-12);
        const double c = tp::hankel_moment(j);
        EXPECT_NEAR(r.value, c, 1e-6 * c) << j;
    }
}

TEST(Minors, SingleEntriesPositive) {
    const auto b = tp::b_section(5);
    const auto scan = tp::minors_positive(b, 1);
    EXPECT_TRUE(scan.positive());
    EXPECT_EQ(scan.count, 25u);
}

TEST(Minors, HankelTwoByTwo) {
    const auto h = tp::hankel_section(3, 0);
    const int idx[2] = {0, 1};
    const auto m = tp::minor(h, idx, idx);
    EXPECT_GT(m.value - m.error_estimate, 0.0);
    // c0 c2 - c1^2
    EXPECT_NEAR(m.value, 17959.092788884509257, 1e-9);
}

TEST(Minors, RankOneVanishes) {
    std::vector<std::vector<double>> rows;
    const double u[4] = {1.0, 0.3, 2.5, 0.7}, v[4] = {0.2, 1.1, 0.9, 3.0};
    for (double ui : u) {
        std::vector<double> r;
        for (double vj : v) r.push_back(ui * vj);
        rows.push_back(r);
    }
    const auto m = tp::MatrixSection::from_rows(rows);
    const int r2[2] = {0, 2}, c2[2] = {1, 3};
    const auto m2 = tp::minor(m, r2, c2);
    EXPECT_LE(std::fabs(m2.value), m2.error_estimate + 1e-15);
    const auto scan = tp::minors_positive(m, 3);
    EXPECT_FALSE(scan.positive());
}

TEST(Minors, FullScanOrderFive) {
    const auto b = tp::b_section(7);
    const auto scan = tp::minors_positive(b, 5, tp::PrecisionMode::extended);
    EXPECT_TRUE(scan.positive());
    EXPECT_GT(scan.worst_margin, 0.0);
    EXPECT_EQ(scan.exhaustive_up_to, 5);
    EXPECT_THROW(tp::minors_positive(b, 6, tp::PrecisionMode::standard), gausslab::DomainError);
}

TEST(Minors, CsvLayout) {
    const auto b = tp::b_section(3);
    const auto scan = tp::minors_positive(b, 2, tp::PrecisionMode::extended, true);
    std::ostringstream os;
    tp::write_minor_csv(os, scan);
    const std::string s = os.str();
    EXPECT_EQ(s.rfind("order,row_set,col_set,minor_value,error_estimate\n", 0), 0u);
    EXPECT_EQ(static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')), scan.count + 1);
}

TEST(Minors, HankelScalingEquivalence) {
    for (int size = 1; size <= 4; ++size) {
        const auto b = tp::b_section(size);
        const auto h = tp::hankel_section(size, 0);
        const auto sb = tp::minors_positive(b, size);
        const auto sh = tp::minors_positive(h, size);
        EXPECT_EQ(sb.positive(), sh.positive()) << size;
        EXPECT_TRUE(sb.positive());
        // B = D1 H D2 entrywise
        for (int j = 0; j < size; ++j) {
            for (int k = 0; k < size; ++k) {
                const double scale = std::ldexp(1.0, -(2 * j + 2 * k + 3)) / std::tgamma(2 * j + 3) / std::tgamma(2 * k + 2);
                EXPECT_NEAR(b.at(j, k).to_double(), scale * h.at(j, k).to_double(), 1e-14 * b.at(j, k).to_double());
            }
        }
    }
}

TEST(Cholesky, HankelSections) {
    for (int shift : {0, 1}) {
        for (int size = 1; size <= 6; ++size) {
            const auto r = tp::cholesky_check(tp::hankel_section(size, shift));
            EXPECT_TRUE(r.ok) << shift << " " << size;
            EXPECT_GT(r.min_pivot_margin, 0.0);
        }
    }
    const auto bad = tp::MatrixSection::from_rows({{1.0, 2.0}, {2.0, 1.0}});
    EXPECT_FALSE(tp::cholesky_check(bad).ok);
}

TEST(SignChanges, Examples) {
    const std::vector<double> a{1, -1, 1}, b{1, 0, -1}, c{0, 0};
    auto va = tp::sign_changes(a);
    EXPECT_EQ(va.s_minus, 2);
    EXPECT_EQ(va.s_plus, 2);
    auto vb = tp::sign_changes(b);
    EXPECT_EQ(vb.s_minus, 1);
    EXPECT_EQ(vb.s_plus, 1);
    EXPECT_EQ(vb.pattern, "+0-");
    auto vc = tp::sign_changes(c);
    EXPECT_EQ(vc.s_minus, 0);
    EXPECT_EQ(vc.s_plus, 1);
}

TEST(SignChanges, ToleranceBand) {
    const std::vector<double> a{1.0, 1e-14, -1.0};
    const auto v = tp::sign_changes(a);
    EXPECT_EQ(v.pattern, "+0-");
    ASSERT_EQ(v.indeterminate.size(), 1u);
    EXPECT_EQ(v.indeterminate[0], 1);
}

TEST(Classify, Examples) {
    const auto seq = gausslab::kernels::taylor_kappa({0.5}, 30);
    const auto v = tp::classify_down_class(seq.raw);
    EXPECT_EQ(v.variant, tp::ClassVariant::descending);
    EXPECT_GE(v.j0, 0);
    const std::vector<double> pos{1.0, 0.5, 2.0};
    EXPECT_EQ(tp::classify_down_class(pos).variant, tp::ClassVariant::all_nonneg);
    const std::vector<double> alt{1.0, -1.0, 1.0};
    EXPECT_EQ(tp::classify_down_class(alt).variant, tp::ClassVariant::not_member);
    const std::vector<double> neg{-1.0, 0.0, -3.0};
    EXPECT_EQ(tp::classify_down_class(neg).variant, tp::ClassVariant::all_nonpos);
}

TEST(VariationDiminishing, UnitVector) {
    const std::vector<double> e0{1.0};
    const auto r = tp::variation_diminishing_F(e0, 12);
    EXPECT_TRUE(r.pass);
    for (double f : r.F) EXPECT_GT(f, 0.0);
}

TEST(VariationDiminishing, TaylorCoefficients) {
    const auto seq = gausslab::kernels::taylor_kappa({0.5}, 9);
    const auto r = tp::variation_diminishing_F(seq.raw, 12);
    EXPECT_TRUE(r.pass);
    EXPECT_LE(r.verdict.s_plus, 1);
    EXPECT_EQ(r.verdict.pattern.front(), '+');
}

TEST(VariationDiminishing, RandomSequences) {
    std::mt19937 gen(20240601);
    for (int n = 0; n < 100; ++n) {
        const auto a = random_one_change(gen);
        const auto r = tp::variation_diminishing_F(a, 12);
        EXPECT_TRUE(r.pass) << "sequence " << n;
        // + block then - block: the last nonnegative entry is well defined
        const auto& p = r.verdict.pattern;
        const auto last_plus = p.find_last_of('+');
        const auto first_minus = p.find('-');
        if (last_plus != std::string::npos && first_minus != std::string::npos) EXPECT_LT(last_plus, first_minus);
    }
}

TEST(VariationDiminishing, RejectsTwoChanges) {
    const std::vector<double> a{1.0, -1.0, 1.0};
    EXPECT_THROW(tp::variation_diminishing_F(a, 12), gausslab::DomainError);
}

TEST(OneZero, CubicRoot) {
    const fr::Sampler f = [](double x) { return x - 2.0 * x * x * x; };
    const auto z = tp::one_zero_locate(f, 1.0);
    ASSERT_TRUE(z.has_value());
    EXPECT_NEAR(*z, 1.0 / std::sqrt(2.0), 1e-10);
    const std::vector<double> coeffs{0.0, 1.0, 0.0, -2.0};
    const auto z2 = tp::one_zero_locate(fr::FunctionRep(tp::power_series(coeffs, -1.0, 1.0)), 1.0);
    ASSERT_TRUE(z2.has_value());
    EXPECT_NEAR(*z2, 1.0 / std::sqrt(2.0), 1e-10);
}

TEST(OneZero, NonnegativeHasNoRoot) {
    const fr::Sampler f = [](double x) { return x * x + x; };
    EXPECT_FALSE(tp::one_zero_locate(f, 1.0).has_value());
}

TEST(OneZero, ReducedKernelPositive) {
    fr::KernelParams kp;
    kp.t = 0.5;
    const auto k = fr::FunctionRep::kernel(fr::KernelKind::k1_II, kp);
    EXPECT_FALSE(tp::one_zero_locate(k, 1.0).has_value());
}

TEST(OneZero, WrongDirectionThrows) {
    const fr::Sampler f = [](double x) { return x - 0.5; };
    EXPECT_THROW(tp::one_zero_locate(f, 1.0), gausslab::ClassificationError);
    const fr::Sampler g = [](double x) { return std::sin(12.0 * x); };
    EXPECT_THROW(tp::one_zero_locate(g, 1.0), gausslab::ClassificationError);
}
