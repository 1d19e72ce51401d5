#include "gausslab/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "gausslab/dynamics.hpp"
#include "gausslab/error.hpp"

namespace gausslab::specfun {

namespace {

constexpr long double kPiL = 3.141592653589793238462643383279502884L;
constexpr double kLdEps = std::numeric_limits<long double>::epsilon();

// Bernoulli numbers B_2 .. B_32 as exact rationals.
constexpr std::array<double, 16> kBernNum = {
    1.0, -1.0, 1.0, -1.0, 5.0, -691.0, 7.0, -3617.0, 43867.0, -174611.0,
    854513.0, -236364091.0, 8553103.0, -23749461029.0, 8615841276005.0,
    -7709321041217.0};
constexpr std::array<double, 16> kBernDen = {
    6.0, 30.0, 42.0, 30.0, 66.0, 2730.0, 6.0, 510.0, 798.0, 330.0,
    138.0, 2730.0, 6.0, 870.0, 14322.0, 510.0};
constexpr int kEulerMaclaurinTerms = 15;

inline double as_double(long double v) { return static_cast<double>(v); }
inline double as_double(const DoubleDouble& v) { return v.to_double(); }

inline long double abs_value(long double v) { return std::fabs(v); }
inline DoubleDouble abs_value(const DoubleDouble& v) { return abs(v); }

template <class T>
struct CoreResult {
    T value{};
    double remainder = 0.0; // Euler-Maclaurin remainder bound
};

// Direct sum over k < K, then Euler-Maclaurin tail at a = x + K.
// inv_pow(a) returns a^{-s}.
template <class T, class InvPow>
CoreResult<T> hurwitz_core(double s, const T& x, std::int64_t K, InvPow inv_pow) {
    T direct(0.0);
    // sum the smallest terms first
    for (std::int64_t k = K - 1; k >= 0; --k) {
        direct += inv_pow(x + T(static_cast<double>(k)));
    }
    const T a = x + T(static_cast<double>(K));
    const T a_pow = inv_pow(a);
    const T sT(s);
    T tail = a_pow * a / (sT - T(1.0)) + a_pow / T(2.0);

    // c_i = (s)_{2i-1} / (2i)! * a^{-s-2i+1}
    T c = a_pow * sT / (T(2.0) * a);
    double prev = std::numeric_limits<double>::infinity();
    double remainder = 0.0;
    for (int i = 1; i <= kEulerMaclaurinTerms + 1; ++i) {
        const T term = T(kBernNum[i - 1]) / T(kBernDen[i - 1]) * c;
        const double mag = std::fabs(as_double(term));
        if (i == kEulerMaclaurinTerms + 1 || mag > prev) {
            remainder = 2.0 * mag;
            break;
        }
        tail += term;
        prev = mag;
        const double n = 2.0 * i;
        c = c * T((s + n - 1.0) * (s + n)) / (T((n + 1.0) * (n + 2.0)) * a * a);
    }
    return {direct + tail, remainder};
}

struct LdValue {
    long double value;
    long double error;
};

void check_hurwitz_domain(double s, double x) {
    if (!(s >= 2.0) || !std::isfinite(s)) {
        throw DomainError("hurwitz_zeta: order s = " + std::to_string(s) + " must satisfy s >= 2");
    }
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("hurwitz_zeta: argument x = " + std::to_string(x) + " must be positive");
    }
}

LdValue hurwitz_ld(double s, long double x, const PrecisionBudget& budget) {
    budget.validate();
    check_hurwitz_domain(s, static_cast<double>(x));
    const long double sl = s;
    const bool integer_order = (s == std::floor(s)) && s < 200.0;
    const int si = static_cast<int>(s);
    auto inv_pow = [&](long double a) -> long double {
        if (integer_order) {
            long double r = 1.0L, b = a;
            int n = si;
            while (n > 0) {
                if (n & 1) r *= b;
                b *= b;
                n >>= 1;
            }
            return 1.0L / r;
        }
        return std::pow(a, -sl);
    };
    std::int64_t K = 16;
    while (true) {
        CoreResult<long double> r = hurwitz_core<long double>(s, x, K, inv_pow);
        const long double rounding = (static_cast<long double>(K) + 40.0L) * kLdEps * std::fabs(r.value);
        const long double err = r.remainder + rounding;
        if (r.remainder <= budget.rel_tol * std::fabs(r.value) || err <= 4.0L * rounding) {
            return {r.value, err};
        }
        if (2 * K > budget.max_terms) {
            throw BudgetExhaustedError("hurwitz_zeta: term budget exhausted before reaching rel_tol");
        }
        K *= 2;
    }
}

// zeta(2k) - 1 for k = 1..kRegularTerms, used by the series of c(y).
constexpr int kRegularTerms = 26;

const std::array<long double, kRegularTerms + 1>& zeta_even_minus_one() {
    static const std::array<long double, kRegularTerms + 1> table = [] {
        std::array<long double, kRegularTerms + 1> t{};
        PrecisionBudget b;
        for (int k = 1; k <= kRegularTerms; ++k) {
            t[k] = hurwitz_ld(2.0 * k, 2.0L, b).value;
        }
        return t;
    }();
    return table;
}

// c(y) for |y| <= 1.
long double regular_series(long double y) {
    const auto& z = zeta_even_minus_one();
    const long double h = y / 2.0L;
    const long double h2 = h * h;
    long double sum = 0.0L;
    long double p = h;
    for (int k = 1; k <= kRegularTerms; ++k) {
        sum += z[k] * p;
        p *= h2;
    }
    return -2.0L * y / (4.0L - y * y) - sum;
}

} // namespace

void PrecisionBudget::validate() const {
    if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
        throw DomainError("PrecisionBudget: rel_tol must lie in (0,1)");
    }
    if (max_terms < 16) {
        throw DomainError("PrecisionBudget: max_terms must be at least 16");
    }
}

SpecialValue hurwitz_zeta(double s, double x, const PrecisionBudget& budget) {
    LdValue r = hurwitz_ld(s, x, budget);
    const double v = static_cast<double>(r.value);
    const double conv = std::fabs(v) * std::numeric_limits<double>::epsilon() * 0.5;
    return {v, static_cast<double>(r.error) + conv};
}

SpecialValue polygamma(int m, double x, const PrecisionBudget& budget) {
    if (m < 1) throw DomainError("polygamma: order m must be >= 1");
    LdValue z = hurwitz_ld(m + 1.0, x, budget);
    long double fact = 1.0L;
    for (int i = 2; i <= m; ++i) fact *= i;
    const long double sign = (m % 2 == 1) ? 1.0L : -1.0L;
    const long double v = sign * fact * z.value;
    const long double err = fact * z.error + 2.0L * m * kLdEps * std::fabs(v);
    const double vd = static_cast<double>(v);
    return {vd, static_cast<double>(err) + std::fabs(vd) * std::numeric_limits<double>::epsilon() * 0.5};
}

SpecialValue lambda_tau(double tau, double s, const PrecisionBudget& budget) {
    if (!(tau > 0.0 && tau <= 0.5)) throw DomainError("lambda_tau: tau must lie in (0, 1/2]");
    if (!(s >= 3.0) || !std::isfinite(s)) throw DomainError("lambda_tau: s must be >= 3");
    const long double t = tau;
    LdValue z1 = hurwitz_ld(s, 1.0L, budget);
    LdValue z2 = hurwitz_ld(s, 2.0L - t, budget);
    LdValue z3 = hurwitz_ld(s, 1.0L + t, budget);
    const long double scale = std::pow(1.0L - t, static_cast<long double>(s));
    const long double inner = 2.0L * z1.value - z2.value - z3.value;
    const long double v = scale * inner;
    const long double err = scale * (2.0L * z1.error + z2.error + z3.error) +
                            8.0L * kLdEps * scale * (2.0L * z1.value + z2.value + z3.value);
    const double vd = static_cast<double>(v);
    return {vd, static_cast<double>(err) + std::fabs(vd) * std::numeric_limits<double>::epsilon() * 0.5};
}

ExtendedValue hurwitz_zeta_extended(int s, const DoubleDouble& x) {
    check_hurwitz_domain(s, x.to_double());
    auto inv_pow = [s](const DoubleDouble& a) { return DoubleDouble(1.0) / pow_int(a, s); };
    const double target = 4.0 * DoubleDouble::unit_roundoff();
    std::int64_t K = 16;
    while (true) {
        CoreResult<DoubleDouble> r = hurwitz_core<DoubleDouble>(s, x, K, inv_pow);
        const double mag = std::fabs(r.value.to_double());
        const double rounding = (static_cast<double>(K) + 60.0) * DoubleDouble::unit_roundoff() * mag;
        if (r.remainder <= target * mag) {
            return {r.value, r.remainder + rounding};
        }
        if (K > (std::int64_t{1} << 16)) {
            throw BudgetExhaustedError("hurwitz_zeta_extended: term budget exhausted");
        }
        K *= 2;
    }
}

ExtendedValue polygamma_extended(int m, const DoubleDouble& x) {
    if (m < 1) throw DomainError("polygamma_extended: order m must be >= 1");
    ExtendedValue z = hurwitz_zeta_extended(m + 1, x);
    DoubleDouble fact(1.0);
    for (int i = 2; i <= m; ++i) fact *= DoubleDouble(static_cast<double>(i));
    DoubleDouble v = fact * z.value;
    if (m % 2 == 0) v = -v;
    const double err = fact.to_double() * z.error_bound +
                       2.0 * m * DoubleDouble::unit_roundoff() * std::fabs(v.to_double());
    return {v, err};
}

double cot_half_pi(double x, double pole_guard) {
    if (!std::isfinite(x)) throw DomainError("cot_half_pi: non-finite argument");
    const double y = dynamics::even_frac(x);
    if (std::fabs(y) < pole_guard) {
        throw PoleProximityError("cot_half_pi: argument " + std::to_string(x) +
                                 " is within the pole guard of an even integer");
    }
    const long double a = kPiL * static_cast<long double>(y) / 2.0L;
    return static_cast<double>(kPiL / 2.0L * std::cos(a) / std::sin(a));
}

double cot_half_pi_regular(double y, double pole_guard) {
    if (!std::isfinite(y)) throw DomainError("cot_half_pi_regular: non-finite argument");
    if (y == 0.0) return 0.0;
    if (std::fabs(y) <= 1.0) return static_cast<double>(regular_series(y));
    const double r = dynamics::even_frac(y);
    if (std::fabs(r) < pole_guard) {
        throw PoleProximityError("cot_half_pi_regular: argument " + std::to_string(y) +
                                 " is within the pole guard of a nonzero even integer");
    }
    const long double rl = r;
    return static_cast<double>(regular_series(rl) + 1.0L / rl - 1.0L / static_cast<long double>(y));
}

double lattice_tail_sum(int m, double x, std::int64_t N) {
    if (m < 2) throw DomainError("lattice_tail_sum: m must be >= 2");
    const double n1 = static_cast<double>(N) + 1.0;
    if (!(n1 - std::fabs(x) / 2.0 > 0.0)) throw DomainError("lattice_tail_sum: |x| too large for N");
    const long double p = hurwitz_ld(m, n1 + x / 2.0, PrecisionBudget{}).value;
    const long double q = hurwitz_ld(m, n1 - x / 2.0, PrecisionBudget{}).value;
    const long double sign = (m % 2 == 0) ? 1.0L : -1.0L;
    return static_cast<double>(std::ldexp(p + sign * q, -m));
}

double lattice_tail_abs_sum(int m, double x, std::int64_t N) {
    if (m < 2) throw DomainError("lattice_tail_abs_sum: m must be >= 2");
    const double n1 = static_cast<double>(N) + 1.0;
    if (!(n1 - std::fabs(x) / 2.0 > 0.0)) throw DomainError("lattice_tail_abs_sum: |x| too large for N");
    const long double p = hurwitz_ld(m, n1 + x / 2.0, PrecisionBudget{}).value;
    const long double q = hurwitz_ld(m, n1 - x / 2.0, PrecisionBudget{}).value;
    return static_cast<double>(std::ldexp(p + q, -m));
}

} // namespace gausslab::specfun
