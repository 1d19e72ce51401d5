#pragma once

// Unevaluated sum hi + lo of two doubles, |lo| <= ulp(hi)/2.
// Roughly 106 significant bits. Requires strict IEEE evaluation
// (no fused contraction, no x87 excess precision).

#include <cmath>
#include <cstdint>
#include <limits>

namespace gausslab {

struct DoubleDouble {
    double hi = 0.0;
    double lo = 0.0;

    constexpr DoubleDouble() = default;
    constexpr DoubleDouble(double x) : hi(x), lo(0.0) {}
    constexpr DoubleDouble(double h, double l) : hi(h), lo(l) {}

    explicit operator double() const { return hi + lo; }
    double to_double() const { return hi + lo; }

    // Relative rounding unit used in error analysis (2^-104, slightly
    // pessimistic compared with the ideal 2^-106).
    static constexpr double unit_roundoff() { return 4.930380657631324e-32; }
};

namespace dd_detail {

inline DoubleDouble two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline DoubleDouble quick_two_sum(double a, double b) {
    double s = a + b;
    double err = b - (s - a);
    return {s, err};
}

inline DoubleDouble two_prod(double a, double b) {
    double p = a * b;
    double err = std::fma(a, b, -p);
    return {p, err};
}

} // namespace dd_detail

inline DoubleDouble operator-(const DoubleDouble& a) { return {-a.hi, -a.lo}; }

inline DoubleDouble operator+(const DoubleDouble& a, const DoubleDouble& b) {
    DoubleDouble s = dd_detail::two_sum(a.hi, b.hi);
    DoubleDouble t = dd_detail::two_sum(a.lo, b.lo);
    double e = s.lo + t.hi;
    s = dd_detail::quick_two_sum(s.hi, e);
    e = s.lo + t.lo;
    return dd_detail::quick_two_sum(s.hi, e);
}

inline DoubleDouble operator-(const DoubleDouble& a, const DoubleDouble& b) { return a + (-b); }

inline DoubleDouble operator*(const DoubleDouble& a, const DoubleDouble& b) {
    DoubleDouble p = dd_detail::two_prod(a.hi, b.hi);
    double e = p.lo + (a.hi * b.lo + a.lo * b.hi);
    return dd_detail::quick_two_sum(p.hi, e);
}

inline DoubleDouble operator/(const DoubleDouble& a, const DoubleDouble& b) {
    double q1 = a.hi / b.hi;
    DoubleDouble r = a - DoubleDouble(q1) * b;
    double q2 = r.hi / b.hi;
    r = r - DoubleDouble(q2) * b;
    double q3 = r.hi / b.hi;
    DoubleDouble q = dd_detail::quick_two_sum(q1, q2);
    return q + DoubleDouble(q3);
}

inline DoubleDouble& operator+=(DoubleDouble& a, const DoubleDouble& b) { return a = a + b; }
inline DoubleDouble& operator-=(DoubleDouble& a, const DoubleDouble& b) { return a = a - b; }
inline DoubleDouble& operator*=(DoubleDouble& a, const DoubleDouble& b) { return a = a * b; }
inline DoubleDouble& operator/=(DoubleDouble& a, const DoubleDouble& b) { return a = a / b; }

inline bool operator<(const DoubleDouble& a, const DoubleDouble& b) {
    return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}
inline bool operator>(const DoubleDouble& a, const DoubleDouble& b) { return b < a; }
inline bool operator<=(const DoubleDouble& a, const DoubleDouble& b) { return !(b < a); }
inline bool operator>=(const DoubleDouble& a, const DoubleDouble& b) { return !(a < b); }
inline bool operator==(const DoubleDouble& a, const DoubleDouble& b) { return a.hi == b.hi && a.lo == b.lo; }
inline bool operator!=(const DoubleDouble& a, const DoubleDouble& b) { return !(a == b); }

inline DoubleDouble abs(const DoubleDouble& a) { return a.hi < 0.0 ? -a : a; }

inline DoubleDouble sqrt(const DoubleDouble& a) {
    if (a.hi <= 0.0) return DoubleDouble(0.0);
    double q = std::sqrt(a.hi);
    DoubleDouble r = a - dd_detail::two_prod(q, q);
    return dd_detail::quick_two_sum(q, r.hi / (2.0 * q));
}

// Integer power by repeated squaring.
inline DoubleDouble pow_int(DoubleDouble x, int n) {
    if (n < 0) return DoubleDouble(1.0) / pow_int(x, -n);
    DoubleDouble result(1.0);
    while (n > 0) {
        if (n & 1) result *= x;
        x *= x;
        n >>= 1;
    }
    return result;
}

inline DoubleDouble dd_from_int(std::int64_t n) {
    double hi = static_cast<double>(n);
    double lo = static_cast<double>(n - static_cast<std::int64_t>(hi));
    return dd_detail::quick_two_sum(hi, lo);
}

// pi to double-double accuracy
inline constexpr DoubleDouble dd_pi{3.141592653589793116e+00, 1.224646799147353207e-16};

} // namespace gausslab
