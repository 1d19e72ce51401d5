#pragma once

#include <cstdint>

#include "gausslab/double_double.hpp"

namespace gausslab::specfun {

inline constexpr double kDefaultPoleGuard = 1e-8;

struct PrecisionBudget {
    double rel_tol = 1e-17;
    std::int64_t max_terms = std::int64_t{1} << 22;

    // Throws DomainError when the invariants 0 < rel_tol < 1, max_terms >= 16 fail.
    void validate() const;
};

struct SpecialValue {
    double value = 0.0;
    double error_bound = 0.0; // absolute
};

struct ExtendedValue {
    DoubleDouble value;
    double error_bound = 0.0; // absolute
};

// zeta(s, x) = sum_{k>=0} (x+k)^{-s}, s >= 2, x > 0.
// Direct summation of K terms followed by an Euler-Maclaurin tail; K doubles
// until the remainder bound meets budget.rel_tol. Evaluated in long double.
SpecialValue hurwitz_zeta(double s, double x, const PrecisionBudget& budget = {});

// psi^(m)(x) = (-1)^(m+1) m! zeta(m+1, x).
SpecialValue polygamma(int m, double x, const PrecisionBudget& budget = {});

// Lambda_tau(s) = (1-tau)^s {2 zeta(s,1) - zeta(s,2-tau) - zeta(s,1+tau)}
SpecialValue lambda_tau(double tau, double s, const PrecisionBudget& budget = {});

// Double-double variants for integer orders, used by the extended precision
// mode of the total positivity checks.
ExtendedValue hurwitz_zeta_extended(int s, const DoubleDouble& x);
ExtendedValue polygamma_extended(int m, const DoubleDouble& x);

// (pi/2) cot(pi x / 2). Throws PoleProximityError within pole_guard of 2Z.
double cot_half_pi(double x, double pole_guard = kDefaultPoleGuard);

// c(y) = (pi/2) cot(pi y / 2) - 1/y, the part of the half-period cotangent
// that is analytic on (-2, 2). Value at y = 0 is 0. Elsewhere the poles sit at
// the nonzero even integers and are guarded as in cot_half_pi.
double cot_half_pi_regular(double y, double pole_guard = kDefaultPoleGuard);

// sum over |j| > N of (x + 2j)^{-m}, m >= 2, |x| <= 2N+1 - small.
double lattice_tail_sum(int m, double x, std::int64_t N);

// sum over |j| > N of |x + 2j|^{-m} (absolute values, same range).
double lattice_tail_abs_sum(int m, double x, std::int64_t N);

} // namespace gausslab::specfun
