#include "gausslab/hilbert.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "gausslab/error.hpp"
#include "gausslab/specfun.hpp"

namespace gausslab::hilbert {

void GammaProfile::validate() const {
    if (!(gamma > 0.0 && gamma <= 0.5)) {
        throw DomainError("GammaProfile: gamma = " + std::to_string(gamma) + " outside (0, 0.5]");
    }
    if (tail_terms < 100) throw DomainError("GammaProfile: tail_terms must be >= 100");
}

double g_gamma(const GammaProfile& prof, double x) {
    const double g = prof.gamma;
    if (std::fabs(x) > g) return 0.0;
    return x * std::sqrt((g - x) * (g + x));
}

double hg_gamma(const GammaProfile& prof, double x) {
    const double g = prof.gamma;
    const double a = std::fabs(x);
    if (a <= g) return x * x - 0.5 * g * g;
    const double s = a + std::sqrt((a - g) * (a + g));
    const double g2 = g * g;
    return g2 * g2 / (2.0 * s * s);
}

PeriodizedSum periodized_sum(const GammaProfile& prof, double x) {
    prof.validate();
    if (!std::isfinite(x)) throw DomainError("periodized_sum: non-finite x");
    const int J = prof.tail_terms + static_cast<int>(std::ceil(std::fabs(x) / 2.0));
    long double sum = 0.0L;
    long double abs_sum = 0.0L;
    // far terms first
    for (int j = J; j >= 1; --j) {
        const double a = hg_gamma(prof, x + 2.0 * j);
        const double b = hg_gamma(prof, x - 2.0 * j);
        sum += static_cast<long double>(a) + static_cast<long double>(b);
        abs_sum += std::fabs(a) + std::fabs(b);
    }
    const double g2 = prof.gamma * prof.gamma;
    const double s2 = specfun::lattice_tail_sum(2, x, J);
    const double s4 = specfun::lattice_tail_sum(4, x, J);
    const double s6 = specfun::lattice_tail_sum(6, x, J);
    const double tail = g2 * g2 / 8.0 * s2 + g2 * g2 * g2 / 16.0 * s4;
    PeriodizedSum out;
    out.terms = J;
    out.tail_estimate = tail;
    out.value = static_cast<double>(sum + static_cast<long double>(tail));
    out.error_estimate = 5.0 * g2 * g2 * g2 * g2 / 128.0 * s6 +
                         4.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(abs_sum);
    return out;
}

NormGap norm_gap(const GammaProfile& prof, int N) {
    prof.validate();
    if (prof.gamma > 0.2) throw DomainError("norm_gap: gamma must be <= 0.2");
    if (N < 1) throw DomainError("norm_gap: N must be positive");
    const double g = prof.gamma;
    const PeriodizedSum s_far = periodized_sum(prof, g + 2.0 * N);
    const PeriodizedSum s_near = periodized_sum(prof, 2.0);
    NormGap out;
    out.gamma = g;
    out.D = s_far.value - s_near.value;
    out.D_minus_gamma2 = out.D - g * g;
    out.predicted = g * g * g * g / 32.0;
    // the surrogate omits Hg(gamma + 2N), which vanishes in the limit
    out.tail_estimate = hg_gamma(prof, g + 2.0 * N) + s_far.error_estimate + s_near.error_estimate;
    if (out.tail_estimate > g * g * g * g / 320.0) {
        throw BudgetExhaustedError("norm_gap: tail estimate too large, increase N or tail_terms");
    }
    return out;
}

} // namespace gausslab::hilbert
