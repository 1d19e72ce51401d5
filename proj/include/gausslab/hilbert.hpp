#pragma once

namespace gausslab::hilbert {

// gamma in (0, 0.5], tail_terms >= 100 (checked by validate()).
struct GammaProfile {
    double gamma = 0.1;
    int tail_terms = 200;

    void validate() const;
};

// x sqrt(gamma^2 - x^2) on |x| <= gamma, zero elsewhere.
double g_gamma(const GammaProfile& prof, double x);

// Hilbert transform of g_gamma: x^2 - gamma^2/2 - 1_{|x|>gamma} |x| sqrt(x^2 - gamma^2).
// Outside the support the cancelling form gamma^4 / (2 (|x| + sqrt(x^2-gamma^2))^2) is used.
double hg_gamma(const GammaProfile& prof, double x);

struct PeriodizedSum {
    double value = 0.0;
    double tail_estimate = 0.0;  // asymptotic contribution of |j| > J, included in value
    double error_estimate = 0.0; // size of the first neglected asymptotic order
    int terms = 0;               // J
};

// sum_{j=1}^{J} (Hg(x+2j) + Hg(x-2j)) plus the asymptotic tail over j > J,
// J = tail_terms + ceil(|x|/2).
PeriodizedSum periodized_sum(const GammaProfile& prof, double x);

struct NormGap {
    double gamma = 0.0;
    double D = 0.0;
    double D_minus_gamma2 = 0.0;
    double predicted = 0.0;      // gamma^4 / 32
    double tail_estimate = 0.0;  // residual of the x -> gamma + 2N surrogate plus summation tails
};

// D(gamma) = S(gamma + 2N) - S(2) with S the periodized sum. gamma <= 0.2.
NormGap norm_gap(const GammaProfile& prof, int N = 1000);

} // namespace gausslab::hilbert
