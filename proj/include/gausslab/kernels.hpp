#pragma once

#include <span>
#include <vector>

#include "gausslab/specfun.hpp"
#include "gausslab/transfer.hpp"

namespace gausslab::kernels {

enum class Part { full, I, II };

// |t| <= 1 (checked by validate()).
struct KernelParam {
    double t = 0.5;
    void validate() const;
};

// K_1(t,x) = t/(1+tx) = K^I - K^II, K^I = t/(1-t^2x^2), K^II = t^2 x/(1-t^2x^2).
double hilbert_kernel(Part part, const KernelParam& kp, double x,
                      double pole_guard = specfun::kDefaultPoleGuard);

// k_1(t, .) = (id - T_1) K_1(t, .). With c(y) = (pi/2)cot(pi y/2) - 1/y:
//   k_1(t,x) = t/(1+tx) + c(x) - c(x-t),
// rewritten with c(y) = c(y +- 2) +- 1/(y +- 2) - 1/y when |x-t| > 1 so that
// the pole of t/(1+tx) at x = -1/t = t -+ 2 (|t| = 1) cancels analytically.
// Parts: k^I(x) = (k(x) + k(-x))/2, k^II(x) = (k(-x) - k(x))/2, so k = k^I - k^II.
double reduced_kernel(Part part, const KernelParam& kp, double x,
                      double pole_guard = specfun::kDefaultPoleGuard);

// k_1(1, x) from its tangent/cotangent form, evaluated literally with the
// trigonometric library functions. Only valid away from x in {0, 1, -1}.
double reduced_kernel_t1_trig(double x);

// T_1 K_1(t, .)(x) as (pi/2)cot(pi(x-t)/2) - (pi/2)cot(pi x/2) - t/(x(x-t)),
// evaluated literally. Only valid away from x in {0, t}.
double t1_hilbert_kernel_closed(const KernelParam& kp, double x);

// alpha / (alpha^2 - x^2)
double kappa_alpha(double alpha, double x, double pole_guard = specfun::kDefaultPoleGuard);

struct TaylorSeq {
    double t = 0.0;
    std::vector<double> raw;       // varkappa_j(t)
    std::vector<double> raw_error; // absolute error bounds of raw
    std::vector<double> scaled;    // (2-t)^{2j+2} varkappa_j(t)
};

// varkappa_j(t) = t^{2j+2} - (2-t)^{-2j-2}
//   + 2^{-2j-2} {2 zeta(2j+2,1) - zeta(2j+2, 2-t/2) - zeta(2j+2, 1+t/2)},  j = 0..jmax.
TaylorSeq taylor_kappa(const KernelParam& kp, int jmax, const specfun::PrecisionBudget& budget = {});

// pi^2/12 + 1/t^2 - (pi^2/4)/sin^2(pi t/2) + t^2
double kappa0_closed_form(double t);

// Same coefficient through polygamma values at 1 and 1 -+ t/2.
double taylor_kappa_polygamma(double t, int j);

struct NeumannOptions {
    int N = 1000;
    int order = 256;
    double eta = 1.0; // iterates are fitted on [-eta, eta]
};

// Iterates of T_1 applied to k^II(t, .) and K^II(t, .), kept as Chebyshev fits.
class NeumannDecomposition {
public:
    NeumannDecomposition(double t, int n_max, const NeumannOptions& opt = {});

    double t() const { return t_; }
    int n_max() const { return n_max_; }

    // sum_{j=0}^{n-1} T_1^j k^II(t, .)(x)
    double partial_sum(int n, double x) const;
    // K^II(t,x) - T_1^n K^II(t, .)(x)
    double remainder_form(int n, double x) const;
    // accumulated numerical bound on |partial_sum - remainder_form| for n terms
    double bound(int n) const;
    // sup over the grid of |K^II(t,x) - partial_sum(n, x)|
    double deviation(int n, std::span<const double> grid) const;

    const transfer::Trajectory& reduced_iterates() const { return reduced_; }
    const transfer::Trajectory& kernel_iterates() const { return kernel_; }

private:
    double t_;
    int n_max_;
    transfer::Trajectory reduced_;
    transfer::Trajectory kernel_;
};

struct NeumannPoint {
    double lhs = 0.0;
    double rhs = 0.0;
    double bound = 0.0;
};

NeumannPoint neumann_partial(double t, int n, double x, int N);

struct SummandVerdict {
    bool positive = true;         // 0 < T^j k^II(t,.)(x)
    bool dominated = true;        // T^j k^II(t,.)(x) < T^j k^II(1,.)(x)
    bool difference_increasing = true; // k^II(1,.) - k^II(t,.) increasing on the grid
    double min_positive_margin = 0.0;   // min over grid and j of (value - bound)
    double min_domination_margin = 0.0; // min of (reference - value - bounds)
    double max_bound = 0.0;
    int j_max = 0;

    bool pass() const { return positive && dominated && difference_increasing; }
};

// Checks 0 < T_1^j k^II(t,.) < T_1^j k^II(1,.) on the grid for j <= j_max,
// with margins compared against the accumulated iteration bounds.
SummandVerdict summand_bounds_check(double t, int j_max, std::span<const double> grid,
                                    const NeumannOptions& opt = {});

} // namespace gausslab::kernels
