#pragma once

#include <ostream>
#include <span>
#include <vector>

#include "gausslab/dynamics.hpp"
#include "gausslab/funcrep.hpp"

namespace gausslab::transfer {

using dynamics::MapParam;
using funcrep::ChebSeries;
using funcrep::FunctionRep;
using funcrep::GridFunction;
using funcrep::Sampler;

enum class OperatorKind {
    subtransfer,   // j in Z \ {0}
    full_transfer, // j in Z; the j = 0 term sees f restricted to I_1
    complement_V   // (beta/x^2) sum_{j != 0} v(-beta/x + 2j), |x| > 1
};

struct OperatorMode {
    OperatorKind kind = OperatorKind::subtransfer;
};

enum class TailCorrection { none, second_order };

struct TruncatedApplication {
    double value = 0.0;
    double tail_bound = 0.0;
    int order_N = 0;
};

struct ApplyOptions {
    TailCorrection tail = TailCorrection::second_order;
    double pole_guard = specfun::kDefaultPoleGuard;
};

// Sum over |j| <= N of the mode's terms plus, for second_order, the lattice
// correction beta f(0) S_2 - beta^2 f'(0) S_3. tail_bound covers the
// neglected part (for `none`: sup of |f| near 0 times beta sum (2|j|-1)^{-2};
// for second_order: the quadratic remainder) and the summation rounding.
TruncatedApplication apply_truncated(OperatorMode mode, const MapParam& p, const FunctionRep& f,
                                     double x, int N, const ApplyOptions& opt = {});
TruncatedApplication apply_truncated(OperatorMode mode, const MapParam& p, const GridFunction& f,
                                     double x, int N, const ApplyOptions& opt = {});

// T_beta[1/(. - pole)](x) = c(x + beta/pole) - c(x), c the regular part of
// the half-period cotangent.
double apply_pole_closed(const MapParam& p, double pole, double x,
                         double pole_guard = specfun::kDefaultPoleGuard);

// (beta / x^2) f(-beta/x)
double apply_J(const MapParam& p, const FunctionRep& f, double x);

// (1/pi) int_{-1}^{1} t/(beta + t x) f(t) dt, |x| < beta.
double apply_Q(const MapParam& p, const FunctionRep& f, double x);
double apply_Q(const MapParam& p, const Sampler& f, double x);

// Radius of the input interval that T_beta needs for outputs on [-eta, eta].
double required_input_radius(OperatorMode mode, const MapParam& p, double eta);

struct IterateOptions {
    double eta = 1.0;   // certified output interval of every step
    int order = 256;    // Chebyshev order of each refit
    int N = 1000;
    ApplyOptions apply;
    // Fit f0 only on the radius the first application needs (for inputs
    // defined on a strict subinterval, such as Q_beta f).
    bool clip_input_to_required = false;
    // A step fails with PrecisionError when its accumulated L1 error bound
    // exceeds this fraction of its L1 norm.
    double max_error_fraction = 1e-3;
    // Levels for the weak-L1 report. Empty selects 10^-12 .. 10^3.
    std::vector<double> lambda_grid;
};

struct StepReport {
    int step = 0;
    double radius = 0.0;            // fit interval [-radius, radius]
    double eta = 0.0;               // interval used for the norms
    double l1_norm = 0.0;
    double weak_l1 = 0.0;
    double max_tail_bound = 0.0;    // largest pointwise tail bound of this step
    double accumulated_bound = 0.0; // sup-norm error bound of the fitted iterate
};

struct Trajectory {
    std::vector<GridFunction> steps;
    std::vector<ChebSeries> fits;
    std::vector<StepReport> reports;

    double value(int step, double x) const { return fits.at(static_cast<std::size_t>(step))(x); }
    // columns: step, eta, l1_norm, weak_l1, max_tail_bound
    void write_csv(std::ostream& out) const;
};

// Step k+1 is apply_truncated at every Lobatto node of step k's interval,
// refitted to Chebyshev form. Interval radii are chosen backwards from eta so
// that every argument -beta/(x+2j) stays inside the previous fit.
Trajectory iterate_on_grid(OperatorMode mode, const MapParam& p, const Sampler& f0, int n_steps,
                           const IterateOptions& opt = {});
Trajectory iterate_on_grid(OperatorMode mode, const MapParam& p, const FunctionRep& f0, int n_steps,
                           const IterateOptions& opt = {});
Trajectory iterate_on_grid(OperatorMode mode, const MapParam& p, const GridFunction& f0, int n_steps,
                           const IterateOptions& opt = {});

struct EndpointCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double tail_bound = 0.0;
};

// Symmetric truncated sum at x = 1 against beta f(beta), f odd.
EndpointCheck endpoint_check(const MapParam& p, const FunctionRep& f, int N);

// Both sides of the commutator identity for the pole pair (xi, -beta/r),
// r = {-beta/xi}_2, evaluated in closed form; returns the largest absolute
// discrepancy over the grid.
double commutator_check(const MapParam& p, double xi, std::span<const double> grid,
                        double pole_guard = specfun::kDefaultPoleGuard);

// `points` equally spaced points of [-1, 1], each nudged away from the two
// singular points of the identity by at least `guard`.
std::vector<double> commutator_grid(const MapParam& p, double xi, int points, double guard = 1e-3);

} // namespace gausslab::transfer
