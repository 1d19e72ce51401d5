#include "gausslab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gausslab/error.hpp"

namespace gausslab::kernels {

using specfun::cot_half_pi_regular;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
const double kPi = std::acos(-1.0);

void guard_denominator(double d, double guard, const char* what, double x) {
    if (std::fabs(d) < guard) {
        throw PoleProximityError(std::string(what) + ": x = " + std::to_string(x) + " within the pole guard");
    }
}

double reduced_full(double t, double x, double guard) {
    const double y = x - t;
    const double d = 1.0 + t * x;
    if (y < -1.0) {
        const double e = x - t + 2.0;
        const double num = (1.0 - t) * (1.0 - t);
        double lead = 0.0;
        if (num != 0.0) {
            guard_denominator(d, guard, "reduced_kernel", x);
            guard_denominator(e, guard, "reduced_kernel", x);
            lead = -num / (d * e);
        }
        return lead + cot_half_pi_regular(x, guard) - cot_half_pi_regular(e, guard) + 1.0 / y;
    }
    if (y > 1.0) {
        const double e = x - t - 2.0;
        const double num = (1.0 + t) * (1.0 + t);
        double lead = 0.0;
        if (num != 0.0) {
            guard_denominator(d, guard, "reduced_kernel", x);
            guard_denominator(e, guard, "reduced_kernel", x);
            lead = -num / (d * e);
        }
        return lead + cot_half_pi_regular(x, guard) - cot_half_pi_regular(e, guard) + 1.0 / y;
    }
    guard_denominator(d, guard, "reduced_kernel", x);
    return t / d + cot_half_pi_regular(x, guard) - cot_half_pi_regular(y, guard);
}

transfer::IterateOptions iterate_options(const NeumannOptions& opt) {
    transfer::IterateOptions io;
    io.eta = opt.eta;
    io.order = opt.order;
    io.N = opt.N;
    return io;
}

} // namespace

void KernelParam::validate() const {
    if (!(std::fabs(t) <= 1.0)) throw DomainError("KernelParam: |t| must be <= 1");
}

double hilbert_kernel(Part part, const KernelParam& kp, double x, double pole_guard) {
    kp.validate();
    const double t = kp.t;
    switch (part) {
    case Part::full: {
        const double d = 1.0 + t * x;
        guard_denominator(d, pole_guard, "hilbert_kernel", x);
        return t / d;
    }
    case Part::I: {
        const double d = (1.0 - t * x) * (1.0 + t * x);
        guard_denominator(d, pole_guard, "hilbert_kernel", x);
        return t / d;
    }
    case Part::II: {
        const double d = (1.0 - t * x) * (1.0 + t * x);
        guard_denominator(d, pole_guard, "hilbert_kernel", x);
        return t * t * x / d;
    }
    }
    throw DomainError("hilbert_kernel: unknown part");
}

double reduced_kernel(Part part, const KernelParam& kp, double x, double pole_guard) {
    kp.validate();
    if (!std::isfinite(x)) throw DomainError("reduced_kernel: non-finite x");
    switch (part) {
    case Part::full: return reduced_full(kp.t, x, pole_guard);
    case Part::I: return 0.5 * (reduced_full(kp.t, x, pole_guard) + reduced_full(kp.t, -x, pole_guard));
    case Part::II: return 0.5 * (reduced_full(kp.t, -x, pole_guard) - reduced_full(kp.t, x, pole_guard));
    }
    throw DomainError("reduced_kernel: unknown part");
}

double reduced_kernel_t1_trig(double x) {
    const double a = kPi * x / 2.0;
    return -1.0 / x - 2.0 * x / (1.0 - x * x) + (kPi / 2.0) / std::tan(a) + (kPi / 2.0) * std::tan(a);
}

double t1_hilbert_kernel_closed(const KernelParam& kp, double x) {
    const double t = kp.t;
    return (kPi / 2.0) / std::tan(kPi * (x - t) / 2.0) - (kPi / 2.0) / std::tan(kPi * x / 2.0) - t / (x * (x - t));
}

double kappa_alpha(double alpha, double x, double pole_guard) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("kappa_alpha: alpha must lie in (0, 1]");
    const double d = (alpha - x) * (alpha + x);
    if (std::fabs(alpha - std::fabs(x)) < pole_guard) {
        throw PoleProximityError("kappa_alpha: |x| within the pole guard of alpha");
    }
    return alpha / d;
}

TaylorSeq taylor_kappa(const KernelParam& kp, int jmax, const specfun::PrecisionBudget& budget) {
    const double t = kp.t;
    if (!(t > 0.0 && t < 1.0)) throw DomainError("taylor_kappa: t must lie in (0, 1)");
    if (jmax < 1) throw DomainError("taylor_kappa: jmax must be >= 1");
    TaylorSeq seq;
    seq.t = t;
    for (int j = 0; j <= jmax; ++j) {
        const double s = 2.0 * j + 2.0;
        const specfun::SpecialValue z1 = specfun::hurwitz_zeta(s, 1.0, budget);
        const specfun::SpecialValue z2 = specfun::hurwitz_zeta(s, 2.0 - t / 2.0, budget);
        const specfun::SpecialValue z3 = specfun::hurwitz_zeta(s, 1.0 + t / 2.0, budget);
        const double p2 = std::ldexp(1.0, -(2 * j + 2));
        const double tp = std::pow(t, s);
        const double up = std::pow(2.0 - t, -s);
        const double bracket = 2.0 * z1.value - z2.value - z3.value;
        const double raw = tp - up + p2 * bracket;
        const double err = p2 * (2.0 * z1.error_bound + z2.error_bound + z3.error_bound) +
                           4.0 * kEps * (tp + up + p2 * (2.0 * z1.value + z2.value + z3.value));
        seq.raw.push_back(raw);
        seq.raw_error.push_back(err);
        seq.scaled.push_back(raw * std::pow(2.0 - t, s));
    }
    return seq;
}

double kappa0_closed_form(double t) {
    if (!(t > 0.0 && t < 1.0)) throw DomainError("kappa0_closed_form: t must lie in (0, 1)");
    const double s = std::sin(kPi * t / 2.0);
    return kPi * kPi / 12.0 + 1.0 / (t * t) - (kPi * kPi / 4.0) / (s * s) + t * t;
}

double taylor_kappa_polygamma(double t, int j) {
    if (!(t > 0.0 && t < 1.0)) throw DomainError("taylor_kappa_polygamma: t must lie in (0, 1)");
    const int m = 2 * j + 1;
    const double a = specfun::polygamma(m, 1.0).value;
    const double b = specfun::polygamma(m, 1.0 - t / 2.0).value;
    const double c = specfun::polygamma(m, 1.0 + t / 2.0).value;
    double fact = 1.0;
    for (int i = 2; i <= m; ++i) fact *= i;
    return std::pow(t, 2.0 * j + 2.0) + std::ldexp(1.0, -(2 * j + 2)) / fact * (2.0 * a - b - c);
}

// ---------------------------------------------------------------- Neumann decomposition

NeumannDecomposition::NeumannDecomposition(double t, int n_max, const NeumannOptions& opt) : t_(t), n_max_(n_max) {
    KernelParam{t}.validate();
    if (!(std::fabs(t) < 1.0)) throw DomainError("NeumannDecomposition: t must lie in the open interval (-1, 1)");
    if (n_max < 1 || n_max > 9) throw DomainError("NeumannDecomposition: n_max must lie in [1, 9]");
    const dynamics::MapParam one(1.0);
    const transfer::OperatorMode mode{transfer::OperatorKind::subtransfer};
    funcrep::KernelParams kp;
    kp.t = t;
    const transfer::IterateOptions io = iterate_options(opt);
    reduced_ = transfer::iterate_on_grid(mode, one, funcrep::FunctionRep::kernel(funcrep::KernelKind::k1_II, kp),
                                         n_max - 1, io);
    kernel_ = transfer::iterate_on_grid(mode, one, funcrep::FunctionRep::kernel(funcrep::KernelKind::K1_II, kp),
                                        n_max, io);
}

double NeumannDecomposition::partial_sum(int n, double x) const {
    if (n < 0 || n > n_max_) throw DomainError("partial_sum: n outside [0, n_max]");
    long double s = 0.0L;
    for (int j = 0; j < n; ++j) {
        s += (j == 0) ? reduced_kernel(Part::II, {t_}, x) : reduced_.value(j, x);
    }
    return static_cast<double>(s);
}

double NeumannDecomposition::remainder_form(int n, double x) const {
    if (n < 0 || n > n_max_) throw DomainError("remainder_form: n outside [0, n_max]");
    if (n == 0) return 0.0;
    return hilbert_kernel(Part::II, {t_}, x) - kernel_.value(n, x);
}

double NeumannDecomposition::bound(int n) const {
    if (n < 0 || n > n_max_) throw DomainError("bound: n outside [0, n_max]");
    if (n == 0) return 0.0;
    double b = 0.0;
    for (int j = 1; j < n; ++j) b += reduced_.reports[static_cast<std::size_t>(j)].accumulated_bound;
    b += kernel_.reports[static_cast<std::size_t>(n)].accumulated_bound;
    // pointwise rounding of the closed-form kernels
    b += 16.0 * kEps * (1.0 + n);
    return b;
}

double NeumannDecomposition::deviation(int n, std::span<const double> grid) const {
    double worst = 0.0;
    for (double x : grid) worst = std::max(worst, std::fabs(hilbert_kernel(Part::II, {t_}, x) - partial_sum(n, x)));
    return worst;
}

NeumannPoint neumann_partial(double t, int n, double x, int N) {
    if (n < 1 || n > 8) throw DomainError("neumann_partial: n must lie in [1, 8]");
    if (!(std::fabs(x) <= 0.9)) throw DomainError("neumann_partial: x must lie in I_0.9");
    NeumannOptions opt;
    opt.N = N;
    NeumannDecomposition d(t, n, opt);
    return {d.partial_sum(n, x), d.remainder_form(n, x), d.bound(n)};
}

// ---------------------------------------------------------------- summand bounds

SummandVerdict summand_bounds_check(double t, int j_max, std::span<const double> grid, const NeumannOptions& opt) {
    if (!(t > 0.0 && t < 1.0)) throw DomainError("summand_bounds_check: t must lie in (0, 1)");
    if (j_max < 0 || j_max > 6) throw DomainError("summand_bounds_check: j_max must lie in [0, 6]");
    for (double x : grid) {
        if (!(x >= 0.01 && x <= 0.99)) throw DomainError("summand_bounds_check: grid must lie in [0.01, 0.99]");
    }
    const dynamics::MapParam one(1.0);
    const transfer::OperatorMode mode{transfer::OperatorKind::subtransfer};
    const transfer::IterateOptions io = iterate_options(opt);
    funcrep::KernelParams kt, k1;
    kt.t = t;
    k1.t = 1.0;
    const transfer::Trajectory a =
        transfer::iterate_on_grid(mode, one, funcrep::FunctionRep::kernel(funcrep::KernelKind::k1_II, kt), j_max, io);
    const transfer::Trajectory b =
        transfer::iterate_on_grid(mode, one, funcrep::FunctionRep::kernel(funcrep::KernelKind::k1_II, k1), j_max, io);

    SummandVerdict v;
    v.j_max = j_max;
    v.min_positive_margin = std::numeric_limits<double>::infinity();
    v.min_domination_margin = std::numeric_limits<double>::infinity();
    const double round = 16.0 * kEps;
    for (int j = 0; j <= j_max; ++j) {
        const double ea = (j == 0) ? round : a.reports[static_cast<std::size_t>(j)].accumulated_bound;
        const double eb = (j == 0) ? round : b.reports[static_cast<std::size_t>(j)].accumulated_bound;
        v.max_bound = std::max(v.max_bound, std::max(ea, eb));
        for (double x : grid) {
            const double va = (j == 0) ? reduced_kernel(Part::II, {t}, x) : a.value(j, x);
            const double vb = (j == 0) ? reduced_kernel(Part::II, {1.0}, x) : b.value(j, x);
            const double pos = va - ea;
            const double dom = vb - va - ea - eb;
            v.min_positive_margin = std::min(v.min_positive_margin, pos);
            v.min_domination_margin = std::min(v.min_domination_margin, dom);
            if (!(pos > 0.0)) v.positive = false;
            if (!(dom > 0.0)) v.dominated = false;
        }
    }
    std::vector<double> xs(grid.begin(), grid.end());
    std::sort(xs.begin(), xs.end());
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const double d0 = reduced_kernel(Part::II, {1.0}, xs[i - 1]) - reduced_kernel(Part::II, {t}, xs[i - 1]);
        const double d1 = reduced_kernel(Part::II, {1.0}, xs[i]) - reduced_kernel(Part::II, {t}, xs[i]);
        if (!(d1 - d0 > round)) v.difference_increasing = false;
    }
    return v;
}

} // namespace gausslab::kernels
