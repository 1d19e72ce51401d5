#include "gausslab/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "gausslab/error.hpp"
#include "gausslab/quadrature.hpp"

namespace gausslab::transfer {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
const double kPi = std::acos(-1.0);

// Value, first derivative and a bound on |f''| over [-h, h], read off a
// low-order Chebyshev interpolant.
struct LocalData {
    double f0 = 0.0;
    double df0 = 0.0;
    double m2 = 0.0;
    double sup = 0.0;
};

LocalData local_data(const Sampler& f, double h) {
    constexpr int kOrder = 12;
    ChebSeries c = funcrep::fit_chebyshev(f, kOrder, -h, h);
    LocalData d;
    d.f0 = c(0.0);
    d.df0 = c.derivative(0.0);
    double second = 0.0;
    for (std::size_t k = 2; k < c.coeffs.size(); ++k) {
        const double kk = static_cast<double>(k);
        second += std::fabs(c.coeffs[k]) * kk * kk * (kk * kk - 1.0) / 3.0;
    }
    // interpolation error enters the second derivative with the same weight
    // as the highest retained mode
    const double top = static_cast<double>(kOrder);
    second += c.truncation_error * top * top * (top * top - 1.0) / 3.0;
    d.m2 = second / (h * h);
    d.sup = c.sup_bound() + c.truncation_error;
    return d;
}

struct Partial {
    long double sum = 0.0L;
    long double abs_sum = 0.0L;
    long double weight = 0.0L; // sum of beta/u^2 over included terms
};

template <class F>
Partial sum_terms(OperatorKind kind, double beta, const F& f, double x, int N) {
    Partial out;
    for (int j = N; j >= 1; --j) {
        for (int sgn = -1; sgn <= 1; sgn += 2) {
            const double u = x + 2.0 * sgn * j;
            const double w = beta / (u * u);
            const double v = f(-beta / u);
            out.sum += static_cast<long double>(w) * v;
            out.abs_sum += std::fabs(w * v);
            out.weight += w;
        }
    }
    if (kind == OperatorKind::full_transfer && x != 0.0 && std::fabs(beta / x) < 1.0) {
        const double w = beta / (x * x);
        const double v = f(-beta / x);
        out.sum += static_cast<long double>(w) * v;
        out.abs_sum += std::fabs(w * v);
        out.weight += w;
    }
    return out;
}

double plain_tail_weight(double beta, int N) {
    // beta * sum_{|j|>N} (2|j|-1)^{-2} = beta * zeta(2, N + 1/2) / 2
    return beta * 0.5 * specfun::hurwitz_zeta(2.0, N + 0.5).value;
}

void check_x(OperatorKind kind, double x) {
    if (!std::isfinite(x)) throw DomainError("apply_truncated: non-finite x");
    if (kind == OperatorKind::complement_V) {
        if (!(std::fabs(x) > 1.0)) throw DomainError("apply_truncated: complement_V needs |x| > 1");
    } else if (!(x >= -1.0 && x <= 1.0)) {
        throw DomainError("apply_truncated: x must lie in [-1, 1]");
    }
}

TruncatedApplication apply_complement_v(const MapParam& p, const FunctionRep& v, double x, int N,
                                        double guard) {
    const auto supp = funcrep::support(v);
    if (!supp) throw DomainError("apply_truncated: complement_V needs a compactly supported input");
    const double beta = p.beta();
    const double y0 = -beta / x;
    const double lo = supp->first, hi = supp->second;
    // indices with y0 + 2j inside the support
    const long long jlo = static_cast<long long>(std::ceil((lo - y0) / 2.0));
    const long long jhi = static_cast<long long>(std::floor((hi - y0) / 2.0));
    if (jlo < -N || jhi > N) {
        throw DomainError("apply_truncated: N too small to cover the support of v");
    }
    long double sum = 0.0L;
    double abs_sum = 0.0;
    for (long long j = jlo; j <= jhi; ++j) {
        if (j == 0) continue;
        const double y = y0 + 2.0 * static_cast<double>(j);
        const double val = funcrep::evaluate(v, std::clamp(y, lo, hi), guard);
        sum += val;
        abs_sum += std::fabs(val);
    }
    const double pref = beta / (x * x);
    TruncatedApplication out;
    out.value = static_cast<double>(pref * sum);
    out.tail_bound = 4.0 * kEps * pref * abs_sum;
    out.order_N = N;
    return out;
}

TruncatedApplication apply_sampler(OperatorKind kind, const MapParam& p, const Sampler& f, double x, int N,
                                   const ApplyOptions& opt, const LocalData* precomputed,
                                   double* weight_out = nullptr) {
    if (N < 2) throw DomainError("apply_truncated: N must be >= 2");
    const double beta = p.beta();
    const Partial s = sum_terms(kind, beta, f, x, N);
    if (weight_out) *weight_out = static_cast<double>(s.weight);
    const double h = beta / (2.0 * N + 1.0);
    LocalData local = precomputed ? *precomputed : local_data(f, h);
    TruncatedApplication out;
    out.order_N = N;
    double value = static_cast<double>(s.sum);
    double bound = 0.0;
    if (opt.tail == TailCorrection::second_order) {
        const double s2 = specfun::lattice_tail_sum(2, x, N);
        const double s3 = specfun::lattice_tail_sum(3, x, N);
        const double s4 = specfun::lattice_tail_abs_sum(4, x, N);
        value += beta * local.f0 * s2 - beta * beta * local.df0 * s3;
        bound += 0.5 * local.m2 * beta * beta * beta * s4;
        bound += 4.0 * kEps * beta * (std::fabs(local.f0) * s2 + beta * std::fabs(local.df0 * s3));
    } else {
        bound += local.sup * plain_tail_weight(beta, N);
    }
    bound += 4.0 * kEps * static_cast<double>(s.abs_sum);
    out.value = value;
    out.tail_bound = bound;
    return out;
}

} // namespace

TruncatedApplication apply_truncated(OperatorMode mode, const MapParam& p, const FunctionRep& f, double x,
                                     int N, const ApplyOptions& opt) {
    check_x(mode.kind, x);
    if (N < 2) throw DomainError("apply_truncated: N must be >= 2");
    if (mode.kind == OperatorKind::complement_V) return apply_complement_v(p, f, x, N, opt.pole_guard);
    const double guard = opt.pole_guard;
    Sampler s = [&f, guard](double y) { return funcrep::evaluate(f, y, guard); };
    return apply_sampler(mode.kind, p, s, x, N, opt, nullptr);
}

TruncatedApplication apply_truncated(OperatorMode mode, const MapParam& p, const GridFunction& f, double x,
                                     int N, const ApplyOptions& opt) {
    return apply_truncated(mode, p, FunctionRep(f.to_cheb()), x, N, opt);
}

double apply_pole_closed(const MapParam& p, double pole, double x, double pole_guard) {
    if (pole == 0.0) throw DomainError("apply_pole_closed: pole at 0 is mapped to infinity");
    const double y = x + p.beta() / pole;
    return specfun::cot_half_pi_regular(y, pole_guard) - specfun::cot_half_pi_regular(x, pole_guard);
}

double apply_J(const MapParam& p, const FunctionRep& f, double x) {
    if (x == 0.0) throw DomainError("apply_J: x must be nonzero");
    return p.beta() / (x * x) * funcrep::evaluate(f, -p.beta() / x);
}

double apply_Q(const MapParam& p, const Sampler& f, double x) {
    const double beta = p.beta();
    if (!(std::fabs(x) < beta)) throw DomainError("apply_Q: requires |x| < beta");
    auto integrand = [&](double t) { return t / (beta + t * x) * f(t); };
    quadrature::QuadResult r = quadrature::integrate(integrand, -1.0, 1.0, 1e-15, 1e-14);
    return r.value / kPi;
}

double apply_Q(const MapParam& p, const FunctionRep& f, double x) {
    const auto supp = funcrep::support(f);
    const double beta = p.beta();
    if (!(std::fabs(x) < beta)) throw DomainError("apply_Q: requires |x| < beta");
    double lo = -1.0, hi = 1.0;
    if (supp) {
        lo = std::max(lo, supp->first);
        hi = std::min(hi, supp->second);
    }
    if (!(lo < hi)) return 0.0;
    auto integrand = [&](double t) { return t / (beta + t * x) * funcrep::evaluate(f, t); };
    quadrature::QuadResult r = quadrature::integrate(integrand, lo, hi, 1e-15, 1e-14);
    return r.value / kPi;
}

double required_input_radius(OperatorMode mode, const MapParam& p, double eta) {
    if (!(eta > 0.0 && eta <= 1.0)) throw DomainError("required_input_radius: eta must lie in (0, 1]");
    const double beta = p.beta();
    if (mode.kind == OperatorKind::full_transfer && eta > beta) return 1.0;
    return std::min(1.0, beta / (2.0 - eta));
}

void Trajectory::write_csv(std::ostream& out) const {
    out << "step,eta,l1_norm,weak_l1,max_tail_bound\n";
    char buf[256];
    for (const StepReport& r : reports) {
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g\n", r.step, r.eta, r.l1_norm, r.weak_l1,
                      r.max_tail_bound);
        out << buf;
    }
}

Trajectory iterate_on_grid(OperatorMode mode, const MapParam& p, const Sampler& f0, int n_steps,
                           const IterateOptions& opt) {
    if (mode.kind == OperatorKind::complement_V) {
        throw DomainError("iterate_on_grid: complement_V acts off I_1 and cannot be iterated");
    }
    if (n_steps < 0) throw DomainError("iterate_on_grid: n_steps must be >= 0");
    if (opt.N < 1000) throw DomainError("iterate_on_grid: N must be >= 1000");
    if (!(opt.eta > 0.0 && opt.eta <= 1.0)) throw DomainError("iterate_on_grid: eta must lie in (0, 1]");
    if (opt.order < 8 || opt.order > 4096) throw DomainError("iterate_on_grid: order must lie in [8, 4096]");

    std::vector<double> radius(static_cast<std::size_t>(n_steps) + 1, opt.eta);
    for (int k = n_steps - 1; k >= 0; --k) {
        radius[static_cast<std::size_t>(k)] =
            std::max(opt.eta, required_input_radius(mode, p, radius[static_cast<std::size_t>(k) + 1]));
    }
    if (opt.clip_input_to_required && n_steps >= 1) {
        radius[0] = required_input_radius(mode, p, radius[1]);
    }

    std::vector<double> lambdas = opt.lambda_grid;
    if (lambdas.empty()) {
        for (int i = 0; i <= 150; ++i) lambdas.push_back(std::pow(10.0, -12.0 + 0.1 * i));
    }

    Trajectory traj;
    auto record = [&](int step, GridFunction grid, ChebSeries fit, double max_tail, double acc) {
        StepReport r;
        r.step = step;
        r.radius = grid.eta;
        r.eta = std::min(opt.eta, grid.eta);
        const ChebSeries& c = fit;
        Sampler s = [&c](double y) { return c(y); };
        r.l1_norm = funcrep::l1_norm(s, r.eta).value;
        r.weak_l1 = funcrep::weak_l1_quasinorm(s, r.eta, lambdas);
        r.max_tail_bound = max_tail;
        r.accumulated_bound = acc;
        if (acc * 2.0 * r.eta > opt.max_error_fraction * r.l1_norm) {
            char buf[200];
            std::snprintf(buf, sizeof buf,
                          "iterate_on_grid: accumulated bound %.3g exceeds the allowed fraction of the L1 norm %.3g at step %d",
                          acc * 2.0 * r.eta, r.l1_norm, step);
            throw PrecisionError(buf);
        }
        traj.steps.push_back(std::move(grid));
        traj.fits.push_back(std::move(fit));
        traj.reports.push_back(r);
    };

    GridFunction g0 = GridFunction::sample(f0, opt.order, radius[0]);
    ChebSeries c0 = g0.to_cheb();
    double acc = c0.truncation_error;
    record(0, std::move(g0), std::move(c0), 0.0, acc);

    const double beta = p.beta();
    for (int k = 0; k < n_steps; ++k) {
        const ChebSeries& prev = traj.fits.back();
        Sampler fprev = [&prev](double y) { return prev(y); };
        const double h = beta / (2.0 * opt.N + 1.0);
        const LocalData local = local_data(fprev, h);
        const double tail_weight = plain_tail_weight(beta, opt.N);

        GridFunction next;
        next.eta = radius[static_cast<std::size_t>(k) + 1];
        next.nodes = funcrep::lobatto_nodes(opt.order, -next.eta, next.eta);
        next.values.resize(next.nodes.size());
        double max_tail = 0.0, max_gain = 0.0;
        for (std::size_t i = 0; i < next.nodes.size(); ++i) {
            const double x = next.nodes[i];
            double weight = 0.0;
            TruncatedApplication a = apply_sampler(mode.kind, p, fprev, x, opt.N, opt.apply, &local, &weight);
            next.values[i] = a.value;
            max_tail = std::max(max_tail, a.tail_bound);
            // the operator applied to the constant 1 bounds how earlier errors propagate
            max_gain = std::max(max_gain, weight + tail_weight);
        }
        ChebSeries fit = next.to_cheb();
        acc = max_gain * acc + max_tail + fit.truncation_error;
        record(k + 1, std::move(next), std::move(fit), max_tail, acc);
    }
    return traj;
}

Trajectory iterate_on_grid(OperatorMode mode, const MapParam& p, const FunctionRep& f0, int n_steps,
                           const IterateOptions& opt) {
    const double guard = opt.apply.pole_guard;
    Sampler s = [&f0, guard](double y) { return funcrep::evaluate(f0, y, guard); };
    return iterate_on_grid(mode, p, s, n_steps, opt);
}

Trajectory iterate_on_grid(OperatorMode mode, const MapParam& p, const GridFunction& f0, int n_steps,
                           const IterateOptions& opt) {
    f0.validate();
    const ChebSeries c = f0.to_cheb();
    Sampler s = [&c](double y) { return c(y); };
    return iterate_on_grid(mode, p, s, n_steps, opt);
}

EndpointCheck endpoint_check(const MapParam& p, const FunctionRep& f, int N) {
    TruncatedApplication a = apply_truncated(OperatorMode{OperatorKind::subtransfer}, p, f, 1.0, N);
    EndpointCheck out;
    out.lhs = a.value;
    out.rhs = p.beta() * funcrep::evaluate(f, p.beta());
    out.tail_bound = a.tail_bound;
    return out;
}

double commutator_check(const MapParam& p, double xi, std::span<const double> grid, double pole_guard) {
    if (xi == 0.0) throw DomainError("commutator_check: xi must be nonzero");
    const double beta = p.beta();
    const double r = dynamics::even_frac(-beta / xi);
    if (r == 0.0) throw DomainError("commutator_check: {-beta/xi}_2 vanishes");
    const double eta_prime = -beta / r;
    const double b_over_xi = beta / xi;
    double worst = 0.0;
    for (double x : grid) {
        if (std::fabs(x - r) < pole_guard || std::fabs(x + b_over_xi) < pole_guard) {
            throw PoleProximityError("commutator_check: grid point " + std::to_string(x) +
                                     " within the guard of a singular point");
        }
        const double lhs =
            (apply_pole_closed(p, xi, x, pole_guard) - apply_pole_closed(p, eta_prime, x, pole_guard)) / kPi;
        const double rhs = (1.0 / (x - r) - 1.0 / (x + b_over_xi)) / kPi;
        worst = std::max(worst, std::fabs(lhs - rhs));
    }
    return worst;
}

std::vector<double> commutator_grid(const MapParam& p, double xi, int points, double guard) {
    if (points < 2) throw DomainError("commutator_grid: need at least 2 points");
    if (xi == 0.0) throw DomainError("commutator_grid: xi must be nonzero");
    const double beta = p.beta();
    const double r = dynamics::even_frac(-beta / xi);
    const double s = -beta / xi;
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        double x = -1.0 + 2.0 * i / (points - 1);
        for (double sing : {r, s}) {
            if (std::fabs(x - sing) < guard) {
                // move to the side that stays inside [-1, 1]
                x = (sing + guard <= 1.0) ? sing + guard : sing - guard;
            }
        }
        grid.push_back(x);
    }
    return grid;
}

} // namespace gausslab::transfer
