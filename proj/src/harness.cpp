#include "gausslab/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <limits>
#include <list>
#include <random>
#include <sstream>

#include "json.hpp"

#include "gausslab/dynamics.hpp"
#include "gausslab/error.hpp"
#include "gausslab/funcrep.hpp"
#include "gausslab/hilbert.hpp"
#include "gausslab/kernels.hpp"
#include "gausslab/specfun.hpp"
#include "gausslab/totpos.hpp"
#include "gausslab/transfer.hpp"

namespace gausslab::harness {

namespace {

const double kPi = std::acos(-1.0);
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string short_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

ParamSchema real_p(std::string key, std::string def, double lo, double hi, std::string help) {
    return {std::move(key), ParamType::real, std::move(def), lo, hi, std::move(help)};
}
ParamSchema int_p(std::string key, std::string def, double lo, double hi, std::string help) {
    return {std::move(key), ParamType::integer, std::move(def), lo, hi, std::move(help)};
}
ParamSchema list_p(std::string key, std::string def, double lo, double hi, std::string help) {
    return {std::move(key), ParamType::real_list, std::move(def), lo, hi, std::move(help)};
}

std::vector<double> grid(double lo, double hi, int points) {
    std::vector<double> g(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (points - 1);
    return g;
}

// Evaluates fn(i) for i < n, optionally on separate threads; results keep index order.
template <class F>
auto map_points(std::size_t n, F fn, bool parallel) {
    using R = decltype(fn(std::size_t{0}));
    std::vector<R> out;
    out.reserve(n);
    if (!parallel) {
        for (std::size_t i = 0; i < n; ++i) out.push_back(fn(i));
        return out;
    }
    std::vector<std::future<R>> fut;
    for (std::size_t i = 0; i < n; ++i) fut.push_back(std::async(std::launch::async, fn, i));
    for (auto& f : fut) out.push_back(f.get());
    return out;
}

class Writer {
public:
    Writer(const ExperimentSpec& spec, ExperimentResult& res) : spec_(spec), res_(res) {}

    // Opens a CSV file under output_path, or a discarding stream when unset.
    std::ostream& open(const std::string& file) {
        streams_.emplace_back();
        if (spec_.output_path.empty()) {
            streams_.back().setstate(std::ios::badbit);
            return streams_.back();
        }
        const auto path = spec_.output_path / file;
        streams_.back().open(path);
        if (!streams_.back()) throw ConfigError("cannot write " + path.string());
        res_.files.push_back(path);
        return streams_.back();
    }

private:
    const ExperimentSpec& spec_;
    ExperimentResult& res_;
    std::list<std::ofstream> streams_; // stable references
};

struct Ctx {
    const ExperimentSpec& spec;
    const Params& params;
    ExperimentResult& res;
    Writer& out;

    void row(const std::string& echo, const std::string& metric, double value, double bound, double threshold,
             Relation rel) {
        ReportRow r;
        r.experiment = spec.name;
        r.param_echo = echo.empty() ? params.echo() : echo;
        r.metric = metric;
        r.value = value;
        r.certified_bound = bound;
        r.threshold = threshold;
        r.relation = rel;
        r.pass = ReportRow::derive_pass(value, bound, threshold, rel);
        res.rows.push_back(std::move(r));
    }
};

// ---------------------------------------------------------------- experiments

void run_figure1(Ctx& c) {
    const double t = c.params.real("t");
    const int n_max = c.params.integer("n_max");
    const int points = c.params.integer("points");
    kernels::NeumannOptions opt;
    opt.N = c.params.integer("N");
    const kernels::NeumannDecomposition d(t, n_max + 1, opt);
    const std::vector<double> xs = grid(-0.9, 0.9, points);

    std::ostream& f = c.out.open("figure1.csv");
    f << "x,K1II";
    for (int n = 0; n <= n_max; ++n) f << ",partial_sum_N" << n;
    f << '\n';
    for (double x : xs) {
        f << num(x) << ',' << num(kernels::hilbert_kernel(kernels::Part::II, {t}, x));
        for (int n = 0; n <= n_max; ++n) f << ',' << num(d.partial_sum(n + 1, x));
        f << '\n';
    }

    std::ostream& dev = c.out.open("figure1_deviation.csv");
    dev << "N,deviation,residual,bound\n";
    std::vector<double> devs;
    for (int n = 0; n <= n_max; ++n) {
        const int terms = n + 1;
        devs.push_back(d.deviation(terms, xs));
        double resid = 0.0;
        for (double x : xs) resid = std::max(resid, std::fabs(d.partial_sum(terms, x) - d.remainder_form(terms, x)));
        const double bound = d.bound(terms);
        dev << n << ',' << num(devs.back()) << ',' << num(resid) << ',' << num(bound) << '\n';
        const std::string echo = "t=" + short_num(t) + ";n=" + std::to_string(terms);
        c.row(echo, "neumann_residual", resid, bound, 1e-6, Relation::at_most);
        c.row(echo, "neumann_residual_vs_bound", resid, bound, 0.0, Relation::within_bound);
    }
    double worst_step = -kInf;
    for (std::size_t i = 1; i < devs.size(); ++i) worst_step = std::max(worst_step, devs[i] - devs[i - 1]);
    if (devs.size() > 1) c.row("", "deviation_max_increment", worst_step, 0.0, 0.0, Relation::less_than);
    c.row("", "deviation_final_over_initial", devs.back() / devs.front(), 0.0, 0.2, Relation::at_most);
}

void run_decay(Ctx& c) {
    const dynamics::MapParam p(c.params.real("beta"));
    const double beta = p.beta();
    transfer::IterateOptions io;
    io.eta = 1.0;
    io.order = c.params.integer("order");
    io.N = c.params.integer("N");
    const int n_steps = c.params.integer("n_steps");
    const transfer::Trajectory tr = transfer::iterate_on_grid({transfer::OperatorKind::subtransfer}, p,
                                                              funcrep::FunctionRep::constant(1.0), n_steps, io);
    tr.write_csv(c.out.open("decay.csv"));
    double worst_ratio = 0.0;
    for (std::size_t i = 1; i < tr.reports.size(); ++i) {
        const double a = tr.reports[i - 1].l1_norm, b = tr.reports[i].l1_norm;
        worst_ratio = std::max(worst_ratio, b / a);
    }
    c.row("", "l1_max_consecutive_ratio", worst_ratio, 0.0, 1.0, Relation::less_than);
    c.row("", "l1_final_over_initial", tr.reports.back().l1_norm / tr.reports.front().l1_norm, 0.0, 0.2,
          Relation::at_most);

    // iterates of Q_beta applied to three densities on I_1
    const int q_steps = c.params.integer("q_steps");
    const std::vector<std::pair<std::string, funcrep::Sampler>> dens = {
        {"uniform", [](double) { return 0.5; }},
        {"ramp", [](double t) { return 0.5 * (1.0 + t); }},
        {"parabola", [](double t) { return 0.75 * (1.0 - t * t); }},
    };
    std::ostream& q = c.out.open("q_decay.csv");
    q << "density,n,sup,accumulated_bound,bound\n";
    const std::vector<double> xs = grid(-0.9, 0.9, 1801);
    auto results = map_points(
        dens.size(),
        [&](std::size_t i) {
            const funcrep::Sampler f = dens[i].second;
            const double l1 = funcrep::l1_norm(f, 1.0).value;
            const funcrep::Sampler qf = [&p, f](double x) { return transfer::apply_Q(p, f, x); };
            transfer::IterateOptions qo = io;
            qo.eta = 0.9;
            qo.clip_input_to_required = true;
            return std::make_pair(l1, transfer::iterate_on_grid({transfer::OperatorKind::subtransfer}, p, qf,
                                                                 q_steps, qo));
        },
        c.spec.parallel);
    for (std::size_t i = 0; i < dens.size(); ++i) {
        const double l1 = results[i].first;
        const transfer::Trajectory& t = results[i].second;
        double worst = -kInf;
        for (int n = 2; n <= q_steps; ++n) {
            double sup = 0.0;
            for (double x : xs) sup = std::max(sup, std::fabs(t.value(n, x)));
            const double acc = t.reports[static_cast<std::size_t>(n)].accumulated_bound;
            const double bound = 4.0 * std::pow(beta, n - 1) / (kPi * (1.0 - beta)) * l1;
            q << dens[i].first << ',' << n << ',' << num(sup) << ',' << num(acc) << ',' << num(bound) << '\n';
            worst = std::max(worst, (sup + acc) / bound);
        }
        c.row("density=" + dens[i].first, "q_sup_over_bound", worst, 0.0, 1.0, Relation::at_most);
    }
}

void run_lambda_scan(Ctx& c) {
    const std::vector<double> taus = c.params.list("taus");
    const int s_min = c.params.integer("s_min"), s_max = c.params.integer("s_max");
    const double h = c.params.real("h");
    std::ostream& f = c.out.open("lambda_scan.csv");
    f << "tau,s,lambda,slope,slope_bound\n";
    double min_val = kInf, max_inc = -kInf, max_ratio = -kInf;
    for (double tau : taus) {
        double prev = kInf;
        for (int s = s_min; s <= s_max; ++s) {
            const double v = specfun::lambda_tau(tau, s).value;
            auto L = [tau](double u) { return specfun::lambda_tau(tau, u).value; };
            // one-sided second order stencil where s - h leaves the domain s >= 3
            const double slope = (s - h < 3.0) ? (-3.0 * v + 4.0 * L(s + h) - L(s + 2.0 * h)) / (2.0 * h)
                                               : (L(s + h) - L(s - h)) / (2.0 * h);
            const double sb = -(143.0 / 810.0) * tau * tau * std::pow(1.0 - tau, s);
            f << num(tau) << ',' << s << ',' << num(v) << ',' << num(slope) << ',' << num(sb) << '\n';
            min_val = std::min(min_val, v);
            if (prev != kInf) max_inc = std::max(max_inc, v - prev);
            prev = v;
            max_ratio = std::max(max_ratio, slope / -sb);
        }
    }
    c.row("", "lambda_min", min_val, 0.0, 0.0, Relation::greater_than);
    c.row("", "lambda_max_increment", max_inc, 0.0, 0.0, Relation::less_than);
    // slope <= -0.9 (143/810) tau^2 (1-tau)^s
    c.row("", "slope_over_bound_max", max_ratio, 0.0, -0.9, Relation::at_most);
}

void run_totpos_scan(Ctx& c) {
    const int size = c.params.integer("size");
    const int max_order = c.params.integer("max_order");
    const totpos::MatrixSection b = totpos::b_section(size, totpos::PrecisionMode::extended);
    const totpos::MinorScan scan = totpos::minors_positive(b, max_order, totpos::PrecisionMode::extended, true);
    totpos::write_minor_csv(c.out.open("totpos_scan.csv"), scan);
    c.row("", "b_minor_worst_margin", scan.worst_margin, 0.0, 0.0, Relation::greater_than);
    c.row("", "b_minor_count", static_cast<double>(scan.count), 0.0, 0.0, Relation::greater_than);

    const int hmax = c.params.integer("hankel_max");
    std::ostream& ch = c.out.open("cholesky.csv");
    ch << "shift,size,ok,min_pivot,min_pivot_margin\n";
    double worst = kInf;
    for (int shift = 0; shift <= 1; ++shift) {
        for (int n = 1; n <= hmax; ++n) {
            const totpos::CholeskyResult r = totpos::cholesky_check(totpos::hankel_section(n, shift));
            ch << shift << ',' << n << ',' << (r.ok ? 1 : 0) << ',' << num(r.min_pivot) << ','
               << num(r.min_pivot_margin) << '\n';
            worst = std::min(worst, r.ok ? r.min_pivot_margin : -kInf);
        }
    }
    c.row("", "hankel_cholesky_worst_margin", worst, 0.0, 0.0, Relation::greater_than);

    // random sequences with one strong sign change, + block then - block
    const int seeds = c.params.integer("vd_sequences");
    const int N = c.params.integer("vd_N");
    std::mt19937 rng(static_cast<std::uint32_t>(c.params.integer("seed")));
    std::ostream& vd = c.out.open("variation_diminishing.csv");
    vd << "sequence,length,split,s_plus,pattern,pass\n";
    int failures = 0;
    for (int i = 0; i < seeds; ++i) {
        const int len = std::uniform_int_distribution<int>(2, 12)(rng);
        const int split = std::uniform_int_distribution<int>(1, len - 1)(rng);
        std::uniform_real_distribution<double> mag(0.05, 1.0);
        std::vector<double> a(static_cast<std::size_t>(len));
        for (int j = 0; j < len; ++j) a[static_cast<std::size_t>(j)] = (j < split ? 1.0 : -1.0) * mag(rng);
        const totpos::VDResult r = totpos::variation_diminishing_F(a, N);
        vd << i << ',' << len << ',' << split << ',' << r.verdict.s_plus << ',' << r.verdict.pattern << ','
           << (r.pass ? 1 : 0) << '\n';
        if (!r.pass) ++failures;
    }
    c.row("", "vd_failures", failures, 0.0, 0.0, Relation::at_most);
}

void run_normexp(Ctx& c) {
    const std::vector<double> gammas = c.params.list("gammas");
    const int N = c.params.integer("N");
    const auto gaps = map_points(
        gammas.size(),
        [&](std::size_t i) {
            hilbert::GammaProfile prof;
            prof.gamma = gammas[i];
            return hilbert::norm_gap(prof, N);
        },
        c.spec.parallel);
    std::ostream& f = c.out.open("normexp.csv");
    f << "gamma,D,D_minus_gamma2,predicted_gamma4_over_32,tail_estimate\n";
    for (const hilbert::NormGap& g : gaps) {
        f << num(g.gamma) << ',' << num(g.D) << ',' << num(g.D_minus_gamma2) << ',' << num(g.predicted) << ','
          << num(g.tail_estimate) << '\n';
        const std::string echo = "gamma=" + short_num(g.gamma);
        c.row(echo, "D_minus_gamma2", g.D_minus_gamma2, g.tail_estimate, 0.0, Relation::greater_than);
        const double g6 = std::pow(g.gamma, 6);
        c.row(echo, "gap_minus_gamma4_over_32", std::fabs(g.D_minus_gamma2 - g.predicted), g.tail_estimate, 10.0 * g6,
              Relation::at_most);
    }
}

void run_fixedpoint(Ctx& c) {
    const dynamics::MapParam p(c.params.real("beta"));
    const double beta = p.beta();
    const double x1 = 1.0 + std::sqrt(1.0 - beta), x2 = -1.0 + std::sqrt(1.0 - beta);
    const funcrep::FunctionRep f(funcrep::PoleSum{{{1.0, x1}, {-1.0, x2}}, false});
    const int points = c.params.integer("points");
    const int Np = c.params.integer("N_pole");
    std::ostream& out = c.out.open("fixedpoint.csv");
    out << "x,f,closed_form,truncated,tail_bound\n";
    double closed = 0.0, trunc_excess = -kInf, trunc_resid = 0.0, trunc_bound = 0.0;
    for (double x : grid(-0.9, 0.9, points)) {
        if (std::fabs(x - x2) < 1e-2) continue;
        const double fx = funcrep::evaluate(f, x);
        const double cf = transfer::apply_pole_closed(p, x1, x) - transfer::apply_pole_closed(p, x2, x);
        const transfer::TruncatedApplication ta =
            transfer::apply_truncated({transfer::OperatorKind::subtransfer}, p, f, x, Np);
        out << num(x) << ',' << num(fx) << ',' << num(cf) << ',' << num(ta.value) << ',' << num(ta.tail_bound) << '\n';
        closed = std::max(closed, std::fabs(cf - fx) / std::max(1.0, std::fabs(fx)));
        const double r = std::fabs(ta.value - fx);
        trunc_resid = std::max(trunc_resid, r);
        trunc_bound = std::max(trunc_bound, ta.tail_bound);
        trunc_excess = std::max(trunc_excess, r - ta.tail_bound);
    }
    c.row("", "pole_pair_closed_form_residual", closed, 0.0, 1e-12, Relation::at_most);
    c.row("", "pole_pair_truncated_excess_over_tail", trunc_excess, 0.0, 0.0, Relation::at_most);
    c.row("", "pole_pair_truncated_residual", trunc_resid, trunc_bound, 0.0, Relation::within_bound);

    // T_1 kappa_1 = kappa_1 and T_beta kappa_beta = kappa_1
    const int Nk = c.params.integer("N_kappa");
    const std::vector<double> xs = grid(-0.9, 0.9, 201);
    auto kappa_residual = [&](double b) {
        const dynamics::MapParam q(b);
        funcrep::KernelParams kp;
        kp.alpha = b;
        const funcrep::FunctionRep kb = funcrep::FunctionRep::kernel(funcrep::KernelKind::kappa, kp);
        double worst = 0.0;
        for (double x : xs) {
            const double k1 = 1.0 / (1.0 - x * x);
            const transfer::TruncatedApplication ta = transfer::apply_truncated({transfer::OperatorKind::subtransfer}, q, kb, x, Nk);
            worst = std::max(worst, std::fabs(ta.value - k1) / k1);
        }
        return worst;
    };
    c.row("beta=1", "kappa_invariance_rel_residual", kappa_residual(1.0), 0.0, 1e-6, Relation::at_most);
    const std::vector<double> sub = c.params.list("sub_betas");
    const int n_sub = c.params.integer("n_sub");
    const auto subs = map_points(
        sub.size(),
        [&](std::size_t i) {
            const double b = sub[i];
            const double resid = kappa_residual(b);
            transfer::IterateOptions io;
            io.eta = 0.9;
            const funcrep::FunctionRep k1 = funcrep::FunctionRep::kernel(funcrep::KernelKind::kappa);
            const transfer::Trajectory t =
                transfer::iterate_on_grid({transfer::OperatorKind::subtransfer}, dynamics::MapParam(b), k1, n_sub, io);
            double margin = kInf;
            for (int n = 1; n <= n_sub; ++n) {
                const double acc = t.reports[static_cast<std::size_t>(n)].accumulated_bound;
                for (double x : xs) {
                    margin = std::min(margin, std::pow(b, n) / (1.0 - x * x) - t.value(n, x) - acc);
                }
            }
            return std::make_pair(resid, margin);
        },
        c.spec.parallel);
    for (std::size_t i = 0; i < sub.size(); ++i) {
        const std::string echo = "beta=" + short_num(sub[i]);
        c.row(echo, "kappa_beta_rel_residual", subs[i].first, 0.0, 1e-6, Relation::at_most);
        c.row(echo, "subinvariance_min_margin", subs[i].second, 0.0, 0.0, Relation::greater_than);
    }
}

void run_kernel_bounds(Ctx& c) {
    const std::vector<double> ts = c.params.list("ts");
    const int j_max = c.params.integer("j_max");
    const int points = c.params.integer("points");
    const std::vector<double> xs = grid(0.01, 0.99, points);
    kernels::NeumannOptions opt;
    opt.N = c.params.integer("N");
    const auto verdicts = map_points(
        ts.size(), [&](std::size_t i) { return kernels::summand_bounds_check(ts[i], j_max, xs, opt); },
        c.spec.parallel);
    std::ostream& f = c.out.open("kernel_bounds.csv");
    f << "t,j_max,min_positive_margin,min_domination_margin,max_bound,difference_increasing\n";
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const kernels::SummandVerdict& v = verdicts[i];
        f << num(ts[i]) << ',' << v.j_max << ',' << num(v.min_positive_margin) << ',' << num(v.min_domination_margin)
          << ',' << num(v.max_bound) << ',' << (v.difference_increasing ? 1 : 0) << '\n';
        const std::string echo = "t=" + short_num(ts[i]);
        c.row(echo, "min_positive_margin", v.min_positive_margin, 0.0, 0.0, Relation::greater_than);
        c.row(echo, "min_domination_margin", v.min_domination_margin, 0.0, 0.0, Relation::greater_than);
        c.row(echo, "difference_increasing", v.difference_increasing ? 1.0 : 0.0, 0.0, 0.5, Relation::greater_than);
    }

    const std::vector<double> tts = c.params.list("taylor_ts");
    const int jmax = c.params.integer("jmax");
    std::ostream& tf = c.out.open("taylor.csv");
    tf << "t,j,raw,raw_error,scaled\n";
    for (double t : tts) {
        const kernels::TaylorSeq seq = kernels::taylor_kappa({t}, jmax);
        for (int j = 0; j <= jmax; ++j) {
            const auto J = static_cast<std::size_t>(j);
            tf << num(t) << ',' << j << ',' << num(seq.raw[J]) << ',' << num(seq.raw_error[J]) << ','
               << num(seq.scaled[J]) << '\n';
        }
        double inc = -kInf;
        for (int j = 2; j <= jmax; ++j) {
            inc = std::max(inc, seq.scaled[static_cast<std::size_t>(j)] - seq.scaled[static_cast<std::size_t>(j - 1)]);
        }
        const std::string echo = "t=" + short_num(t);
        c.row(echo, "scaled_max_increment", inc, 0.0, 0.0, Relation::less_than);
        c.row(echo, "scaled_last_plus_one", std::fabs(seq.scaled.back() + 1.0), 0.0, 1e-3, Relation::at_most);
        c.row(echo, "kappa0_closed_form_diff", std::fabs(seq.raw[0] - kernels::kappa0_closed_form(t)), seq.raw_error[0],
              1e-10, Relation::at_most);
    }
}

void run_commutator(Ctx& c) {
    const std::vector<double> betas = c.params.list("betas");
    const std::vector<double> xis = c.params.list("xis");
    const int points = c.params.integer("points");
    const double guard = c.params.real("guard");
    std::vector<std::pair<double, double>> pts;
    for (double b : betas)
        for (double xi : xis) pts.emplace_back(b, xi);
    const auto res = map_points(
        pts.size(),
        [&](std::size_t i) {
            const dynamics::MapParam p(pts[i].first);
            const std::vector<double> g = transfer::commutator_grid(p, pts[i].second, points, guard);
            return transfer::commutator_check(p, pts[i].second, g);
        },
        c.spec.parallel);
    std::ostream& f = c.out.open("commutator.csv");
    f << "beta,xi,max_residual\n";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        f << num(pts[i].first) << ',' << num(pts[i].second) << ',' << num(res[i]) << '\n';
        c.row("beta=" + short_num(pts[i].first) + ";xi=" + short_num(pts[i].second), "max_residual", res[i], 0.0, 1e-9,
              Relation::at_most);
    }
}

void run_wandering(Ctx& c) {
    const dynamics::MapParam p(c.params.real("beta"));
    const int n_max = c.params.integer("N_max");
    const int samples = c.params.integer("samples");
    std::ostream& f = c.out.open("wandering.csv");
    f << "N,measure\n";
    double prev = kInf, inc = -kInf;
    for (int N = 1; N <= n_max; ++N) {
        const double m = dynamics::wandering_measure(p, N, samples);
        f << N << ',' << num(m) << '\n';
        if (prev != kInf) inc = std::max(inc, m - prev);
        prev = m;
    }
    c.row("", "measure_max_increment", inc, 0.0, 0.0, Relation::less_than);
}

void run_doubling(Ctx& c) {
    const int M = c.params.integer("M");
    const int n_max = c.params.integer("n_max");
    std::mt19937 rng(static_cast<std::uint32_t>(c.params.integer("seed")));
    std::normal_distribution<double> g;
    std::vector<std::complex<double>> v(static_cast<std::size_t>(2 * M + 1));
    for (auto& z : v) z = {g(rng), g(rng)};
    const dynamics::FourierVector coeffs(M, v);
    std::ostream& f = c.out.open("doubling.csv");
    f << "n,mismatches,composition_mismatches\n";
    int bad = 0;
    dynamics::FourierVector step = coeffs;
    for (int n = 1; n <= n_max; ++n) {
        const dynamics::FourierVector d = dynamics::doubling_decimate(coeffs, n);
        step = dynamics::doubling_decimate(step, 1);
        int mism = 0;
        for (int k = -M; k <= M; ++k) {
            const long long idx = static_cast<long long>(k) << n;
            const std::complex<double> expect = (std::llabs(idx) <= M) ? coeffs(static_cast<int>(idx)) : 0.0;
            if (d(k) != expect) ++mism;
        }
        const int comp = (d == step) ? 0 : 1;
        f << n << ',' << mism << ',' << comp << '\n';
        bad += mism + comp;
    }
    c.row("", "index_map_mismatches", bad, 0.0, 0.0, Relation::at_most);
    dynamics::FourierVector one = dynamics::FourierVector::zeros(M);
    one.set(0, 1.0);
    int moved = 0;
    for (int n = 1; n <= n_max; ++n) moved += dynamics::doubling_decimate(one, n) == one ? 0 : 1;
    c.row("", "constant_not_invariant", moved, 0.0, 0.0, Relation::at_most);
}

using Runner = void (*)(Ctx&);

Runner runner_for(const std::string& name) {
    if (name == "figure1") return run_figure1;
    if (name == "decay") return run_decay;
    if (name == "lambda-scan") return run_lambda_scan;
    if (name == "totpos-scan") return run_totpos_scan;
    if (name == "normexp") return run_normexp;
    if (name == "fixedpoint") return run_fixedpoint;
    if (name == "kernel-bounds") return run_kernel_bounds;
    if (name == "commutator") return run_commutator;
    if (name == "wandering") return run_wandering;
    if (name == "doubling") return run_doubling;
    throw ConfigError("unknown experiment: " + name);
}

std::vector<double> parse_numbers(const std::string& key, const std::string& text, bool list) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b == std::string::npos) throw ConfigError("parameter " + key + ": empty entry");
        item = item.substr(b, e - b + 1);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw ConfigError("parameter " + key + ": not a number: " + item);
        }
        if (used != item.size() || !std::isfinite(v)) throw ConfigError("parameter " + key + ": not a number: " + item);
        out.push_back(v);
    }
    if (out.empty()) throw ConfigError("parameter " + key + ": no value");
    if (!list && out.size() != 1) throw ConfigError("parameter " + key + ": expects a single value");
    return out;
}

} // namespace

// ---------------------------------------------------------------- schemas

const std::vector<ExperimentSchema>& experiment_schemas() {
    static const std::vector<ExperimentSchema> schemas = {
        {"figure1",
         "Neumann partial sums of the odd reduced kernel against K1^II",
         {real_p("t", "0.5", -0.99, 0.99, "kernel parameter"), int_p("n_max", "5", 0, 8, "largest N in the partial sums"),
          int_p("points", "181", 11, 4001, "x grid on [-0.9, 0.9]"), int_p("N", "1000", 100, 100000, "truncation order")}},
        {"decay",
         "L1 decay of T_beta^n 1 and sup decay of T_beta^n Q_beta f",
         {real_p("beta", "0.5", 0.05, 0.95, "map parameter"), int_p("n_steps", "12", 1, 40, "iterations of f0 = 1"),
          int_p("q_steps", "8", 2, 16, "iterations of Q_beta f"), int_p("order", "256", 32, 2048, "Chebyshev order"),
          int_p("N", "1000", 100, 100000, "truncation order")}},
        {"lambda-scan",
         "positivity, decrease and slope bound of Lambda_tau(s)",
         {list_p("taus", "0.05,0.1,0.15,0.2,0.25,0.3,0.35,0.4,0.45,0.5", 1e-6, 0.5, "tau values"),
          int_p("s_min", "3", 3, 200, "first s"), int_p("s_max", "30", 4, 200, "last s"),
          real_p("h", "0.001", 1e-6, 0.1, "central difference step")}},
        {"totpos-scan",
         "minors of B, Hankel factorizations, variation diminishing runs",
         {int_p("size", "7", 1, 10, "B section size"), int_p("max_order", "5", 1, 7, "largest minor order"),
          int_p("hankel_max", "6", 1, 8, "largest Hankel section"),
          int_p("vd_sequences", "100", 0, 10000, "random one-change sequences"), int_p("vd_N", "12", 0, 24, "N in F_{k,N}"),
          int_p("seed", "20240601", 0, 4294967295.0, "generator seed")}},
        {"normexp",
         "periodized Hilbert transform gap D(gamma) - gamma^2",
         {list_p("gammas", "0.02,0.05,0.1,0.2", 1e-4, 0.2, "gamma values"),
          int_p("N", "1000", 10, 1000000, "surrogate x = gamma + 2N")}},
        {"fixedpoint",
         "telescoping pole pair and invariance of kappa",
         {real_p("beta", "0.5", 0.05, 0.95, "map parameter of the pole pair"),
          int_p("points", "201", 11, 4001, "x grid on [-0.9, 0.9]"), int_p("N_pole", "1000", 10, 1000000, "truncation order"),
          int_p("N_kappa", "10000", 10, 1000000, "truncation order for kappa"),
          list_p("sub_betas", "0.3,0.7", 0.05, 0.95, "subinvariance parameters"),
          int_p("n_sub", "6", 1, 12, "iterations for T^n kappa_1 <= beta^n kappa_1")}},
        {"kernel-bounds",
         "summand positivity and domination, Taylor coefficients",
         {list_p("ts", "0.1,0.3,0.5,0.7,0.9", 1e-3, 0.999, "kernel parameters"), int_p("j_max", "6", 0, 6, "iterations"),
          int_p("points", "99", 2, 1000, "grid on [0.01, 0.99]"), int_p("N", "1000", 100, 100000, "truncation order"),
          list_p("taylor_ts", "0.25,0.5,0.75", 1e-3, 0.999, "parameters for the Taylor sequence"),
          int_p("jmax", "20", 2, 60, "last Taylor index")}},
        {"commutator",
         "closed-form commutator identity on guarded grids",
         {list_p("betas", "0.7,1", 0.05, 1.0, "map parameters"), list_p("xis", "0.33,-0.51", -0.999, 0.999, "pole xi"),
          int_p("points", "101", 3, 10001, "grid points"), real_p("guard", "0.001", 1e-8, 0.1, "distance from singular points")}},
        {"wandering",
         "measure of the wandering sets E_{beta,N}",
         {real_p("beta", "0.5", 0.05, 0.95, "map parameter"), int_p("N_max", "8", 2, 40, "largest N"),
          int_p("samples", "200000", 1000, 100000000, "midpoint cells")}},
        {"doubling",
         "Fourier decimation of the doubling map",
         {int_p("M", "64", 1, 100000, "coefficients indexed -M..M"), int_p("n_max", "6", 1, 30, "largest n"),
          int_p("seed", "7", 0, 4294967295.0, "generator seed")}},
    };
    return schemas;
}

const ExperimentSchema& schema_for(const std::string& name) {
    for (const ExperimentSchema& s : experiment_schemas()) {
        if (s.name == name) return s;
    }
    throw ConfigError("unknown experiment: " + name);
}

std::map<std::string, std::string> read_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::map<std::string, std::string> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": expected key = value");
        }
        auto trim = [](std::string s) {
            const auto x = s.find_first_not_of(" \t\r");
            const auto y = s.find_last_not_of(" \t\r");
            return x == std::string::npos ? std::string() : s.substr(x, y - x + 1);
        };
        out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return out;
}

Params validate_params(const ExperimentSpec& spec) {
    const ExperimentSchema& schema = schema_for(spec.name);
    for (const auto& [k, v] : spec.params) {
        const bool known = std::any_of(schema.params.begin(), schema.params.end(),
                                       [&](const ParamSchema& p) { return p.key == k; });
        if (!known) throw ConfigError("experiment " + spec.name + " has no parameter " + k);
    }
    Params out;
    for (const ParamSchema& p : schema.params) {
        const auto it = spec.params.find(p.key);
        const std::string text = it == spec.params.end() ? p.default_value : it->second;
        out.raw_[p.key] = text;
        if (p.type == ParamType::text) continue;
        std::vector<double> vals = parse_numbers(p.key, text, p.type == ParamType::real_list);
        for (double v : vals) {
            if (p.type == ParamType::integer && v != std::floor(v)) {
                throw ConfigError("parameter " + p.key + " must be an integer");
            }
            if (v < p.min || v > p.max) {
                throw ConfigError("parameter " + p.key + " = " + short_num(v) + " outside [" + short_num(p.min) + ", " +
                                  short_num(p.max) + "]");
            }
        }
        out.numbers_[p.key] = std::move(vals);
    }
    return out;
}

double Params::real(const std::string& key) const { return numbers_.at(key).front(); }
int Params::integer(const std::string& key) const { return static_cast<int>(numbers_.at(key).front()); }
std::vector<double> Params::list(const std::string& key) const { return numbers_.at(key); }
const std::string& Params::text(const std::string& key) const { return raw_.at(key); }

std::string Params::echo() const {
    std::string out;
    for (const auto& [k, v] : raw_) {
        if (!out.empty()) out += ';';
        out += k + '=' + v;
    }
    return out;
}

bool ReportRow::derive_pass(double value, double certified_bound, double threshold, Relation relation) {
    switch (relation) {
    case Relation::at_most: return value <= threshold;
    case Relation::greater_than: return value > threshold;
    case Relation::less_than: return value < threshold;
    case Relation::within_bound: return value <= certified_bound;
    case Relation::above_bound: return value > certified_bound;
    }
    return false;
}

const char* relation_name(Relation r) {
    switch (r) {
    case Relation::at_most: return "at_most";
    case Relation::greater_than: return "greater_than";
    case Relation::less_than: return "less_than";
    case Relation::within_bound: return "within_bound";
    case Relation::above_bound: return "above_bound";
    }
    return "?";
}

bool ExperimentResult::all_pass() const {
    return std::all_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.pass; });
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
    const Runner run = runner_for(spec.name);
    const Params params = validate_params(spec);
    if (!spec.output_path.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(spec.output_path, ec);
        if (ec) throw ConfigError("cannot create output directory " + spec.output_path.string());
    }
    ExperimentResult res;
    res.experiment = spec.name;
    {
        Writer w(spec, res);
        Ctx ctx{spec, params, res, w};
        try {
            run(ctx);
        } catch (const ConfigError&) {
            throw;
        } catch (const Error& e) {
            throw Error(spec.name + ": " + e.what());
        }
    }
    if (spec.output_path.empty()) return res;

    const auto report = spec.output_path / "report.csv";
    std::ofstream rc(report);
    rc << "experiment,params,metric,value,certified_bound,threshold,relation,pass\n";
    for (const ReportRow& r : res.rows) {
        rc << r.experiment << ",\"" << r.param_echo << "\"," << r.metric << ',' << num(r.value) << ','
           << num(r.certified_bound) << ',' << num(r.threshold) << ',' << relation_name(r.relation) << ','
           << (r.pass ? 1 : 0) << '\n';
    }
    res.files.push_back(report);

    nlohmann::ordered_json j;
    j["experiment"] = spec.name;
    j["params"] = params.raw();
    j["pass"] = res.all_pass();
    nlohmann::ordered_json metrics = nlohmann::ordered_json::array();
    for (const ReportRow& r : res.rows) {
        nlohmann::ordered_json m;
        m["params"] = r.param_echo;
        m["metric"] = r.metric;
        m["value"] = std::isfinite(r.value) ? nlohmann::ordered_json(r.value) : nlohmann::ordered_json(num(r.value));
        m["certified_bound"] = r.certified_bound;
        m["threshold"] = r.threshold;
        m["relation"] = relation_name(r.relation);
        m["pass"] = r.pass;
        metrics.push_back(std::move(m));
    }
    j["metrics"] = std::move(metrics);
    const auto summary = spec.output_path / "summary.json";
    std::ofstream(summary) << j.dump(2) << '\n';
    res.files.push_back(summary);
    return res;
}

} // namespace gausslab::harness
