#include "gausslab/funcrep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "gausslab/error.hpp"
#include "gausslab/hilbert.hpp"
#include "gausslab/kernels.hpp"
#include "gausslab/quadrature.hpp"

namespace gausslab::funcrep {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
const double kPi = std::acos(-1.0);

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double map_to_unit(const ChebSeries& c, double x) {
    const double w = c.hi - c.lo;
    const double slack = 1e-12 * w;
    if (!(x >= c.lo - slack && x <= c.hi + slack)) {
        throw DomainError("ChebSeries: x = " + std::to_string(x) + " outside [" + std::to_string(c.lo) + ", " +
                          std::to_string(c.hi) + "]");
    }
    return std::clamp((2.0 * x - c.lo - c.hi) / w, -1.0, 1.0);
}

double clenshaw(const std::vector<double>& a, double u) {
    const std::size_t n = a.size();
    if (n == 0) return 0.0;
    double b1 = 0.0, b2 = 0.0;
    for (std::size_t k = n - 1; k >= 1; --k) {
        const double b0 = 2.0 * u * b1 - b2 + a[k];
        b2 = b1;
        b1 = b0;
    }
    return u * b1 - b2 + a[0];
}

FunctionRep negated(FunctionRep f) { return FunctionRep::lin_comb({{-1.0, std::move(f)}}); }

double eval_kernel(const NamedKernel& k, double x, double guard) {
    const KernelParams& p = k.params;
    switch (k.kind) {
    case KernelKind::K1: return kernels::hilbert_kernel(kernels::Part::full, {p.t}, x, guard);
    case KernelKind::K1_I: return kernels::hilbert_kernel(kernels::Part::I, {p.t}, x, guard);
    case KernelKind::K1_II: return kernels::hilbert_kernel(kernels::Part::II, {p.t}, x, guard);
    case KernelKind::k1: return kernels::reduced_kernel(kernels::Part::full, {p.t}, x, guard);
    case KernelKind::k1_I: return kernels::reduced_kernel(kernels::Part::I, {p.t}, x, guard);
    case KernelKind::k1_II: return kernels::reduced_kernel(kernels::Part::II, {p.t}, x, guard);
    case KernelKind::kappa: return kernels::kappa_alpha(p.alpha, x, guard);
    case KernelKind::g_gamma: return hilbert::g_gamma({p.gamma, 200}, x);
    case KernelKind::Hg_gamma: return hilbert::hg_gamma({p.gamma, 200}, x);
    }
    throw DomainError("evaluate: unknown kernel kind");
}

} // namespace

// ---------------------------------------------------------------- ChebSeries

double ChebSeries::operator()(double x) const {
    // a degree-0 series is a constant and is defined everywhere
    if (coeffs.size() <= 1) return coeffs.empty() ? 0.0 : coeffs[0];
    return clenshaw(coeffs, map_to_unit(*this, x));
}

double ChebSeries::derivative(double x) const {
    const double u = map_to_unit(*this, x);
    const std::size_t n = coeffs.size();
    if (n < 2) return 0.0;
    // coefficients of the derivative series, d_{k-1} = d_{k+1} + 2k c_k
    std::vector<double> d(n, 0.0);
    for (std::size_t k = n - 1; k >= 1; --k) {
        const double next = (k + 1 < n) ? d[k + 1] : 0.0;
        d[k - 1] = next + 2.0 * static_cast<double>(k) * coeffs[k];
    }
    d[0] *= 0.5;
    d.pop_back();
    return clenshaw(d, u) * 2.0 / (hi - lo);
}

double ChebSeries::sup_bound() const {
    double s = 0.0;
    for (double c : coeffs) s += std::fabs(c);
    return s;
}

// ---------------------------------------------------------------- FunctionRep

FunctionRep::FunctionRep(LinComb l) : v_(LinComb{}) {
    int d = 0;
    for (const auto& term : l.terms) {
        if (!term.second) throw DomainError("LinComb: null term");
        d = std::max(d, term.second->depth() + 1);
    }
    if (d > kMaxDepth) throw DomainError("LinComb: nesting depth exceeds " + std::to_string(kMaxDepth));
    depth_ = d;
    v_ = std::move(l);
}

FunctionRep FunctionRep::lin_comb(std::vector<std::pair<double, FunctionRep>> terms) {
    LinComb l;
    l.terms.reserve(terms.size());
    for (auto& t : terms) l.terms.emplace_back(t.first, std::make_shared<const FunctionRep>(std::move(t.second)));
    return FunctionRep(std::move(l));
}

FunctionRep FunctionRep::constant(double c) {
    ChebSeries s;
    s.coeffs = {c};
    s.envelope = {std::fabs(c)};
    return FunctionRep(std::move(s));
}

double evaluate(const FunctionRep& f, double x, double pole_guard) {
    return std::visit(
        Overloaded{
            [&](const ChebSeries& c) { return c(x); },
            [&](const PoleSum& p) {
                long double s = 0.0L;
                for (const PoleTerm& t : p.terms) {
                    const double d = x - t.pole;
                    if (std::fabs(d) < pole_guard) {
                        if (p.principal_value) continue;
                        throw PoleProximityError("PoleSum: x = " + std::to_string(x) +
                                                 " within the guard of pole " + std::to_string(t.pole));
                    }
                    s += t.weight / static_cast<long double>(d);
                }
                return static_cast<double>(s);
            },
            [&](const CotSum& c) {
                long double s = 0.0L;
                for (const CotTerm& t : c.terms) s += t.weight * specfun::cot_half_pi(x + t.shift, pole_guard);
                return static_cast<double>(s);
            },
            [&](const NamedKernel& k) { return eval_kernel(k, x, pole_guard); },
            [&](const LinComb& l) {
                long double s = 0.0L;
                for (const auto& term : l.terms) {
                    if (term.first == 0.0) continue;
                    s += term.first * evaluate(*term.second, x, pole_guard);
                }
                return static_cast<double>(s);
            },
        },
        f.variant());
}

FunctionRep reflect(const FunctionRep& f) {
    return std::visit(
        Overloaded{
            [&](const ChebSeries& c) -> FunctionRep {
                ChebSeries r = c;
                r.lo = -c.hi;
                r.hi = -c.lo;
                for (std::size_t k = 1; k < r.coeffs.size(); k += 2) r.coeffs[k] = -r.coeffs[k];
                return r;
            },
            [&](const PoleSum& p) -> FunctionRep {
                PoleSum r = p;
                for (PoleTerm& t : r.terms) {
                    t.weight = -t.weight;
                    t.pole = -t.pole;
                }
                return r;
            },
            [&](const CotSum& c) -> FunctionRep {
                CotSum r = c;
                for (CotTerm& t : r.terms) {
                    t.weight = -t.weight;
                    t.shift = -t.shift;
                }
                return r;
            },
            [&](const NamedKernel& k) -> FunctionRep {
                NamedKernel r = k;
                switch (k.kind) {
                case KernelKind::K1:
                case KernelKind::k1:
                    // K_1(t,-x) = -K_1(-t,x), k_1(t,-x) = -k_1(-t,x)
                    r.params.t = -k.params.t;
                    return negated(r);
                case KernelKind::K1_II:
                case KernelKind::k1_II:
                case KernelKind::g_gamma:
                    return negated(k);
                case KernelKind::K1_I:
                case KernelKind::k1_I:
                case KernelKind::kappa:
                case KernelKind::Hg_gamma:
                    return k;
                }
                throw DomainError("reflect: unknown kernel kind");
            },
            [&](const LinComb& l) -> FunctionRep {
                std::vector<std::pair<double, FunctionRep>> terms;
                terms.reserve(l.terms.size());
                for (const auto& term : l.terms) terms.emplace_back(term.first, reflect(*term.second));
                return FunctionRep::lin_comb(std::move(terms));
            },
        },
        f.variant());
}

std::pair<FunctionRep, FunctionRep> parity_split(const FunctionRep& f) {
    FunctionRep r = reflect(f);
    FunctionRep even = FunctionRep::lin_comb({{0.5, f}, {0.5, r}});
    FunctionRep odd = FunctionRep::lin_comb({{0.5, f}, {-0.5, r}});
    return {std::move(even), std::move(odd)};
}

std::vector<double> singular_points(const FunctionRep& f) {
    return std::visit(
        Overloaded{
            [&](const ChebSeries&) { return std::vector<double>{}; },
            [&](const PoleSum& p) {
                std::vector<double> out;
                for (const PoleTerm& t : p.terms)
                    if (t.weight != 0.0) out.push_back(t.pole);
                return out;
            },
            [&](const CotSum& c) {
                std::vector<double> out;
                for (const CotTerm& t : c.terms) {
                    if (t.weight == 0.0) continue;
                    // x + shift in 2Z, reported for |x| <= 4
                    for (int m = -4; m <= 4; ++m) {
                        const double x = 2.0 * m - t.shift;
                        if (std::fabs(x) <= 4.0) out.push_back(x);
                    }
                }
                return out;
            },
            [&](const NamedKernel& k) {
                std::vector<double> out;
                const double t = k.params.t;
                switch (k.kind) {
                case KernelKind::K1:
                    if (t != 0.0) out.push_back(-1.0 / t);
                    break;
                case KernelKind::K1_I:
                case KernelKind::K1_II:
                    if (t != 0.0) {
                        out.push_back(-1.0 / std::fabs(t));
                        out.push_back(1.0 / std::fabs(t));
                    }
                    break;
                case KernelKind::k1:
                case KernelKind::k1_I:
                case KernelKind::k1_II: {
                    std::vector<double> base{-2.0, 2.0};
                    if (std::fabs(t) < 1.0) {
                        base.push_back(t - 2.0);
                        base.push_back(t + 2.0);
                        if (t != 0.0) base.push_back(-1.0 / t);
                    } else {
                        // at |t| = 1 the pole at -1/t cancels against x = t -+ 2
                        base.push_back(t > 0 ? t + 2.0 : t - 2.0);
                    }
                    for (double b : base) {
                        out.push_back(b);
                        if (k.kind != KernelKind::k1) out.push_back(-b);
                    }
                    break;
                }
                case KernelKind::kappa:
                    out.push_back(-k.params.alpha);
                    out.push_back(k.params.alpha);
                    break;
                case KernelKind::g_gamma:
                case KernelKind::Hg_gamma:
                    break;
                }
                return out;
            },
            [&](const LinComb& l) {
                std::vector<double> out;
                for (const auto& term : l.terms) {
                    if (term.first == 0.0) continue;
                    auto s = singular_points(*term.second);
                    out.insert(out.end(), s.begin(), s.end());
                }
                return out;
            },
        },
        f.variant());
}

std::optional<std::pair<double, double>> support(const FunctionRep& f) {
    return std::visit(
        Overloaded{
            [&](const ChebSeries& c) -> std::optional<std::pair<double, double>> {
                return std::make_pair(c.lo, c.hi);
            },
            [&](const PoleSum&) -> std::optional<std::pair<double, double>> { return std::nullopt; },
            [&](const CotSum&) -> std::optional<std::pair<double, double>> { return std::nullopt; },
            [&](const NamedKernel& k) -> std::optional<std::pair<double, double>> {
                if (k.kind == KernelKind::g_gamma) return std::make_pair(-k.params.gamma, k.params.gamma);
                return std::nullopt;
            },
            [&](const LinComb& l) -> std::optional<std::pair<double, double>> {
                std::optional<std::pair<double, double>> hull;
                for (const auto& term : l.terms) {
                    if (term.first == 0.0) continue;
                    auto s = support(*term.second);
                    if (!s) return std::nullopt;
                    if (!hull) hull = s;
                    else hull = std::make_pair(std::min(hull->first, s->first), std::max(hull->second, s->second));
                }
                if (!hull) return std::make_pair(0.0, 0.0);
                return hull;
            },
        },
        f.variant());
}

// ---------------------------------------------------------------- fitting

std::vector<double> lobatto_nodes(int order, double lo, double hi) {
    if (order < 1) throw DomainError("lobatto_nodes: order must be >= 1");
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    std::vector<double> x(static_cast<std::size_t>(order) + 1);
    for (int i = 0; i <= order; ++i) {
        // sin form keeps the nodes symmetric about the midpoint
        const double s = std::sin(kPi * (2.0 * i - order) / (2.0 * order));
        x[static_cast<std::size_t>(i)] = mid + half * s;
    }
    x.front() = lo;
    x.back() = hi;
    return x;
}

ChebSeries chebyshev_from_lobatto_values(const std::vector<double>& values, double lo, double hi) {
    if (values.size() < 2) throw DomainError("chebyshev_from_lobatto_values: need at least 2 values");
    if (!(lo < hi)) throw DomainError("chebyshev_from_lobatto_values: empty interval");
    const int n = static_cast<int>(values.size()) - 1;
    // f_k = value at cos(pi k / n), i.e. decreasing order
    std::vector<double> f(static_cast<std::size_t>(n) + 1);
    double fmax = 0.0;
    for (int k = 0; k <= n; ++k) {
        f[static_cast<std::size_t>(k)] = values[static_cast<std::size_t>(n - k)];
        if (!std::isfinite(f[static_cast<std::size_t>(k)])) throw DomainError("fit_chebyshev: sampler returned a non-finite value");
        fmax = std::max(fmax, std::fabs(f[static_cast<std::size_t>(k)]));
    }
    std::vector<double> cos_table(static_cast<std::size_t>(2 * n));
    for (int m = 0; m < 2 * n; ++m) cos_table[static_cast<std::size_t>(m)] = std::cos(kPi * m / n);
    std::vector<double> c(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) {
        long double s = 0.5L * (f[0] + ((j % 2 == 0) ? f[static_cast<std::size_t>(n)] : -f[static_cast<std::size_t>(n)]));
        for (int k = 1; k < n; ++k) {
            s += f[static_cast<std::size_t>(k)] * cos_table[static_cast<std::size_t>((static_cast<long long>(j) * k) % (2 * n))];
        }
        double cj = static_cast<double>(2.0L * s / n);
        if (j == 0 || j == n) cj *= 0.5;
        c[static_cast<std::size_t>(j)] = cj;
    }
    ChebSeries out;
    out.lo = lo;
    out.hi = hi;
    out.envelope.assign(c.size(), 0.0);
    double run = 0.0;
    for (int k = n; k >= 0; --k) {
        run = std::max(run, std::fabs(c[static_cast<std::size_t>(k)]));
        out.envelope[static_cast<std::size_t>(k)] = run;
    }
    const double floor = 16.0 * kEps * fmax;
    int last = n;
    while (last > 0 && out.envelope[static_cast<std::size_t>(last)] <= floor) --last;
    double dropped = 0.0;
    for (int k = last + 1; k <= n; ++k) dropped += std::fabs(c[static_cast<std::size_t>(k)]);
    const double unresolved = 2.0 * (std::fabs(c[static_cast<std::size_t>(n)]) + std::fabs(c[static_cast<std::size_t>(n - 1)]));
    out.coeffs.assign(c.begin(), c.begin() + last + 1);
    out.truncation_error = dropped + unresolved + 4.0 * kEps * fmax;
    return out;
}

ChebSeries fit_chebyshev(const Sampler& sampler, int order, double lo, double hi) {
    if (order < 1 || order > 4096) throw DomainError("fit_chebyshev: order must lie in [1, 4096]");
    std::vector<double> nodes = lobatto_nodes(order, lo, hi);
    std::vector<double> values(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) values[i] = sampler(nodes[i]);
    return chebyshev_from_lobatto_values(values, lo, hi);
}

std::vector<double> taylor_from_chebyshev(const ChebSeries& c, int count) {
    if (count < 1) return {};
    const std::size_t m = static_cast<std::size_t>(count);
    // monomial coefficients (in u) of T_{k-1}, T_k truncated to degree < count
    std::vector<double> prev(m, 0.0), cur(m, 0.0), next(m, 0.0), acc(m, 0.0);
    prev[0] = 1.0; // T_0
    if (m > 1) cur[1] = 1.0; // T_1
    if (!c.coeffs.empty()) acc[0] += c.coeffs[0];
    for (std::size_t k = 1; k < c.coeffs.size(); ++k) {
        for (std::size_t d = 0; d < m; ++d) acc[d] += c.coeffs[k] * cur[d];
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t d = 0; d < m; ++d) {
            if (d + 1 < m) next[d + 1] += 2.0 * cur[d];
            next[d] -= prev[d];
        }
        prev.swap(cur);
        cur.swap(next);
    }
    const double scale = 2.0 / (c.hi - c.lo);
    double p = 1.0;
    for (std::size_t d = 0; d < m; ++d) {
        acc[d] *= p;
        p *= scale;
    }
    return acc;
}

// ---------------------------------------------------------------- GridFunction

GridFunction GridFunction::sample(const Sampler& f, int order, double eta) {
    if (!(eta > 0.0 && eta <= 1.0)) throw DomainError("GridFunction: eta must lie in (0, 1]");
    GridFunction g;
    g.eta = eta;
    g.nodes = lobatto_nodes(order, -eta, eta);
    g.values.resize(g.nodes.size());
    for (std::size_t i = 0; i < g.nodes.size(); ++i) g.values[i] = f(g.nodes[i]);
    return g;
}

ChebSeries GridFunction::to_cheb() const { return chebyshev_from_lobatto_values(values, -eta, eta); }

void GridFunction::validate() const {
    if (nodes.size() != values.size()) throw DomainError("GridFunction: nodes and values differ in length");
    if (!(eta > 0.0 && eta <= 1.0)) throw DomainError("GridFunction: eta must lie in (0, 1]");
    for (std::size_t i = 1; i < nodes.size(); ++i)
        if (!(nodes[i] > nodes[i - 1])) throw DomainError("GridFunction: nodes must be strictly increasing");
}

void GridFunction::write_csv(std::ostream& out) const {
    out << "node,value\n";
    char buf[96];
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", nodes[i], values[i]);
        out << buf;
    }
}

// ---------------------------------------------------------------- norms

NormResult l1_norm(const Sampler& f, double eta) {
    if (!(eta > 0.0 && eta <= 1.0)) throw DomainError("l1_norm: eta must lie in (0, 1]");
    constexpr int kScan = 2048;
    const double h = 2.0 * eta / kScan;
    std::vector<double> xs(kScan + 1), fs(kScan + 1);
    double fmax = 0.0;
    for (int i = 0; i <= kScan; ++i) {
        xs[static_cast<std::size_t>(i)] = (i == kScan) ? eta : -eta + i * h;
        fs[static_cast<std::size_t>(i)] = f(xs[static_cast<std::size_t>(i)]);
        fmax = std::max(fmax, std::fabs(fs[static_cast<std::size_t>(i)]));
    }
    std::vector<double> breaks{-eta};
    for (int i = 0; i < kScan; ++i) {
        double a = xs[static_cast<std::size_t>(i)], b = xs[static_cast<std::size_t>(i) + 1];
        double fa = fs[static_cast<std::size_t>(i)], fb = fs[static_cast<std::size_t>(i) + 1];
        if (fa == 0.0 && i > 0) {
            breaks.push_back(a);
            continue;
        }
        if ((fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb < 0.0)) {
            for (int it = 0; it < 200 && b - a > 4.0 * kEps * std::max(1.0, std::fabs(a)); ++it) {
                const double m = 0.5 * (a + b);
                const double fm = f(m);
                if (fm == 0.0) {
                    a = b = m;
                    break;
                }
                if ((fm < 0.0) == (fa < 0.0)) {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            breaks.push_back(0.5 * (a + b));
        }
    }
    breaks.push_back(eta);
    NormResult out;
    auto absf = [&f](double x) { return std::fabs(f(x)); };
    const double abs_tol = 1e-15 * std::max(fmax, 1e-300) * 2.0 * eta;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (!(breaks[i + 1] > breaks[i])) continue;
        quadrature::QuadResult r = quadrature::integrate(absf, breaks[i], breaks[i + 1], abs_tol, 1e-13);
        out.value += r.value;
        out.error_estimate += r.error_estimate;
    }
    return out;
}

NormResult l1_norm(const FunctionRep& f, double eta) {
    for (double s : singular_points(f)) {
        if (std::fabs(s) <= eta) {
            throw SingularityError("l1_norm: singular point " + std::to_string(s) + " inside [-eta, eta]");
        }
    }
    Sampler s = [&f](double x) { return evaluate(f, x); };
    return l1_norm(s, eta);
}

NormResult l1_norm(const GridFunction& f, double eta) {
    f.validate();
    if (eta > f.eta * (1.0 + 1e-12)) throw DomainError("l1_norm: eta exceeds the grid's certified interval");
    const ChebSeries c = f.to_cheb();
    Sampler s = [&c](double x) { return c(x); };
    return l1_norm(s, std::min(eta, f.eta));
}

std::vector<double> default_lambda_grid() {
    std::vector<double> g;
    for (int i = 0; i <= 60; ++i) g.push_back(std::pow(10.0, -3.0 + 0.1 * i));
    return g;
}

double weak_l1_quasinorm(const Sampler& f, double eta, std::span<const double> lambda_grid) {
    if (!(eta > 0.0 && eta <= 1.0)) throw DomainError("weak_l1_quasinorm: eta must lie in (0, 1]");
    if (lambda_grid.empty()) throw DomainError("weak_l1_quasinorm: empty level grid");
    double lmin = lambda_grid[0], lmax = lambda_grid[0];
    for (double l : lambda_grid) {
        if (!(l > 0.0)) throw DomainError("weak_l1_quasinorm: levels must be positive");
        lmin = std::min(lmin, l);
        lmax = std::max(lmax, l);
    }
    if (lmin > 1e-3 * (1.0 + 1e-9) || lmax < 1e3 * (1.0 - 1e-9)) {
        throw DomainError("weak_l1_quasinorm: level grid must cover [1e-3, 1e3]");
    }
    constexpr int kCells = 2048;
    const double h = 2.0 * eta / kCells;
    auto absf = [&f](double x) {
        try {
            return std::fabs(f(x));
        } catch (const PoleProximityError&) {
            return std::numeric_limits<double>::infinity();
        }
    };
    std::vector<double> xs(kCells + 1), fv(kCells + 1), fm(kCells);
    for (int i = 0; i <= kCells; ++i) {
        xs[static_cast<std::size_t>(i)] = (i == kCells) ? eta : -eta + i * h;
        fv[static_cast<std::size_t>(i)] = absf(xs[static_cast<std::size_t>(i)]);
    }
    for (int i = 0; i < kCells; ++i) fm[static_cast<std::size_t>(i)] = absf(xs[static_cast<std::size_t>(i)] + 0.5 * h);

    // length of {g > lam} on [a, b] assuming g monotone there; the crossing
    // is located by bisection on the sampler
    auto piece = [&absf](double a, double b, double ga, double gb, double lam) {
        const bool ia = ga > lam, ib = gb > lam;
        if (ia && ib) return b - a;
        if (!ia && !ib) return 0.0;
        double lo = a, hi = b; // ia: set is [a, crossing); ib: (crossing, b]
        for (int it = 0; it < 60 && hi - lo > 4.0 * kEps * std::max(1.0, std::fabs(lo)); ++it) {
            const double mid = 0.5 * (lo + hi);
            if ((absf(mid) > lam) == ia) lo = mid;
            else hi = mid;
        }
        const double c = 0.5 * (lo + hi);
        return ia ? c - a : b - c;
    };
    double best = 0.0;
    for (double lam : lambda_grid) {
        double meas = 0.0;
        for (int i = 0; i < kCells; ++i) {
            const double a = xs[static_cast<std::size_t>(i)], b = xs[static_cast<std::size_t>(i) + 1];
            const double ga = fv[static_cast<std::size_t>(i)], gb = fv[static_cast<std::size_t>(i) + 1];
            const double gm = fm[static_cast<std::size_t>(i)];
            const double m = 0.5 * (a + b);
            meas += piece(a, m, ga, gm, lam) + piece(m, b, gm, gb, lam);
        }
        best = std::max(best, lam * meas);
    }
    return best;
}

double weak_l1_quasinorm(const FunctionRep& f, double eta, std::span<const double> lambda_grid) {
    Sampler s = [&f](double x) { return evaluate(f, x); };
    return weak_l1_quasinorm(s, eta, lambda_grid);
}

double weak_l1_quasinorm(const GridFunction& f, double eta, std::span<const double> lambda_grid) {
    f.validate();
    const ChebSeries c = f.to_cheb();
    Sampler s = [&c](double x) { return c(x); };
    return weak_l1_quasinorm(s, std::min(eta, f.eta), lambda_grid);
}

} // namespace gausslab::funcrep
