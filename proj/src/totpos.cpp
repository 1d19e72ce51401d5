#include "gausslab/totpos.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdio>
#include <numeric>
#include <type_traits>

#include "gausslab/error.hpp"

namespace gausslab::totpos {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon() / 2.0;
constexpr int kExhaustiveOrder = 5;

double unit_roundoff(PrecisionMode mode) {
    return mode == PrecisionMode::extended ? DoubleDouble::unit_roundoff() : kEps;
}

void check_index(int j, const char* what) {
    if (j < 0 || j > 60) throw DomainError(std::string(what) + ": index outside [0, 60]");
}

DoubleDouble dd_factorial(int n) {
    DoubleDouble f(1.0);
    for (int i = 2; i <= n; ++i) f *= DoubleDouble(static_cast<double>(i));
    return f;
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// prod (n_i + d_i) - prod n_i without cancellation when all n_i > 0
double product_perturbation(const std::vector<double>& n, const std::vector<double>& d) {
    bool positive = std::all_of(n.begin(), n.end(), [](double v) { return v > 0.0; });
    if (positive) {
        double log_prod = 0.0, log_rel = 0.0;
        for (std::size_t i = 0; i < n.size(); ++i) {
            log_prod += std::log(n[i]);
            log_rel += std::log1p(d[i] / n[i]);
        }
        return std::exp(log_prod) * std::expm1(log_rel);
    }
    double a = 1.0, b = 1.0;
    for (std::size_t i = 0; i < n.size(); ++i) {
        a *= n[i] + d[i];
        b *= n[i];
    }
    return a - b;
}

template <class T>
T lu_determinant(std::vector<T> a, int m, double& growth) {
    auto mag = [](const T& v) {
        if constexpr (std::is_same_v<T, DoubleDouble>) {
            return std::fabs(v.hi);
        } else {
            return std::fabs(v);
        }
    };
    double amax = 0.0;
    for (const T& v : a) amax = std::max(amax, mag(v));
    double umax = amax;
    T det(1.0);
    for (int k = 0; k < m; ++k) {
        int piv = k;
        for (int i = k + 1; i < m; ++i) {
            if (mag(a[i * m + k]) > mag(a[piv * m + k])) piv = i;
        }
        if (mag(a[piv * m + k]) == 0.0) {
            growth = amax > 0.0 ? umax / amax : 1.0;
            return T(0.0);
        }
        if (piv != k) {
            for (int c = 0; c < m; ++c) std::swap(a[k * m + c], a[piv * m + c]);
            det = -det;
        }
        const T p = a[k * m + k];
        det *= p;
        for (int i = k + 1; i < m; ++i) {
            const T f = a[i * m + k] / p;
            for (int c = k + 1; c < m; ++c) {
                a[i * m + c] -= f * a[k * m + c];
                umax = std::max(umax, mag(a[i * m + c]));
            }
        }
    }
    growth = amax > 0.0 ? umax / amax : 1.0;
    return det;
}

bool next_combination(std::vector<int>& c, int n) {
    const int k = static_cast<int>(c.size());
    for (int i = k - 1; i >= 0; --i) {
        if (c[static_cast<std::size_t>(i)] < n - k + i) {
            ++c[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < k; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
            return true;
        }
    }
    return false;
}

std::vector<std::vector<int>> combinations(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> c(static_cast<std::size_t>(k));
    std::iota(c.begin(), c.end(), 0);
    do {
        out.push_back(c);
    } while (next_combination(c, n));
    return out;
}

std::string index_set(const std::vector<int>& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ';';
        out += std::to_string(s[i]);
    }
    return out;
}

// first strictly signed entry, 0 if none
int leading_sign(const std::string& pattern) {
    for (char c : pattern) {
        if (c == '+') return 1;
        if (c == '-') return -1;
    }
    return 0;
}

} // namespace

double b_entry(int j, int k, const specfun::PrecisionBudget& budget) {
    check_index(j, "b_entry");
    check_index(k, "b_entry");
    if (j + k > 60) throw DomainError("b_entry: j + k must be <= 60");
    const int n = 2 * j + 2 * k + 3;
    const double psi = specfun::polygamma(n, 1.0, budget).value;
    return psi / (std::ldexp(1.0, n) * factorial(2 * j + 2) * factorial(2 * k + 1));
}

specfun::ExtendedValue b_entry_extended(int j, int k) {
    check_index(j, "b_entry_extended");
    check_index(k, "b_entry_extended");
    if (j + k > 60) throw DomainError("b_entry_extended: j + k must be <= 60");
    const int n = 2 * j + 2 * k + 3;
    const specfun::ExtendedValue psi = specfun::polygamma_extended(n, DoubleDouble(1.0));
    const DoubleDouble den = DoubleDouble(std::ldexp(1.0, n)) * dd_factorial(2 * j + 2) * dd_factorial(2 * k + 1);
    const DoubleDouble v = psi.value / den;
    const double rel = psi.error_bound / std::fabs(psi.value.to_double()) + (4.0 * n + 8.0) * DoubleDouble::unit_roundoff();
    return {v, rel * std::fabs(v.to_double())};
}

double hankel_moment(int j, const specfun::PrecisionBudget& budget) {
    check_index(j, "hankel_moment");
    return specfun::polygamma(2 * j + 3, 1.0, budget).value;
}

specfun::ExtendedValue hankel_moment_extended(int j) {
    check_index(j, "hankel_moment_extended");
    return specfun::polygamma_extended(2 * j + 3, DoubleDouble(1.0));
}

MatrixSection MatrixSection::from_rows(const std::vector<std::vector<double>>& rows, PrecisionMode mode) {
    MatrixSection m;
    m.size = static_cast<int>(rows.size());
    m.precision_mode = mode;
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != m.size) throw DomainError("MatrixSection: matrix must be square");
        for (double v : r) {
            m.entries.emplace_back(v);
            m.errors.push_back(0.0);
        }
    }
    return m;
}

MatrixSection b_section(int size, PrecisionMode mode) {
    if (size < 1 || size > 30) throw DomainError("b_section: size outside [1, 30]");
    MatrixSection m;
    m.size = size;
    m.precision_mode = mode;
    for (int j = 0; j < size; ++j) {
        for (int k = 0; k < size; ++k) {
            if (mode == PrecisionMode::extended) {
                const specfun::ExtendedValue v = b_entry_extended(j, k);
                m.entries.push_back(v.value);
                m.errors.push_back(v.error_bound);
            } else {
                const double v = b_entry(j, k);
                m.entries.emplace_back(v);
                m.errors.push_back(8.0 * kEps * std::fabs(v));
            }
        }
    }
    return m;
}

HankelSection hankel_section(int size, int shift, PrecisionMode mode) {
    if (size < 1 || size > 30) throw DomainError("hankel_section: size outside [1, 30]");
    if (shift != 0 && shift != 1) throw DomainError("hankel_section: shift must be 0 or 1");
    std::vector<DoubleDouble> c;
    std::vector<double> e;
    for (int i = 0; i <= 2 * size - 2 + shift; ++i) {
        if (mode == PrecisionMode::extended) {
            const specfun::ExtendedValue v = hankel_moment_extended(i);
            c.push_back(v.value);
            e.push_back(v.error_bound);
        } else {
            const specfun::SpecialValue v = specfun::polygamma(2 * i + 3, 1.0);
            c.emplace_back(v.value);
            e.push_back(v.error_bound + 2.0 * kEps * std::fabs(v.value));
        }
        if (!(c.back() > DoubleDouble(0.0))) throw PrecisionError("hankel_section: nonpositive moment");
    }
    HankelSection h;
    h.size = size;
    h.shift = shift;
    h.precision_mode = mode;
    for (int j = 0; j < size; ++j) {
        for (int l = 0; l < size; ++l) {
            h.entries.push_back(c[static_cast<std::size_t>(j + l + shift)]);
            h.errors.push_back(e[static_cast<std::size_t>(j + l + shift)]);
        }
    }
    return h;
}

MinorValue minor(const MatrixSection& m, std::span<const int> rows, std::span<const int> cols, PrecisionMode mode) {
    const int k = static_cast<int>(rows.size());
    if (k == 0 || rows.size() != cols.size()) throw DomainError("minor: index sets must be nonempty and of equal size");
    for (int r : rows)
        if (r < 0 || r >= m.size) throw DomainError("minor: row index out of range");
    for (int c : cols)
        if (c < 0 || c >= m.size) throw DomainError("minor: column index out of range");

    std::vector<double> norms(static_cast<std::size_t>(k)), errs(static_cast<std::size_t>(k));
    double amax = 0.0;
    for (int i = 0; i < k; ++i) {
        double n2 = 0.0, e2 = 0.0;
        for (int c = 0; c < k; ++c) {
            const double v = m.at(rows[i], cols[c]).to_double();
            const double e = m.error(rows[i], cols[c]);
            n2 += v * v;
            e2 += e * e;
            amax = std::max(amax, std::fabs(v));
        }
        norms[static_cast<std::size_t>(i)] = std::sqrt(n2);
        errs[static_cast<std::size_t>(i)] = std::sqrt(e2);
    }

    double growth = 1.0;
    double value = 0.0;
    if (mode == PrecisionMode::extended) {
        std::vector<DoubleDouble> a;
        for (int r : rows)
            for (int c : cols) a.push_back(m.at(r, c));
        value = lu_determinant(std::move(a), k, growth).to_double();
    } else {
        std::vector<double> a;
        for (int r : rows)
            for (int c : cols) a.push_back(m.at(r, c).to_double());
        value = lu_determinant(std::move(a), k, growth);
    }
    // elimination rounding as a backward row perturbation
    const double arith = 3.0 * k * unit_roundoff(mode) * growth * amax * std::sqrt(static_cast<double>(k));
    for (auto& e : errs) e += arith;
    MinorValue out;
    out.order = k;
    out.rows.assign(rows.begin(), rows.end());
    out.cols.assign(cols.begin(), cols.end());
    out.value = value;
    out.error_estimate = product_perturbation(norms, errs) + 2.0 * k * kEps * std::fabs(value);
    return out;
}

MinorScan minors_positive(const MatrixSection& m, int max_order, PrecisionMode mode, bool keep_all) {
    const int cap = mode == PrecisionMode::extended ? 7 : 5;
    if (max_order < 1 || max_order > cap) {
        throw DomainError("minors_positive: max_order must lie in [1, " + std::to_string(cap) + "] in this precision mode");
    }
    if (max_order > m.size) throw DomainError("minors_positive: max_order exceeds the section size");
    MinorScan scan;
    scan.max_order = max_order;
    scan.exhaustive_up_to = std::min(max_order, kExhaustiveOrder);
    scan.worst_margin = std::numeric_limits<double>::infinity();
    scan.worst.value = std::numeric_limits<double>::infinity();
    bool nonpositive = false, insufficient = false;
    auto record = [&](const MinorValue& v) {
        ++scan.count;
        if (v.value < scan.worst.value) scan.worst = v;
        scan.worst_margin = std::min(scan.worst_margin, v.value - v.error_estimate);
        if (v.value < -v.error_estimate) nonpositive = true;
        else if (std::fabs(v.value) <= v.error_estimate) insufficient = true;
        if (keep_all) scan.minors.push_back(v);
    };
    for (int order = 1; order <= max_order; ++order) {
        if (order <= kExhaustiveOrder) {
            const auto sets = combinations(m.size, order);
            for (const auto& r : sets)
                for (const auto& c : sets) record(minor(m, r, c, mode));
        } else {
            for (int r0 = 0; r0 + order <= m.size; ++r0) {
                for (int c0 = 0; c0 + order <= m.size; ++c0) {
                    std::vector<int> r(static_cast<std::size_t>(order)), c(static_cast<std::size_t>(order));
                    std::iota(r.begin(), r.end(), r0);
                    std::iota(c.begin(), c.end(), c0);
                    record(minor(m, r, c, mode));
                }
            }
        }
    }
    scan.status = nonpositive ? MinorStatus::nonpositive
                              : (insufficient ? MinorStatus::precision_insufficient : MinorStatus::positive);
    return scan;
}

void write_minor_csv(std::ostream& out, const MinorScan& scan) {
    out << "order,row_set,col_set,minor_value,error_estimate\n";
    char buf[64];
    for (const MinorValue& v : scan.minors) {
        out << v.order << ',' << index_set(v.rows) << ',' << index_set(v.cols) << ',';
        std::snprintf(buf, sizeof buf, "%.17g", v.value);
        out << buf << ',';
        std::snprintf(buf, sizeof buf, "%.6g", v.error_estimate);
        out << buf << '\n';
    }
}

CholeskyResult cholesky_check(const MatrixSection& m) {
    const int n = m.size;
    std::vector<DoubleDouble> L(static_cast<std::size_t>(n * n), DoubleDouble(0.0));
    double rel_in = 0.0;
    for (int i = 0; i < n * n; ++i) {
        const double v = std::fabs(m.entries[static_cast<std::size_t>(i)].to_double());
        if (v > 0.0) rel_in = std::max(rel_in, m.errors[static_cast<std::size_t>(i)] / v);
    }
    CholeskyResult res;
    res.ok = true;
    res.min_pivot = std::numeric_limits<double>::infinity();
    res.min_pivot_margin = std::numeric_limits<double>::infinity();
    const double u = DoubleDouble::unit_roundoff();
    for (int k = 0; k < n; ++k) {
        DoubleDouble d = m.at(k, k);
        double mass = std::fabs(d.to_double());
        for (int j = 0; j < k; ++j) {
            const DoubleDouble l = L[static_cast<std::size_t>(k * n + j)];
            d -= l * l;
            mass += (l * l).to_double();
        }
        const double pivot = d.to_double();
        const double err = 4.0 * (rel_in + 8.0 * (k + 1) * u) * mass;
        res.min_pivot = std::min(res.min_pivot, pivot);
        res.min_pivot_margin = std::min(res.min_pivot_margin, pivot - err);
        if (!(pivot > err)) {
            res.ok = false;
            return res;
        }
        const DoubleDouble s = sqrt(d);
        L[static_cast<std::size_t>(k * n + k)] = s;
        for (int i = k + 1; i < n; ++i) {
            DoubleDouble v = m.at(i, k);
            for (int j = 0; j < k; ++j) v -= L[static_cast<std::size_t>(i * n + j)] * L[static_cast<std::size_t>(k * n + j)];
            L[static_cast<std::size_t>(i * n + k)] = v / s;
        }
    }
    return res;
}

SignVerdict sign_changes(std::span<const double> seq, double tol_sign) {
    if (!(tol_sign >= 0.0)) throw DomainError("sign_changes: tol_sign must be >= 0");
    double amax = 0.0;
    for (double a : seq) amax = std::max(amax, std::fabs(a));
    const double thr = tol_sign * amax;
    SignVerdict v;
    int last = 0;
    constexpr int kNone = -1;
    int dp_pos = kNone, dp_neg = kNone; // best change counts ending in + / -
    bool first = true;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        const double a = seq[i];
        const bool near = std::fabs(a) <= thr;
        const int s = near ? 0 : (a > 0.0 ? 1 : -1);
        v.pattern += near ? '0' : (s > 0 ? '+' : '-');
        if (near && a != 0.0) v.indeterminate.push_back(static_cast<int>(i));
        if (s != 0) {
            if (last != 0 && s != last) ++v.s_minus;
            last = s;
        }
        int np = kNone, nn = kNone;
        if (first) {
            if (s >= 0) np = 0;
            if (s <= 0) nn = 0;
            first = false;
        } else {
            if (s >= 0) np = std::max(dp_pos, dp_neg == kNone ? kNone : dp_neg + 1);
            if (s <= 0) nn = std::max(dp_neg, dp_pos == kNone ? kNone : dp_pos + 1);
        }
        dp_pos = np;
        dp_neg = nn;
    }
    v.s_plus = std::max({0, dp_pos, dp_neg});
    return v;
}

ClassVerdict classify_down_class(std::span<const double> coeffs, double tol_sign) {
    double amax = 0.0;
    for (double a : coeffs) amax = std::max(amax, std::fabs(a));
    const double thr = tol_sign * amax;
    const bool nonneg = std::all_of(coeffs.begin(), coeffs.end(), [&](double a) { return a >= -thr; });
    if (nonneg) return {ClassVariant::all_nonneg, -1};
    const bool nonpos = std::all_of(coeffs.begin(), coeffs.end(), [&](double a) { return a <= thr; });
    if (nonpos) return {ClassVariant::all_nonpos, -1};
    const int n = static_cast<int>(coeffs.size());
    // suffix_nonpos[i]: coeffs[i..] all <= thr
    std::vector<bool> suffix(static_cast<std::size_t>(n + 1), true);
    for (int i = n - 1; i >= 0; --i) suffix[static_cast<std::size_t>(i)] = suffix[static_cast<std::size_t>(i + 1)] && coeffs[static_cast<std::size_t>(i)] <= thr;
    int best = -1;
    for (int j0 = 0; j0 < n; ++j0) {
        if (coeffs[static_cast<std::size_t>(j0)] < -thr) break;
        if (suffix[static_cast<std::size_t>(j0 + 1)]) best = j0;
    }
    if (best >= 0) return {ClassVariant::descending, best};
    return {ClassVariant::not_member, -1};
}

VDResult variation_diminishing_F(std::span<const double> coeffs, int N, double tol_sign) {
    if (coeffs.empty() || coeffs.size() > 12) throw DomainError("variation_diminishing_F: 1 to 12 coefficients required");
    if (N < 0 || N > 24) throw DomainError("variation_diminishing_F: N outside [0, 24]");
    const SignVerdict in = sign_changes(coeffs, tol_sign);
    if (in.s_minus > 1) throw DomainError("variation_diminishing_F: input has more than one strong sign change");
    const int jn = std::min(static_cast<int>(coeffs.size()) - 1, N);
    VDResult r;
    const double u = DoubleDouble::unit_roundoff();
    for (int k = 0; k <= N; ++k) {
        DoubleDouble acc(0.0);
        double err = 0.0;
        for (int j = 0; j <= jn; ++j) {
            const specfun::ExtendedValue b = b_entry_extended(j, k);
            const double a = coeffs[static_cast<std::size_t>(j)];
            acc += b.value * DoubleDouble(a);
            err += std::fabs(a) * (b.error_bound + 4.0 * (jn + 2) * u * std::fabs(b.value.to_double()));
        }
        r.F.push_back(acc.to_double());
        r.F_error.push_back(err + 2.0 * kEps * std::fabs(acc.to_double()));
    }
    auto judge = [&](const SignVerdict& v) {
        if (v.s_plus > 1) return false;
        if (v.s_minus == 1) return leading_sign(v.pattern) == leading_sign(in.pattern) || leading_sign(in.pattern) == 0;
        return true;
    };
    r.verdict = sign_changes(r.F, tol_sign);
    r.pass = judge(r.verdict);
    std::vector<double> clipped = r.F;
    for (std::size_t k = 0; k < clipped.size(); ++k) {
        if (std::fabs(clipped[k]) <= r.F_error[k]) clipped[k] = 0.0;
    }
    if (judge(sign_changes(clipped, tol_sign)) != r.pass) {
        throw PrecisionError("variation_diminishing_F: an entry within its error estimate of 0 flips the verdict");
    }
    return r;
}

std::optional<double> one_zero_locate(const funcrep::Sampler& f, double gamma) {
    if (!(gamma > 0.0)) throw DomainError("one_zero_locate: gamma must be positive");
    constexpr int kScan = 2048;
    std::vector<double> xs, fs;
    std::vector<double> exact_zeros;
    for (int i = 1; i <= kScan; ++i) {
        const double x = gamma * i / (kScan + 1);
        const double v = f(x);
        if (!std::isfinite(v)) throw DomainError("one_zero_locate: non-finite sample");
        if (v == 0.0) {
            exact_zeros.push_back(x);
            continue;
        }
        xs.push_back(x);
        fs.push_back(v);
    }
    int changes = 0;
    std::size_t at = 0;
    for (std::size_t i = 1; i < fs.size(); ++i) {
        if ((fs[i] > 0.0) != (fs[i - 1] > 0.0)) {
            ++changes;
            at = i;
        }
    }
    if (changes > 1) throw ClassificationError("one_zero_locate: more than one sign change on (0, gamma)");
    if (changes == 0) {
        if (!exact_zeros.empty() && exact_zeros.size() == 1 && (fs.empty() || fs.front() > 0.0)) {
            // touching zero without a sign change
            return exact_zeros.front();
        }
        if (exact_zeros.size() > 1) throw ClassificationError("one_zero_locate: several zeros on (0, gamma)");
        return std::nullopt;
    }
    if (fs[at - 1] < 0.0) throw ClassificationError("one_zero_locate: sign change from - to +");
    double a = xs[at - 1], b = xs[at];
    for (double z : exact_zeros) {
        if (z > a && z < b) return z;
    }
    for (int it = 0; it < 200 && b - a > 4.0 * kEps * b; ++it) {
        const double m = 0.5 * (a + b);
        const double v = f(m);
        if (v == 0.0) return m;
        if (v > 0.0) a = m;
        else b = m;
    }
    return 0.5 * (a + b);
}

std::optional<double> one_zero_locate(const funcrep::FunctionRep& f, double gamma, int taylor_terms, double tol_sign) {
    if (taylor_terms < 2 || taylor_terms > 40) throw DomainError("one_zero_locate: taylor_terms outside [2, 40]");
    const funcrep::Sampler s = [&f](double x) { return funcrep::evaluate(f, x); };
    const funcrep::ChebSeries fit = funcrep::fit_chebyshev(s, 64, -gamma, gamma);
    std::vector<double> taylor = funcrep::taylor_from_chebyshev(fit, taylor_terms);
    // Entries not resolved by the conversion error are treated as zero. Each
    // Chebyshev coefficient carries a rounding error of a few ulps of the
    // largest one, amplified by the monomial coefficients of T_n.
    double cmax = 0.0;
    for (double c : fit.coeffs) cmax = std::max(cmax, std::fabs(c));
    const double cerr = 16.0 * kEps * cmax + fit.truncation_error;
    std::vector<double> err(taylor.size(), 0.0);
    std::vector<double> tprev{1.0}, tcur{0.0, 1.0}; // |monomial coefficients| of T_0, T_1
    auto add = [&](const std::vector<double>& t) {
        for (std::size_t k = 0; k < err.size() && k < t.size(); ++k) err[k] += cerr * std::fabs(t[k]);
    };
    add(tprev);
    for (std::size_t n = 1; n < fit.coeffs.size() + 1; ++n) {
        add(tcur);
        std::vector<double> next(tcur.size() + 1, 0.0);
        for (std::size_t k = 0; k < tcur.size(); ++k) next[k + 1] += 2.0 * tcur[k];
        for (std::size_t k = 0; k < tprev.size(); ++k) next[k] -= tprev[k];
        tprev = std::move(tcur);
        tcur = std::move(next);
    }
    for (std::size_t k = 0; k < taylor.size(); ++k) {
        if (std::fabs(taylor[k]) <= err[k] * std::pow(gamma, -static_cast<double>(k))) taylor[k] = 0.0;
    }
    const ClassVerdict cv = classify_down_class(taylor, tol_sign);
    if (cv.variant == ClassVariant::not_member) {
        throw ClassificationError("one_zero_locate: Taylor truncation is not in the descending class");
    }
    return one_zero_locate(s, gamma);
}

funcrep::ChebSeries power_series(std::span<const double> coeffs, double lo, double hi) {
    if (coeffs.empty()) throw DomainError("power_series: empty coefficient list");
    std::vector<double> c(coeffs.begin(), coeffs.end());
    const funcrep::Sampler horner = [c](double x) {
        double s = 0.0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * x + *it;
        return s;
    };
    const int order = std::max(8, 2 * static_cast<int>(c.size()) + 2);
    return funcrep::fit_chebyshev(horner, order, lo, hi);
}

} // namespace gausslab::totpos
