#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "gausslab/specfun.hpp"

namespace gausslab::funcrep {

using Sampler = std::function<double(double)>;

// Chebyshev series sum_k coeffs[k] T_k(u) with u the affine image of [lo, hi]
// onto [-1, 1]. A series with at most one coefficient is a constant on the
// whole line; otherwise evaluation outside [lo, hi] throws DomainError.
struct ChebSeries {
    double lo = -1.0;
    double hi = 1.0;
    std::vector<double> coeffs;
    // envelope[k] = max_{i >= k} |coeffs[i]| over the coefficients computed
    // before chopping; may be longer than coeffs.
    std::vector<double> envelope;
    // Bound on the dropped coefficients plus the unresolved tail estimate.
    double truncation_error = 0.0;

    double operator()(double x) const;
    double derivative(double x) const;
    // |f| <= sum |c_k| on the interval.
    double sup_bound() const;
};

struct PoleTerm {
    double weight;
    double pole;
};

// sum_i w_i / (x - p_i)
struct PoleSum {
    std::vector<PoleTerm> terms;
    // Finite-part evaluation: a term whose pole is within the guard
    // contributes its symmetric pair average, which is 0.
    bool principal_value = false;
};

struct CotTerm {
    double weight;
    double shift;
};

// sum_i w_i (pi/2) cot(pi (x + s_i) / 2)
struct CotSum {
    std::vector<CotTerm> terms;
};

enum class KernelKind { K1, K1_I, K1_II, k1, k1_I, k1_II, kappa, g_gamma, Hg_gamma };

struct KernelParams {
    double t = 0.5;     // K1 / k1 families, |t| <= 1
    double alpha = 1.0; // kappa
    double gamma = 0.1; // g_gamma, Hg_gamma
};

struct NamedKernel {
    KernelKind kind;
    KernelParams params;
};

class FunctionRep;

struct LinComb {
    std::vector<std::pair<double, std::shared_ptr<const FunctionRep>>> terms;
};

class FunctionRep {
public:
    using Variant = std::variant<ChebSeries, PoleSum, CotSum, NamedKernel, LinComb>;
    static constexpr int kMaxDepth = 8;

    FunctionRep(ChebSeries c) : v_(std::move(c)) {}
    FunctionRep(PoleSum p) : v_(std::move(p)) {}
    FunctionRep(CotSum c) : v_(std::move(c)) {}
    FunctionRep(NamedKernel k) : v_(std::move(k)) {}
    // Throws DomainError when the nesting depth would exceed kMaxDepth.
    FunctionRep(LinComb l);

    static FunctionRep lin_comb(std::vector<std::pair<double, FunctionRep>> terms);
    static FunctionRep kernel(KernelKind kind, KernelParams params = {}) { return NamedKernel{kind, params}; }
    static FunctionRep constant(double c);

    const Variant& variant() const { return v_; }
    int depth() const { return depth_; }

private:
    Variant v_;
    int depth_ = 0;
};

double evaluate(const FunctionRep& f, double x, double pole_guard = specfun::kDefaultPoleGuard);

// f(-x)
FunctionRep reflect(const FunctionRep& f);

// (even, odd) with even(x) = (f(x)+f(-x))/2, odd(x) = (f(x)-f(-x))/2.
std::pair<FunctionRep, FunctionRep> parity_split(const FunctionRep& f);

// Real points where f has a non-integrable singularity.
std::vector<double> singular_points(const FunctionRep& f);

// Closed interval outside of which f vanishes, when known.
std::optional<std::pair<double, double>> support(const FunctionRep& f);

// Lobatto nodes of [lo, hi] in increasing order (order+1 points).
std::vector<double> lobatto_nodes(int order, double lo, double hi);

// Interpolant at the Chebyshev-Lobatto nodes of [lo, hi]. Trailing
// coefficients below the rounding floor are chopped; their magnitude is kept
// in truncation_error.
ChebSeries fit_chebyshev(const Sampler& sampler, int order, double lo = -1.0, double hi = 1.0);
ChebSeries chebyshev_from_lobatto_values(const std::vector<double>& increasing_values, double lo, double hi);

// Taylor coefficients about the interval midpoint, a_k for k < count,
// in powers of (x - mid).
std::vector<double> taylor_from_chebyshev(const ChebSeries& c, int count);

struct GridFunction {
    std::vector<double> nodes; // increasing
    std::vector<double> values;
    double eta = 1.0;

    static GridFunction sample(const Sampler& f, int order, double eta);
    ChebSeries to_cheb() const;
    void validate() const;
    void write_csv(std::ostream& out) const;
};

struct NormResult {
    double value = 0.0;
    double error_estimate = 0.0;
};

// Integral of |f| over [-eta, eta]; sign changes are located first so that
// every quadrature panel sees a smooth integrand.
NormResult l1_norm(const FunctionRep& f, double eta);
NormResult l1_norm(const GridFunction& f, double eta);
NormResult l1_norm(const Sampler& f, double eta);

// 61 log-uniform levels from 1e-3 to 1e3.
std::vector<double> default_lambda_grid();

double weak_l1_quasinorm(const FunctionRep& f, double eta, std::span<const double> lambda_grid);
double weak_l1_quasinorm(const GridFunction& f, double eta, std::span<const double> lambda_grid);
double weak_l1_quasinorm(const Sampler& f, double eta, std::span<const double> lambda_grid);

} // namespace gausslab::funcrep
