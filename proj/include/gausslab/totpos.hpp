#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "gausslab/double_double.hpp"
#include "gausslab/funcrep.hpp"
#include "gausslab/specfun.hpp"

namespace gausslab::totpos {

enum class PrecisionMode { standard, extended };

// b_{j,k} = psi^(2j+2k+3)(1) / (2^{2j+2k+3} (2j+2)! (2k+1)!)
double b_entry(int j, int k, const specfun::PrecisionBudget& budget = {});
specfun::ExtendedValue b_entry_extended(int j, int k);

// c_j = psi^(2j+3)(1)
double hankel_moment(int j, const specfun::PrecisionBudget& budget = {});
specfun::ExtendedValue hankel_moment_extended(int j);

// Square matrix with double-double entries and absolute entry error bounds.
struct MatrixSection {
    int size = 0;
    PrecisionMode precision_mode = PrecisionMode::extended;
    std::vector<DoubleDouble> entries; // row major
    std::vector<double> errors;

    const DoubleDouble& at(int j, int l) const { return entries[static_cast<std::size_t>(j * size + l)]; }
    double error(int j, int l) const { return errors[static_cast<std::size_t>(j * size + l)]; }

    static MatrixSection from_rows(const std::vector<std::vector<double>>& rows,
                                   PrecisionMode mode = PrecisionMode::extended);
};

struct HankelSection : MatrixSection {
    int shift = 0; // entry(j,l) = c_{j+l+shift}
};

MatrixSection b_section(int size, PrecisionMode mode = PrecisionMode::extended);
HankelSection hankel_section(int size, int shift, PrecisionMode mode = PrecisionMode::extended);

struct MinorValue {
    int order = 0;
    std::vector<int> rows;
    std::vector<int> cols;
    double value = 0.0;
    double error_estimate = 0.0;
};

// Determinant of the submatrix by partial pivoting. The error estimate is the
// multilinear perturbation bound prod ||a_i|| (prod (1 + e_i) - 1), e_i the
// relative row errors including elimination rounding.
MinorValue minor(const MatrixSection& m, std::span<const int> rows, std::span<const int> cols,
                 PrecisionMode mode = PrecisionMode::extended);

enum class MinorStatus { positive, nonpositive, precision_insufficient };

struct MinorScan {
    MinorStatus status = MinorStatus::positive;
    int max_order = 0;
    int exhaustive_up_to = 0; // orders above this used contiguous index sets only
    std::size_t count = 0;
    MinorValue worst;         // smallest value / error_estimate ratio
    double worst_margin = 0.0; // worst.value - worst.error_estimate
    std::vector<MinorValue> minors; // filled when keep_all is set

    bool positive() const { return status == MinorStatus::positive; }
};

// All minors up to order min(max_order, 5); contiguous minors for larger orders.
// max_order <= 5 in standard precision, <= 7 in extended.
MinorScan minors_positive(const MatrixSection& m, int max_order, PrecisionMode mode = PrecisionMode::extended,
                          bool keep_all = false);

// columns: order,row_set,col_set,minor_value,error_estimate
void write_minor_csv(std::ostream& out, const MinorScan& scan);

struct CholeskyResult {
    bool ok = false;
    double min_pivot = 0.0;
    double min_pivot_margin = 0.0; // min over pivots of pivot - error bound
};

// Symmetric positive-definite factorization in double-double.
CholeskyResult cholesky_check(const MatrixSection& m);

inline constexpr double kDefaultTolSign = 1e-12;

struct SignVerdict {
    int s_minus = 0;
    int s_plus = 0;
    std::string pattern; // one of '+', '-', '0' per entry; '0' marks |a| <= tol
    std::vector<int> indeterminate; // nonzero entries inside the tolerance band
};

// tol_sign is relative to max |a|.
SignVerdict sign_changes(std::span<const double> seq, double tol_sign = kDefaultTolSign);

enum class ClassVariant { all_nonneg, all_nonpos, descending, not_member };

struct ClassVerdict {
    ClassVariant variant = ClassVariant::not_member;
    int j0 = -1; // set for descending
};

ClassVerdict classify_down_class(std::span<const double> coeffs, double tol_sign = kDefaultTolSign);

struct VDResult {
    std::vector<double> F;
    std::vector<double> F_error;
    SignVerdict verdict;
    bool pass = false; // s_plus <= 1 and a change, if any, goes from + to -
};

// F[k] = sum_{j <= N} b_{j,k} coeffs[j], k = 0..N, accumulated in double-double.
VDResult variation_diminishing_F(std::span<const double> coeffs, int N, double tol_sign = kDefaultTolSign);

// Scans (0, gamma) for sign changes and bisects the single bracket, if any.
// More than one bracket, or a - to + change, throws ClassificationError.
std::optional<double> one_zero_locate(const funcrep::Sampler& f, double gamma);

// Classifies the Taylor truncation of f (from a Chebyshev fit on [-gamma, gamma])
// before locating the zero; a not_member verdict throws ClassificationError.
std::optional<double> one_zero_locate(const funcrep::FunctionRep& f, double gamma, int taylor_terms = 16,
                                      double tol_sign = 1e-8);

// sum_j coeffs[j] x^j as a Chebyshev series on [lo, hi].
funcrep::ChebSeries power_series(std::span<const double> coeffs, double lo, double hi);

} // namespace gausslab::totpos
