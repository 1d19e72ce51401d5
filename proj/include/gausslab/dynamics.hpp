#pragma once

#include <complex>
#include <optional>
#include <vector>

namespace gausslab::dynamics {

// beta in (0, 1]; constructor throws DomainError otherwise.
class MapParam {
public:
    explicit MapParam(double beta);
    double beta() const { return beta_; }

private:
    double beta_;
};

struct OrbitRecord {
    double start = 0.0;
    std::vector<double> points; // points[k] = tau^k(start)
    std::optional<int> entered_attractor_at;
    bool terminated_at_zero = false;
};

// Representative of x modulo 2Z in (-1, 1]. Odd integers map to 1.
double even_frac(double x);

// tau_beta(x) = {-beta/x}_2. Throws DomainError at x = 0.
double tau(const MapParam& p, double x);

// Iterates tau n times. An orbit landing exactly on 0 stops early with
// terminated_at_zero set.
OrbitRecord orbit(const MapParam& p, double x, int n);

// Measure of E_{beta,N}: points of the closed interval [-beta, beta] whose
// iterates tau^n, n = 1..N-1, all stay in [-beta, beta]. Midpoint grid with
// `samples` cells; beta = 1 is rejected.
double wandering_measure(const MapParam& p, int N, int samples);

// Fourier coefficients indexed over [-M, M].
class FourierVector {
public:
    FourierVector(int M, std::vector<std::complex<double>> coeffs);
    static FourierVector zeros(int M);

    int M() const { return M_; }
    std::complex<double> operator()(int k) const;
    void set(int k, std::complex<double> v);
    const std::vector<std::complex<double>>& data() const { return c_; }

    friend bool operator==(const FourierVector& a, const FourierVector& b) {
        return a.M_ == b.M_ && a.c_ == b.c_;
    }

private:
    int M_;
    std::vector<std::complex<double>> c_;
};

// output(k) = coeffs(2^n k) when |2^n k| <= M, else 0.
FourierVector doubling_decimate(const FourierVector& coeffs, int n);

} // namespace gausslab::dynamics
