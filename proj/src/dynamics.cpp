#include "gausslab/dynamics.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "gausslab/error.hpp"

namespace gausslab::dynamics {

MapParam::MapParam(double beta) : beta_(beta) {
    if (!(beta > 0.0 && beta <= 1.0)) {
        throw DomainError("MapParam: beta = " + std::to_string(beta) + " outside (0, 1]");
    }
}

double even_frac(double x) {
    double r = std::fmod(x, 2.0); // exact, in (-2, 2)
    if (r > 1.0) r -= 2.0;
    else if (r <= -1.0) r += 2.0;
    return r + 0.0;
}

double tau(const MapParam& p, double x) {
    if (x == 0.0) throw DomainError("tau: the map is undefined at x = 0");
    return even_frac(-p.beta() / x);
}

OrbitRecord orbit(const MapParam& p, double x, int n) {
    if (n < 1) throw DomainError("orbit: n must be >= 1");
    if (!(x > -1.0 && x <= 1.0)) throw DomainError("orbit: start must lie in (-1, 1]");
    OrbitRecord rec;
    rec.start = x;
    rec.points.reserve(static_cast<std::size_t>(n) + 1);
    rec.points.push_back(x);
    const bool has_attractor = p.beta() < 1.0;
    double cur = x;
    for (int k = 0; k <= n; ++k) {
        if (has_attractor && !rec.entered_attractor_at && std::fabs(cur) > p.beta()) {
            rec.entered_attractor_at = k;
        }
        if (k == n) break;
        if (cur == 0.0) {
            rec.terminated_at_zero = true;
            break;
        }
        cur = tau(p, cur);
        rec.points.push_back(cur);
    }
    return rec;
}

double wandering_measure(const MapParam& p, int N, int samples) {
    const double beta = p.beta();
    if (beta >= 1.0) throw DomainError("wandering_measure: beta = 1 is outside this operation's contract");
    if (N < 1) throw DomainError("wandering_measure: N must be >= 1");
    if (samples < 1000) throw DomainError("wandering_measure: at least 1000 samples required");
    const double h = 2.0 * beta / samples;
    long long count = 0;
    for (int i = 0; i < samples; ++i) {
        double x = -beta + (i + 0.5) * h;
        bool inside = true;
        for (int n = 1; n < N; ++n) {
            if (x == 0.0) break; // orbit ends at 0, which lies in the closed interval
            x = tau(p, x);
            if (std::fabs(x) > beta) {
                inside = false;
                break;
            }
        }
        if (inside) ++count;
    }
    return 2.0 * beta * static_cast<double>(count) / samples;
}

FourierVector::FourierVector(int M, std::vector<std::complex<double>> coeffs)
    : M_(M), c_(std::move(coeffs)) {
    if (M < 0 || c_.size() != static_cast<std::size_t>(2 * M + 1)) {
        throw DomainError("FourierVector: expected 2M+1 coefficients");
    }
}

FourierVector FourierVector::zeros(int M) {
    return FourierVector(M, std::vector<std::complex<double>>(static_cast<std::size_t>(2 * M + 1)));
}

std::complex<double> FourierVector::operator()(int k) const {
    if (std::abs(k) > M_) return {0.0, 0.0};
    return c_[static_cast<std::size_t>(k + M_)];
}

void FourierVector::set(int k, std::complex<double> v) {
    if (std::abs(k) > M_) throw DomainError("FourierVector: index outside [-M, M]");
    c_[static_cast<std::size_t>(k + M_)] = v;
}

FourierVector doubling_decimate(const FourierVector& coeffs, int n) {
    if (n < 1) throw DomainError("doubling_decimate: n must be >= 1");
    const int M = coeffs.M();
    FourierVector out = FourierVector::zeros(M);
    if (n >= 31) {
        out.set(0, coeffs(0));
        return out;
    }
    const long long step = 1LL << n;
    for (int k = -M; k <= M; ++k) {
        const long long idx = step * k;
        if (idx >= -M && idx <= M) out.set(k, coeffs(static_cast<int>(idx)));
    }
    return out;
}

} // namespace gausslab::dynamics
