#include "gausslab/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "gausslab/error.hpp"

namespace gausslab::quadrature {

namespace {

constexpr int kCoarse = 16;
constexpr int kFine = 32;
const double kPi = std::acos(-1.0);

// Clenshaw-Curtis weights on [-1, 1] for n intervals, nodes cos(k pi / n).
std::vector<double> cc_weights(int n) {
    std::vector<double> w(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        double s = 0.0;
        for (int j = 1; j <= n / 2; ++j) {
            const double b = (2 * j == n) ? 1.0 : 2.0;
            s += b / (4.0 * j * j - 1.0) * std::cos(2.0 * j * k * kPi / n);
        }
        const double c = (k == 0 || k == n) ? 1.0 : 2.0;
        w[static_cast<std::size_t>(k)] = c / n * (1.0 - s);
    }
    return w;
}

struct Rules {
    std::vector<double> nodes = std::vector<double>(kFine + 1);
    std::vector<double> w_fine = cc_weights(kFine);
    std::vector<double> w_coarse = cc_weights(kCoarse);
    Rules() {
        for (int k = 0; k <= kFine; ++k) nodes[static_cast<std::size_t>(k)] = std::cos(k * kPi / kFine);
    }
};

const Rules& rules() {
    static const Rules r;
    return r;
}

struct Panel {
    double a, b;
    int depth;
};

} // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol, double rel_tol, int max_depth) {
    if (a == b) return {};
    if (!(a < b)) {
        QuadResult r = integrate(f, b, a, abs_tol, rel_tol, max_depth);
        return {-r.value, r.error_estimate};
    }
    const Rules& R = rules();
    const double total_width = b - a;
    std::vector<Panel> stack{{a, b, 0}};
    QuadResult out;
    std::array<double, kFine + 1> fx{};
    while (!stack.empty()) {
        Panel p = stack.back();
        stack.pop_back();
        const double mid = 0.5 * (p.a + p.b);
        const double half = 0.5 * (p.b - p.a);
        for (int k = 0; k <= kFine; ++k) fx[static_cast<std::size_t>(k)] = f(mid + half * R.nodes[static_cast<std::size_t>(k)]);
        double fine = 0.0, coarse = 0.0;
        for (int k = 0; k <= kFine; ++k) fine += R.w_fine[static_cast<std::size_t>(k)] * fx[static_cast<std::size_t>(k)];
        for (int k = 0; k <= kCoarse; ++k) coarse += R.w_coarse[static_cast<std::size_t>(k)] * fx[static_cast<std::size_t>(2 * k)];
        fine *= half;
        coarse *= half;
        const double err = std::fabs(fine - coarse);
        const double tol = std::max(abs_tol * (p.b - p.a) / total_width, rel_tol * std::fabs(fine));
        if (err <= tol) {
            out.value += fine;
            out.error_estimate += err;
            continue;
        }
        if (p.depth >= max_depth) {
            throw PrecisionError("integrate: maximum bisection depth reached near x = " + std::to_string(mid));
        }
        stack.push_back({mid, p.b, p.depth + 1});
        stack.push_back({p.a, mid, p.depth + 1});
    }
    return out;
}

} // namespace gausslab::quadrature
