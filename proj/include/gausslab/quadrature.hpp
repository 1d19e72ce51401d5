#pragma once

#include <functional>

namespace gausslab::quadrature {

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
};

// Adaptive Clenshaw-Curtis on [a, b]. Each panel compares the nested 16- and
// 32-interval rules and bisects until |I32 - I16| <= max(abs_tol, rel_tol |I|)
// scaled to the panel width. Throws PrecisionError after max_depth bisections.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol = 1e-14, double rel_tol = 1e-13, int max_depth = 40);

} // namespace gausslab::quadrature
