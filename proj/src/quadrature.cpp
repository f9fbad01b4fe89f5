#include "hybridbf/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hybridbf/errors.hpp"

namespace hybridbf {

// Roots of P_n by Newton iteration from the Chebyshev-like initial guess,
// weights 2 / ((1 - x^2) P_n'(x)^2).
QuadratureRule::QuadratureRule(int node_count) {
    if (node_count <= 0 || node_count % 2 == 0) {
        throw ConfigError("quadrature nodes: must be a positive odd integer, got " + std::to_string(node_count));
    }
    const int n = node_count;
    nodes_.assign(n, 0.0);
    weights_.assign(n, 0.0);

    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        // Recompute the derivative at the converged root.
        double p0 = 1.0;
        double p1 = x;
        for (int j = 2; j <= n; ++j) {
            const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);

        nodes_[i] = -x;
        nodes_[n - 1 - i] = x;
        weights_[i] = w;
        weights_[n - 1 - i] = w;
    }
    if (n % 2 == 1) nodes_[n / 2] = 0.0;
}

}  // namespace hybridbf
