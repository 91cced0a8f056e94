#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "qchihara/errors.hpp"

namespace qchihara {

struct GaussRule {
    std::vector<double> nodes;    ///< on [-1, 1], ascending
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule: Newton iteration on P_n from the Chebyshev guess.
inline GaussRule gauss_legendre(unsigned n) {
    if (n == 0) throw PreconditionError("gauss_legendre needs at least one node");
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const unsigned half = (n + 1) / 2;
    for (unsigned i = 0; i < half; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0;
            double p2 = 0.0;
            for (unsigned j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            dp = n * (z * p1 - p2) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        rule.nodes[i] = -z;
        rule.nodes[n - 1 - i] = z;
        rule.weights[i] = rule.weights[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    return rule;
}

struct QuadPolicy {
    double tolerance = 1e-13;        ///< agreement between successive refinements, relative to max(1,|I|)
    unsigned gauss_points = 12;
    unsigned initial_panels = 4;
    unsigned max_refinements = 12;   ///< panel count doubles on each refinement
};

struct QuadResult {
    double value = 0.0;
    double change = 0.0;  ///< |I_last - I_previous|
    unsigned panels = 0;
};

/// Composite Gauss-Legendre on [lo, hi], doubling the panel count until two
/// successive estimates agree.
template <typename Fn>
QuadResult composite_gauss(Fn&& fn, double lo, double hi, const QuadPolicy& policy) {
    const GaussRule rule = gauss_legendre(policy.gauss_points);
    auto estimate = [&](unsigned panels) {
        const double h = (hi - lo) / panels;
        double sum = 0.0;
        for (unsigned p = 0; p < panels; ++p) {
            const double mid = lo + (p + 0.5) * h;
            double panel = 0.0;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                panel += rule.weights[i] * fn(mid + 0.5 * h * rule.nodes[i]);
            }
            sum += 0.5 * h * panel;
        }
        return sum;
    };
    unsigned panels = policy.initial_panels;
    double previous = estimate(panels);
    for (unsigned r = 0; r < policy.max_refinements; ++r) {
        panels *= 2;
        const double current = estimate(panels);
        const double change = std::abs(current - previous);
        if (change <= policy.tolerance * std::max(1.0, std::abs(current))) return {current, change, panels};
        previous = current;
    }
    throw ConvergenceError("composite_gauss: no agreement after " + std::to_string(policy.max_refinements) +
                           " refinements");
}

}  // namespace qchihara
