#pragma once

/**
 * @file measures.hpp
 * @brief Densities and the Poisson--Mehler kernel for |q| < 1, with quadrature checks.
 *
 * All densities live on the interval x^2 < 4/(1-q). Each is an infinite product
 * evaluated by summing logarithms of its factors until a factor is within
 * epsilon (1-|q|) of 1. The k = 0 factor (4 - (1-q)x^2) of the q-Hermite weight is
 * merged analytically with the 1/sqrt(4 - (1-q)x^2) prefactor, so every density is
 * evaluated as  sqrt(1-q) sqrt(4 - (1-q)x^2) / (2 pi) * prod_k F_k  and stays finite
 * at the edge of the support.
 *
 * Integrals over the support substitute x = 2 cos(theta) / sqrt(1-q). The Jacobian
 * cancels the edge singularity and leaves a smooth integrand on (0, pi).
 */

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qchihara/quadrature.hpp"
#include "qchihara/recurrence_values.hpp"
#include "qchihara/report.hpp"

namespace qchihara {

struct TruncationPolicy {
    double epsilon = 1e-15;
    unsigned max_factors = 500;
};

struct ProductDiagnostics {
    unsigned factors = 0;
    bool hit_cap = false;  ///< truncated at max_factors before the deviation test passed
};

/// prod_{k>=0} factor(k), via summed logarithms.
template <typename Factor>
double infinite_product(Factor&& factor, double q, const TruncationPolicy& policy,
                        ProductDiagnostics* diag = nullptr) {
    const double threshold = policy.epsilon * (1.0 - std::abs(q));
    double log_sum = 0.0;
    bool negative = false;
    double qk = 1.0;
    ProductDiagnostics d;
    d.hit_cap = true;
    for (unsigned k = 0; k < policy.max_factors; ++k) {
        const double f = factor(k);
        d.factors = k + 1;
        if (f == 0.0) {
            if (diag) *diag = {d.factors, false};
            return 0.0;
        }
        log_sum += std::log(std::abs(f));
        negative ^= (f < 0.0);
        // second condition keeps a factor that is accidentally close to 1 early on
        // from ending the product outside the geometric tail
        if (std::abs(f - 1.0) < threshold && qk < 1e-3) {
            d.hit_cap = false;
            break;
        }
        qk *= std::abs(q);
    }
    if (diag) *diag = d;
    const double value = std::exp(log_sum);
    return negative ? -value : value;
}

inline void require_q(double q) {
    if (!(std::abs(q) < 1.0)) throw DomainError("continuous densities need |q| < 1");
}

/// 2 / sqrt(1-q): the support is (-L, L).
inline double support_half_width(double q) {
    require_q(q);
    return 2.0 / std::sqrt(1.0 - q);
}

namespace detail {

inline double edge_prefactor(double x, double q) {
    const double inside = 4.0 - (1.0 - q) * x * x;
    if (inside <= 0.0) return 0.0;
    return std::sqrt(1.0 - q) * std::sqrt(inside) / (2.0 * std::numbers::pi);
}

/// (1+q^k)^2 - (1-q) x^2 q^k for k >= 1; the k = 0 factor lives in edge_prefactor.
inline double hermite_weight_factor(unsigned k, double qk, double x, double q) {
    if (k == 0) return 1.0;
    return (1.0 + qk) * (1.0 + qk) - (1.0 - q) * x * x * qk;
}

/// (1 - rho^2 q^{2k})^2 - (1-q) rho q^k (1 + rho^2 q^{2k}) x y + (1-q) rho^2 (x^2+y^2) q^{2k}
inline double kernel_denominator(double qk, double x, double y, double rho, double q) {
    const double r2q2k = rho * rho * qk * qk;
    return (1.0 - r2q2k) * (1.0 - r2q2k) - (1.0 - q) * rho * qk * (1.0 + r2q2k) * x * y +
           (1.0 - q) * rho * rho * (x * x + y * y) * qk * qk;
}

inline bool outside_support(double x, double q) { return (1.0 - q) * x * x >= 4.0; }

}  // namespace detail

/// q-Hermite weight f_H(x); zero outside the support.
inline double density_qhermite(double x, double q, const TruncationPolicy& policy = {},
                               ProductDiagnostics* diag = nullptr) {
    require_q(q);
    if (detail::outside_support(x, q)) return 0.0;
    const double product = infinite_product(
        [&](unsigned k) {
            const double qk = std::pow(q, k);
            return detail::hermite_weight_factor(k, qk, x, q) * (1.0 - qk * q);
        },
        q, policy, diag);
    return detail::edge_prefactor(x, q) * product;
}

/// Poisson--Mehler kernel g_H(x, y, rho) in product form.
inline double poisson_mehler(double x, double y, double rho, double q, const TruncationPolicy& policy = {},
                             ProductDiagnostics* diag = nullptr) {
    require_q(q);
    if (!(std::abs(rho) < 1.0)) throw DomainError("Poisson-Mehler kernel needs |rho| < 1");
    const double edge = 4.0 / (1.0 - q) * (1.0 + 1e-12);
    if (x * x > edge || y * y > edge) throw DomainError("Poisson-Mehler kernel needs x^2, y^2 <= 4/(1-q)");
    return infinite_product(
        [&](unsigned k) {
            const double qk = std::pow(q, k);
            return (1.0 - rho * rho * qk) / detail::kernel_denominator(qk, x, y, rho, q);
        },
        q, policy, diag);
}

/// Empirical constant C_q in |H_n(x)| <= C_q (n+1) (1-q)^{-n/2} on the support:
/// the maximum of the ratio over n <= 40 and a 401-point grid.
inline double hermite_bound_constant(double q) {
    const double half = support_half_width(q);
    double c = 0.0;
    for (int i = 0; i <= 400; ++i) {
        const double x = -half + 2.0 * half * i / 400.0;
        const auto h = numeric::hermite_values(40, x, q);
        for (unsigned n = 0; n <= 40; ++n) {
            c = std::max(c, std::abs(h[n]) * std::pow(1.0 - q, 0.5 * n) / (n + 1.0));
        }
    }
    return c;
}

/// Number of terms of the kernel series needed for tail < tol. The n-th term is
/// bounded by C_q^2 (n+1)^2 |rho|^n (1-q)^{-n} / |[n]_q!|, and the tail by that bound
/// times a geometric factor once the bound's ratio r stays below 1.
inline unsigned kernel_series_terms(double rho, double q, double tol) {
    require_q(q);
    const double c = hermite_bound_constant(q);
    double bound = c * c;  // n = 0
    for (unsigned n = 0; n < 5000; ++n) {
        const double r = std::abs(rho) * std::pow((n + 3.0) / (n + 2.0), 2.0) /
                         ((1.0 - q) * std::abs(numeric::q_int(n + 1, q)));
        if (r < 1.0 && bound / (1.0 - r) < tol) return n;
        bound *= std::abs(rho) * std::pow((n + 2.0) / (n + 1.0), 2.0) /
                 ((1.0 - q) * std::abs(numeric::q_int(n + 1, q)));
    }
    throw ConvergenceError("kernel series: tail bound never fell below tolerance");
}

/// sum_{n<=terms} rho^n / [n]_q! H_n(x) H_n(y).
inline double poisson_mehler_series(double x, double y, double rho, double q, unsigned terms) {
    require_q(q);
    const auto hx = numeric::hermite_values(terms, x, q);
    const auto hy = numeric::hermite_values(terms, y, q);
    double sum = 0.0;
    double coef = 1.0;  // rho^n / [n]_q!
    for (unsigned n = 0; n <= terms; ++n) {
        if (n > 0) coef *= rho / numeric::q_int(n, q);
        sum += coef * hx[n] * hy[n];
    }
    return sum;
}

/// Density of mu(dx | rho, y): the solution of L(H_n) = rho^n H_n(y) for |q| < 1.
inline double density_mu(double x, double rho, double y, double q, const TruncationPolicy& policy = {},
                         ProductDiagnostics* diag = nullptr) {
    require_q(q);
    if (!(std::abs(rho) < 1.0)) throw DomainError("density_mu needs |rho| < 1");
    if (!(y * y * (1.0 - q) < 4.0)) throw DomainError("density_mu needs y^2 (1-q) < 4");
    if (detail::outside_support(x, q)) return 0.0;
    const double product = infinite_product(
        [&](unsigned k) {
            const double qk = std::pow(q, k);
            return (1.0 - rho * rho * qk) * (1.0 - qk * q) * detail::hermite_weight_factor(k, qk, x, q) /
                   detail::kernel_denominator(qk, x, y, rho, q);
        },
        q, policy, diag);
    return detail::edge_prefactor(x, q) * product;
}

/// Weight of the Al-Salam--Chihara polynomials p_n(x|q,a,b).
inline double density_asc(double x, double a, double b, double q, const TruncationPolicy& policy = {},
                          ProductDiagnostics* diag = nullptr) {
    require_q(q);
    if (!(b > 0.0 && b < 1.0)) throw DomainError("density_asc needs 0 < b < 1");
    if (!(a * a * (1.0 - q) < 4.0 * b)) throw DomainError("density_asc needs a^2 (1-q) < 4b");
    if (detail::outside_support(x, q)) return 0.0;
    const double product = infinite_product(
        [&](unsigned k) {
            const double qk = std::pow(q, k);
            const double bq2k = b * qk * qk;
            const double denom = (1.0 - bq2k) * (1.0 - bq2k) - (1.0 - q) * a * qk * (1.0 + bq2k) * x +
                                 (1.0 - q) * (b * x * x + a * a) * qk * qk;
            return (1.0 - b * qk) * (1.0 - qk * q) * detail::hermite_weight_factor(k, qk, x, q) / denom;
        },
        q, policy, diag);
    return detail::edge_prefactor(x, q) * product;
}

enum class DensityKind { qhermite, mu, asc };

/// Parameters of one of the three densities, with the constraints under which it is a
/// probability density.
struct DensityParams {
    DensityKind kind = DensityKind::qhermite;
    double q = 0.0;
    double rho = 0.0;  ///< mu only
    double y = 0.0;    ///< mu only
    double a = 0.0;    ///< asc only
    double b = 0.5;    ///< asc only

    void validate() const {
        require_q(q);
        if (kind == DensityKind::mu) {
            if (!(std::abs(rho) < 1.0)) throw DomainError("mu density needs |rho| < 1");
            if (!(y * y * (1.0 - q) < 4.0)) throw DomainError("mu density needs y^2 (1-q) < 4");
        }
        if (kind == DensityKind::asc) {
            if (!(b > 0.0 && b < 1.0)) throw DomainError("asc density needs 0 < b < 1");
            if (!(a * a * (1.0 - q) < 4.0 * b)) throw DomainError("asc density needs a^2 (1-q) < 4b");
        }
    }
};

inline double density(const DensityParams& p, double x, const TruncationPolicy& policy = {}) {
    switch (p.kind) {
        case DensityKind::qhermite: return density_qhermite(x, p.q, policy);
        case DensityKind::mu: return density_mu(x, p.rho, p.y, p.q, policy);
        case DensityKind::asc: return density_asc(x, p.a, p.b, p.q, policy);
    }
    return 0.0;
}

/// (x, density) at `points` equally spaced points covering the closed support.
inline std::vector<std::pair<double, double>> density_samples(const DensityParams& p, unsigned points,
                                                              const TruncationPolicy& policy = {}) {
    p.validate();
    if (points < 2) throw PreconditionError("density_samples needs at least two points");
    const double half = support_half_width(p.q);
    std::vector<std::pair<double, double>> out;
    out.reserve(points);
    for (unsigned i = 0; i < points; ++i) {
        const double x = -half + 2.0 * half * i / (points - 1);
        out.emplace_back(x, density(p, x, policy));
    }
    return out;
}

/// Integral of fn over x^2 < 4/(1-q), after x = L cos(theta).
template <typename Fn>
QuadResult integrate(Fn&& fn, double q, const QuadPolicy& policy = {}) {
    const double half = support_half_width(q);
    return composite_gauss(
        [&](double theta) { return fn(half * std::cos(theta)) * half * std::sin(theta); }, 0.0,
        std::numbers::pi, policy);
}

/// Chapman--Kolmogorov relation at one point:
///   density_mu(z; rho1 rho2, x)  vs  int density_mu(z; rho1, y) density_mu(y; rho2, x) dy.
/// Residual is the absolute difference.
inline NumericCase verify_chapman(double rho1, double rho2, double x, double z, double q, double tol,
                                  const QuadPolicy& quad = {}, const TruncationPolicy& policy = {}) {
    require_q(q);
    if (!(std::abs(rho1 * rho2) < 1.0)) throw DomainError("Chapman relation needs |rho1 rho2| < 1");
    const double edge = 4.0 / (1.0 - q);
    if (!(x * x < edge && z * z < edge)) throw DomainError("Chapman relation needs x, z inside the support");
    const double lhs = density_mu(z, rho1 * rho2, x, q, policy);
    const double rhs =
        integrate([&](double y) { return density_mu(z, rho1, y, q, policy) * density_mu(y, rho2, x, q, policy); },
                  q, quad)
            .value;
    std::ostringstream label;
    label << "q=" << q << ",rho1=" << rho1 << ",rho2=" << rho2 << ",x=" << x << ",z=" << z;
    return {label.str(), lhs, rhs, std::abs(lhs - rhs), tol};
}

/// int H_n(x) mu(dx | rho, y) against rho^n H_n(y).
inline NumericCase conditional_moment_case(unsigned n, double rho, double y, double q, double tol,
                                           const QuadPolicy& quad = {}, const TruncationPolicy& policy = {}) {
    const double lhs =
        integrate([&](double x) { return numeric::hermite_value(n, x, q) * density_mu(x, rho, y, q, policy); }, q,
                  quad)
            .value;
    const double rhs = std::pow(rho, n) * numeric::hermite_value(n, y, q);
    std::ostringstream label;
    label << "n=" << n << ",q=" << q << ",rho=" << rho << ",y=" << y;
    return {label.str(), lhs, rhs, std::abs(lhs - rhs), tol};
}

/// Kernel product vs series at one point; series length from kernel_series_terms(., 1e-3 tol).
inline NumericCase kernel_agreement_case(double x, double y, double rho, double q, double tol,
                                         const TruncationPolicy& policy = {}) {
    const double product = poisson_mehler(x, y, rho, q, policy);
    const unsigned terms = kernel_series_terms(rho, q, 1e-3 * tol);
    const double series = poisson_mehler_series(x, y, rho, q, terms);
    std::ostringstream label;
    label << "q=" << q << ",rho=" << rho << ",x=" << x << ",y=" << y << ",terms=" << terms;
    return {label.str(), series, product, std::abs(series - product), tol};
}

}  // namespace qchihara
