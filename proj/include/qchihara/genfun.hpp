#pragma once

/**
 * @file genfun.hpp
 * @brief Generating functions of the three families as truncated series in t.
 *
 * A TruncatedSeries stores numerators e_0..e_N of  sum_n e_n t^n / [n]_q!.
 * Keeping the [n]_q! denominators implicit keeps every coefficient a polynomial:
 * the product of two such series has numerators
 *
 *     (e * f)_n = sum_k [n choose k]_q e_k f_{n-k},
 *
 * so the product formulas of the generating functions become exact convolution
 * identities over the ring. The numeric side compares partial sums with the
 * truncated infinite products in floating point.
 */

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "qchihara/families.hpp"
#include "qchihara/recurrence_values.hpp"
#include "qchihara/report.hpp"

namespace qchihara {

class TruncatedSeries {
public:
    TruncatedSeries() = default;
    explicit TruncatedSeries(std::vector<MultiPoly> numerators) : numerators_(std::move(numerators)) {
        if (numerators_.empty()) throw PreconditionError("TruncatedSeries needs at least the t^0 coefficient");
    }

    /// The series 1, truncated at order n.
    static TruncatedSeries one(unsigned order) {
        std::vector<MultiPoly> e(order + 1);
        e[0] = MultiPoly(1);
        return TruncatedSeries(std::move(e));
    }

    unsigned order() const noexcept { return static_cast<unsigned>(numerators_.size() - 1); }
    const MultiPoly& numerator(unsigned n) const { return numerators_.at(n); }
    const std::vector<MultiPoly>& numerators() const noexcept { return numerators_; }

    /// (numerator, [n]_q!) for each n: the coefficient of t^n is their quotient.
    std::vector<std::pair<MultiPoly, MultiPoly>> coefficient_pairs() const {
        std::vector<std::pair<MultiPoly, MultiPoly>> out;
        for (unsigned n = 0; n <= order(); ++n) out.emplace_back(numerators_[n], q_factorial(n));
        return out;
    }

    /// Product truncated at the smaller order.
    friend TruncatedSeries operator*(const TruncatedSeries& l, const TruncatedSeries& r) {
        const unsigned n_max = std::min(l.order(), r.order());
        std::vector<MultiPoly> e(n_max + 1);
        for (unsigned n = 0; n <= n_max; ++n) {
            for (unsigned k = 0; k <= n; ++k) {
                if (l.numerators_[k].is_zero() || r.numerators_[n - k].is_zero()) continue;
                e[n] += q_binomial(n, k) * l.numerators_[k] * r.numerators_[n - k];
            }
        }
        return TruncatedSeries(std::move(e));
    }

    friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

private:
    std::vector<MultiPoly> numerators_;
};

/// sum t^n/[n]_q! P_n for a family P, up to order n_max.
inline TruncatedSeries family_series(const PolyFamily& family, unsigned order) {
    std::vector<MultiPoly> e;
    for (unsigned n = 0; n <= order; ++n) e.push_back(family[n]);
    return TruncatedSeries(std::move(e));
}

/// phi(t, x | q): the q-Hermite generating function.
inline TruncatedSeries phi_series(unsigned order) { return family_series(detail::shared_hermite(), order); }

/// psi(t, x | q): the B_n generating function.
inline TruncatedSeries psi_series(unsigned order) { return family_series(detail::shared_b(), order); }

/// psi(c t, a/c | q), with numerators c^n B_n(a/c) written as polynomials in a, c.
inline TruncatedSeries psi_series_at_ratio(unsigned order) {
    std::vector<MultiPoly> e;
    for (unsigned n = 0; n <= order; ++n) e.push_back(homogenize_ratio(b_poly(n), n));
    return TruncatedSeries(std::move(e));
}

/// f(t, x | q, a, c^2).
inline TruncatedSeries asc_series_c_squared(unsigned order) {
    const PolyFamily family = PolyFamily::asc(var(Var::a), var(Var::c, 2));
    return family_series(family, order);
}

/// sum_k [n choose k]_q B_{n-k}(x) H_k(x), which must vanish for n >= 1.
inline MultiPoly convolution_zero_residual(unsigned n) {
    MultiPoly sum;
    for (unsigned k = 0; k <= n; ++k) sum += q_binomial(n, k) * b_poly(n - k) * hermite_poly(k);
    return sum;
}

/// p_n(x|q,a,c^2) - sum_k [n choose k]_q c^{n-k} B_{n-k}(a/c) H_k(x), which must vanish for n >= 0.
inline MultiPoly expansion_residual(unsigned n, const PolyFamily& asc_c2) {
    MultiPoly sum;
    for (unsigned k = 0; k <= n; ++k) {
        sum += q_binomial(n, k) * homogenize_ratio(b_poly(n - k), n - k) * hermite_poly(k);
    }
    return asc_c2[n] - sum;
}

struct GenfunIdentityReport {
    ExactReport g1;  ///< f(t) = psi(ct, a/c) phi(t), coefficient by coefficient
    ExactReport g2;  ///< psi(t) phi(t) = 1, coefficient by coefficient
    bool ok() const { return g1.ok() && g2.ok(); }
};

/// Coefficient-level check of both product identities through order n_max. The
/// t^n coefficient of the g2 residual is exactly the convolution-zero sum, and the
/// g1 residual coefficient is exactly the expansion residual.
inline GenfunIdentityReport verify_g1_g2(unsigned n_max) {
    if (n_max < 1) throw PreconditionError("verify_g1_g2 requires n_max >= 1");
    GenfunIdentityReport report;
    report.g1.identity = "phi-psi-product";
    report.g2.identity = "phi-psi-inverse";

    Stopwatch w2;
    const TruncatedSeries g2_product = psi_series(n_max) * phi_series(n_max);
    const TruncatedSeries identity = TruncatedSeries::one(n_max);
    for (unsigned n = 0; n <= n_max; ++n) {
        report.g2.cases.push_back({"n=" + std::to_string(n), g2_product.numerator(n) - identity.numerator(n)});
    }
    report.g2.elapsed_ms = w2.elapsed_ms();

    Stopwatch w1;
    const TruncatedSeries g1_product = psi_series_at_ratio(n_max) * phi_series(n_max);
    const TruncatedSeries f = asc_series_c_squared(n_max);
    for (unsigned n = 0; n <= n_max; ++n) {
        report.g1.cases.push_back({"n=" + std::to_string(n), f.numerator(n) - g1_product.numerator(n)});
    }
    report.g1.elapsed_ms = w1.elapsed_ms();
    return report;
}

enum class GenFun { f, phi, psi };

inline std::string to_string(GenFun which) {
    switch (which) {
        case GenFun::f: return "f";
        case GenFun::phi: return "phi";
        case GenFun::psi: return "psi";
    }
    return "?";
}

struct ProductCheckInput {
    double t = 0.1;
    double x = 0.0;
    double a = 0.0;
    double b = 0.0;
    double q = 0.0;
    unsigned n_terms = 30;
    unsigned k_factors = 0;  ///< 0 selects the default from the geometric tail bound
    double tol = 1e-10;
    bool enforce_guard = true;
};

struct ProductCheckResult {
    GenFun which{};
    double partial_sum = 0.0;
    double product = 0.0;
    double difference = 0.0;
    unsigned k_factors = 0;
    bool passed = false;
};

/// Smallest K with (1-q)(s|t| + r t^2)|q|^K < 1e-16, capped at 200; s and r bound
/// the linear and quadratic coefficients of the product's factors.
inline unsigned default_product_factors(const ProductCheckInput& in) {
    const double s = std::max(std::abs(in.x), std::abs(in.a));
    const double r = std::max(1.0, std::abs(in.b));
    const double scale = (1.0 - in.q) * (s * std::abs(in.t) + r * in.t * in.t);
    unsigned k = 1;
    double qk = std::abs(in.q);
    while (k < 200 && scale * qk >= 1e-16) {
        qk *= std::abs(in.q);
        ++k;
    }
    return k;
}

inline void check_product_domain(const ProductCheckInput& in) {
    if (!(std::abs(in.q) < 1.0)) throw DomainError("generating-function products need |q| < 1");
    if (in.enforce_guard && !(std::abs(in.t) * (std::abs(in.x) + std::abs(in.t)) * (1.0 - in.q) < 0.5)) {
        throw PreconditionError("convergence guard |t|(|x|+|t|)(1-q) < 0.5 violated");
    }
}

/// Partial sum of t^n/[n]_q! P_n(x), with P_n from the floating-point recurrences.
inline double generating_partial_sum(GenFun which, const ProductCheckInput& in) {
    std::vector<double> p;
    switch (which) {
        case GenFun::f: p = numeric::asc_values(in.n_terms, in.x, in.q, in.a, in.b); break;
        case GenFun::phi: p = numeric::hermite_values(in.n_terms, in.x, in.q); break;
        case GenFun::psi: p = numeric::b_values(in.n_terms, in.x, in.q); break;
    }
    double sum = 0.0;
    double tn = 1.0;
    double fact = 1.0;
    for (unsigned n = 0; n <= in.n_terms; ++n) {
        if (n > 0) fact *= numeric::q_int(n, in.q);
        sum += tn * p[n] / fact;
        tn *= in.t;
    }
    return sum;
}

inline double generating_product(GenFun which, const ProductCheckInput& in, unsigned k_factors) {
    const double w = 1.0 - in.q;
    double prod = 1.0;
    double qk = 1.0;
    for (unsigned k = 0; k < k_factors; ++k) {
        const double base = 1.0 - w * in.x * in.t * qk + w * in.t * in.t * qk * qk;
        switch (which) {
            case GenFun::phi: prod /= base; break;
            case GenFun::psi: prod *= base; break;
            case GenFun::f: prod *= (1.0 - w * in.a * in.t * qk + w * in.b * in.t * in.t * qk * qk) / base; break;
        }
        qk *= in.q;
    }
    return prod;
}

/// Compares the truncated infinite product with the partial sum of the series.
inline ProductCheckResult numeric_product_check(GenFun which, const ProductCheckInput& in) {
    check_product_domain(in);
    ProductCheckResult r;
    r.which = which;
    r.k_factors = in.k_factors != 0 ? in.k_factors : default_product_factors(in);
    r.partial_sum = generating_partial_sum(which, in);
    r.product = generating_product(which, in, r.k_factors);
    r.difference = std::abs(r.partial_sum - r.product);
    r.passed = r.difference < in.tol;
    return r;
}

/// psi(t,x) phi(t,x) = 1 from the two partial sums.
inline ProductCheckResult numeric_inverse_check(const ProductCheckInput& in) {
    check_product_domain(in);
    ProductCheckResult r;
    r.which = GenFun::psi;
    r.partial_sum = generating_partial_sum(GenFun::psi, in) * generating_partial_sum(GenFun::phi, in);
    r.product = 1.0;
    r.difference = std::abs(r.partial_sum - 1.0);
    r.passed = r.difference < in.tol;
    return r;
}

}  // namespace qchihara
