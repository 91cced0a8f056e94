#pragma once

#include <cmath>
#include <complex>
#include <sstream>
#include <string>
#include <vector>

#include "qchihara/genfun.hpp"

namespace qchihara {

namespace detail {

inline std::string label_n(unsigned n) { return "n=" + std::to_string(n); }

/// sum_{k=k_min}^n [n choose k]_q c^{n-k} B_{n-k}(a/c) (H_k(x) - c^k H_k(a/c)), homogenized.
inline MultiPoly connection_sum(unsigned n, unsigned k_min) {
    MultiPoly sum;
    for (unsigned k = k_min; k <= n; ++k) {
        const MultiPoly diff = hermite_poly(k) - homogenize_ratio(hermite_poly(k), k);
        if (diff.is_zero()) continue;
        sum += q_binomial(n, k) * homogenize_ratio(b_poly(n - k), n - k) * diff;
    }
    return sum;
}

}  // namespace detail

/// Connection formula between p_n(x|q,a,c^2) and the q-Hermite polynomials, checked
/// exactly in x, a, c, q for 1 <= n <= n_max. The a/c arguments are homogenized, so
/// the check is a polynomial identity that also covers c = 0.
inline ExactReport verify_mi(unsigned n_max) {
    if (n_max < 1) throw PreconditionError("verify_mi requires n_max >= 1");
    Stopwatch watch;
    ExactReport report{"connection", {}, 0.0};
    const PolyFamily asc = PolyFamily::asc(var(Var::a), var(Var::c, 2));
    for (unsigned n = 1; n <= n_max; ++n) {
        report.cases.push_back({detail::label_n(n), asc[n] - detail::connection_sum(n, 1)});
    }
    report.elapsed_ms = watch.elapsed_ms();
    return report;
}

/// The k = 0 term of the connection sum vanishes, so starting the sum at 0 gives the
/// same polynomial. Residual is the difference of the two forms.
inline ExactReport verify_mi_k0_term(unsigned n_max) {
    Stopwatch watch;
    ExactReport report{"connection-k0", {}, 0.0};
    for (unsigned n = 1; n <= n_max; ++n) {
        report.cases.push_back({detail::label_n(n), detail::connection_sum(n, 0) - detail::connection_sum(n, 1)});
    }
    report.elapsed_ms = watch.elapsed_ms();
    return report;
}

/// Connection formula at a = 0, c = 1: p_n(x|q,0,1) against the specialized sum.
inline ExactReport verify_mi_unit_c(unsigned n_max) {
    Stopwatch watch;
    ExactReport report{"connection-unit-c", {}, 0.0};
    const PolyFamily asc = PolyFamily::asc(0, 1);
    for (unsigned n = 1; n <= n_max; ++n) {
        const MultiPoly rhs = detail::connection_sum(n, 1).substitute(Var::a, 0).substitute(Var::c, 1);
        report.cases.push_back({detail::label_n(n), asc[n] - rhs});
    }
    report.elapsed_ms = watch.elapsed_ms();
    return report;
}

/// The b = 0 boundary: the homogenized sum at c = 0 against p_n(x|q,a,0).
inline ExactReport verify_mi_b_zero(unsigned n_max) {
    Stopwatch watch;
    ExactReport report{"connection-b0", {}, 0.0};
    const PolyFamily asc = PolyFamily::asc(var(Var::a), 0);
    for (unsigned n = 1; n <= n_max; ++n) {
        const MultiPoly rhs = detail::connection_sum(n, 1).substitute(Var::c, 0);
        report.cases.push_back({detail::label_n(n), asc[n] - rhs});
    }
    report.elapsed_ms = watch.elapsed_ms();
    return report;
}

/// p_n(x|q,a,c^2) = sum_{k=0}^n [n choose k]_q c^{n-k} B_{n-k}(a/c) H_k(x), 0 <= n <= n_max.
inline ExactReport verify_expansion(unsigned n_max) {
    Stopwatch watch;
    ExactReport report{"expansion", {}, 0.0};
    const PolyFamily asc = PolyFamily::asc(var(Var::a), var(Var::c, 2));
    for (unsigned n = 0; n <= n_max; ++n) report.cases.push_back({detail::label_n(n), expansion_residual(n, asc)});
    report.elapsed_ms = watch.elapsed_ms();
    return report;
}

/// sum_{k=0}^n [n choose k]_q B_{n-k}(x) H_k(x) = 0, 1 <= n <= n_max.
inline ExactReport verify_convolution_zero(unsigned n_max) {
    Stopwatch watch;
    ExactReport report{"zero-convolution", {}, 0.0};
    for (unsigned n = 1; n <= n_max; ++n) report.cases.push_back({detail::label_n(n), convolution_zero_residual(n)});
    report.elapsed_ms = watch.elapsed_ms();
    return report;
}

/// Right-hand side of the B_n <-> H_n(.|1/q) relation, evaluated in complex arithmetic:
///   q > 0:  i^n q^{n(n-2)/2} H_n(i sqrt(q) x | 1/q)
///   q < 0:  (-1)^{n(n-1)/2} |q|^{n(n-2)/2} H_n(-sqrt(|q|) x | 1/q)
inline ComplexF b_from_inverse_hermite(unsigned n, double x, double q) {
    if (q == 0.0) throw PreconditionError("B_n / H_n(.|1/q) relation needs q != 0");
    using cd = std::complex<double>;
    const double half_power = static_cast<double>(n) * (static_cast<double>(n) - 2.0) / 2.0;
    const double inv_q = 1.0 / q;
    if (q > 0) {
        const cd arg(0.0, std::sqrt(q) * x);
        const cd h = numeric::hermite_value<cd>(n, arg, inv_q);
        const cd i_n = std::pow(cd(0.0, 1.0), static_cast<int>(n));
        return ComplexF(i_n * std::pow(q, half_power) * h);
    }
    const cd arg(-std::sqrt(-q) * x, 0.0);
    const cd h = numeric::hermite_value<cd>(n, arg, inv_q);
    const double sign = ((n * (n - 1) / 2) % 2 == 0) ? 1.0 : -1.0;
    return ComplexF(sign * std::pow(-q, half_power) * h);
}

/// Checks B_n(x|q) (exact polynomial, evaluated) against b_from_inverse_hermite for
/// 0 <= n <= n_max over the given grid. Residual is |LHS - RHS| in the complex plane.
inline NumericReport verify_bnah(unsigned n_max, const std::vector<double>& q_values,
                                 const std::vector<double>& x_values, double tol) {
    Stopwatch watch;
    NumericReport report{"b-inverse-hermite", {}, 0.0};
    for (double q : q_values) {
        if (q == 0.0 || !(std::abs(q) < 1.0)) {
            throw PreconditionError("verify_bnah: q must lie in (-1,0) or (0,1)");
        }
        for (double x : x_values) {
            for (unsigned n = 0; n <= n_max; ++n) {
                const double lhs = b_poly(n).evaluate(Assignment<double>{{Var::x, x}, {Var::q, q}});
                const ComplexF rhs = b_from_inverse_hermite(n, x, q);
                std::ostringstream label;
                label << "n=" << n << ",q=" << q << ",x=" << x;
                report.cases.push_back({label.str(), lhs, rhs.real(), std::abs(std::complex<double>(lhs) - rhs.value()), tol});
            }
        }
    }
    report.elapsed_ms = watch.elapsed_ms();
    return report;
}

/// Linear functional on polynomials in x with L(H_n) = rho^n H_n(y).
class MomentFunctional {
public:
    MomentFunctional(MultiPoly rho, MultiPoly y) : rho_(std::move(rho)), y_(std::move(y)) {}
    /// Symbolic rho and y.
    static MomentFunctional symbolic() { return {var(Var::rho), var(Var::y)}; }

    const MultiPoly& rho() const noexcept { return rho_; }
    const MultiPoly& y() const noexcept { return y_; }

    /// rho^k H_k(y).
    MultiPoly image_of_hermite(unsigned k) const {
        return rho_.pow(k) * hermite_poly(k).substitute(Var::x, y_);
    }

private:
    MultiPoly rho_;
    MultiPoly y_;
};

/// L(p) for p a polynomial in x (other variables are treated as scalars).
inline MultiPoly apply_functional(const MomentFunctional& functional, const MultiPoly& p) {
    const std::vector<MultiPoly> coeffs = hermite_to_monomial(p);
    MultiPoly result;
    for (unsigned k = 0; k < coeffs.size(); ++k) {
        if (!coeffs[k].is_zero()) result += coeffs[k] * functional.image_of_hermite(k);
    }
    return result;
}

/// p_n(x|q, rho*y, rho^2): the family orthogonal under the functional.
inline PolyFamily conditional_asc_family() {
    return PolyFamily::asc(var(Var::rho) * var(Var::y), var(Var::rho, 2));
}

struct T2Report {
    ExactReport annihilation;   ///< L(p_n) = 0, n >= 1
    ExactReport orthogonality;  ///< L(p_k p_n) = 0, k < n
    bool ok() const { return annihilation.ok() && orthogonality.ok(); }
};

/// Orthogonality of p_n(x|q, rho y, rho^2) under L, exact in rho, y, q.
inline T2Report verify_t2(unsigned n_max) {
    if (n_max < 1) throw PreconditionError("verify_t2 requires n_max >= 1");
    const MomentFunctional functional = MomentFunctional::symbolic();
    const PolyFamily p = conditional_asc_family();
    T2Report report;
    report.annihilation.identity = "annihilation";
    report.orthogonality.identity = "orthogonality";

    Stopwatch w1;
    for (unsigned n = 1; n <= n_max; ++n) {
        report.annihilation.cases.push_back({detail::label_n(n), apply_functional(functional, p[n])});
    }
    report.annihilation.elapsed_ms = w1.elapsed_ms();

    Stopwatch w2;
    for (unsigned n = 1; n <= n_max; ++n) {
        for (unsigned k = 0; k < n; ++k) {
            report.orthogonality.cases.push_back({"k=" + std::to_string(k) + ",n=" + std::to_string(n),
                                                  apply_functional(functional, p[k] * p[n])});
        }
    }
    report.orthogonality.elapsed_ms = w2.elapsed_ms();
    return report;
}

/// [n]_q! prod_{i=1}^n (1 - r q^{i-1}), the squared norm of p_n when r = rho^2 (or b).
inline MultiPoly asc_norm(unsigned n, const MultiPoly& r) {
    MultiPoly norm = q_factorial(n);
    for (unsigned i = 1; i <= n; ++i) norm *= MultiPoly(1) - r * var(Var::q, i - 1);
    return norm;
}

/// L(p_n^2) = [n]_q! prod (1 - rho^2 q^{i-1}) for 0 <= n <= n_max.
inline ExactReport verify_t2_norms(unsigned n_max) {
    Stopwatch watch;
    ExactReport report{"norm", {}, 0.0};
    const MomentFunctional functional = MomentFunctional::symbolic();
    const PolyFamily p = conditional_asc_family();
    for (unsigned n = 0; n <= n_max; ++n) {
        report.cases.push_back(
            {detail::label_n(n), apply_functional(functional, p[n] * p[n]) - asc_norm(n, var(Var::rho, 2))});
    }
    report.elapsed_ms = watch.elapsed_ms();
    return report;
}

}  // namespace qchihara
