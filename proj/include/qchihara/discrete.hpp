#pragma once

/**
 * @file discrete.hpp
 * @brief The q > 1 branch of the conditional moment problem L(H_n) = rho^n H_n(y).
 *
 * The orthogonal polynomials of L satisfy
 *     p_{n+1} = (x - rho y q^n) p_n - (1 - rho^2 q^{n-1}) [n]_q p_{n-1},
 * so a positive solution needs every third-term coefficient 1 - rho^2 q^{n-1} >= 0.
 * For q > 1 these coefficients decrease to -infinity; a solution exists only when one of
 * them is exactly zero, i.e. rho^2 = q^{-m}. The solution is then the discrete measure
 * on the m+1 roots of p_{m+1}.
 *
 * existence_check works in exact rationals. The measure itself is float64: roots from
 * the symmetric Jacobi matrix, weights from the moment system V lambda = e_0 and,
 * independently, from the first eigenvector components.
 */

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qchihara/families.hpp"
#include "qchihara/recurrence_values.hpp"
#include "qchihara/report.hpp"

namespace qchihara {

struct NormDiagnostics {
    /// coefficients[n-1] = 1 - rho^2 q^{n-1}, n = 1..N
    std::vector<Rational> coefficients;
    /// norms[0] = 1, norms[n] = [n]_q (1 - rho^2 q^{n-1}) norms[n-1]: the value of L(p_n^2)
    std::vector<Rational> norms;
    std::optional<unsigned> first_zero_index;
    std::optional<unsigned> first_negative_index;
};

/// Scan n = 1..n_last, stopping after the first coefficient that is zero or negative.
inline NormDiagnostics norm_diagnostics(const Rational& rho2, const Rational& q, unsigned n_last) {
    NormDiagnostics d;
    d.norms.push_back(1);
    Rational qpow = 1;  // q^{n-1}
    Rational qint = 0;  // [n]_q
    for (unsigned n = 1; n <= n_last; ++n) {
        qint += qpow;
        const Rational coef = 1 - rho2 * qpow;
        d.coefficients.push_back(coef);
        d.norms.push_back(qint * coef * d.norms.back());
        if (sgn(coef) == 0) {
            d.first_zero_index = n;
            break;
        }
        if (sgn(coef) < 0) {
            d.first_negative_index = n;
            break;
        }
        qpow *= q;
    }
    return d;
}

enum class Verdict { Member, Zero, NoSolution, Inconclusive };

inline std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Member: return "Member";
        case Verdict::Zero: return "Zero";
        case Verdict::NoSolution: return "NoSolution";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

struct ExistenceVerdict {
    Verdict kind = Verdict::Inconclusive;
    std::optional<unsigned> m;               ///< Member: rho^2 = q^{-m}
    std::optional<unsigned> first_negative;  ///< NoSolution: first n with 1 - rho^2 q^{n-1} < 0
    NormDiagnostics diagnostics;
};

/// Exact classification of rho^2 for q > 1. Member(m) when rho^2 = q^{-m} with
/// m <= n_max, Zero when rho^2 = 0, NoSolution(n) when a third-term coefficient turns
/// negative at n <= n_max + 1, and Inconclusive when rho^2 < q^{-n_max} with no zero hit.
inline ExistenceVerdict existence_check(const Rational& rho2, const Rational& q, unsigned n_max) {
    if (!(q > 1)) throw PreconditionError("existence_check requires q > 1");
    if (sgn(rho2) < 0) throw PreconditionError("existence_check requires rho^2 >= 0");
    ExistenceVerdict v;
    if (sgn(rho2) == 0) {
        v.kind = Verdict::Zero;
        return v;
    }
    v.diagnostics = norm_diagnostics(rho2, q, n_max + 1);
    if (v.diagnostics.first_zero_index) {
        v.kind = Verdict::Member;
        v.m = *v.diagnostics.first_zero_index - 1;
    } else if (v.diagnostics.first_negative_index) {
        v.kind = Verdict::NoSolution;
        v.first_negative = v.diagnostics.first_negative_index;
    }
    return v;
}

/// Exact remainder of p_{m+2} by p_{m+1} in x, with a = rho y left symbolic and
/// b = rho^2 = q^{-m}, q a rational number.
inline DivisionResult support_divisibility(unsigned m, const Rational& q) {
    if (!(q > 1)) throw PreconditionError("support_divisibility requires q > 1");
    Rational b = 1;
    for (unsigned i = 0; i < m; ++i) b /= q;
    const PolyFamily family = PolyFamily::asc(var(Var::a), b);
    const MultiPoly num = family[m + 2].substitute(Var::q, q);
    const MultiPoly den = family[m + 1].substitute(Var::q, q);
    return divide_in(Var::x, num, den);
}

struct JacobiSpectrum {
    std::vector<double> nodes;        ///< roots of p_{m+1}, ascending
    std::vector<double> christoffel;  ///< squared first eigenvector components
};

namespace detail {

inline void require_member(unsigned m, double rho, double q) {
    if (!(q > 1.0)) throw PreconditionError("discrete measures need q > 1");
    const double target = std::pow(q, -static_cast<double>(m));
    if (std::abs(rho * rho - target) > 1e-12 * target)
        throw PreconditionError("discrete measures need rho^2 = q^{-m}");
}

}  // namespace detail

/// rho = sign * q^{-m/2}.
inline double member_rho(unsigned m, double q, int sign = 1) {
    return (sign < 0 ? -1.0 : 1.0) * std::pow(q, -0.5 * m);
}

/// Eigen-decomposition of the (m+1) x (m+1) Jacobi matrix with diagonal rho y q^n and
/// off-diagonal sqrt((1 - rho^2 q^{n-1}) [n]_q).
inline JacobiSpectrum jacobi_roots(unsigned m, double rho, double y, double q) {
    detail::require_member(m, rho, q);
    const Eigen::Index size = m + 1;
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(size, size);
    for (unsigned n = 0; n <= m; ++n) j(n, n) = rho * y * std::pow(q, n);
    for (unsigned n = 1; n <= m; ++n) {
        const double beta = (1.0 - rho * rho * std::pow(q, n - 1.0)) * numeric::q_int(n, q);
        if (!(beta > 0.0)) {
            throw PreconditionError("Jacobi matrix: non-positive off-diagonal square at n=" + std::to_string(n));
        }
        j(n, n - 1) = j(n - 1, n) = std::sqrt(beta);
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(j);
    if (solver.info() != Eigen::Success) throw ConvergenceError("Jacobi matrix eigen-solve failed");
    JacobiSpectrum s;
    for (Eigen::Index i = 0; i < size; ++i) {
        s.nodes.push_back(solver.eigenvalues()(i));
        s.christoffel.push_back(solver.eigenvectors()(0, i) * solver.eigenvectors()(0, i));
    }
    return s;
}

struct DiscreteMeasure {
    unsigned m = 0;
    double q = 0.0;
    double rho = 0.0;
    double y = 0.0;
    std::vector<double> support;
    std::vector<double> weights;
    double christoffel_gap = 0.0;  ///< max |lambda_j - christoffel_j|
    bool single_point = false;     ///< m = 0: rho^2 = 1, all mass at rho y
};

/// lambda from V lambda = e_0 with V(k, j) = p_k(x_j), k = 0..m.
inline std::vector<double> solve_weights(const std::vector<double>& support, double rho, double y, double q) {
    const Eigen::Index size = static_cast<Eigen::Index>(support.size());
    if (size == 0) throw PreconditionError("solve_weights needs a nonempty support");
    const unsigned m = static_cast<unsigned>(size - 1);
    Eigen::MatrixXd v(size, size);
    for (Eigen::Index j = 0; j < size; ++j) {
        const auto p = numeric::asc_values(m, support[j], q, rho * y, rho * rho);
        for (Eigen::Index k = 0; k < size; ++k) v(k, j) = p[k];
    }
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(size);
    rhs(0) = 1.0;
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(v);
    if (!lu.isInvertible()) throw ConvergenceError("solve_weights: singular moment system");
    const Eigen::VectorXd lambda = lu.solve(rhs);
    std::vector<double> out(lambda.data(), lambda.data() + size);
    double total = 0.0;
    for (std::size_t j = 0; j < out.size(); ++j) {
        if (out[j] < -1e-10) {
            throw DomainError("solve_weights: negative weight " + std::to_string(out[j]) + " at x=" +
                              std::to_string(support[j]));
        }
        total += out[j];
    }
    if (std::abs(total - 1.0) > 1e-10) throw DomainError("solve_weights: weights do not sum to 1");
    return out;
}

/// Roots plus weights, with the Christoffel cross-check.
inline DiscreteMeasure discrete_measure(unsigned m, double rho, double y, double q) {
    const JacobiSpectrum spectrum = jacobi_roots(m, rho, y, q);
    DiscreteMeasure mu;
    mu.m = m;
    mu.q = q;
    mu.rho = rho;
    mu.y = y;
    mu.support = spectrum.nodes;
    mu.weights = solve_weights(mu.support, rho, y, q);
    for (std::size_t j = 0; j < mu.weights.size(); ++j)
        mu.christoffel_gap = std::max(mu.christoffel_gap, std::abs(mu.weights[j] - spectrum.christoffel[j]));
    if (mu.christoffel_gap > 1e-8) throw ConvergenceError("discrete_measure: weights disagree with Christoffel numbers");
    mu.single_point = (m == 0);
    return mu;
}

/// sum_j lambda_j H_n(x_j) against rho^n H_n(y) for n = 1..n_check. The residual is
/// relative to the magnitude of the terms, |LHS - RHS| / max(1, sum_j lambda_j |H_n|(x_j) +
/// |rho|^n |H_n|(|y|)), with |H_n| the recurrence run on absolute values: the values
/// reach 1e20 for q = 3, where absolute float64 agreement is out of reach.
inline NumericReport verify_discrete_solution(const DiscreteMeasure& mu, unsigned n_check, double tol = 1e-7) {
    Stopwatch watch;
    NumericReport report{"conditional-moment", {}, 0.0};
    for (unsigned n = 1; n <= n_check; ++n) {
        double lhs = 0.0;
        double scale = 0.0;
        for (std::size_t j = 0; j < mu.support.size(); ++j) {
            lhs += mu.weights[j] * numeric::hermite_value(n, mu.support[j], mu.q);
            scale += std::abs(mu.weights[j]) * numeric::hermite_abs_scale(n, mu.support[j], mu.q);
        }
        const double rhs = std::pow(mu.rho, n) * numeric::hermite_value(n, mu.y, mu.q);
        scale += std::pow(std::abs(mu.rho), n) * numeric::hermite_abs_scale(n, mu.y, mu.q);
        std::ostringstream label;
        label << "m=" << mu.m << ",q=" << mu.q << ",y=" << mu.y << ",n=" << n;
        report.cases.push_back({label.str(), lhs, rhs, std::abs(lhs - rhs) / std::max(1.0, scale), tol});
    }
    report.elapsed_ms = watch.elapsed_ms();
    return report;
}

/// sum_j lambda_j p_n(x_j)^2 against [n]_q! prod_{i<=n} (1 - rho^2 q^{i-1}) for n = 0..m+1,
/// relative to max(1, |expected|).
inline NumericReport verify_discrete_norms(const DiscreteMeasure& mu, double tol = 1e-8) {
    NumericReport report{"norms", {}, 0.0};
    double expected = 1.0;
    for (unsigned n = 0; n <= mu.m + 1; ++n) {
        if (n > 0) expected *= numeric::q_int(n, mu.q) * (1.0 - mu.rho * mu.rho * std::pow(mu.q, n - 1.0));
        double direct = 0.0;
        for (std::size_t j = 0; j < mu.support.size(); ++j) {
            const double p = numeric::asc_values(n, mu.support[j], mu.q, mu.rho * mu.y, mu.rho * mu.rho)[n];
            direct += mu.weights[j] * p * p;
        }
        report.cases.push_back({"n=" + std::to_string(n), direct, expected,
                                std::abs(direct - expected) / std::max(1.0, std::abs(expected)), tol});
    }
    return report;
}

}  // namespace qchihara
