#pragma once

/**
 * @file hankel.hpp
 * @brief Exact Hankel determinants over the polynomial ring.
 *
 * Two families of Hankel matrices:
 *   S_n = [m_{i+j}(y)]   moments of the functional L(H_k) = rho^k H_k(y), over (rho, y, q)
 *   M_n = [H_{i+j}(x)]   q-Hermite polynomials themselves, over (x, q)
 * Determinants use Bareiss fraction-free elimination; every division is exact, and
 * a nonzero remainder aborts with InexactDivision.
 */

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qchihara/identities.hpp"

namespace qchihara {

class PolyMatrix {
public:
    explicit PolyMatrix(std::size_t n) : n_(n), entries_(n * n) {}

    template <typename Fn>
    static PolyMatrix hankel(std::size_t n, Fn&& entry_for_sum) {
        PolyMatrix m(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = entry_for_sum(i + j);
        return m;
    }

    std::size_t dimension() const noexcept { return n_; }
    MultiPoly& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
    const MultiPoly& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

    bool is_hankel() const {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                if (i + 1 < n_ && j > 0 && (*this)(i, j) != (*this)(i + 1, j - 1)) return false;
        return true;
    }

    /// Leading k x k block.
    PolyMatrix leading(std::size_t k) const {
        PolyMatrix m(k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) m(i, j) = (*this)(i, j);
        return m;
    }

    void swap_rows(std::size_t r1, std::size_t r2) {
        for (std::size_t j = 0; j < n_; ++j) std::swap((*this)(r1, j), (*this)(r2, j));
    }

private:
    std::size_t n_;
    std::vector<MultiPoly> entries_;
};

namespace detail {

struct BareissResult {
    MultiPoly determinant;
    /// Leading principal minors of orders 1..n; empty if a row swap was needed.
    std::vector<MultiPoly> leading_minors;
};

inline BareissResult bareiss(PolyMatrix a) {
    const std::size_t n = a.dimension();
    BareissResult out;
    if (n == 0) {
        out.determinant = MultiPoly(1);
        return out;
    }
    bool swapped = false;
    bool negate = false;
    MultiPoly prev(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k).is_zero()) {
            std::size_t r = k + 1;
            while (r < n && a(r, k).is_zero()) ++r;
            if (r == n) {
                out.determinant = MultiPoly();
                out.leading_minors.clear();
                return out;
            }
            a.swap_rows(k, r);
            negate = !negate;
            swapped = true;
        }
        if (!swapped) out.leading_minors.push_back(a(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a(i, j) = exact_quotient(a(k, k) * a(i, j) - a(i, k) * a(k, j), prev);
            }
            a(i, k) = MultiPoly();
        }
        prev = a(k, k);
    }
    out.determinant = negate ? -a(n - 1, n - 1) : a(n - 1, n - 1);
    if (swapped) {
        out.leading_minors.clear();
    } else {
        out.leading_minors.push_back(out.determinant);
    }
    return out;
}

}  // namespace detail

/// Exact determinant by fraction-free elimination. Pivots on the first nonzero entry
/// of the current column, tracking the sign of row swaps.
inline MultiPoly det_exact(const PolyMatrix& m) { return detail::bareiss(m).determinant; }

/// det of the leading k x k blocks, k = 1..n. One elimination serves all orders when no
/// pivoting is needed (the Bareiss pivots are exactly these minors).
inline std::vector<MultiPoly> leading_principal_minors(const PolyMatrix& m) {
    auto result = detail::bareiss(m);
    if (result.leading_minors.size() == m.dimension()) return std::move(result.leading_minors);
    std::vector<MultiPoly> minors;
    for (std::size_t k = 1; k <= m.dimension(); ++k) minors.push_back(det_exact(m.leading(k)));
    return minors;
}

/// m_0 .. m_{n_max}, m_n = sum_k rho^{n-2k} a_{n,2k} H_{n-2k}(y), over (rho, y, q).
inline std::vector<MultiPoly> moments_of_mu(unsigned n_max) {
    const MomentFunctional functional = MomentFunctional::symbolic();
    std::vector<MultiPoly> moments;
    for (unsigned n = 0; n <= n_max; ++n) {
        const HermiteExpansion e = monomial_to_hermite(n);
        MultiPoly m;
        for (unsigned i = 0; i < e.coefficients.size(); ++i) {
            m += e.coefficients[i] * functional.image_of_hermite(n - 2 * i);
        }
        moments.push_back(std::move(m));
    }
    return moments;
}

/// S_n = [m_{i+j}]_{i,j<n}.
inline PolyMatrix build_S(unsigned n) {
    if (n < 1) throw PreconditionError("build_S requires n >= 1");
    const auto moments = moments_of_mu(2 * n - 2);
    return PolyMatrix::hankel(n, [&](std::size_t s) { return moments[s]; });
}

/// M_n = [H_{i+j}(x|q)]_{i,j<n}.
inline PolyMatrix build_M(unsigned n) {
    if (n < 1) throw PreconditionError("build_M requires n >= 1");
    return PolyMatrix::hankel(n, [](std::size_t s) { return hermite_poly(static_cast<unsigned>(s)); });
}

struct HankelReport {
    std::string family;  ///< "S" or "M"
    unsigned n = 0;
    MultiPoly det_n;
    MultiPoly det_next;
    std::optional<MultiPoly> ratio;  ///< det_next / det_n when that division is exact
    MultiPoly predicted;
    bool matches = false;           ///< det_next - predicted * det_n == 0
    std::vector<Var> constant_in;   ///< variables neither determinant depends on
    MultiPoly residual;
    double elapsed_ms = 0.0;
};

namespace detail {

inline HankelReport make_hankel_report(std::string family, unsigned n, const MultiPoly& det_n,
                                       const MultiPoly& det_next, MultiPoly predicted,
                                       std::initializer_list<Var> watch) {
    HankelReport r;
    r.family = std::move(family);
    r.n = n;
    r.det_n = det_n;
    r.det_next = det_next;
    r.predicted = std::move(predicted);
    r.residual = det_next - r.predicted * det_n;
    r.matches = r.residual.is_zero();
    if (!det_n.is_zero()) {
        try {
            r.ratio = exact_quotient(det_next, det_n);
        } catch (const InexactDivision&) {
            r.ratio.reset();
        }
    }
    for (Var v : watch) {
        if (!det_n.depends_on(v) && !det_next.depends_on(v)) r.constant_in.push_back(v);
    }
    return r;
}

}  // namespace detail

/// [n]_q! prod_{i=1}^n (1 - rho^2 q^{i-1}).
inline MultiPoly c4_ratio(unsigned n) { return asc_norm(n, var(Var::rho, 2)); }

/// (-1)^n q^{n(n-1)/2} [n]_q!.
inline MultiPoly hermite_hankel_ratio(unsigned n) {
    MultiPoly r = q_factorial(n) * var(Var::q, n * (n - 1) / 2);
    return n % 2 == 0 ? r : -r;
}

/// det S_{n+1} = c4_ratio(n) det S_n for 1 <= n <= n_max, plus y-freeness.
inline std::vector<HankelReport> verify_c4(unsigned n_max) {
    if (n_max < 1) throw PreconditionError("verify_c4 requires n_max >= 1");
    Stopwatch watch;
    const auto dets = leading_principal_minors(build_S(n_max + 1));
    const double elapsed = watch.elapsed_ms();
    std::vector<HankelReport> reports;
    for (unsigned n = 1; n <= n_max; ++n) {
        reports.push_back(detail::make_hankel_report("S", n, dets[n - 1], dets[n], c4_ratio(n), {Var::y}));
        reports.back().elapsed_ms = elapsed;
    }
    return reports;
}

/// det M_{n+1} = (-1)^n q^{n(n-1)/2} [n]_q! det M_n for 1 <= n <= n_max, plus x-freeness.
inline std::vector<HankelReport> verify_hermite_hankel(unsigned n_max) {
    if (n_max < 1) throw PreconditionError("verify_hermite_hankel requires n_max >= 1");
    Stopwatch watch;
    const auto dets = leading_principal_minors(build_M(n_max + 1));
    const double elapsed = watch.elapsed_ms();
    std::vector<HankelReport> reports;
    for (unsigned n = 1; n <= n_max; ++n) {
        reports.push_back(detail::make_hankel_report("M", n, dets[n - 1], dets[n], hermite_hankel_ratio(n), {Var::x}));
        reports.back().elapsed_ms = elapsed;
    }
    return reports;
}

}  // namespace qchihara
