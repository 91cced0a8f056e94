#pragma once

/**
 * @file families.hpp
 * @brief The three polynomial families generated by their three-term recurrences.
 *
 *   H_{n+1} = x H_n - [n]_q H_{n-1}                              (continuous q-Hermite)
 *   B_{n+1} = -q^n x B_n + q^{n-1} [n]_q B_{n-1}                   (companion family)
 *   p_{n+1} = (x - a q^n) p_n - (1 - b q^{n-1}) [n]_q p_{n-1}      (Al-Salam--Chihara)
 *
 * with p_{-1} = 0 and p_0 = 1 throughout. All three are polynomials in x whose
 * coefficients are polynomials in q (and in a, b for the last one).
 */

#include <deque>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "qchihara/qcore.hpp"

namespace qchihara {

enum class FamilyKind { Hermite, B, ASC };

/// Lazily extended, memoized sequence of a family's polynomials. The cache only
/// grows; each degree is computed exactly once.
class PolyFamily {
public:
    static PolyFamily hermite() { return PolyFamily(FamilyKind::Hermite, 0, 0); }
    static PolyFamily b_family() { return PolyFamily(FamilyKind::B, 0, 0); }
    /// a and b may be ring symbols (var(Var::a)) or any expressions, e.g. a = rho*y, b = rho^2.
    static PolyFamily asc(MultiPoly a, MultiPoly b) { return PolyFamily(FamilyKind::ASC, std::move(a), std::move(b)); }

    PolyFamily(const PolyFamily& other) : kind_(other.kind_), a_(other.a_), b_(other.b_) {
        std::lock_guard lock(other.mutex_);
        cache_ = other.cache_;
    }
    PolyFamily& operator=(const PolyFamily&) = delete;

    FamilyKind kind() const noexcept { return kind_; }
    const MultiPoly& a() const noexcept { return a_; }
    const MultiPoly& b() const noexcept { return b_; }

    /// Degree-n member; the reference stays valid for the lifetime of the family.
    const MultiPoly& operator[](unsigned n) const {
        std::lock_guard lock(mutex_);
        extend_to(n);
        return cache_[n];
    }

private:
    PolyFamily(FamilyKind kind, MultiPoly a, MultiPoly b) : kind_(kind), a_(std::move(a)), b_(std::move(b)) {}

    void extend_to(unsigned n) const {
        if (cache_.empty()) cache_.emplace_back(1);
        const MultiPoly x = var(Var::x);
        while (cache_.size() <= n) {
            const auto k = static_cast<unsigned>(cache_.size() - 1);  // computing degree k+1
            const MultiPoly& cur = cache_[k];
            const MultiPoly* prev = k > 0 ? &cache_[k - 1] : nullptr;
            MultiPoly next;
            switch (kind_) {
                case FamilyKind::Hermite:
                    next = x * cur;
                    if (prev) next -= q_int(k) * *prev;
                    break;
                case FamilyKind::B:
                    next = -(var(Var::q, k) * x * cur);
                    if (prev) next += var(Var::q, k - 1) * q_int(k) * *prev;
                    break;
                case FamilyKind::ASC:
                    next = (x - a_ * var(Var::q, k)) * cur;
                    if (prev) next -= (MultiPoly(1) - b_ * var(Var::q, k - 1)) * q_int(k) * *prev;
                    break;
            }
            cache_.push_back(std::move(next));
        }
    }

    FamilyKind kind_;
    MultiPoly a_;
    MultiPoly b_;
    mutable std::mutex mutex_;
    mutable std::deque<MultiPoly> cache_;
};

namespace detail {
inline const PolyFamily& shared_hermite() {
    static const PolyFamily family = PolyFamily::hermite();
    return family;
}
inline const PolyFamily& shared_b() {
    static const PolyFamily family = PolyFamily::b_family();
    return family;
}
}  // namespace detail

/// H_n(x|q) in the variables x, q.
inline const MultiPoly& hermite_poly(unsigned n) { return detail::shared_hermite()[n]; }

/// B_n(x|q); leading x-coefficient (-1)^n q^{n(n-1)/2}.
inline const MultiPoly& b_poly(unsigned n) { return detail::shared_b()[n]; }

/// p_n(x|q,a,b). For repeated use build a PolyFamily::asc once instead.
inline MultiPoly asc_poly(unsigned n, const MultiPoly& a, const MultiPoly& b) {
    return PolyFamily::asc(a, b)[n];
}

/// c^m p(a/c): every x^j in p becomes a^j c^{m-j}. Requires deg_x(p) <= m.
/// This is the polynomial form of c^m B_m(a/c) and c^m H_m(a/c).
inline MultiPoly homogenize_ratio(const MultiPoly& p, unsigned m) {
    if (p.degree(Var::x) > m) {
        throw PreconditionError("homogenize_ratio: x-degree exceeds homogenizing degree");
    }
    std::vector<MultiPoly::Term> terms;
    terms.reserve(p.size());
    for (const auto& t : p.terms()) {
        const unsigned j = t.mono.exponent(Var::x);
        const Monomial m2 = t.mono.without(Var::x).times(Monomial::of(Var::a, j)).times(Monomial::of(Var::c, m - j));
        terms.push_back({m2, t.coef});
    }
    return MultiPoly::from_terms(std::move(terms));
}

/// Expansion x^n = sum_i a_{n,2i} H_{n-2i}(x|q).
struct HermiteExpansion {
    unsigned degree = 0;
    std::vector<MultiPoly> coefficients;  ///< coefficients[i] = a_{n,2i}, i = 0..floor(n/2)

    MultiPoly reconstruct() const {
        MultiPoly sum;
        for (unsigned i = 0; i < coefficients.size(); ++i) {
            sum += coefficients[i] * hermite_poly(degree - 2 * i);
        }
        return sum;
    }
};

/// Coefficients of x^n in the H-basis, from x H_k = H_{k+1} + [k]_q H_{k-1}.
inline HermiteExpansion monomial_to_hermite(unsigned n) {
    // h[k] = coefficient of H_k in the current power of x
    std::vector<MultiPoly> h{MultiPoly(1)};
    for (unsigned step = 0; step < n; ++step) {
        std::vector<MultiPoly> next(h.size() + 1);
        for (unsigned k = 0; k < h.size(); ++k) {
            if (h[k].is_zero()) continue;
            next[k + 1] += h[k];
            if (k > 0) next[k - 1] += q_int(k) * h[k];
        }
        h = std::move(next);
    }
    HermiteExpansion out;
    out.degree = n;
    for (unsigned i = 0; 2 * i <= n; ++i) out.coefficients.push_back(h[n - 2 * i]);
    return out;
}

/// Coefficients c_0..c_d with sum_k c_k H_k = p, where p is a polynomial in x of
/// degree d whose coefficients may involve any other ring variables. Computed by
/// repeated subtraction of the leading x-term (H_k is monic).
inline std::vector<MultiPoly> hermite_to_monomial(const MultiPoly& p) {
    const unsigned d = p.degree(Var::x);
    std::vector<MultiPoly> coeffs(d + 1);
    MultiPoly rest = p;
    for (unsigned k = d + 1; k-- > 0;) {
        MultiPoly lead = rest.coefficient(Var::x, k);
        if (lead.is_zero()) continue;
        rest -= lead * hermite_poly(k);
        coeffs[k] = std::move(lead);
    }
    if (!rest.is_zero()) {
        throw std::logic_error("hermite_to_monomial: nonzero remainder " + rest.to_string());
    }
    return coeffs;
}

/// sum_k coeffs[k] H_k.
inline MultiPoly from_hermite_basis(const std::vector<MultiPoly>& coeffs) {
    MultiPoly sum;
    for (unsigned k = 0; k < coeffs.size(); ++k) {
        if (!coeffs[k].is_zero()) sum += coeffs[k] * hermite_poly(k);
    }
    return sum;
}

}  // namespace qchihara
