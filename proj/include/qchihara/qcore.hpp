#pragma once

#include <deque>
#include <map>
#include <mutex>
#include <string>
#include <utility>

#include "qchihara/multipoly.hpp"

namespace qchihara {

/// Exact quotient num / den over the full ring, by leading-term division in the
/// lexicographic order. Throws InexactDivision if den does not divide num.
inline MultiPoly exact_quotient(const MultiPoly& num, const MultiPoly& den) {
    if (den.is_zero()) {
        throw PreconditionError("exact_quotient: division by the zero polynomial");
    }
    if (num.is_zero()) return {};
    if (auto c = den.constant_value()) return num.scaled(1 / *c);

    const auto& lead = den.leading_term();
    const Rational lead_inv = 1 / lead.coef;

    // Remainder kept in a map so the leading term is always rbegin().
    std::map<std::uint64_t, Rational> rem;
    for (const auto& t : num.terms()) rem.emplace(t.mono.key(), t.coef);

    std::vector<MultiPoly::Term> quotient;
    Rational tmp;
    while (!rem.empty()) {
        const auto top = std::prev(rem.end());
        const Monomial top_mono = Monomial::from_key(top->first);
        if (!lead.mono.divides(top_mono)) {
            throw InexactDivision("exact_quotient: leading monomial not divisible");
        }
        const Monomial qm = lead.mono.quotient_of(top_mono);
        const Rational qc = top->second * lead_inv;
        for (const auto& t : den.terms()) {
            const std::uint64_t key = t.mono.times(qm).key();
            tmp = qc * t.coef;
            auto [it, inserted] = rem.try_emplace(key, 0);
            it->second -= tmp;
            if (sgn(it->second) == 0) rem.erase(it);
        }
        quotient.push_back({qm, qc});
    }
    return MultiPoly::from_terms(std::move(quotient));
}

struct DivisionResult {
    MultiPoly quotient;
    MultiPoly remainder;
};

/// Division by den viewed as a univariate polynomial in v. The leading v-coefficient
/// of den must be a nonzero constant; the remainder has v-degree below deg_v(den).
inline DivisionResult divide_in(Var v, const MultiPoly& num, const MultiPoly& den) {
    if (den.is_zero()) throw PreconditionError("divide_in: division by the zero polynomial");
    const unsigned dd = den.degree(v);
    const auto lead = den.coefficient(v, dd).constant_value();
    if (!lead) throw PreconditionError("divide_in: leading coefficient must be constant");

    MultiPoly quotient;
    MultiPoly rem = num;
    while (!rem.is_zero() && rem.degree(v) >= dd) {
        const unsigned dr = rem.degree(v);
        const MultiPoly step = rem.coefficient(v, dr).scaled(1 / *lead) * var(v, dr - dd);
        quotient += step;
        rem -= step * den;
    }
    return {std::move(quotient), std::move(rem)};
}

/// [n]_q = 1 + q + ... + q^{n-1}; [0]_q = 0.
inline MultiPoly q_int(unsigned n) {
    std::vector<MultiPoly::Term> terms;
    terms.reserve(n);
    for (unsigned k = 0; k < n; ++k) terms.push_back({Monomial::of(Var::q, k), Rational(1)});
    return MultiPoly::from_terms(std::move(terms));
}

namespace detail {

/// Append-only memo table. Entries live in a deque so references stay valid while
/// other threads extend it.
class FactorialTable {
public:
    const MultiPoly& get(unsigned n) {
        std::lock_guard lock(mutex_);
        if (values_.empty()) values_.emplace_back(1);
        while (values_.size() <= n) {
            const auto k = static_cast<unsigned>(values_.size());
            values_.push_back(values_.back() * q_int(k));
        }
        return values_[n];
    }

private:
    std::mutex mutex_;
    std::deque<MultiPoly> values_;
};

inline FactorialTable& factorial_table() {
    static FactorialTable table;
    return table;
}

class BinomialTable {
public:
    const MultiPoly& get(unsigned n, unsigned k);

private:
    std::mutex mutex_;
    std::map<std::pair<unsigned, unsigned>, MultiPoly> values_;
};

inline BinomialTable& binomial_table() {
    static BinomialTable table;
    return table;
}

}  // namespace detail

/// [n]_q! = [1]_q [2]_q ... [n]_q; [0]_q! = 1.
inline const MultiPoly& q_factorial(unsigned n) { return detail::factorial_table().get(n); }

/// Gaussian binomial [n choose k]_q, computed by exact division of q-factorials.
/// Zero for k < 0 or k > n.
inline MultiPoly q_binomial(long n, long k) {
    if (n < 0 || k < 0 || k > n) return {};
    return detail::binomial_table().get(static_cast<unsigned>(n), static_cast<unsigned>(k));
}

inline const MultiPoly& detail::BinomialTable::get(unsigned n, unsigned k) {
    {
        std::lock_guard lock(mutex_);
        if (auto it = values_.find({n, k}); it != values_.end()) return it->second;
    }
    MultiPoly value = exact_quotient(q_factorial(n), q_factorial(n - k) * q_factorial(k));
    std::lock_guard lock(mutex_);
    // std::map nodes are stable; a concurrent insert of the same key keeps the first value.
    return values_.try_emplace({n, k}, std::move(value)).first->second;
}

/// q^m [n-m]_q, checked against [n]_q - [m]_q.
inline MultiPoly q_int_difference(unsigned n, unsigned m) {
    if (m > n) {
        throw PreconditionError("q_int_difference requires m <= n (got n=" + std::to_string(n) +
                                ", m=" + std::to_string(m) + ")");
    }
    MultiPoly shifted = q_int(n - m).times_monomial(Rational(1), Monomial::of(Var::q, m));
    if (shifted != q_int(n) - q_int(m)) {
        throw std::logic_error("q_int_difference: [n]_q - [m]_q != q^m [n-m]_q");
    }
    return shifted;
}

}  // namespace qchihara
