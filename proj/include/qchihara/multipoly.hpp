#pragma once

/**
 * @file multipoly.hpp
 * @brief Sparse multivariate polynomials with exact rational coefficients.
 *
 * Every polynomial lives in the single ring Q[q, x, a, b, c, rho, y]. The variable
 * set is fixed; a polynomial that does not mention a variable pays nothing for it.
 * Exponent vectors are packed into one 64-bit word (9 bits per variable, q in the
 * most significant field), so comparing packed words is the lexicographic monomial
 * order q > x > a > b > c > rho > y. That order is used for storage and for exact
 * division; the canonical text rendering uses graded-lex instead.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "qchihara/errors.hpp"

namespace qchihara {

/// Exact rational. GMP keeps mpq values canonical (reduced, positive denominator)
/// after every arithmetic operation; construct through make_rational() to get the
/// same guarantee for literals.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) {
        throw PreconditionError("rational with zero denominator");
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

enum class Var : std::uint8_t { q = 0, x, a, b, c, rho, y };

inline constexpr std::size_t kVarCount = 7;
inline constexpr std::array<Var, kVarCount> kAllVars{Var::q, Var::x, Var::a, Var::b,
                                                     Var::c, Var::rho, Var::y};
inline constexpr std::array<std::string_view, kVarCount> kVarNames{"q", "x", "a", "b",
                                                                   "c", "rho", "y"};

constexpr std::size_t index_of(Var v) noexcept { return static_cast<std::size_t>(v); }
constexpr std::string_view name_of(Var v) noexcept { return kVarNames[index_of(v)]; }

/// Complex value with finite components; NaN and infinities are rejected.
class ComplexF {
public:
    ComplexF() = default;
    ComplexF(double re, double im = 0.0) : value_(re, im) { check(); }
    explicit ComplexF(std::complex<double> z) : value_(z) { check(); }

    double real() const noexcept { return value_.real(); }
    double imag() const noexcept { return value_.imag(); }
    std::complex<double> value() const noexcept { return value_; }
    double abs() const { return std::abs(value_); }

    friend bool operator==(const ComplexF&, const ComplexF&) = default;

private:
    void check() const {
        if (!std::isfinite(value_.real()) || !std::isfinite(value_.imag())) {
            throw DomainError("ComplexF requires finite components");
        }
    }
    std::complex<double> value_{};
};

/// Exponent vector packed into one word.
class Monomial {
public:
    static constexpr unsigned kBits = 9;
    static constexpr std::uint64_t kFieldMask = (std::uint64_t{1} << kBits) - 1;
    static constexpr unsigned kMaxExponent = static_cast<unsigned>(kFieldMask);

    constexpr Monomial() = default;

    static Monomial of(Var v, unsigned exponent) {
        if (exponent > kMaxExponent) {
            throw std::overflow_error("monomial exponent exceeds packed field width");
        }
        Monomial m;
        m.packed_ = static_cast<std::uint64_t>(exponent) << shift(v);
        return m;
    }
    static constexpr Monomial from_key(std::uint64_t key) noexcept {
        Monomial m;
        m.packed_ = key;
        return m;
    }

    constexpr unsigned exponent(Var v) const noexcept {
        return static_cast<unsigned>((packed_ >> shift(v)) & kFieldMask);
    }
    unsigned total_degree() const noexcept {
        unsigned d = 0;
        for (Var v : kAllVars) d += exponent(v);
        return d;
    }
    constexpr std::uint64_t key() const noexcept { return packed_; }
    constexpr bool is_one() const noexcept { return packed_ == 0; }

    /// Product without overflow check; callers bound degrees beforehand.
    constexpr Monomial times(Monomial o) const noexcept { return from_key(packed_ + o.packed_); }

    bool divides(Monomial o) const noexcept {
        for (Var v : kAllVars) {
            if (exponent(v) > o.exponent(v)) return false;
        }
        return true;
    }
    /// o / this; requires divides(o).
    constexpr Monomial quotient_of(Monomial o) const noexcept { return from_key(o.packed_ - packed_); }

    Monomial without(Var v) const noexcept {
        return from_key(packed_ & ~(kFieldMask << shift(v)));
    }

    friend constexpr auto operator<=>(Monomial, Monomial) = default;

private:
    static constexpr unsigned shift(Var v) noexcept {
        return static_cast<unsigned>(kVarCount - 1 - index_of(v)) * kBits;
    }
    std::uint64_t packed_ = 0;
};

/// Values for some subset of the ring variables.
template <typename T>
class Assignment {
public:
    Assignment() = default;
    Assignment(std::initializer_list<std::pair<Var, T>> values) {
        for (const auto& [v, t] : values) set(v, t);
    }
    Assignment& set(Var v, T value) {
        values_[index_of(v)] = std::move(value);
        return *this;
    }
    const std::optional<T>& get(Var v) const noexcept { return values_[index_of(v)]; }

private:
    std::array<std::optional<T>, kVarCount> values_{};
};

class MultiPoly {
public:
    struct Term {
        Monomial mono;
        Rational coef;
    };

    MultiPoly() = default;
    MultiPoly(long value) : MultiPoly(Rational(value)) {}  // NOLINT(implicit)
    MultiPoly(int value) : MultiPoly(Rational(value)) {}   // NOLINT(implicit)
    MultiPoly(const Rational& value) {                     // NOLINT(implicit)
        if (sgn(value) != 0) terms_.push_back({Monomial{}, value});
    }

    static MultiPoly variable(Var v, unsigned power = 1) { return monomial(Rational(1), Monomial::of(v, power)); }
    static MultiPoly monomial(const Rational& coef, Monomial m) {
        MultiPoly p;
        if (sgn(coef) != 0) p.terms_.push_back({m, coef});
        return p;
    }
    /// Builds a polynomial from unsorted terms, combining duplicates and dropping zeros.
    static MultiPoly from_terms(std::vector<Term> terms) {
        std::sort(terms.begin(), terms.end(),
                  [](const Term& l, const Term& r) { return l.mono < r.mono; });
        MultiPoly p;
        for (auto& t : terms) {
            if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
                p.terms_.back().coef += t.coef;
            } else {
                if (!p.terms_.empty() && sgn(p.terms_.back().coef) == 0) p.terms_.pop_back();
                p.terms_.push_back(std::move(t));
            }
        }
        if (!p.terms_.empty() && sgn(p.terms_.back().coef) == 0) p.terms_.pop_back();
        return p;
    }

    /// Terms in ascending lexicographic monomial order; never holds a zero coefficient.
    const std::vector<Term>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept {
        return terms_.empty() || (terms_.size() == 1 && terms_.front().mono.is_one());
    }
    std::optional<Rational> constant_value() const {
        if (terms_.empty()) return Rational(0);
        if (is_constant()) return terms_.front().coef;
        return std::nullopt;
    }
    /// Coefficient of the monomial 1.
    Rational constant_term() const {
        if (!terms_.empty() && terms_.front().mono.is_one()) return terms_.front().coef;
        return Rational(0);
    }
    /// Leading term in the lexicographic order; requires a nonzero polynomial.
    const Term& leading_term() const { return terms_.back(); }

    bool all_integral() const noexcept {
        return std::all_of(terms_.begin(), terms_.end(),
                           [](const Term& t) { return t.coef.get_den() == 1; });
    }

    unsigned degree(Var v) const noexcept {
        unsigned d = 0;
        for (const auto& t : terms_) d = std::max(d, t.mono.exponent(v));
        return d;
    }
    unsigned total_degree() const noexcept {
        unsigned d = 0;
        for (const auto& t : terms_) d = std::max(d, t.mono.total_degree());
        return d;
    }
    bool depends_on(Var v) const noexcept {
        return std::any_of(terms_.begin(), terms_.end(),
                           [v](const Term& t) { return t.mono.exponent(v) != 0; });
    }

    /// Coefficient of v^k, as a polynomial in the remaining variables.
    MultiPoly coefficient(Var v, unsigned k) const {
        MultiPoly out;
        const Monomial strip = Monomial::of(v, k);
        for (const auto& t : terms_) {
            if (t.mono.exponent(v) == k) out.terms_.push_back({strip.quotient_of(t.mono), t.coef});
        }
        return out;
    }

    MultiPoly operator-() const {
        MultiPoly out = *this;
        for (auto& t : out.terms_) t.coef = -t.coef;
        return out;
    }

    friend MultiPoly operator+(const MultiPoly& l, const MultiPoly& r) { return merge(l, r, false); }
    friend MultiPoly operator-(const MultiPoly& l, const MultiPoly& r) { return merge(l, r, true); }
    friend MultiPoly operator*(const MultiPoly& l, const MultiPoly& r) { return multiply(l, r); }
    MultiPoly& operator+=(const MultiPoly& r) { return *this = *this + r; }
    MultiPoly& operator-=(const MultiPoly& r) { return *this = *this - r; }
    MultiPoly& operator*=(const MultiPoly& r) { return *this = *this * r; }

    MultiPoly scaled(const Rational& s) const {
        if (sgn(s) == 0) return {};
        MultiPoly out = *this;
        for (auto& t : out.terms_) t.coef *= s;
        return out;
    }
    /// Multiplies by a single monomial; order is preserved because packed keys shift uniformly.
    MultiPoly times_monomial(const Rational& coef, Monomial m) const {
        if (sgn(coef) == 0) return {};
        check_degree_sum(*this, m);
        MultiPoly out;
        out.terms_.reserve(terms_.size());
        for (const auto& t : terms_) out.terms_.push_back({t.mono.times(m), t.coef * coef});
        return out;
    }

    MultiPoly pow(unsigned n) const {
        MultiPoly result(1);
        MultiPoly base = *this;
        while (n != 0) {
            if (n & 1u) result = result * base;
            n >>= 1u;
            if (n != 0) base = base * base;
        }
        return result;
    }

    /// Replaces every occurrence of v by value.
    MultiPoly substitute(Var v, const MultiPoly& value) const {
        const unsigned deg = degree(v);
        if (deg == 0) return *this;
        std::vector<MultiPoly> groups(deg + 1);
        for (const auto& t : terms_) {
            const unsigned e = t.mono.exponent(v);
            groups[e].terms_.push_back({t.mono.without(v), t.coef});
        }
        MultiPoly result;
        MultiPoly power(1);
        for (unsigned e = 0; e <= deg; ++e) {
            if (e > 0) power = power * value;
            if (!groups[e].is_zero()) result += groups[e] * power;
        }
        return result;
    }

    template <typename T>
    T evaluate(const Assignment<T>& at) const {
        if constexpr (std::is_same_v<T, ComplexF>) {
            Assignment<std::complex<double>> raw;
            for (Var v : kAllVars) {
                if (at.get(v)) raw.set(v, at.get(v)->value());
            }
            return ComplexF(evaluate_raw(raw));
        } else {
            return evaluate_raw(at);
        }
    }

    /// Largest |coefficient|, as a double; 0 for the zero polynomial.
    double max_abs_coefficient() const {
        double m = 0.0;
        for (const auto& t : terms_) m = std::max(m, std::abs(t.coef.get_d()));
        return m;
    }

    /// Canonical rendering: graded-lex descending, explicit '^' powers, '*' between factors.
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::vector<const Term*> order;
        order.reserve(terms_.size());
        for (const auto& t : terms_) order.push_back(&t);
        std::sort(order.begin(), order.end(), [](const Term* l, const Term* r) {
            const unsigned dl = l->mono.total_degree();
            const unsigned dr = r->mono.total_degree();
            if (dl != dr) return dl > dr;
            return l->mono > r->mono;
        });
        std::string out;
        bool first = true;
        for (const Term* t : order) {
            Rational mag = abs(t->coef);
            const bool negative = sgn(t->coef) < 0;
            if (first) {
                if (negative) out += '-';
            } else {
                out += negative ? " - " : " + ";
            }
            first = false;
            std::string factors;
            for (Var v : kAllVars) {
                const unsigned e = t->mono.exponent(v);
                if (e == 0) continue;
                if (!factors.empty()) factors += '*';
                factors += name_of(v);
                if (e > 1) factors += "^" + std::to_string(e);
            }
            if (factors.empty()) {
                out += mag.get_str();
            } else if (mag == 1) {
                out += factors;
            } else {
                out += mag.get_str() + "*" + factors;
            }
        }
        return out;
    }

    friend bool operator==(const MultiPoly& l, const MultiPoly& r) {
        if (l.terms_.size() != r.terms_.size()) return false;
        for (std::size_t i = 0; i < l.terms_.size(); ++i) {
            if (l.terms_[i].mono != r.terms_[i].mono || l.terms_[i].coef != r.terms_[i].coef) return false;
        }
        return true;
    }

    friend std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << p.to_string(); }

private:
    static void check_degree_sum(const MultiPoly& l, Monomial m) {
        for (Var v : kAllVars) {
            if (l.degree(v) + m.exponent(v) > Monomial::kMaxExponent) {
                throw std::overflow_error("polynomial degree exceeds packed exponent range");
            }
        }
    }
    static void check_degree_sum(const MultiPoly& l, const MultiPoly& r) {
        for (Var v : kAllVars) {
            if (l.degree(v) + r.degree(v) > Monomial::kMaxExponent) {
                throw std::overflow_error("polynomial degree exceeds packed exponent range");
            }
        }
    }

    static MultiPoly merge(const MultiPoly& l, const MultiPoly& r, bool subtract) {
        MultiPoly out;
        out.terms_.reserve(l.terms_.size() + r.terms_.size());
        auto li = l.terms_.begin();
        auto ri = r.terms_.begin();
        while (li != l.terms_.end() || ri != r.terms_.end()) {
            if (ri == r.terms_.end() || (li != l.terms_.end() && li->mono < ri->mono)) {
                out.terms_.push_back(*li++);
            } else if (li == l.terms_.end() || ri->mono < li->mono) {
                out.terms_.push_back({ri->mono, subtract ? Rational(-ri->coef) : ri->coef});
                ++ri;
            } else {
                Rational c = subtract ? Rational(li->coef - ri->coef) : Rational(li->coef + ri->coef);
                if (sgn(c) != 0) out.terms_.push_back({li->mono, std::move(c)});
                ++li;
                ++ri;
            }
        }
        return out;
    }

    static MultiPoly multiply(const MultiPoly& l, const MultiPoly& r) {
        if (l.is_zero() || r.is_zero()) return {};
        if (l.size() == 1) return r.times_monomial(l.terms_.front().coef, l.terms_.front().mono);
        if (r.size() == 1) return l.times_monomial(r.terms_.front().coef, r.terms_.front().mono);
        check_degree_sum(l, r);

        MultiPoly out;
        if (l.all_integral() && r.all_integral()) {
            // Integer accumulation skips the gcd work mpq addition does on every step.
            std::unordered_map<std::uint64_t, mpz_class> acc;
            acc.reserve(l.size() + r.size() + std::min<std::size_t>(l.size() * r.size(), 1u << 20));
            mpz_class tmp;
            for (const auto& a : l.terms_) {
                for (const auto& b : r.terms_) {
                    mpz_mul(tmp.get_mpz_t(), a.coef.get_num_mpz_t(), b.coef.get_num_mpz_t());
                    acc[a.mono.times(b.mono).key()] += tmp;
                }
            }
            out.terms_.reserve(acc.size());
            for (auto& [key, c] : acc) {
                if (sgn(c) != 0) out.terms_.push_back({Monomial::from_key(key), Rational(c)});
            }
        } else {
            std::unordered_map<std::uint64_t, Rational> acc;
            acc.reserve(l.size() + r.size());
            Rational tmp;
            for (const auto& a : l.terms_) {
                for (const auto& b : r.terms_) {
                    mpq_mul(tmp.get_mpq_t(), a.coef.get_mpq_t(), b.coef.get_mpq_t());
                    acc[a.mono.times(b.mono).key()] += tmp;
                }
            }
            out.terms_.reserve(acc.size());
            for (auto& [key, c] : acc) {
                if (sgn(c) != 0) out.terms_.push_back({Monomial::from_key(key), std::move(c)});
            }
        }
        std::sort(out.terms_.begin(), out.terms_.end(),
                  [](const Term& a, const Term& b) { return a.mono < b.mono; });
        return out;
    }

    template <typename T>
    T evaluate_raw(const Assignment<T>& at) const {
        std::array<std::vector<T>, kVarCount> powers;
        for (Var v : kAllVars) {
            const unsigned deg = degree(v);
            if (deg == 0) continue;
            const auto& value = at.get(v);
            if (!value) {
                throw UnassignedVariable("evaluate: no value assigned to variable '" +
                                         std::string(name_of(v)) + "'");
            }
            auto& pw = powers[index_of(v)];
            pw.resize(deg + 1);
            pw[0] = T(1);
            for (unsigned e = 1; e <= deg; ++e) pw[e] = pw[e - 1] * *value;
        }
        T sum = T(0);
        for (const auto& t : terms_) {
            T term = T(t.coef.get_d());
            for (Var v : kAllVars) {
                const unsigned e = t.mono.exponent(v);
                if (e != 0) term *= powers[index_of(v)][e];
            }
            sum += term;
        }
        return sum;
    }

    std::vector<Term> terms_;
};

inline MultiPoly var(Var v, unsigned power = 1) { return MultiPoly::variable(v, power); }

}  // namespace qchihara
