#pragma once

// Floating-point evaluation of the families straight from their recurrences.
// The numeric modules use these instead of evaluating the exact polynomials, so
// comparisons between the two are independent.

#include <cmath>
#include <complex>
#include <vector>

namespace qchihara::numeric {

/// [n]_q for real or complex q.
template <typename T>
T q_int(unsigned n, T q) {
    T sum(0);
    T power(1);
    for (unsigned k = 0; k < n; ++k) {
        sum += power;
        power *= q;
    }
    return sum;
}

inline double q_factorial(unsigned n, double q) {
    double f = 1.0;
    for (unsigned k = 1; k <= n; ++k) f *= q_int(k, q);
    return f;
}

/// H_0(x|q) .. H_n(x|q).
template <typename T, typename Q>
std::vector<T> hermite_values(unsigned n, T x, Q q) {
    std::vector<T> h(n + 1);
    h[0] = T(1);
    if (n >= 1) h[1] = x;
    for (unsigned k = 1; k < n; ++k) h[k + 1] = x * h[k] - T(q_int(k, q)) * h[k - 1];
    return h;
}

template <typename T, typename Q>
T hermite_value(unsigned n, T x, Q q) {
    return hermite_values(n, x, q)[n];
}

/// Same recurrence with every coefficient replaced by its absolute value: the
/// natural magnitude scale for the rounding error of hermite_value.
inline double hermite_abs_scale(unsigned n, double x, double q) {
    double prev = 0.0;
    double cur = 1.0;
    for (unsigned k = 0; k < n; ++k) {
        const double next = std::abs(x) * cur + std::abs(q_int(k, q)) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

/// B_0 .. B_n.
inline std::vector<double> b_values(unsigned n, double x, double q) {
    std::vector<double> v(n + 1);
    v[0] = 1.0;
    double qk = 1.0;    // q^k
    double qkm1 = 0.0;  // q^{k-1}; its k = 0 value is never used
    for (unsigned k = 0; k < n; ++k) {
        v[k + 1] = -qk * x * v[k];
        if (k > 0) v[k + 1] += qkm1 * q_int(k, q) * v[k - 1];
        qkm1 = qk;
        qk *= q;
    }
    return v;
}

/// p_0 .. p_n of the Al-Salam--Chihara recurrence.
inline std::vector<double> asc_values(unsigned n, double x, double q, double a, double b) {
    std::vector<double> p(n + 1);
    p[0] = 1.0;
    if (n >= 1) p[1] = x - a;
    double qk = 1.0;  // q^k
    for (unsigned k = 1; k < n; ++k) {
        const double qkm1 = qk;
        qk *= q;
        p[k + 1] = (x - a * qk) * p[k] - (1.0 - b * qkm1) * q_int(k, q) * p[k - 1];
    }
    return p;
}

}  // namespace qchihara::numeric
