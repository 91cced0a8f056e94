#include <random>

#include <gtest/gtest.h>

#include "qchihara/hankel.hpp"

namespace qchihara {
namespace {

const MultiPoly q = var(Var::q);
const MultiPoly x = var(Var::x);
const MultiPoly rho = var(Var::rho);
const MultiPoly y = var(Var::y);

// Laplace expansion along the first row; factorial cost, fine for n <= 5.
MultiPoly cofactor_det(const PolyMatrix& m) {
    const std::size_t n = m.dimension();
    if (n == 1) return m(0, 0);
    MultiPoly det;
    for (std::size_t col = 0; col < n; ++col) {
        PolyMatrix minor(n - 1);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0, jj = 0; j < n; ++j)
                if (j != col) minor(i - 1, jj++) = m(i, j);
        const MultiPoly term = m(0, col) * cofactor_det(minor);
        det = (col % 2 == 0) ? det + term : det - term;
    }
    return det;
}

MultiPoly random_entry(std::mt19937& rng) {
    std::uniform_int_distribution<int> coef(-3, 3);
    std::uniform_int_distribution<unsigned> e(0, 2);
    return MultiPoly(coef(rng)) * x.pow(e(rng)) + MultiPoly(coef(rng)) * q.pow(e(rng)) + coef(rng);
}

TEST(BuildMatrices, SmallCases) {
    const PolyMatrix s1 = build_S(1);
    EXPECT_EQ(s1(0, 0), MultiPoly(1));
    const PolyMatrix m2 = build_M(2);
    EXPECT_EQ(m2(0, 0), MultiPoly(1));
    EXPECT_EQ(m2(0, 1), x);
    EXPECT_EQ(m2(1, 0), x);
    EXPECT_EQ(m2(1, 1), x * x - 1);
    EXPECT_THROW(build_S(0), PreconditionError);
}

TEST(BuildMatrices, HankelAndSymmetric) {
    for (const PolyMatrix& m : {build_S(4), build_M(5)}) {
        EXPECT_TRUE(m.is_hankel());
        for (std::size_t i = 0; i < m.dimension(); ++i)
            for (std::size_t j = 0; j < m.dimension(); ++j) EXPECT_EQ(m(i, j), m(j, i));
    }
}

TEST(Moments, FirstValues) {
    const auto m = moments_of_mu(3);
    EXPECT_EQ(m[0], MultiPoly(1));
    EXPECT_EQ(m[1], rho * y);
    EXPECT_EQ(m[2], rho * rho * (y * y - 1) + 1);
}

TEST(Moments, AgreeWithFunctionalOnPowers) {
    // moments_of_mu expands x^n by the product rule; apply_functional by leading-term subtraction.
    const auto m = moments_of_mu(10);
    const auto functional = MomentFunctional::symbolic();
    for (unsigned n = 0; n <= 10; ++n) EXPECT_EQ(m[n], apply_functional(functional, x.pow(n))) << n;
}

TEST(DetExact, SmallCases) {
    EXPECT_EQ(det_exact(build_M(1)), MultiPoly(1));
    EXPECT_EQ(det_exact(build_M(2)), MultiPoly(-1));
}

TEST(DetExact, TriangularIsDiagonalProduct) {
    std::mt19937 rng(5);
    PolyMatrix m(4);
    MultiPoly diag(1);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = i; j < 4; ++j) m(i, j) = random_entry(rng);
        if (m(i, i).is_zero()) m(i, i) = 1 + x;
        diag *= m(i, i);
    }
    EXPECT_EQ(det_exact(m), diag);
}

TEST(DetExact, MatchesCofactorExpansion) {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 15; ++trial) {
        PolyMatrix m(4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) m(i, j) = random_entry(rng);
        if (trial % 4 == 0) m(0, 0) = MultiPoly();  // forces a row swap
        EXPECT_EQ(det_exact(m), cofactor_det(m));
    }
}

TEST(DetExact, RowSwapSign) {
    PolyMatrix m(2);
    m(0, 0) = 0;
    m(0, 1) = x;
    m(1, 0) = 1;
    m(1, 1) = q;
    EXPECT_EQ(det_exact(m), -x);
    PolyMatrix singular(2);
    singular(0, 1) = x;
    singular(1, 1) = q;
    EXPECT_TRUE(det_exact(singular).is_zero());
}

TEST(LeadingMinors, MatchIndividualDeterminants) {
    const PolyMatrix s = build_S(4);
    const auto minors = leading_principal_minors(s);
    ASSERT_EQ(minors.size(), 4u);
    for (std::size_t k = 1; k <= 4; ++k) EXPECT_EQ(minors[k - 1], cofactor_det(s.leading(k)));
}

TEST(VerifyC4, SpotValues) {
    const auto reports = verify_c4(2);
    EXPECT_EQ(reports[0].det_n, MultiPoly(1));
    EXPECT_EQ(reports[0].det_next, 1 - rho * rho);
    EXPECT_EQ(reports[0].predicted, 1 - rho * rho);
    ASSERT_TRUE(reports[1].ratio.has_value());
    EXPECT_EQ(*reports[1].ratio, (1 + q) * (1 - rho * rho) * (1 - rho * rho * q));
    EXPECT_EQ(reports[1].det_next.degree(Var::y), 0u);
}

TEST(VerifyC4, HoldsThroughSix) {
    for (const auto& r : verify_c4(6)) {
        EXPECT_TRUE(r.matches) << r.n << ": " << r.residual;
        ASSERT_EQ(r.constant_in.size(), 1u);
        EXPECT_EQ(r.constant_in[0], Var::y);
    }
}

TEST(VerifyC4, VanishesAtRhoOne) {
    const auto dets = leading_principal_minors(build_S(5));
    for (std::size_t n = 2; n <= 5; ++n) EXPECT_TRUE(dets[n - 1].substitute(Var::rho, 1).is_zero()) << n;
    EXPECT_EQ(dets[0].substitute(Var::rho, 1), MultiPoly(1));
}

TEST(VerifyC4, TelescopedClosedForm) {
    const auto dets = leading_principal_minors(build_S(5));
    MultiPoly closed(1);
    for (unsigned n = 1; n <= 5; ++n) {
        if (n >= 2) closed *= c4_ratio(n - 1);
        EXPECT_EQ(dets[n - 1], closed) << n;
    }
}

TEST(VerifyHermiteHankel, SpotValues) {
    const auto reports = verify_hermite_hankel(2);
    EXPECT_EQ(reports[0].det_next, MultiPoly(-1));
    EXPECT_EQ(reports[0].predicted, MultiPoly(-1));
    EXPECT_EQ(reports[1].det_next, -q * (1 + q));
    EXPECT_EQ(reports[1].det_next.to_string(), "-q^2 - q");
    EXPECT_EQ(*reports[1].ratio, q * (1 + q));
}

TEST(VerifyHermiteHankel, HoldsThroughSeven) {
    for (const auto& r : verify_hermite_hankel(7)) {
        EXPECT_TRUE(r.matches) << r.n;
        ASSERT_EQ(r.constant_in.size(), 1u);
        EXPECT_EQ(r.constant_in[0], Var::x);
    }
}

TEST(VerifyHermiteHankel, RowReductionUsesIntegerDifferences) {
    // The elimination behind the ratio relies on [n]_q - [m]_q = q^m [n-m]_q.
    for (unsigned n = 0; n <= 8; ++n)
        for (unsigned m = 0; m <= n; ++m) EXPECT_EQ(q_int_difference(n, m), q_int(n) - q_int(m));
}

}  // namespace
}  // namespace qchihara
