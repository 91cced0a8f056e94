#include <random>
#include <thread>
#include <vector>

#include <gtest/gtest.h>

#include "qchihara/families.hpp"

namespace qchihara {
namespace {

const MultiPoly q = var(Var::q);
const MultiPoly x = var(Var::x);
const MultiPoly a = var(Var::a);
const MultiPoly b = var(Var::b);

TEST(HermitePoly, InitialTerms) {
    EXPECT_EQ(hermite_poly(0), MultiPoly(1));
    EXPECT_EQ(hermite_poly(1), x);
    EXPECT_EQ(hermite_poly(2), x * x - 1);
    EXPECT_EQ(hermite_poly(3), x.pow(3) - (2 + q) * x);
}

TEST(BPoly, InitialTerms) {
    EXPECT_EQ(b_poly(0), MultiPoly(1));
    EXPECT_EQ(b_poly(1), -x);
    EXPECT_EQ(b_poly(2), q * x * x + 1);
}

TEST(AscPoly, InitialTerms) {
    EXPECT_EQ(asc_poly(1, a, b), x - a);
    EXPECT_EQ(asc_poly(2, a, b), x * x - a * (1 + q) * x + a * a * q - 1 + b);
}

TEST(AscPoly, ZeroParametersGiveHermite) {
    const PolyFamily family = PolyFamily::asc(0, 0);
    for (unsigned n = 0; n <= 12; ++n) EXPECT_EQ(family[n], hermite_poly(n)) << n;
}

TEST(Families, DegreeAndLeadingCoefficient) {
    const PolyFamily asc = PolyFamily::asc(a, b);
    for (unsigned n = 0; n <= 12; ++n) {
        EXPECT_EQ(hermite_poly(n).degree(Var::x), n);
        EXPECT_EQ(hermite_poly(n).coefficient(Var::x, n), MultiPoly(1));
        EXPECT_EQ(asc[n].degree(Var::x), n);
        EXPECT_EQ(asc[n].coefficient(Var::x, n), MultiPoly(1));
        EXPECT_EQ(b_poly(n).degree(Var::x), n);
        const MultiPoly sign = (n % 2 == 0) ? MultiPoly(1) : MultiPoly(-1);
        EXPECT_EQ(b_poly(n).coefficient(Var::x, n), sign * var(Var::q, n * (n - 1) / 2)) << n;
    }
}

TEST(HermitePoly, ClassicalLimitAtQEqualsOne) {
    // probabilists' Hermite: He_{n+1} = x He_n - n He_{n-1}
    std::vector<MultiPoly> he{MultiPoly(1), x};
    for (unsigned n = 1; n < 10; ++n) he.push_back(x * he[n] - MultiPoly(static_cast<long>(n)) * he[n - 1]);
    for (unsigned n = 0; n <= 10; ++n) EXPECT_EQ(hermite_poly(n).substitute(Var::q, 1), he[n]) << n;
}

TEST(MonomialToHermite, Examples) {
    const auto e1 = monomial_to_hermite(1);
    ASSERT_EQ(e1.coefficients.size(), 1u);
    EXPECT_EQ(e1.coefficients[0], MultiPoly(1));

    const auto e2 = monomial_to_hermite(2);
    ASSERT_EQ(e2.coefficients.size(), 2u);
    EXPECT_EQ(e2.coefficients[0], MultiPoly(1));
    EXPECT_EQ(e2.coefficients[1], MultiPoly(1));
}

TEST(MonomialToHermite, ReconstructsPowersOfX) {
    for (unsigned n = 0; n <= 10; ++n) {
        const auto e = monomial_to_hermite(n);
        EXPECT_EQ(e.coefficients.front(), MultiPoly(1));
        EXPECT_EQ(e.reconstruct(), x.pow(n)) << n;
    }
}

TEST(HermiteToMonomial, Examples) {
    const auto c = hermite_to_monomial(x * x);
    ASSERT_EQ(c.size(), 3u);
    EXPECT_EQ(c[0], MultiPoly(1));
    EXPECT_TRUE(c[1].is_zero());
    EXPECT_EQ(c[2], MultiPoly(1));

    const auto unit = hermite_to_monomial(hermite_poly(5));
    ASSERT_EQ(unit.size(), 6u);
    for (unsigned k = 0; k < 5; ++k) EXPECT_TRUE(unit[k].is_zero());
    EXPECT_EQ(unit[5], MultiPoly(1));
}

TEST(HermiteToMonomial, RoundTripOnRandomPolynomials) {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> coef(-4, 4);
    std::uniform_int_distribution<unsigned> deg(0, 10);
    for (int trial = 0; trial < 25; ++trial) {
        MultiPoly p;
        const unsigned d = deg(rng);
        for (unsigned k = 0; k <= d; ++k) p += MultiPoly(coef(rng)) * x.pow(k);
        if (trial % 3 == 0) p *= (1 + var(Var::rho) * q);  // symbolic coefficients
        EXPECT_EQ(from_hermite_basis(hermite_to_monomial(p)), p);
    }
}

TEST(HomogenizeRatio, MatchesHandExpansion) {
    const MultiPoly c = var(Var::c);
    EXPECT_EQ(homogenize_ratio(b_poly(1), 1), -a);
    EXPECT_EQ(homogenize_ratio(b_poly(2), 2), q * a * a + c * c);
    EXPECT_EQ(homogenize_ratio(hermite_poly(2), 2), a * a - c * c);
    EXPECT_THROW(homogenize_ratio(hermite_poly(3), 2), PreconditionError);
}

TEST(PolyFamily, ConcurrentExtensionIsDeterministic) {
    const PolyFamily family = PolyFamily::asc(a, b);
    std::vector<MultiPoly> seen(4);
    std::vector<std::thread> threads;
    for (unsigned t = 0; t < 4; ++t) {
        threads.emplace_back([&, t] { seen[t] = family[8 - t] * family[t + 2]; });
    }
    for (auto& th : threads) th.join();
    const PolyFamily serial = PolyFamily::asc(a, b);
    for (unsigned t = 0; t < 4; ++t) EXPECT_EQ(seen[t], serial[8 - t] * serial[t + 2]);
}

}  // namespace
}  // namespace qchihara
