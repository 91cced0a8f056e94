#include <gtest/gtest.h>

#include "qchihara/genfun.hpp"

namespace qchihara {
namespace {

const MultiPoly q = var(Var::q);
const MultiPoly x = var(Var::x);
const MultiPoly a = var(Var::a);

TEST(FamilySeries, PhiAndPsiPairs) {
    const auto phi = phi_series(2).coefficient_pairs();
    ASSERT_EQ(phi.size(), 3u);
    EXPECT_EQ(phi[0], std::make_pair(MultiPoly(1), MultiPoly(1)));
    EXPECT_EQ(phi[1], std::make_pair(x, MultiPoly(1)));
    EXPECT_EQ(phi[2], std::make_pair(x * x - 1, 1 + q));

    const auto psi = psi_series(1).coefficient_pairs();
    ASSERT_EQ(psi.size(), 2u);
    EXPECT_EQ(psi[0], std::make_pair(MultiPoly(1), MultiPoly(1)));
    EXPECT_EQ(psi[1], std::make_pair(-x, MultiPoly(1)));
}

TEST(FamilySeries, AscAtZeroEqualsPhi) {
    EXPECT_EQ(family_series(PolyFamily::asc(0, 0), 8), phi_series(8));
}

TEST(TruncatedSeries, OneIsMultiplicativeIdentity) {
    const TruncatedSeries phi = phi_series(6);
    EXPECT_EQ(phi * TruncatedSeries::one(6), phi);
    EXPECT_EQ(TruncatedSeries::one(6) * phi, phi);
}

TEST(TruncatedSeries, ProductTruncatesAtSmallerOrder) {
    EXPECT_EQ((phi_series(5) * psi_series(3)).order(), 3u);
    EXPECT_EQ(phi_series(4) * psi_series(4), psi_series(4) * phi_series(4));
}

TEST(ConvolutionZero, HandExpansions) {
    // n=1: B_1 H_0 + [1] B_0 H_1 = -x + x
    EXPECT_TRUE(convolution_zero_residual(1).is_zero());
    // n=2: (q x^2 + 1) - (1+q) x^2 + (x^2 - 1)
    EXPECT_EQ(b_poly(2) + q_binomial(2, 1) * b_poly(1) * hermite_poly(1) + hermite_poly(2), MultiPoly(0));
    EXPECT_TRUE(convolution_zero_residual(2).is_zero());
    EXPECT_EQ(convolution_zero_residual(0), MultiPoly(1));
}

TEST(ConvolutionZero, HoldsThroughTwelve) {
    for (unsigned n = 1; n <= 12; ++n) EXPECT_TRUE(convolution_zero_residual(n).is_zero()) << n;
}

TEST(Expansion, HandExpansionAtOne) {
    const PolyFamily asc = PolyFamily::asc(a, var(Var::c, 2));
    EXPECT_EQ(asc[1], x - a);
    EXPECT_TRUE(expansion_residual(1, asc).is_zero());
}

TEST(VerifyG1G2, AllCoefficientsVanish) {
    const auto report = verify_g1_g2(10);
    EXPECT_TRUE(report.g1.ok());
    EXPECT_TRUE(report.g2.ok());
    EXPECT_EQ(report.g2.cases.size(), 11u);
    EXPECT_EQ(report.g1.residual_norm(), 0.0);
}

TEST(VerifyG1G2, RejectsZeroOrder) { EXPECT_THROW(verify_g1_g2(0), PreconditionError); }

TEST(NumericProduct, PhiAtReferencePoint) {
    ProductCheckInput in;
    in.t = 0.1;
    in.x = 0.3;
    in.q = 0.5;
    in.n_terms = 30;
    in.k_factors = 60;
    in.tol = 1e-10;
    const auto r = numeric_product_check(GenFun::phi, in);
    EXPECT_TRUE(r.passed) << r.partial_sum << " vs " << r.product;
}

TEST(NumericProduct, PsiTimesPhiIsOne) {
    ProductCheckInput in;
    in.t = 0.1;
    in.x = 0.3;
    in.q = 0.5;
    const auto r = numeric_inverse_check(in);
    EXPECT_TRUE(r.passed) << r.difference;
}

TEST(NumericProduct, FAtZeroParametersEqualsPhi) {
    ProductCheckInput in;
    in.t = 0.1;
    in.x = 0.7;
    in.q = 0.3;
    const auto f = numeric_product_check(GenFun::f, in);
    const auto phi = numeric_product_check(GenFun::phi, in);
    EXPECT_NEAR(f.partial_sum, phi.partial_sum, 1e-15);
    EXPECT_NEAR(f.product, phi.product, 1e-15);
}

TEST(NumericProduct, GridAgreement) {
    for (double qv : {-0.5, 0.0, 0.3, 0.7}) {
        for (double t : {0.05, 0.1}) {
            for (double xv : {0.0, 0.5, 1.0}) {
                ProductCheckInput in;
                in.t = t;
                in.x = xv;
                in.q = qv;
                in.a = 0.4;
                in.b = 0.49;
                in.tol = 1e-9;
                for (GenFun which : {GenFun::f, GenFun::phi, GenFun::psi}) {
                    const auto r = numeric_product_check(which, in);
                    EXPECT_TRUE(r.passed) << to_string(which) << " q=" << qv << " t=" << t << " x=" << xv
                                          << " diff=" << r.difference;
                }
            }
        }
    }
}

TEST(NumericProduct, GuardAndDomain) {
    ProductCheckInput in;
    in.t = 0.9;
    in.x = 2.0;
    in.q = 0.1;
    EXPECT_THROW(numeric_product_check(GenFun::phi, in), PreconditionError);
    in.t = 0.1;
    in.q = 1.0;
    EXPECT_THROW(numeric_product_check(GenFun::phi, in), DomainError);
}

TEST(NumericProduct, NonConvergenceIsReportedNotThrown) {
    ProductCheckInput in;
    in.t = 0.1;
    in.x = 0.3;
    in.q = 0.5;
    in.n_terms = 1;  // far too short
    const auto r = numeric_product_check(GenFun::phi, in);
    EXPECT_FALSE(r.passed);
    EXPECT_GT(r.difference, 1e-4);
}

TEST(RecurrenceValues, AgreeWithExactPolynomials) {
    for (double qv : {-0.6, 0.0, 0.45}) {
        const auto h = numeric::hermite_values(9, 0.8, qv);
        const auto bv = numeric::b_values(9, 0.8, qv);
        const auto p = numeric::asc_values(9, 0.8, qv, 0.3, 0.2);
        const PolyFamily asc = PolyFamily::asc(a, var(Var::b));
        const Assignment<double> at{{Var::x, 0.8}, {Var::q, qv}, {Var::a, 0.3}, {Var::b, 0.2}};
        for (unsigned n = 0; n <= 9; ++n) {
            EXPECT_NEAR(h[n], hermite_poly(n).evaluate(at), 1e-12);
            EXPECT_NEAR(bv[n], b_poly(n).evaluate(at), 1e-12);
            EXPECT_NEAR(p[n], asc[n].evaluate(at), 1e-12);
        }
    }
}

}  // namespace
}  // namespace qchihara
