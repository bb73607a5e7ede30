#include <gtest/gtest.h>

#include <random>

#include "kchern/kchern.hpp"

using namespace kchern;

namespace {

Rational r(long long n, long long d = 1) { return Rational(n, d); }

TEST(Rational, ParsesAndPrintsCanonicalForm) {
    EXPECT_EQ(Rational::parse("6/4").str(), "3/2");
    EXPECT_EQ(Rational::parse(" -0/5 ").str(), "0");
    EXPECT_EQ(Rational::parse("7").str(), "7");
    EXPECT_EQ(Rational::parse("-12/4").str(), "-3");
    EXPECT_EQ(Rational::parse("+5/10").str(), "1/2");
    EXPECT_THROW(Rational::parse("1/-2"), ParseError);
    EXPECT_THROW(Rational::parse("1/0"), ParseError);
    EXPECT_THROW(Rational::parse("abc"), ParseError);
    EXPECT_THROW(Rational::parse(""), ParseError);
    EXPECT_THROW(Rational::parse("1.5"), ParseError);
}

TEST(Rational, FieldArithmetic) {
    EXPECT_EQ(r(1, 2) + r(1, 3), r(5, 6));
    EXPECT_EQ(r(1, 2) - r(1, 3), r(1, 6));
    EXPECT_EQ(r(2, 3) * r(9, 4), r(3, 2));
    EXPECT_EQ(r(2, 3) / r(4, 9), r(3, 2));
    EXPECT_EQ(-r(2, 3), r(-2, 3));
    EXPECT_LT(r(1, 3), r(1, 2));
    EXPECT_THROW(r(1) / r(0), std::exception);
}

TEST(Rational, OverflowPromotesToBigNumbers) {
    Rational big(1);
    for (int i = 0; i < 40; ++i) big *= Rational(1000003);
    Rational back = big;
    for (int i = 0; i < 40; ++i) back /= Rational(1000003);
    EXPECT_EQ(back, r(1));
    EXPECT_EQ(Rational::parse(big.str()), big);
    Rational x = Rational(std::numeric_limits<long long>::max()) + Rational(1);
    EXPECT_EQ(x - Rational(1), Rational(std::numeric_limits<long long>::max()));
    EXPECT_EQ((x * x).to_mpq(), mpq_class(x.to_mpq() * x.to_mpq()));
}

TEST(Rational, RandomizedAgreementWithGmp) {
    std::mt19937_64 eng(11);
    auto draw = [&]() {
        long long n = static_cast<long long>(eng() % 2000001) - 1000000;
        long long d = static_cast<long long>(eng() % 1000) + 1;
        return Rational(n, d);
    };
    for (int i = 0; i < 500; ++i) {
        Rational a = draw(), b = draw();
        mpq_class qa = a.to_mpq(), qb = b.to_mpq();
        EXPECT_EQ((a + b).to_mpq(), mpq_class(qa + qb));
        EXPECT_EQ((a * b).to_mpq(), mpq_class(qa * qb));
        EXPECT_EQ((a - b).to_mpq(), mpq_class(qa - qb));
        if (!b.is_zero()) {
            EXPECT_EQ((a / b).to_mpq(), mpq_class(qa / qb));
        }
        EXPECT_EQ(a < b, qa < qb);
    }
}

TEST(Poly1, CalculusOnTheUnitInterval) {
    Poly1 p(std::vector<Rational>{r(1), r(-3), r(2)});  // 1 - 3t + 2t^2
    EXPECT_EQ(p.eval(r(0)), r(1));
    EXPECT_EQ(p.eval(r(1)), r(0));
    EXPECT_EQ(p.eval(r(1, 2)), r(0));
    EXPECT_EQ(p.derivative(), Poly1(std::vector<Rational>{r(-3), r(4)}));
    EXPECT_EQ(p.integrate01(), r(1) - r(3, 2) + r(2, 3));
    EXPECT_EQ(p.reversed().eval(r(1, 3)), p.eval(r(2, 3)));
    EXPECT_EQ(Poly1::t() * Poly1::t(), Poly1::monomial(2));
    EXPECT_TRUE((p - p).is_zero());
    EXPECT_EQ((p - p).degree(), -1);
}

TEST(Poly1, FundamentalTheoremOfCalculus) {
    std::mt19937_64 eng(5);
    for (int i = 0; i < 50; ++i) {
        std::vector<Rational> c;
        for (int k = 0; k < 5; ++k) c.push_back(Rational(static_cast<long long>(eng() % 11) - 5));
        Poly1 p(c);
        EXPECT_EQ(p.derivative().integrate01(), p.eval(r(1)) - p.eval(r(0)));
    }
}

TEST(Poly2, PartialIntegrationAndEvaluation) {
    Poly2 f = Poly2::s() * Poly2::t() * Poly2::t() + Poly2(r(3)) * Poly2::s();  // s t^2 + 3 s
    EXPECT_EQ(f.integrate_s(), Poly1(std::vector<Rational>{r(3, 2), r(0), r(1, 2)}));
    EXPECT_EQ(f.integrate_t(), Poly1(std::vector<Rational>{r(0), r(1, 3) + r(3)}));
    EXPECT_EQ(f.eval_s(r(2)), Poly1(std::vector<Rational>{r(6), r(0), r(2)}));
    EXPECT_EQ(f.eval_t(r(1)), Poly1(std::vector<Rational>{r(0), r(4)}));
    EXPECT_EQ(f.d_s(), Poly2::t() * Poly2::t() + Poly2(r(3)));
    EXPECT_EQ(f.d_t(), Poly2(r(2)) * Poly2::s() * Poly2::t());
    EXPECT_EQ(Poly2::in_s(Poly1::t()), Poly2::s());
    EXPECT_EQ(Poly2::in_t(Poly1::t()), Poly2::t());
}

TEST(Poly2, IteratedIntegralsCommute) {
    std::mt19937_64 eng(9);
    for (int i = 0; i < 30; ++i) {
        Poly2 f;
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) f += Poly2::monomial(a, b, Rational(static_cast<long long>(eng() % 7) - 3));
        EXPECT_EQ(f.integrate_s().integrate01(), f.integrate_t().integrate01());
    }
}

TEST(LinAlg, KernelAndMembership) {
    // rank 2 map Q^4 -> Q^3
    RatMatrix m = RatMatrix::from_rows({{r(1), r(2), r(0), r(1)}, {r(0), r(1), r(1), r(0)}, {r(1), r(3), r(1), r(1)}}, 4);
    EXPECT_EQ(rank(m), 2U);
    auto ker = kernel_basis(m);
    ASSERT_EQ(ker.size(), 2U);
    for (const auto& v : ker) EXPECT_TRUE(is_zero(m.apply(v)));

    Vec b{r(3), r(2), r(5)};
    auto x = solve_membership(m, b);
    ASSERT_TRUE(x.has_value());
    EXPECT_EQ(m.apply(*x), b);
    EXPECT_FALSE(solve_membership(m, Vec{r(1), r(0), r(0)}).has_value());
}

TEST(LinAlg, QuotientProjectionKillsTheSubspace) {
    std::mt19937_64 eng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 6;
        std::vector<Vec> sub;
        for (int k = 0; k < 3; ++k) {
            Vec v(n);
            for (auto& c : v) c = Rational(static_cast<long long>(eng() % 5) - 2);
            sub.push_back(v);
        }
        QuotientBasis q = quotient_basis(n, sub);
        RatMatrix mat = RatMatrix::from_columns(sub, n);
        EXPECT_EQ(q.dim() + rank(mat), n);
        for (const auto& v : sub) EXPECT_TRUE(is_zero(q.project(v)));
        // selected coordinates map to the standard basis
        for (std::size_t j = 0; j < q.dim(); ++j) {
            Vec e(n);
            e[q.selected()[j]] = r(1);
            Vec pe = q.project(e);
            for (std::size_t i = 0; i < q.dim(); ++i) EXPECT_EQ(pe[i], i == j ? r(1) : r(0));
        }
    }
}

}  // namespace
