#include <gtest/gtest.h>

#include "kchern/kchern.hpp"
#include "oracles.hpp"

using namespace kchern;

namespace {

Rational r(long long n, long long d = 1) { return Rational(n, d); }

FormMatrix scalar_matrix(const Form& f) {
    FormMatrix m(1, 1);
    m(0, 0) = f;
    return m;
}

Idempotent e_line() {
    const Algebra& a = fixtures::q_times_q();
    return Idempotent(a, scalar_matrix(Form::basis(a, 1)));
}

/// D(sigma) = p d(sigma) + theta sigma on a matrix of module-valued forms.
FormMatrix covariant(const Connection& c, const FormMatrix& sigma) {
    return c.idempotent().matrix() * entrywise_differential(sigma) + c.potential() * sigma;
}

TEST(Idempotents, ValidationRejectsNonIdempotents) {
    const Algebra& a = fixtures::dual_numbers();
    EXPECT_THROW(Idempotent(a, scalar_matrix(Form::basis(a, 1))), ValidationError);
    EXPECT_THROW(Idempotent(a, scalar_matrix(Form::basis(a, 1).differential())), ValidationError);
    FormMatrix rect(1, 2);
    EXPECT_THROW(Idempotent(a, rect), ValidationError);
    EXPECT_NO_THROW(Idempotent::identity(a, 3));
    EXPECT_EQ(Idempotent::zero(a).size(), 0U);
}

TEST(Idempotents, RandomIdempotentsAreIdempotent) {
    for (const auto& fx : fixtures::all())
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            Idempotent p = random_idempotent(fx.algebra, 1 + seed % 3, seed);
            EXPECT_EQ(p.matrix() * p.matrix(), p.matrix());
        }
}

TEST(Connections, PotentialMustBeCompressed) {
    Idempotent p = e_line();
    const Algebra& a = p.algebra();
    Form de = Form::basis(a, 1).differential();
    // e de (1 - e) is killed by compression; de itself is not compressed
    EXPECT_THROW(Connection(p, scalar_matrix(de)), ValidationError);
    EXPECT_NO_THROW(Connection(p, scalar_matrix(Form::basis(a, 1) * de * Form::basis(a, 1))));
    EXPECT_THROW(Connection(p, scalar_matrix(Form::basis(a, 1))), ValidationError);
}

TEST(Curvature, GrassmannCurvatureIsPdpdp) {
    Idempotent p = e_line();
    const Algebra& a = p.algebra();
    Form e = Form::basis(a, 1);
    FormMatrix rr = curvature(grassmann(p));
    EXPECT_EQ(rr(0, 0), e * e.differential() * e.differential() * e);
}

TEST(Curvature, EqualsSquareOfCovariantDerivative) {
    for (const auto& fx : fixtures::all())
        for (std::uint64_t seed = 1; seed <= 15; ++seed) {
            Idempotent p = random_idempotent(fx.algebra, 1 + seed % 2, seed);
            Connection c = random_connection(p, seed * 31);
            EXPECT_EQ(covariant(c, covariant(c, p.matrix())), curvature(c)) << fx.name << " seed " << seed;
            // R is compressed and of degree 2
            EXPECT_EQ(p.matrix() * curvature(c) * p.matrix(), curvature(c));
            EXPECT_TRUE(all_degree(curvature(c), 2));
        }
}

TEST(Chern, GoldenValuesForTheIdempotentLineInQxQ) {
    // ch_k(e) = [e (de)^{2k}] / k!
    Connection c = grassmann(e_line());
    const Algebra& a = c.algebra();
    ChernClasses ch = chern(c, 3);
    ASSERT_EQ(ch.size(), 4U);
    EXPECT_EQ(ch[0], abelianization(a, 0).project(Form::basis(a, 1)));
    for (int k = 1; k <= 3; ++k) {
        std::vector<int> slots(static_cast<std::size_t>(2 * k + 1), 1);
        Form w(a, Word(slots), Rational(1) / factorial(k));
        EXPECT_EQ(ch[static_cast<std::size_t>(k)], abelianization(a, 2 * k).project(w)) << k;
    }
    // ch_1 is a nonzero homology class
    oracle::Table t(a);
    EXPECT_FALSE(oracle::exact_in_ab(t, 2, oracle::from_form(Form(a, Word{1, 1, 1}, r(1)))));
    EXPECT_FALSE(is_exact_class(a, 2, ch[1]).exact);
}

TEST(Chern, TrivialModule) {
    const Algebra& a = fixtures::m2();
    ChernClasses ch = chern(grassmann(Idempotent::identity(a, 1)), 2);
    EXPECT_EQ(ch[0], abelianization(a, 0).project(Form::one(a)));
    EXPECT_TRUE(is_zero(ch[1]));
    EXPECT_TRUE(is_zero(ch[2]));
}

TEST(Chern, RankOfAMatrixIdempotentIsItsTrace) {
    // E11 in M2 has trace class 1/2 [1] in Omega_ab,0 = Q
    const Algebra& a = fixtures::m2();
    Idempotent p(a, scalar_matrix(Form::basis(a, 1)));
    ChernClasses ch = chern(grassmann(p), 0);
    EXPECT_EQ(ch[0], abelianization(a, 0).project(Form::basis(a, 1)));
    Vec half = abelianization(a, 0).project(r(1, 2) * Form::one(a));
    EXPECT_EQ(ch[0], half);
}

TEST(Chern, CapIsChecked) {
    Connection c = grassmann(Idempotent::identity(fixtures::dual_numbers().with_degree_cap(3), 1));
    EXPECT_THROW(chern(c, 2), CapExceeded);
    EXPECT_NO_THROW(chern(c, 1));
}

TEST(ChernProperty, ClosedAdditiveAndConnectionIndependent) {
    for (const auto& fx : fixtures::all()) {
        Rng rng(77);
        for (int i = 0; i < 25; ++i) {
            Idempotent p = random_idempotent(fx.algebra, static_cast<std::size_t>(rng.range(1, 2)), rng.next());
            Connection c = random_connection(p, rng.next());
            GradedClass ch = as_graded(chern(c, 2));
            EXPECT_TRUE(graded_is_zero(dbar(fx.algebra, ch))) << fx.name;
            GradedClass diff = graded_sub(ch, as_graded(chern(grassmann(p), 2)));
            EXPECT_TRUE(is_exact_graded(fx.algebra, diff).exact) << fx.name;

            Connection c2 = random_connection(random_idempotent(fx.algebra, 1, rng.next()), rng.next());
            EXPECT_TRUE(graded_equal(as_graded(chern(direct_sum(c, c2), 2)), graded_add(ch, as_graded(chern(c2, 2)))));
        }
    }
}

TEST(ChernProperty, TraceIsGradedCyclic) {
    for (const auto& fx : fixtures::all()) {
        Rng rng(78);
        for (int i = 0; i < 25; ++i) {
            int a = rng.range(0, 3), b = rng.range(0, 3);
            FormMatrix x(2, 2), y(2, 2);
            for (std::size_t s = 0; s < 2; ++s)
                for (std::size_t t = 0; t < 2; ++t) {
                    x(s, t) = random_form(fx.algebra, a, rng, 2);
                    y(s, t) = random_form(fx.algebra, b, rng, 2);
                }
            GradedClass xy = trace_ab(x * y), yx = trace_ab(y * x);
            if ((a * b) % 2) yx = graded_sub(GradedClass{}, yx);
            EXPECT_TRUE(graded_equal(xy, yx)) << fx.name;
        }
    }
}

TEST(ChernProperty, PullbackAndConjugationInvariance) {
    for (const auto& fx : fixtures::all())
        for (std::uint64_t seed = 1; seed <= 15; ++seed) {
            ModuleIso phi = seed % 2 ? random_automorphism(fx.algebra, 2, seed) : random_conjugation(fx.algebra, 2, seed);
            Connection c = random_connection(phi.target(), seed + 100);
            Connection pc = pullback(c, phi);
            EXPECT_EQ(pc.idempotent(), phi.source());
            EXPECT_TRUE(graded_equal(as_graded(chern(pc, 2)), as_graded(chern(c, 2)))) << fx.name;
            // pulling back along the inverse undoes it
            EXPECT_EQ(pullback(pc, phi.inverse()), c);
        }
}

TEST(ChernProperty, NaturalityAlongHoms) {
    for (const auto& name : fixtures::names())
        for (const auto& psi : fixtures::homs_from(name)) {
            Rng rng(79);
            for (int i = 0; i < 10; ++i) {
                Connection c = random_connection(random_idempotent(psi.source(), 2, rng.next()), rng.next());
                EXPECT_EQ(curvature(extend_scalars(c, psi)), extend_scalars(curvature(c), psi));
                EXPECT_TRUE(graded_equal(as_graded(chern(extend_scalars(c, psi), 2)),
                                         push_forward(psi, as_graded(chern(c, 2)))))
                    << name;
            }
        }
}

TEST(ModuleIsos, ValidationAndComposition) {
    const Algebra& a = fixtures::q_times_q();
    Idempotent p = e_line();
    EXPECT_THROW(ModuleIso(p, p, Idempotent::identity(a, 1).matrix(), p.matrix()), ValidationError);
    ModuleIso phi = random_automorphism(fixtures::m2(), 2, 5);
    ModuleIso id = phi.compose_after(phi.inverse());
    EXPECT_EQ(id.forward(), phi.target().matrix());
    ModuleIso conj = random_conjugation(fixtures::m2(), 2, 9);
    ModuleIso small = random_conjugation(fixtures::m2(), 1, 9);
    EXPECT_THROW(conj.compose_after(small), MismatchError);
    EXPECT_NO_THROW(conj.inverse().compose_after(conj));
}

TEST(Rng, SequencesAreReproducible) {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next(), b.next());
    EXPECT_EQ(random_connection(random_idempotent(fixtures::m2(), 2, 3), 4),
              random_connection(random_idempotent(fixtures::m2(), 2, 3), 4));
}

}  // namespace
