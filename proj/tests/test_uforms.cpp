#include <gtest/gtest.h>

#include "kchern/kchern.hpp"
#include "oracles.hpp"

using namespace kchern;

namespace {

Rational r(long long n, long long d = 1) { return Rational(n, d); }

Form word(const Algebra& a, std::initializer_list<int> slots, Rational c = Rational(1)) {
    return Form(a, Word(slots), c);
}

Form random_mixed(const Algebra& a, int max_degree, Rng& rng) {
    Form f(a);
    for (int k = 0; k < 2; ++k) f += random_form(a, rng.range(0, max_degree), rng);
    return f;
}

// --- golden values ------------------------------------------------------------

TEST(UForms, DualNumbersCommutationRule) {
    // (dx) x = d(x^2) - x dx = -x dx
    const Algebra& a = fixtures::dual_numbers();
    Form x = Form::basis(a, 1);
    Form dx = x.differential();
    EXPECT_EQ(dx * x, -(x * dx));
    EXPECT_EQ(x * dx, word(a, {1, 1}));
    EXPECT_EQ(dx * dx, word(a, {0, 1, 1}));
}

TEST(UForms, DifferentialOfWords) {
    const Algebra& a = fixtures::m2();
    EXPECT_EQ(word(a, {2, 1, 3}).differential(), word(a, {0, 2, 1, 3}));
    EXPECT_TRUE(word(a, {0, 1, 3}).differential().is_zero());
    EXPECT_TRUE(Form::one(a).differential().is_zero());
}

TEST(UForms, DimensionLaw) {
    for (const auto& fx : fixtures::all()) {
        const std::size_t m = static_cast<std::size_t>(fx.algebra.dim());
        std::size_t expect = m;
        for (int n = 0; n <= 6; ++n) {
            EXPECT_EQ(dimension(fx.algebra, n), expect) << fx.name << " degree " << n;
            EXPECT_EQ(all_words(fx.algebra, n).size(), expect);
            EXPECT_EQ(oracle::words(fx.algebra.dim(), n).size(), expect);
            expect *= m - 1;
        }
    }
    EXPECT_EQ(dimension(fixtures::rationals(), 0), 1U);
    EXPECT_EQ(dimension(fixtures::rationals(), 3), 0U);
}

TEST(UForms, WordsMustHaveNonunitDifferentialSlots) {
    const Algebra& a = fixtures::dual_numbers();
    EXPECT_THROW(Form(a, Word{1, 0}, r(1)), MismatchError);
    EXPECT_THROW(Form(a, Word{2}, r(1)), MismatchError);
}

TEST(UForms, DegreeCapIsEnforced) {
    Algebra a = fixtures::dual_numbers().with_degree_cap(3);
    Form dx = Form::basis(a, 1).differential();
    Form w = dx * dx * dx;
    EXPECT_EQ(w, word(a, {0, 1, 1, 1}));
    EXPECT_THROW(w * dx, CapExceeded);
}

// --- oracle agreement ---------------------------------------------------------

TEST(UForms, ProductAgreesWithLeibnizExpansionOracle) {
    for (const auto& fx : fixtures::all()) {
        oracle::Table t(fx.algebra);
        Rng rng(101);
        for (int i = 0; i < 60; ++i) {
            int p = rng.range(0, 3), q = rng.range(0, 2);
            Form u = random_form(fx.algebra, p, rng), v = random_form(fx.algebra, q, rng);
            EXPECT_EQ(oracle::from_form(u * v), oracle::mult(t, oracle::from_form(u), oracle::from_form(v))) << fx.name;
            EXPECT_EQ(oracle::from_form(u.differential()), oracle::differential(oracle::from_form(u)));
        }
    }
}

struct AbGolden {
    std::string name;
    std::vector<std::size_t> ab;        // dim Omega_ab,n for n = 0, 1, ...
    std::vector<std::size_t> homology;  // dim H_n
};

// Frozen from the all-pairs commutator oracle.
const std::vector<AbGolden>& goldens() {
    static const std::vector<AbGolden> g{
        {"Q", {1, 0, 0, 0, 0}, {1, 0, 0, 0}},
        {"dual", {2, 1, 1, 1, 1, 1, 1}, {1, 0, 0, 0, 0, 0}},
        {"trunc3", {3, 2, 3, 4, 6}, {1, 0, 0, 0}},
        {"QxQ", {2, 0, 1, 0, 1, 0, 1}, {2, 0, 1, 0, 1, 0}},
        {"QC2", {2, 0, 1, 0, 1, 0, 1}, {2, 0, 1, 0, 1, 0}},
        {"M2", {1, 3, 3, 11}, {1, 0, 0}},
    };
    return g;
}

TEST(Abelianization, OracleReproducesFrozenDimensions) {
    for (const auto& g : goldens()) {
        oracle::Table t(fixtures::by_name(g.name).algebra);
        const std::size_t top = std::min<std::size_t>(g.ab.size(), g.name == "M2" ? 3 : 5);
        for (std::size_t n = 0; n < top; ++n) EXPECT_EQ(oracle::ab_dim(t, static_cast<int>(n)), g.ab[n]) << g.name << " " << n;
        for (std::size_t n = 0; n + 1 < top; ++n)
            EXPECT_EQ(oracle::homology_dim(t, static_cast<int>(n)), g.homology[n]) << g.name << " " << n;
    }
}

TEST(Abelianization, LibraryMatchesFrozenDimensions) {
    for (const auto& g : goldens()) {
        const Algebra& a = fixtures::by_name(g.name).algebra;
        for (std::size_t n = 0; n < g.ab.size(); ++n) EXPECT_EQ(abelianization(a, static_cast<int>(n)).dim(), g.ab[n]) << g.name;
        for (std::size_t n = 0; n < g.homology.size(); ++n)
            EXPECT_EQ(de_rham_homology(a, static_cast<int>(n)).dim, g.homology[n]) << g.name << " " << n;
    }
    EXPECT_EQ(abelianization(fixtures::m2(), 4).dim(), 21U);
    EXPECT_EQ(abelianization(fixtures::m2(), 5).dim(), 51U);
    EXPECT_EQ(abelianization(fixtures::truncated_cubic(), 6).dim(), 12U);
}

TEST(Abelianization, GeneratorSpanEqualsAllPairsSpan) {
    for (const auto& fx : fixtures::all())
        for (int n = 0; n <= (fx.algebra.dim() > 3 ? 3 : 5); ++n) {
            RowEchelon a = commutator_echelon(fx.algebra, n);
            RowEchelon b = commutator_echelon_all_pairs(fx.algebra, n);
            EXPECT_EQ(a.rank(), b.rank()) << fx.name << " " << n;
            for (const auto& row : b.rows()) EXPECT_TRUE(a.reduce(row).empty()) << fx.name << " " << n;
        }
}

TEST(Abelianization, ProjectionKernelIsTheCommutatorSpan) {
    for (const auto& fx : fixtures::all()) {
        oracle::Table t(fx.algebra);
        Rng rng(17);
        for (int i = 0; i < 30; ++i) {
            int n = rng.range(0, fx.algebra.dim() > 3 ? 2 : 4);
            Form f = random_form(fx.algebra, n, rng);
            bool zero = is_zero(abelianization(fx.algebra, n).project(f));
            bool in_span = oracle::commutators(t, n).contains(oracle::dense(t.m, n, oracle::from_form(f)));
            EXPECT_EQ(zero, in_span) << fx.name << " " << f.str();
            // and a graded commutator always projects to zero
            int p = rng.range(0, n);
            Form u = random_form(fx.algebra, p, rng), v = random_form(fx.algebra, n - p, rng);
            Form c = u * v - ((p * (n - p)) % 2 ? r(-1) : r(1)) * (v * u);
            EXPECT_TRUE(is_zero(abelianization(fx.algebra, n).project(c)));
        }
    }
}

TEST(Abelianization, LiftIsASectionOfProjection) {
    for (const auto& fx : fixtures::all())
        for (int n = 0; n <= 3; ++n) {
            AbProjection pr = abelianization(fx.algebra, n);
            for (std::size_t j = 0; j < pr.dim(); ++j) {
                Vec e(pr.dim());
                e[j] = r(1);
                EXPECT_EQ(pr.project(pr.lift(e)), e);
            }
        }
}

TEST(Homology, ProductOfFieldsHasClassInDegreeTwo) {
    // e de de is closed and not exact
    const Algebra& a = fixtures::q_times_q();
    oracle::Table t(a);
    Form w = word(a, {1, 1, 1});
    oracle::NForm nw = oracle::from_form(w);
    EXPECT_TRUE(oracle::closed_in_ab(t, 2, nw));
    EXPECT_FALSE(oracle::exact_in_ab(t, 2, nw));
    EXPECT_FALSE(is_exact_in_ab(w, 2).exact);
    Homology h = de_rham_homology(a, 2);
    ASSERT_EQ(h.dim, 1U);
    // Omega_ab,2 is one-dimensional, so the representative is a nonzero multiple of e de de
    ASSERT_EQ(abelianization(a, 2).dim(), 1U);
    EXPECT_FALSE(is_zero(abelianization(a, 2).project(h.representatives.front())));
    EXPECT_FALSE(is_zero(abelianization(a, 2).project(w)));
}

TEST(Homology, RationalsAreAcyclicAboveDegreeZero) {
    const Algebra& q = fixtures::rationals();
    EXPECT_EQ(de_rham_homology(q, 0).dim, 1U);
    for (int n = 1; n <= 6; ++n) EXPECT_EQ(de_rham_homology(q, n).dim, 0U);
}

TEST(Homology, RepresentativesAreClosedAndIndependentOfBoundaries) {
    for (const auto& fx : fixtures::all())
        for (int n = 0; n <= 4; ++n) {
            Homology h = de_rham_homology(fx.algebra, n);
            EXPECT_EQ(h.representatives.size(), h.dim);
            for (const auto& rep : h.representatives) {
                Vec c = abelianization(fx.algebra, n).project(rep);
                EXPECT_TRUE(is_zero(dbar_matrix(fx.algebra, n).apply(c)));
                if (n > 0) {
                    EXPECT_FALSE(is_exact_class(fx.algebra, n, c).exact);
                }
            }
        }
}

TEST(Homology, CapIsEnforced) {
    Algebra a = fixtures::dual_numbers().with_degree_cap(4);
    EXPECT_NO_THROW(de_rham_homology(a, 3));
    EXPECT_THROW(de_rham_homology(a, 4), CapExceeded);
}

TEST(Exactness, PrimitiveCertificatesCheckOut) {
    for (const auto& fx : fixtures::all()) {
        Rng rng(23);
        for (int i = 0; i < 20; ++i) {
            int n = rng.range(1, 4);
            Form f = random_form(fx.algebra, n - 1, rng);
            Vec c = abelianization(fx.algebra, n).project(f.differential());
            ExactnessResult ex = is_exact_class(fx.algebra, n, c);
            ASSERT_TRUE(ex.exact);
            ASSERT_TRUE(ex.primitive_form.has_value());
            EXPECT_EQ(abelianization(fx.algebra, n).project(ex.primitive_form->differential()), c);
        }
    }
}

TEST(Exactness, NonClosedClassesAreNotExact) {
    // degree-one class in M2 and degree-three class in Q[x]/x^3 with d != 0
    for (auto [name, n] : {std::pair<std::string, int>{"M2", 1}, {"trunc3", 3}}) {
        const Algebra& a = fixtures::by_name(name).algebra;
        oracle::Table t(a);
        bool found = false;
        for (const Word& w : abelianization(a, n).basis_words()) {
            Form f(a, w, r(1));
            if (!oracle::closed_in_ab(t, n, oracle::from_form(f))) {
                found = true;
                EXPECT_FALSE(is_exact_in_ab(f, n).exact);
            }
        }
        EXPECT_TRUE(found) << name;
    }
}

// --- properties ---------------------------------------------------------------

TEST(UFormsProperty, DifferentialSquaresToZero) {
    for (const auto& fx : fixtures::all()) {
        Rng rng(1);
        for (int i = 0; i < 200; ++i) {
            Form w = random_mixed(fx.algebra, 5, rng);
            EXPECT_TRUE(w.differential().differential().is_zero()) << fx.name;
        }
    }
}

TEST(UFormsProperty, GradedLeibnizAndAssociativity) {
    for (const auto& fx : fixtures::all()) {
        Rng rng(2);
        for (int i = 0; i < 200; ++i) {
            int a = rng.range(0, 3), b = rng.range(0, 2), c = rng.range(0, 5 - a - b);
            Form u = random_form(fx.algebra, a, rng), v = random_form(fx.algebra, b, rng),
                 w = random_form(fx.algebra, c, rng);
            Rational sign = a % 2 ? r(-1) : r(1);
            EXPECT_EQ((u * v).differential(), u.differential() * v + sign * (u * v.differential())) << fx.name;
            EXPECT_EQ((u * v) * w, u * (v * w)) << fx.name;
        }
    }
}

TEST(UFormsProperty, UnitIsTwoSided) {
    for (const auto& fx : fixtures::all()) {
        Rng rng(3);
        Form one = Form::one(fx.algebra);
        for (int i = 0; i < 30; ++i) {
            Form w = random_mixed(fx.algebra, 4, rng);
            EXPECT_EQ(one * w, w);
            EXPECT_EQ(w * one, w);
        }
    }
}

TEST(UFormsProperty, ExtendedHomIsADgaMap) {
    for (const auto& name : fixtures::names())
        for (const auto& psi : fixtures::homs_from(name)) {
            Rng rng(4);
            for (int i = 0; i < 40; ++i) {
                int a = rng.range(0, 2), b = rng.range(0, 2);
                Form u = random_form(psi.source(), a, rng), v = random_form(psi.source(), b, rng);
                EXPECT_EQ(extend_hom(psi, u * v), extend_hom(psi, u) * extend_hom(psi, v)) << name;
                EXPECT_EQ(extend_hom(psi, u.differential()), extend_hom(psi, u).differential()) << name;
            }
            // degree zero agrees with psi itself
            for (int i = 0; i < psi.source().dim(); ++i)
                EXPECT_EQ(extend_hom(psi, Form::basis(psi.source(), i)),
                          Form::from_element(psi(AlgElement::basis(psi.source(), i))));
        }
}

TEST(UFormsProperty, ExtendedHomIsUniqueOnGenerators) {
    // A DGA map agreeing with psi in degree zero is determined on a0 da1 ... dan.
    const auto psi = fixtures::homs_from("QC2").front();
    const Algebra& a = psi.source();
    for (int n = 0; n <= 3; ++n)
        for (const Word& w : all_words(a, n)) {
            Form built = extend_hom(psi, Form::basis(a, w[0]));
            for (int i = 1; i < w.size(); ++i) built = built * extend_hom(psi, Form::basis(a, w[i])).differential();
            EXPECT_EQ(extend_hom(psi, Form(a, w, r(1))), built);
        }
}

TEST(UFormsProperty, DifferentialDescendsToTheAbelianization) {
    for (const auto& fx : fixtures::all()) {
        Rng rng(6);
        for (int i = 0; i < 30; ++i) {
            int n = rng.range(0, 3);
            Form f = random_form(fx.algebra, n, rng);
            Vec lhs = abelianization(fx.algebra, n + 1).project(f.differential());
            Vec rhs = dbar_matrix(fx.algebra, n).apply(abelianization(fx.algebra, n).project(f));
            EXPECT_EQ(lhs, rhs) << fx.name;
        }
    }
}

}  // namespace
