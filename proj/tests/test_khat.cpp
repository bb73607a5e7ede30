#include <gtest/gtest.h>

#include "kchern/kchern.hpp"

using namespace kchern;

namespace {

constexpr int kK = 2;

/// (D1, omega0 - KCS) is equivalent to (D0, omega0) through w.
KHatGen matched_partner(const KHatGen& g0, const Connection& d1, const KCSWitness& w) {
    Connection c0 = direct_sum(g0.conn(), w.stab_conn());
    Connection c1 = pullback(direct_sum(d1, w.stab_conn()), w.iso());
    GradedClass kcs = kcs_class(kcs_between(c0, c1, kK));
    return KHatGen(d1, graded_sub(g0.omega(), kcs));
}

TEST(Generators, FormPartMustBeOdd) {
    const Algebra& a = fixtures::truncated_cubic();
    Connection c = grassmann(Idempotent::identity(a, 1));
    Vec even(abelianization(a, 2).dim()), wrong(99);
    even[0] = Rational(1);
    wrong[0] = Rational(1);
    EXPECT_THROW(KHatGen(c, GradedClass{{2, even}}), ValidationError);
    EXPECT_THROW(KHatGen(c, GradedClass{{1, wrong}}), MismatchError);
    EXPECT_THROW(KHatGen(Idempotent::zero(a), c), ValidationError);
    bool tried = false;
    for (std::uint64_t seed = 1; seed <= 20 && !tried; ++seed) {
        ModuleIso phi = random_conjugation(fixtures::m2(), 2, seed);
        if (phi.source() == phi.target()) continue;
        EXPECT_THROW(K1Pair{phi}, ValidationError);
        tried = true;
    }
    EXPECT_TRUE(tried);
}

TEST(Equivalence, ReflexiveWithTrivialWitness) {
    for (const auto& fx : fixtures::all())
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            KHatGen g = random_generator(fx.algebra, 2, kK, seed);
            EquivalenceVerdict v = verify_kcs_equivalence(g, g, KCSWitness::trivial(g.p()), kK);
            EXPECT_TRUE(v.accepted) << fx.name;
            EXPECT_TRUE(graded_is_zero(v.kcs));
        }
}

TEST(Equivalence, AcceptsConstructedPartnersBothWays) {
    for (const auto& fx : fixtures::all())
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            Rng rng(seed);
            ModuleIso phi = random_conjugation(fx.algebra, 2, rng.next());
            KHatGen g0(random_connection(phi.source(), rng.next()), random_odd_class(fx.algebra, kK, rng));
            KCSWitness w = KCSWitness::unstabilized(phi);
            KHatGen g1 = matched_partner(g0, random_connection(phi.target(), rng.next()), w);
            EXPECT_TRUE(verify_kcs_equivalence(g0, g1, w, kK).accepted) << fx.name;
            KCSWitness back = KCSWitness::unstabilized(phi.inverse());
            EXPECT_TRUE(verify_kcs_equivalence(g1, g0, back, kK).accepted) << fx.name;
        }
}

TEST(Equivalence, StabilizedWitnessesAndComposition) {
    for (const auto& fx : fixtures::all()) {
        Rng rng(21);
        Idempotent p = random_idempotent(fx.algebra, 1, rng.next());
        Idempotent n1 = random_idempotent(fx.algebra, 1, rng.next());
        Idempotent n2 = random_idempotent(fx.algebra, 2, rng.next());
        KHatGen g0(random_connection(p, rng.next()), random_odd_class(fx.algebra, kK, rng));

        KCSWitness w01(random_connection(n1, rng.next()), ModuleIso::identity(direct_sum(p, n1)));
        KHatGen g1 = matched_partner(g0, random_connection(p, rng.next()), w01);
        ASSERT_TRUE(verify_kcs_equivalence(g0, g1, w01, kK).accepted) << fx.name;

        KCSWitness w12(random_connection(n2, rng.next()), ModuleIso::identity(direct_sum(p, n2)));
        KHatGen g2 = matched_partner(g1, random_connection(p, rng.next()), w12);
        ASSERT_TRUE(verify_kcs_equivalence(g1, g2, w12, kK).accepted) << fx.name;

        KCSWitness w02 = compose_witnesses(g0, g1, g2, w01, w12);
        EXPECT_EQ(w02.stab_p(), direct_sum(n1, n2));
        EXPECT_TRUE(verify_kcs_equivalence(g0, g2, w02, kK).accepted) << fx.name;
    }
}

TEST(Equivalence, WitnessMustMatchTheModules) {
    const Algebra& a = fixtures::m2();
    KHatGen g = random_generator(a, 2, kK, 1);
    KHatGen h = random_generator(a, 1, kK, 2);
    EXPECT_THROW(verify_kcs_equivalence(g, h, KCSWitness::trivial(g.p()), kK), MismatchError);
}

TEST(Equivalence, RejectsNonexactPerturbations) {
    // one algebra with a nonexact class in degree 1, one in degree 3
    for (const char* name : {"M2", "trunc3"}) {
        const fixtures::Fixture fx = fixtures::by_name(name);
        const Algebra& a = fx.algebra;
        std::optional<GradedClass> cls = suites::nonexact_odd_class(a, kK, false);
        ASSERT_TRUE(cls.has_value()) << name;
        EXPECT_EQ(cls->begin()->first, std::string(name) == "M2" ? 1 : 3);
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            KHatGen g0 = random_generator(a, 2, kK, seed);
            KHatGen g1(g0.conn(), graded_add(g0.omega(), *cls));
            EquivalenceVerdict v = verify_kcs_equivalence(g0, g1, KCSWitness::trivial(g0.p()), kK);
            EXPECT_FALSE(v.accepted) << name;
            EXPECT_TRUE(graded_equal(v.residual, *cls));
            // and the perturbation is not closed, so R sees it too
            EXPECT_FALSE(in_MK(g0, g1, kK));
        }
    }
}

TEST(Equivalence, OddHomologyVanishesOnEveryFixture) {
    // so no fixture has a closed nonexact odd perturbation to reject
    for (const auto& fx : fixtures::all()) {
        for (int n : {1, 3}) EXPECT_EQ(de_rham_homology(fx.algebra, n).dim, 0U) << fx.name;
        EXPECT_FALSE(suites::nonexact_odd_class(fx.algebra, kK, true).has_value()) << fx.name;
    }
}

TEST(Hexagon, MapsCommuteOnRandomGenerators) {
    for (const auto& fx : fixtures::all()) {
        Rng rng(31);
        for (int i = 0; i < 5; ++i) {
            GradedClass omega = random_odd_class(fx.algebra, kK, rng);
            auto [x, y] = map_a(fx.algebra, omega);
            EXPECT_TRUE(graded_equal(graded_sub(map_R(x, kK), map_R(y, kK)), dbar(fx.algebra, omega)));
            KHatGen g = random_generator(fx.algebra, 2, kK, rng.next());
            GradedClass diff = graded_sub(map_R(g, kK), as_graded(chern(grassmann(map_I(g)), kK)));
            EXPECT_TRUE(is_exact_graded(fx.algebra, diff).exact);
        }
        EXPECT_NO_THROW(map_alpha(fx.algebra, GradedClass{}));
    }
}

TEST(Hexagon, AlphaNeedsAClosedClass) {
    const Algebra& a = fixtures::m2();
    GradedClass bad{{1, abelianization(a, 1).project(Form::basis(a, 2).differential() * Form::basis(a, 3))}};
    ASSERT_FALSE(graded_is_zero(dbar(a, bad)));
    EXPECT_THROW(map_alpha(a, bad), ValidationError);
}

TEST(Hexagon, SuitePassesForSeveralSeeds) {
    for (std::uint64_t seed : {1ULL, 7ULL, 42ULL})
        for (const auto& fx : fixtures::all()) {
            Report rep = hexagon_suite(fx.algebra, seed, kK, fixtures::homs_from(fx.name), fx.name, 4);
            for (const auto& r : rep.results) EXPECT_TRUE(r.passed) << r.name << " seed " << seed << " " << r.detail.dump();
        }
}

TEST(OddChern, VanishesOnIdentityAndIsAdditive) {
    for (const auto& fx : fixtures::all()) {
        Rng rng(41);
        for (int i = 0; i < 4; ++i) {
            Idempotent p = random_idempotent(fx.algebra, 2, rng.next());
            EXPECT_TRUE(graded_is_zero(odd_chern(K1Pair(ModuleIso::identity(p)), kK)));

            std::uint64_t s = rng.next();
            ModuleIso u1 = random_automorphism(fx.algebra, 2, s, rng.next());
            ModuleIso u2 = random_automorphism(fx.algebra, 2, s, rng.next());
            ASSERT_EQ(u1.source(), u2.source());
            GradedClass both = odd_chern(K1Pair(u1.compose_after(u2)), kK);
            GradedClass sum = graded_add(odd_chern(K1Pair(u1), kK), odd_chern(K1Pair(u2), kK));
            EXPECT_TRUE(is_exact_graded(fx.algebra, graded_sub(both, sum)).exact) << fx.name;

            ModuleIso v = random_automorphism(fx.algebra, 1, rng.next());
            GradedClass block = odd_chern(K1Pair(direct_sum(u1, v)), kK);
            EXPECT_TRUE(graded_equal(block, graded_add(odd_chern(K1Pair(u1), kK), odd_chern(K1Pair(v), kK))));

            Connection d = random_connection(u1.source(), rng.next());
            GradedClass alt = odd_chern(K1Pair(u1), d, kK);
            EXPECT_TRUE(is_exact_graded(fx.algebra, graded_sub(alt, odd_chern(K1Pair(u1), kK))).exact) << fx.name;
        }
    }
}

}  // namespace
