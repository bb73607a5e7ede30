#pragma once

// Differential K-theory layer: generators (p, D, omega), KCS-equivalence
// witnesses, the maps R, I, a, the odd Chern character, and hexagon checks.

#include <string>
#include <utility>
#include <vector>

#include "kchern/report.hpp"
#include "kchern/transgression.hpp"

namespace kchern {

inline void require_odd(const Algebra& alg, const GradedClass& omega) {
    for (const auto& [n, v] : omega) {
        if (n % 2 == 0 || n < 0) throw ValidationError("form part of a generator must be odd, found degree " + std::to_string(n));
        if (v.size() != abelianization(alg, n).dim()) throw MismatchError("odd class has the wrong number of coordinates");
    }
}

/// (p, D, omega) with D a connection on Im(p) and omega a sum of odd classes.
class KHatGen {
public:
    KHatGen() = default;
    KHatGen(Connection conn, GradedClass omega = {}) : conn_(std::move(conn)), omega_(normalized(std::move(omega))) {
        require_odd(conn_.algebra(), omega_);
    }
    KHatGen(const Idempotent& p, Connection conn, GradedClass omega = {}) : KHatGen(std::move(conn), std::move(omega)) {
        if (!(conn_.idempotent() == p)) throw ValidationError("generator connection lives on another idempotent");
    }

    const Idempotent& p() const noexcept { return conn_.idempotent(); }
    const Connection& conn() const noexcept { return conn_; }
    const GradedClass& omega() const noexcept { return omega_; }
    const Algebra& algebra() const noexcept { return conn_.algebra(); }

    friend bool operator==(const KHatGen& a, const KHatGen& b) {
        return a.conn_ == b.conn_ && graded_equal(a.omega_, b.omega_);
    }

private:
    Connection conn_;
    GradedClass omega_;
};

/// Stabilizer (N, E) and an isomorphism p0 + N -> p1 + N.
class KCSWitness {
public:
    KCSWitness() = default;
    KCSWitness(Connection stab, ModuleIso iso) : stab_(std::move(stab)), iso_(std::move(iso)) {}

    /// Empty stabilizer and an isomorphism p0 -> p1.
    static KCSWitness unstabilized(const ModuleIso& iso) {
        return KCSWitness(grassmann(Idempotent::zero(iso.source().algebra())), iso);
    }
    static KCSWitness trivial(const Idempotent& p) { return unstabilized(ModuleIso::identity(p)); }

    const Idempotent& stab_p() const noexcept { return stab_.idempotent(); }
    const Connection& stab_conn() const noexcept { return stab_; }
    const ModuleIso& iso() const noexcept { return iso_; }

    friend bool operator==(const KCSWitness& a, const KCSWitness& b) {
        return a.stab_ == b.stab_ && a.iso_.source() == b.iso_.source() && a.iso_.target() == b.iso_.target() &&
               a.iso_.forward() == b.iso_.forward() && a.iso_.backward() == b.iso_.backward();
    }

private:
    Connection stab_;
    ModuleIso iso_;
};

/// An automorphism of Im(p).
class K1Pair {
public:
    K1Pair() = default;
    explicit K1Pair(ModuleIso aut) : aut_(std::move(aut)) {
        if (!(aut_.source() == aut_.target())) throw ValidationError("K1 pair needs an automorphism");
    }
    const Idempotent& p() const noexcept { return aut_.source(); }
    const ModuleIso& aut() const noexcept { return aut_; }

private:
    ModuleIso aut_;
};

/// Generator-level formal difference g.first - g.second.
using FormalDifference = std::pair<KHatGen, KHatGen>;

/// ch(D) + d omega. Degrees whose differential fits under the cap are checked closed.
inline GradedClass map_R(const KHatGen& g, int k_max) {
    const Algebra& alg = g.algebra();
    GradedClass out = as_graded(chern(g.conn(), k_max));
    for (const auto& [n, v] : g.omega())
        if (n + 1 > alg.degree_cap()) throw CapExceeded(n + 1, alg.degree_cap());
    out = graded_add(out, dbar(alg, g.omega()));
    GradedClass checkable;
    for (const auto& [n, v] : out)
        if (n + 1 <= alg.degree_cap()) checkable[n] = v;
    if (!graded_is_zero(dbar(alg, checkable))) throw Error("R produced a non-closed class");
    return out;
}

inline const Idempotent& map_I(const KHatGen& g) { return g.p(); }

inline KHatGen zero_module_generator(const Algebra& alg, GradedClass omega = {}) {
    return KHatGen(grassmann(Idempotent::zero(alg)), std::move(omega));
}

/// (O, 0, omega) - (O, 0, 0).
inline FormalDifference map_a(const Algebra& alg, const GradedClass& omega) {
    return {zero_module_generator(alg, omega), zero_module_generator(alg)};
}

/// Same formula as map_a, applied to a closed odd class.
inline FormalDifference map_alpha(const Algebra& alg, const GradedClass& closed_omega) {
    if (!graded_is_zero(dbar(alg, closed_omega))) throw ValidationError("alpha needs a closed class");
    return map_a(alg, closed_omega);
}

/// [M0] - [M1] as a pair of representatives.
inline std::pair<Idempotent, Idempotent> map_beta(const FormalDifference& x) { return {x.first.p(), x.second.p()}; }

inline GradedClass kcs_class(const KCSClasses& v) {
    GradedClass g;
    for (std::size_t k = 0; k < v.size(); ++k) g[2 * static_cast<int>(k) + 1] = v[k];
    return normalized(std::move(g));
}

struct EquivalenceVerdict {
    bool accepted = false;
    /// KCS(D0 + E, phi^*(D1 + E)).
    GradedClass kcs;
    /// kcs - (omega0 - omega1); exact iff accepted.
    GradedClass residual;
    GradedExactness exactness;
};

/// Checks KCS(D0 + E, phi^*(D1 + E)) = omega0 - omega1 modulo exact forms, degree by degree.
inline EquivalenceVerdict verify_kcs_equivalence(const KHatGen& g0, const KHatGen& g1, const KCSWitness& w, int k_max) {
    const Algebra& alg = g0.algebra();
    alg.require_same(g1.algebra(), "kcs equivalence");
    if (!(w.iso().source() == direct_sum(g0.p(), w.stab_p())))
        throw MismatchError("witness isomorphism does not start at p0 + N");
    if (!(w.iso().target() == direct_sum(g1.p(), w.stab_p())))
        throw MismatchError("witness isomorphism does not end at p1 + N");
    Connection c0 = direct_sum(g0.conn(), w.stab_conn());
    Connection c1 = pullback(direct_sum(g1.conn(), w.stab_conn()), w.iso());
    EquivalenceVerdict v;
    v.kcs = kcs_class(kcs_between(c0, c1, k_max));
    GradedClass target = graded_sub(g0.omega(), g1.omega());
    v.residual = graded_sub(v.kcs, target);
    GradedClass all_degrees = v.residual;
    for (int k = 1; k <= k_max; ++k)
        if (!all_degrees.count(2 * k - 1)) all_degrees[2 * k - 1] = Vec(abelianization(alg, 2 * k - 1).dim());
    for (const auto& [n, x] : target)
        if (!all_degrees.count(n)) all_degrees[n] = Vec(x.size());
    v.exactness = is_exact_graded(alg, all_degrees);
    v.accepted = v.exactness.exact;
    return v;
}

/// Block permutation a + b + c -> a + c + b.
inline ModuleIso swap_last_blocks(const Idempotent& a, const Idempotent& b, const Idempotent& c) {
    const Algebra& alg = a.algebra();
    const std::size_t na = a.size(), nb = b.size(), nc = c.size(), n = na + nb + nc;
    // Source index of each target slot.
    std::vector<std::size_t> from(n);
    for (std::size_t i = 0; i < na; ++i) from[i] = i;
    for (std::size_t i = 0; i < nc; ++i) from[na + i] = na + nb + i;
    for (std::size_t i = 0; i < nb; ++i) from[na + nc + i] = na + i;
    FormMatrix perm(n, n), perm_t(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        perm(i, from[i]) = Form::basis(alg, 0);
        perm_t(from[i], i) = Form::basis(alg, 0);
    }
    Idempotent src = direct_sum(direct_sum(a, b), c);
    Idempotent tgt = direct_sum(direct_sum(a, c), b);
    return ModuleIso(src, tgt, perm * src.matrix(), src.matrix() * perm_t);
}

/// Witness for g0 ~ g2 built from witnesses for g0 ~ g1 and g1 ~ g2.
/// Stabilizer N + N'; isomorphism swap' (psi + 1_N) swap (phi + 1_N').
inline KCSWitness compose_witnesses(const KHatGen& g0, const KHatGen& g1, const KHatGen& g2, const KCSWitness& w01,
                                    const KCSWitness& w12) {
    const Idempotent& n1 = w01.stab_p();
    const Idempotent& n2 = w12.stab_p();
    ModuleIso step1 = direct_sum(w01.iso(), ModuleIso::identity(n2));   // p0+N+N' -> p1+N+N'
    ModuleIso swap1 = swap_last_blocks(g1.p(), n1, n2);                 // -> p1+N'+N
    ModuleIso step2 = direct_sum(w12.iso(), ModuleIso::identity(n1));   // -> p2+N'+N
    ModuleIso swap2 = swap_last_blocks(g2.p(), n2, n1);                 // -> p2+N+N'
    ModuleIso chain = swap2.compose_after(step2.compose_after(swap1.compose_after(step1)));
    ModuleIso iso(direct_sum(g0.p(), direct_sum(n1, n2)), direct_sum(g2.p(), direct_sum(n1, n2)), chain.forward(),
                  chain.backward());
    return KCSWitness(direct_sum(w01.stab_conn(), w12.stab_conn()), iso);
}

/// KCS of (1 - t) D + t phi^* D.
inline GradedClass odd_chern(const K1Pair& x, const Connection& d, int k_max) {
    if (!(d.idempotent() == x.p())) throw MismatchError("odd Chern: connection on another module");
    return kcs_class(kcs_between(d, pullback(d, x.aut()), k_max));
}

inline GradedClass odd_chern(const K1Pair& x, int k_max) { return odd_chern(x, grassmann(x.p()), k_max); }

/// Whether g0 - g1 lies in ker R.
inline bool in_MK(const KHatGen& g0, const KHatGen& g1, int k_max) {
    return graded_equal(map_R(g0, k_max), map_R(g1, k_max));
}

inline KHatGen extend_scalars(const KHatGen& g, const AlgebraHom& psi) {
    return KHatGen(extend_scalars(g.conn(), psi), push_forward(psi, g.omega()));
}

// ---------------------------------------------------------------------------
// Random inputs

/// Random odd class in degrees 1, 3, ..., 2 k_max - 1.
inline GradedClass random_odd_class(const Algebra& alg, int k_max, Rng& rng) {
    GradedClass g;
    for (int k = 1; k <= k_max; ++k) {
        int n = 2 * k - 1;
        g[n] = abelianization(alg, n).project(random_form(alg, n, rng));
    }
    return normalized(std::move(g));
}

/// Random closed odd class, drawn from the kernel of d in each odd degree.
inline GradedClass random_closed_odd_class(const Algebra& alg, int k_max, Rng& rng) {
    GradedClass g;
    for (int k = 1; k <= k_max; ++k) {
        int n = 2 * k - 1;
        std::vector<Vec> cycles = kernel_basis(dbar_matrix(alg, n));
        Vec v(abelianization(alg, n).dim());
        for (const Vec& z : cycles) {
            Rational c(rng.range(-2, 2));
            for (std::size_t i = 0; i < v.size(); ++i) v[i] += c * z[i];
        }
        g[n] = std::move(v);
    }
    return normalized(std::move(g));
}

inline KHatGen random_generator(const Algebra& alg, std::size_t n, int k_max, std::uint64_t seed) {
    Rng rng(seed);
    Idempotent p = random_idempotent(alg, n, rng.next());
    return KHatGen(random_connection(p, rng.next()), random_odd_class(alg, k_max, rng));
}

// ---------------------------------------------------------------------------
// JSON

namespace io {

inline json to_json(const KHatGen& g) {
    json j = to_json(g.conn());
    j["omega"] = to_json(lift_graded(g.algebra(), g.omega()));
    return j;
}

inline KHatGen generator_from_json(const Algebra& alg, const json& j) {
    Connection c = connection_from_json(alg, j);
    GradedClass omega;
    if (j.contains("omega")) omega = project_ab(form_from_json(alg, j["omega"]));
    return KHatGen(c, normalized(omega));
}

inline json to_json(const KCSWitness& w) {
    return {{"stab", to_json(w.stab_conn())},
            {"u", element_matrix_to_json(w.iso().forward())},
            {"v", element_matrix_to_json(w.iso().backward())}};
}

/// The isomorphism endpoints come from the generators being compared.
inline KCSWitness witness_from_json(const KHatGen& g0, const KHatGen& g1, const json& j) {
    const Algebra& alg = g0.algebra();
    Connection stab = j.contains("stab") ? connection_from_json(alg, j["stab"]) : grassmann(Idempotent::zero(alg));
    ModuleIso iso(direct_sum(g0.p(), stab.idempotent()), direct_sum(g1.p(), stab.idempotent()),
                  element_matrix_from_json(alg, detail::field(j, "u")), element_matrix_from_json(alg, detail::field(j, "v")));
    return KCSWitness(stab, iso);
}

inline json exactness_to_json(const Algebra& alg, const GradedExactness& e) {
    json a = json::array();
    for (const auto& [n, r] : e.per_degree) {
        json o = {{"degree", n}, {"exact", r.exact}};
        if (r.primitive_form) o["primitive"] = to_json(*r.primitive_form);
        a.push_back(o);
    }
    (void)alg;
    return a;
}

inline json to_json(const Algebra& alg, const EquivalenceVerdict& v) {
    return {{"accepted", v.accepted},
            {"kcs", graded_to_json(alg, v.kcs)},
            {"residual", graded_to_json(alg, v.residual)},
            {"exactness", exactness_to_json(alg, v.exactness)}};
}

}  // namespace io

// ---------------------------------------------------------------------------
// Hexagon checks

namespace detail {

inline std::vector<int> degrees_of(const GradedClass& g) {
    std::vector<int> d;
    for (const auto& [n, v] : g) d.push_back(n);
    return d;
}

inline std::vector<int> even_degrees(int k_max) {
    std::vector<int> d;
    for (int k = 0; k <= k_max; ++k) d.push_back(2 * k);
    return d;
}

inline std::vector<int> odd_degrees(int k_max) {
    std::vector<int> d;
    for (int k = 1; k <= k_max; ++k) d.push_back(2 * k - 1);
    return d;
}

}  // namespace detail

/// Commutativity checks of the hexagon on random generators. Each hom in
/// `homs` (with this algebra as source) adds a naturality spot-check.
inline Report hexagon_suite(const Algebra& alg, std::uint64_t seed, int k_max, const std::vector<AlgebraHom>& homs = {},
                            const std::string& label = "", int samples = 10) {
    Report rep;
    rep.suite = "hexagon";
    rep.seed = seed;
    const std::string tag = label.empty() ? "" : label + ": ";
    Rng rng(seed);

    rep.run(tag + "R o a = d", [&]() {
        Outcome o{true, detail::odd_degrees(k_max), {}};
        for (int i = 0; i < samples; ++i) {
            GradedClass omega = random_odd_class(alg, k_max, rng);
            auto [x, y] = map_a(alg, omega);
            GradedClass lhs = graded_sub(map_R(x, k_max), map_R(y, k_max));
            GradedClass rhs = dbar(alg, omega);
            if (!graded_equal(lhs, rhs)) {
                return Outcome{false, o.degrees,
                               {{"omega", io::graded_to_json(alg, omega)},
                                {"R(a(omega))", io::graded_to_json(alg, lhs)},
                                {"d omega", io::graded_to_json(alg, rhs)}}};
            }
            if (x.p().size() != 0 || y.p().size() != 0) return Outcome{false, o.degrees, {{"error", "I(a(omega)) is not zero"}}};
        }
        o.detail = {{"samples", samples}};
        return o;
    });

    rep.run(tag + "Pr o R = ch o I", [&]() {
        Outcome o{true, detail::even_degrees(k_max), io::json::array()};
        for (int i = 0; i < samples; ++i) {
            KHatGen g = random_generator(alg, static_cast<std::size_t>(1 + i % 2), k_max, rng.next());
            GradedClass diff = graded_sub(map_R(g, k_max), as_graded(chern(grassmann(map_I(g)), k_max)));
            GradedExactness ex = is_exact_graded(alg, diff);
            if (!ex.exact)
                return Outcome{false, o.degrees,
                               {{"generator", io::to_json(g)}, {"difference", io::graded_to_json(alg, diff)}}};
            o.detail.push_back(io::exactness_to_json(alg, ex));
        }
        return o;
    });

    rep.run(tag + "a o r = incl o alpha", [&]() {
        Outcome o{true, detail::odd_degrees(k_max), {}};
        for (int i = 0; i < samples; ++i) {
            GradedClass omega = random_closed_odd_class(alg, k_max, rng);
            FormalDifference lhs = map_a(alg, omega);       // r keeps the representative
            FormalDifference rhs = map_alpha(alg, omega);   // incl keeps the pair
            if (!(lhs.first == rhs.first) || !(lhs.second == rhs.second))
                return Outcome{false, o.degrees, {{"omega", io::graded_to_json(alg, omega)}}};
            if (!in_MK(rhs.first, rhs.second, k_max))
                return Outcome{false, o.degrees, {{"omega", io::graded_to_json(alg, omega)}, {"error", "alpha(omega) not in ker R"}}};
        }
        o.detail = {{"samples", samples}};
        return o;
    });

    rep.run(tag + "beta = I o incl", [&]() {
        for (int i = 0; i < samples; ++i) {
            GradedClass omega = random_closed_odd_class(alg, k_max, rng);
            FormalDifference x = map_alpha(alg, omega);
            auto [b0, b1] = map_beta(x);
            if (!(b0 == map_I(x.first)) || !(b1 == map_I(x.second)))
                return Outcome{false, {}, {{"omega", io::graded_to_json(alg, omega)}}};
        }
        return Outcome{true, {}, {{"samples", samples}}};
    });

    rep.run(tag + "R lands in closed classes", [&]() {
        for (int i = 0; i < samples; ++i) {
            KHatGen g = random_generator(alg, static_cast<std::size_t>(1 + i % 2), k_max, rng.next());
            GradedClass r = map_R(g, k_max);
            GradedClass checkable;
            for (const auto& [n, v] : r)
                if (n + 1 <= alg.degree_cap()) checkable[n] = v;
            if (!graded_is_zero(dbar(alg, checkable)))
                return Outcome{false, detail::degrees_of(r), {{"generator", io::to_json(g)}}};
        }
        return Outcome{true, detail::even_degrees(k_max), {{"samples", samples}}};
    });

    for (std::size_t h = 0; h < homs.size(); ++h) {
        const AlgebraHom& psi = homs[h];
        rep.run(tag + "naturality of R and I along hom #" + std::to_string(h + 1), [&]() {
            for (int i = 0; i < samples; ++i) {
                KHatGen g = random_generator(alg, static_cast<std::size_t>(1 + i % 2), k_max, rng.next());
                KHatGen h = extend_scalars(g, psi);
                GradedClass lhs = map_R(h, k_max);
                GradedClass rhs = push_forward(psi, map_R(g, k_max));
                if (!graded_equal(lhs, rhs))
                    return Outcome{false, detail::even_degrees(k_max), {{"generator", io::to_json(g)}}};
                if (!(map_I(h) == extend_scalars(map_I(g), psi)))
                    return Outcome{false, {}, {{"generator", io::to_json(g)}, {"error", "I is not natural"}}};
                auto [x, y] = map_a(alg, g.omega());
                if (!(extend_scalars(x, psi) == map_a(psi.target(), push_forward(psi, g.omega())).first))
                    return Outcome{false, {}, {{"generator", io::to_json(g)}, {"error", "a is not natural"}}};
                (void)y;
            }
            return Outcome{true, detail::even_degrees(k_max), {{"samples", samples}}};
        });
    }
    return rep;
}

}  // namespace kchern
