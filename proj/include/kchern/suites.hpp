#pragma once

// Randomized identity checks over the builtin fixtures: dga, chern,
// transgression, hexagon (plus the K-hat equivalence and odd Chern laws).

#include <cstdint>
#include <string>
#include <vector>

#include "kchern/fixtures.hpp"
#include "kchern/khat.hpp"

namespace kchern {

struct SuiteConfig {
    std::uint64_t seed = 7;
    int k_max = 2;
    int dga_samples = 200;
    int dga_max_degree = 5;
    int chern_samples = 25;
    int path_samples = 25;
    int bigon_samples = 10;
    int triangle_samples = 10;
    int homotopy_samples = 200;
    int biform_samples = 50;
    int khat_samples = 10;
    int transgression_cap = 6;
};

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"dga", "chern", "transgression", "hexagon", "all"};
    return names;
}

namespace suites {

using io::json;

/// FNV-1a, so per-fixture seeds do not depend on the standard library.
inline std::uint64_t mix(std::uint64_t seed, const std::string& label) {
    std::uint64_t h = 1469598103934665603ULL ^ seed;
    for (unsigned char c : label) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline Poly1 random_poly1(Rng& rng, int max_degree = 2) {
    std::vector<Rational> c;
    for (int k = 0; k <= max_degree; ++k) c.emplace_back(rng.range(-2, 2));
    return Poly1(c);
}

inline Poly2 random_poly2(Rng& rng, int max_degree = 2) {
    Poly2 p;
    for (int i = 0; i <= max_degree; ++i)
        for (int j = 0; i + j <= max_degree; ++j)
            if (rng.coin()) p += Poly2::monomial(i, j, Rational(rng.range(-2, 2)));
    return p;
}

inline Form random_mixed_form(const Algebra& alg, int max_degree, Rng& rng) {
    Form f(alg);
    int parts = rng.range(1, 2);
    for (int i = 0; i < parts; ++i) f += random_form(alg, rng.range(0, max_degree), rng);
    return f;
}

inline Form1 random_form1(const Algebra& alg, int degree, Rng& rng) {
    Form base = random_form(alg, degree, rng);
    Form1 out(alg);
    for (const auto& [w, c] : base.terms()) out.add_term(w, c * random_poly1(rng));
    return out;
}

inline Form2 random_form2(const Algebra& alg, int degree, Rng& rng) {
    Form base = random_form(alg, degree, rng);
    Form2 out(alg);
    for (const auto& [w, c] : base.terms()) out.add_term(w, c * random_poly2(rng));
    return out;
}

/// Random interval form of total degree n (base degree n, dt part degree n - 1).
inline TForm random_tform(const Algebra& alg, int n, Rng& rng) {
    Form1 base = random_form1(alg, n, rng);
    Form1 dt = n >= 1 ? random_form1(alg, n - 1, rng) : Form1(alg);
    return TForm(base, dt);
}

inline BiForm random_biform(const Algebra& alg, int n, Rng& rng) {
    auto part = [&](int d) { return d >= 0 ? random_form2(alg, d, rng) : Form2(alg); };
    return BiForm(part(n), part(n - 1), part(n - 1), part(n - 2));
}

inline FormMatrix random_form_matrix(const Algebra& alg, std::size_t n, int degree, Rng& rng) {
    FormMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (rng.coin()) m(i, j) = random_form(alg, degree, rng, 2);
    return with_algebra(m, alg);
}

inline std::size_t random_size(Rng& rng) { return static_cast<std::size_t>(rng.range(1, 2)); }

inline Connection random_connection_on(const Idempotent& p, Rng& rng) { return random_connection(p, rng.next()); }

/// A straight line or a quadratic random path on a random idempotent.
inline PolyPath random_test_path(const Algebra& alg, Rng& rng) {
    Idempotent p = random_idempotent(alg, random_size(rng), rng.next());
    if (rng.coin()) return straight_line(random_connection_on(p, rng), random_connection_on(p, rng));
    return random_path(p, rng.next());
}

inline json graded_json(const Algebra& alg, const GradedClass& g) { return io::graded_to_json(alg, g); }

inline std::vector<int> range_degrees(int lo, int hi, int step = 1) {
    std::vector<int> d;
    for (int n = lo; n <= hi; n += step) d.push_back(n);
    return d;
}

inline std::vector<int> odd_degrees(int k_max) { return range_degrees(1, 2 * k_max - 1, 2); }
inline std::vector<int> even_degrees(int k_max) { return range_degrees(0, 2 * k_max, 2); }

inline GradedClass kcs_graded_of(const PolyPath& path, int k_max) { return kcs_class(kcs(path, k_max)); }

/// All odd degrees present, including zero ones, so certificates cover each degree.
inline GradedClass with_odd_degrees(const Algebra& alg, GradedClass g, int k_max) {
    for (int k = 1; k <= k_max; ++k)
        if (!g.count(2 * k - 1)) g[2 * k - 1] = Vec(abelianization(alg, 2 * k - 1).dim());
    return g;
}

// ---------------------------------------------------------------------------

inline Report dga(const fixtures::Fixture& fx, const SuiteConfig& cfg) {
    Report rep;
    rep.suite = "dga";
    rep.seed = cfg.seed;
    const Algebra& alg = fx.algebra;
    const std::string tag = fx.name + ": ";
    Rng rng(mix(cfg.seed, "dga/" + fx.name));
    const int top = cfg.dga_max_degree;

    rep.run(tag + "dimension law", [&]() {
        const std::size_t m = static_cast<std::size_t>(alg.dim());
        json dims = json::array();
        for (int n = 0; n <= 6; ++n) {
            std::size_t expect = m;
            for (int i = 0; i < n; ++i) expect *= m - 1;
            if (dimension(alg, n) != expect || all_words(alg, n).size() != expect)
                return Outcome{false, {n}, {{"degree", n}, {"expected", expect}, {"found", dimension(alg, n)}}};
            dims.push_back(expect);
        }
        return Outcome{true, range_degrees(0, 6), {{"dims", dims}}};
    });

    if (alg.dim() == 1) {
        rep.run(tag + "homology of the ground field", [&]() {
            json dims = json::array();
            for (int n = 0; n <= 5; ++n) {
                std::size_t h = de_rham_homology(alg, n).dim;
                dims.push_back(h);
                if (h != (n == 0 ? 1U : 0U)) return Outcome{false, {n}, {{"degree", n}, {"dim", h}}};
            }
            return Outcome{true, range_degrees(0, 5), {{"homology_dims", dims}}};
        });
    }

    rep.run(tag + "d o d = 0", [&]() {
        for (int i = 0; i < cfg.dga_samples; ++i) {
            Form w = random_mixed_form(alg, top, rng);
            Form dd = w.differential().differential();
            if (!dd.is_zero()) return Outcome{false, range_degrees(0, top), {{"form", io::to_json(w)}, {"ddw", io::to_json(dd)}}};
        }
        return Outcome{true, range_degrees(0, top), {{"samples", cfg.dga_samples}}};
    });

    rep.run(tag + "graded Leibniz rule", [&]() {
        for (int i = 0; i < cfg.dga_samples; ++i) {
            int a = rng.range(0, top);
            int b = rng.range(0, top - a);
            Form u = random_form(alg, a, rng), v = random_form(alg, b, rng);
            Form lhs = (u * v).differential();
            Form rhs = u.differential() * v + (a % 2 ? Rational(-1) : Rational(1)) * (u * v.differential());
            if (!(lhs == rhs))
                return Outcome{false, {a, b}, {{"u", io::to_json(u)}, {"v", io::to_json(v)}}};
        }
        return Outcome{true, range_degrees(0, top), {{"samples", cfg.dga_samples}}};
    });

    rep.run(tag + "associativity", [&]() {
        for (int i = 0; i < cfg.dga_samples; ++i) {
            int a = rng.range(0, top);
            int b = rng.range(0, top - a);
            int c = rng.range(0, top - a - b);
            Form u = random_form(alg, a, rng), v = random_form(alg, b, rng), w = random_form(alg, c, rng);
            if (!((u * v) * w == u * (v * w)))
                return Outcome{false, {a, b, c}, {{"u", io::to_json(u)}, {"v", io::to_json(v)}, {"w", io::to_json(w)}}};
        }
        return Outcome{true, range_degrees(0, top), {{"samples", cfg.dga_samples}}};
    });

    rep.run(tag + "d descends to the abelianization", [&]() {
        for (int n = 0; n < top; ++n) {
            RatMatrix d = dbar_matrix(alg, n);
            RatMatrix d2 = dbar_matrix(alg, n + 1) * d;
            bool zero = true;
            for (const Vec& r : d2.dense_rows()) zero = zero && is_zero(r);
            if (!zero) return Outcome{false, {n}, {{"degree", n}, {"error", "dbar o dbar != 0"}}};
        }
        return Outcome{true, range_degrees(0, top), {}};
    });
    return rep;
}

// ---------------------------------------------------------------------------

inline Report chern(const fixtures::Fixture& fx, const SuiteConfig& cfg) {
    Report rep;
    rep.suite = "chern";
    rep.seed = cfg.seed;
    const Algebra& alg = fx.algebra;
    const int k = cfg.k_max;
    const std::string tag = fx.name + ": ";
    Rng rng(mix(cfg.seed, "chern/" + fx.name));
    const int samples = cfg.chern_samples;

    rep.run(tag + "trace cyclicity", [&]() {
        for (int i = 0; i < samples; ++i) {
            std::size_t n = random_size(rng);
            int a = rng.range(0, 3), b = rng.range(0, 3);
            FormMatrix x = random_form_matrix(alg, n, a, rng), y = random_form_matrix(alg, n, b, rng);
            GradedClass lhs = trace_ab(x * y);
            GradedClass rhs = trace_ab(y * x);
            if ((a * b) % 2) rhs = graded_sub(GradedClass{}, rhs);
            if (!graded_equal(lhs, rhs)) return Outcome{false, {a + b}, {{"x", io::matrix_to_json(x)}, {"y", io::matrix_to_json(y)}}};
        }
        return Outcome{true, range_degrees(0, 6), {{"samples", samples}}};
    });

    rep.run(tag + "Chern classes are closed", [&]() {
        for (int i = 0; i < samples; ++i) {
            Idempotent p = random_idempotent(alg, random_size(rng), rng.next());
            Connection c = random_connection_on(p, rng);
            GradedClass ch = as_graded(kchern::chern(c, k));
            GradedClass d = dbar(alg, ch);
            if (!graded_is_zero(d)) return Outcome{false, even_degrees(k), {{"connection", io::to_json(c)}, {"d ch", graded_json(alg, d)}}};
        }
        return Outcome{true, even_degrees(k), {{"samples", samples}}};
    });

    rep.run(tag + "Chern character is additive", [&]() {
        for (int i = 0; i < samples; ++i) {
            Connection a = random_connection_on(random_idempotent(alg, random_size(rng), rng.next()), rng);
            Connection b = random_connection_on(random_idempotent(alg, random_size(rng), rng.next()), rng);
            GradedClass lhs = as_graded(kchern::chern(direct_sum(a, b), k));
            GradedClass rhs = graded_add(as_graded(kchern::chern(a, k)), as_graded(kchern::chern(b, k)));
            if (!graded_equal(lhs, rhs)) return Outcome{false, even_degrees(k), {{"a", io::to_json(a)}, {"b", io::to_json(b)}}};
        }
        return Outcome{true, even_degrees(k), {{"samples", samples}}};
    });

    rep.run(tag + "ch0 of a Grassmann connection is the trace of p", [&]() {
        for (int i = 0; i < samples; ++i) {
            Idempotent p = random_idempotent(alg, random_size(rng), rng.next());
            ChernClasses ch = kchern::chern(grassmann(p), 0);
            Vec tr = abelianization(alg, 0).project(p.matrix().trace());
            if (ch[0] != tr) return Outcome{false, {0}, {{"p", io::to_json(p)}}};
        }
        return Outcome{true, {0}, {{"samples", samples}}};
    });

    rep.run(tag + "Chern class is independent of the connection", [&]() {
        json certs = json::array();
        for (int i = 0; i < samples; ++i) {
            Idempotent p = random_idempotent(alg, random_size(rng), rng.next());
            Connection c = random_connection_on(p, rng);
            GradedClass diff = graded_sub(as_graded(kchern::chern(c, k)), as_graded(kchern::chern(grassmann(p), k)));
            GradedExactness ex = is_exact_graded(alg, diff);
            if (!ex.exact) return Outcome{false, even_degrees(k), {{"connection", io::to_json(c)}, {"difference", graded_json(alg, diff)}}};
            if (!diff.empty()) certs.push_back(io::exactness_to_json(alg, ex));
        }
        return Outcome{true, even_degrees(k), {{"samples", samples}, {"primitives", certs}}};
    });

    rep.run(tag + "Chern character is invariant under pullback", [&]() {
        for (int i = 0; i < samples; ++i) {
            ModuleIso phi = random_automorphism(alg, random_size(rng), rng.next());
            Connection c = random_connection_on(phi.target(), rng);
            if (!graded_equal(as_graded(kchern::chern(pullback(c, phi), k)), as_graded(kchern::chern(c, k))))
                return Outcome{false, even_degrees(k), {{"connection", io::to_json(c)}, {"iso", io::to_json(phi)}}};
        }
        return Outcome{true, even_degrees(k), {{"samples", samples}}};
    });

    const std::vector<AlgebraHom> homs = fixtures::homs_from(fx.name);
    for (std::size_t h = 0; h < homs.size(); ++h) {
        const AlgebraHom& psi = homs[h];
        rep.run(tag + "Chern character is natural along hom #" + std::to_string(h + 1), [&]() {
            for (int i = 0; i < samples; ++i) {
                Connection c = random_connection_on(random_idempotent(alg, random_size(rng), rng.next()), rng);
                GradedClass lhs = as_graded(kchern::chern(extend_scalars(c, psi), k));
                GradedClass rhs = push_forward(psi, as_graded(kchern::chern(c, k)));
                if (!graded_equal(lhs, rhs)) return Outcome{false, even_degrees(k), {{"connection", io::to_json(c)}}};
                FormMatrix r1 = curvature(extend_scalars(c, psi));
                FormMatrix r2 = extend_scalars(curvature(c), psi);
                if (!(r1 == r2)) return Outcome{false, {2}, {{"connection", io::to_json(c)}, {"error", "curvature not natural"}}};
            }
            return Outcome{true, even_degrees(k), {{"samples", samples}, {"target_dim", psi.target().dim()}}};
        });
    }
    return rep;
}

// ---------------------------------------------------------------------------

inline Report transgression(const fixtures::Fixture& fx, const SuiteConfig& cfg) {
    Report rep;
    rep.suite = "transgression";
    rep.seed = cfg.seed;
    const Algebra alg = fx.algebra.with_degree_cap(cfg.transgression_cap);
    const int k = cfg.k_max;
    const std::string tag = fx.name + ": ";
    Rng rng(mix(cfg.seed, "transgression/" + fx.name));
    const int samples = cfg.path_samples;
    const std::vector<int> odd = odd_degrees(k);

    rep.run(tag + "homotopy formula (Kd + dK) = ev1 - ev0", [&]() {
        for (int i = 0; i < cfg.homotopy_samples; ++i) {
            TForm w = random_tform(alg, rng.range(0, cfg.transgression_cap - 1), rng);
            Form lhs = homotopy_K(w.differential()) + homotopy_K(w).differential();
            Form rhs = w.ev(Rational(1)) - w.ev(Rational(0));
            if (!(lhs == rhs)) return Outcome{false, {}, {{"w", io::to_json(w)}}};
        }
        return Outcome{true, range_degrees(0, cfg.transgression_cap - 1), {{"samples", cfg.homotopy_samples}}};
    });

    rep.run(tag + "interval forms: associativity and Leibniz", [&]() {
        for (int i = 0; i < cfg.homotopy_samples / 4; ++i) {
            int a = rng.range(0, 2), b = rng.range(0, 2), c = rng.range(0, 1);
            TForm x = random_tform(alg, a, rng), y = random_tform(alg, b, rng), z = random_tform(alg, c, rng);
            if (!((x * y) * z == x * (y * z))) return Outcome{false, {a, b, c}, {{"x", io::to_json(x)}, {"y", io::to_json(y)}}};
            TForm lhs = (x * y).differential();
            TForm rhs = x.differential() * y + (a % 2 ? Rational(-1) : Rational(1)) * (x * y.differential());
            if (!(lhs == rhs)) return Outcome{false, {a, b}, {{"x", io::to_json(x)}, {"y", io::to_json(y)}}};
        }
        return Outcome{true, range_degrees(0, 5), {{"samples", cfg.homotopy_samples / 4}}};
    });

    rep.run(tag + "d KCS = ch(D1) - ch(D0)", [&]() {
        int nonzero = 0;
        for (int i = 0; i < samples; ++i) {
            PolyPath path = random_test_path(alg, rng);
            GradedClass g = kcs_graded_of(path, k);
            if (!graded_is_zero(g)) ++nonzero;
            GradedClass lhs = dbar(alg, g);
            GradedClass rhs = graded_sub(as_graded(kchern::chern(path.at(Rational(1)), k)), as_graded(kchern::chern(path.at(Rational(0)), k)));
            rhs.erase(0);
            if (!graded_equal(lhs, rhs))
                return Outcome{false, odd, {{"path", io::to_json(path)}, {"d KCS", graded_json(alg, lhs)}, {"delta ch", graded_json(alg, rhs)}}};
        }
        return Outcome{true, odd, {{"samples", samples}, {"nonzero_kcs", nonzero}}};
    });

    rep.run(tag + "KCS of the reversed path is -KCS", [&]() {
        for (int i = 0; i < samples; ++i) {
            PolyPath path = random_test_path(alg, rng);
            if (!(kcs(reverse_path(path), k) == negated(kcs(path, k)))) return Outcome{false, odd, {{"path", io::to_json(path)}}};
        }
        return Outcome{true, odd, {{"samples", samples}}};
    });

    rep.run(tag + "KCS of a constant path vanishes", [&]() {
        for (int i = 0; i < samples; ++i) {
            Connection c = random_connection_on(random_idempotent(alg, random_size(rng), rng.next()), rng);
            GradedClass g = kcs_graded_of(constant_path(c), k);
            if (!graded_is_zero(g)) return Outcome{false, odd, {{"connection", io::to_json(c)}}};
            GradedExactness ex = is_exact_graded(alg, with_odd_degrees(alg, kcs_graded_of(straight_line(c, c), k), k));
            if (!ex.exact) return Outcome{false, odd, {{"connection", io::to_json(c)}, {"error", "KCS(c, c) not exact"}}};
        }
        return Outcome{true, odd, {{"samples", samples}}};
    });

    rep.run(tag + "KCS is additive on direct sums", [&]() {
        for (int i = 0; i < samples; ++i) {
            PolyPath a = random_test_path(alg, rng), b = random_test_path(alg, rng);
            GradedClass lhs = kcs_graded_of(direct_sum(a, b), k);
            GradedClass rhs = graded_add(kcs_graded_of(a, k), kcs_graded_of(b, k));
            if (!graded_equal(lhs, rhs)) return Outcome{false, odd, {{"a", io::to_json(a)}, {"b", io::to_json(b)}}};
        }
        return Outcome{true, odd, {{"samples", samples}}};
    });

    rep.run(tag + "KCS is invariant under pullback", [&]() {
        for (int i = 0; i < samples; ++i) {
            ModuleIso phi = rng.coin() ? random_automorphism(alg, random_size(rng), rng.next())
                                       : random_conjugation(alg, random_size(rng), rng.next());
            PolyPath path = random_path(phi.target(), rng.next());
            if (!(kcs(pullback(path, phi), k) == kcs(path, k)))
                return Outcome{false, odd, {{"path", io::to_json(path)}, {"iso", io::to_json(phi)}}};
            Connection c0 = random_connection_on(phi.target(), rng), c1 = random_connection_on(phi.target(), rng);
            if (!(kcs_between(pullback(c0, phi), pullback(c1, phi), k) == kcs_between(c0, c1, k)))
                return Outcome{false, odd, {{"c0", io::to_json(c0)}, {"c1", io::to_json(c1)}, {"iso", io::to_json(phi)}}};
        }
        return Outcome{true, odd, {{"samples", samples}}};
    });

    const std::vector<AlgebraHom> homs = fixtures::homs_from(fx.name);
    for (std::size_t h = 0; h < homs.size(); ++h) {
        AlgebraHom psi(alg, homs[h].target().with_degree_cap(cfg.transgression_cap), homs[h].matrix());
        rep.run(tag + "KCS is natural along hom #" + std::to_string(h + 1), [&]() {
            int n = std::max(1, samples / 5);
            for (int i = 0; i < n; ++i) {
                PolyPath path = random_test_path(alg, rng);
                PolyPath induced = induced_path(path, psi);
                if (!graded_equal(kcs_graded_of(induced, k), push_forward(psi, kcs_graded_of(path, k))))
                    return Outcome{false, odd, {{"path", io::to_json(path)}}};
                for (const Rational& t : {Rational(0), Rational(1, 3), Rational(1)}) {
                    if (!(curvature(induced.at(t)) == extend_scalars(curvature(path.at(t)), psi)))
                        return Outcome{false, {2}, {{"path", io::to_json(path)}, {"t", io::to_json(t)}}};
                }
            }
            return Outcome{true, odd, {{"samples", n}, {"target_dim", psi.target().dim()}}};
        });
    }

    rep.run(tag + "ev_t of the cylinder Chern form is ch(D_t)", [&]() {
        for (int i = 0; i < samples; ++i) {
            PolyPath path = random_test_path(alg, rng);
            std::vector<TForm> ch = tilde_chern_forms(path, k);
            TildeCurvature tc = tilde_curvature(path);
            for (const Rational& t : {Rational(0), Rational(1, 2), Rational(1)}) {
                Connection ct = path.at(t);
                ChernClasses expect = kchern::chern(ct, k);
                for (int j = 0; j <= k; ++j) {
                    Vec got = abelianization(alg, 2 * j).project(ch[static_cast<std::size_t>(j)].ev(t).component(2 * j));
                    if (got != expect[static_cast<std::size_t>(j)])
                        return Outcome{false, {2 * j}, {{"path", io::to_json(path)}, {"t", io::to_json(t)}}};
                }
                if (!(eval_matrix(tc.curvature, t) == curvature(ct)))
                    return Outcome{false, {2}, {{"path", io::to_json(path)}, {"t", io::to_json(t)}, {"error", "ev R~ != R_t"}}};
            }
        }
        return Outcome{true, even_degrees(k), {{"samples", samples}}};
    });

    rep.run(tag + "secondary transgression d(KK1 ch) = KCS(path1) - KCS(path2)", [&]() {
        json certs = json::array();
        for (int i = 0; i < cfg.bigon_samples; ++i) {
            Idempotent p = random_idempotent(alg, random_size(rng), rng.next());
            Connection c0 = random_connection_on(p, rng), c1 = random_connection_on(p, rng), cm = random_connection_on(p, rng);
            PolyPath first = three_point_path(c0, cm, c1);
            PolyPath second = rng.coin() ? straight_line(c0, c1) : three_point_path(c0, random_connection_on(p, rng), c1);
            std::vector<Vec> pot = secondary_transgression(bigon_straight(first, second), k);
            GradedClass pg;
            for (int j = 1; j <= k; ++j) pg[2 * j - 2] = pot[static_cast<std::size_t>(j - 1)];
            pg = normalized(pg);
            GradedClass lhs = dbar(alg, pg);
            GradedClass rhs = graded_sub(kcs_graded_of(first, k), kcs_graded_of(second, k));
            if (!graded_equal(lhs, rhs))
                return Outcome{false, odd, {{"first", io::to_json(first)}, {"second", io::to_json(second)}, {"d potential", graded_json(alg, lhs)}, {"kcs difference", graded_json(alg, rhs)}}};
            if (i < 2) certs.push_back(graded_json(alg, pg));
        }
        return Outcome{true, odd, {{"samples", cfg.bigon_samples}, {"potentials", certs}}};
    });

    rep.run(tag + "K K1 = K K2 on square forms", [&]() {
        for (int i = 0; i < cfg.biform_samples; ++i) {
            BiForm w = random_biform(alg, rng.range(0, 4), rng);
            if (!(w.K1().homotopy() == w.K2().homotopy())) return Outcome{false, {}, {{"w_dsdt", io::to_json(w.dsdt_part())}}};
        }
        return Outcome{true, range_degrees(0, 4), {{"samples", cfg.biform_samples}}};
    });

    rep.run(tag + "triangle law modulo exact forms", [&]() {
        json certs = json::array();
        for (int i = 0; i < cfg.triangle_samples; ++i) {
            Idempotent p = random_idempotent(alg, random_size(rng), rng.next());
            Connection c1 = random_connection_on(p, rng), c2 = random_connection_on(p, rng), c3 = random_connection_on(p, rng);
            GradedClass k13 = kcs_class(kcs_between(c1, c3, k));
            GradedClass k12 = kcs_class(kcs_between(c1, c2, k));
            GradedClass k23 = kcs_class(kcs_between(c2, c3, k));
            GradedClass residual = with_odd_degrees(alg, graded_sub(graded_sub(k13, k12), k23), k);
            GradedExactness ex = is_exact_graded(alg, residual);
            if (!ex.exact) return Outcome{false, odd, {{"c1", io::to_json(c1)}, {"c2", io::to_json(c2)}, {"c3", io::to_json(c3)}, {"residual", graded_json(alg, residual)}}};
            // The quadratic path through c1, c2, c3 agrees with the straight line up to
            // the bigon potential.
            PolyPath quad = three_point_path(c1, c2, c3);
            GradedClass viaquad = with_odd_degrees(alg, graded_sub(kcs_graded_of(quad, k), k13), k);
            if (!is_exact_graded(alg, viaquad).exact) return Outcome{false, odd, {{"error", "quadratic path differs from the straight line"}}};
            certs.push_back(io::exactness_to_json(alg, ex));
        }
        return Outcome{true, odd, {{"samples", cfg.triangle_samples}, {"primitives", certs}}};
    });

    rep.run(tag + "closed form agrees with KCS", [&]() {
        ClosedFormSigns signs = default_closed_form_signs(k);
        for (int i = 0; i < samples; ++i) {
            PolyPath path = random_test_path(alg, rng);
            if (!(kcs_closed_form(path, k, signs) == kcs(path, k))) return Outcome{false, odd, {{"path", io::to_json(path)}}};
        }
        return Outcome{true, odd, {{"samples", samples}, {"signs", signs}}};
    });
    return rep;
}

// ---------------------------------------------------------------------------

/// First odd degree (<= 2 k_max - 1) with a class outside Im(d), and that class.
inline std::optional<GradedClass> nonexact_odd_class(const Algebra& alg, int k_max, bool closed) {
    for (int k = 1; k <= k_max; ++k) {
        int n = 2 * k - 1;
        std::vector<Vec> candidates;
        if (closed) {
            candidates = kernel_basis(dbar_matrix(alg, n));
        } else {
            for (std::size_t i = 0; i < abelianization(alg, n).dim(); ++i) {
                Vec e(abelianization(alg, n).dim());
                e[i] = Rational(1);
                candidates.push_back(e);
            }
        }
        for (const Vec& v : candidates)
            if (!is_exact_class(alg, n, v).exact) return GradedClass{{n, v}};
    }
    return std::nullopt;
}

inline Report khat(const fixtures::Fixture& fx, const SuiteConfig& cfg) {
    Report rep;
    rep.suite = "hexagon";
    rep.seed = cfg.seed;
    const Algebra& alg = fx.algebra;
    const int k = cfg.k_max;
    const std::string tag = fx.name + ": ";
    Rng rng(mix(cfg.seed, "khat/" + fx.name));
    const std::vector<int> odd = odd_degrees(k);

    auto accept = [&](const KHatGen& g0, const KHatGen& g1, const KCSWitness& w) -> std::optional<Outcome> {
        EquivalenceVerdict v = verify_kcs_equivalence(g0, g1, w, k);
        if (!v.accepted)
            return Outcome{false, odd, {{"g0", io::to_json(g0)}, {"g1", io::to_json(g1)}, {"witness", io::to_json(w)}, {"verdict", io::to_json(alg, v)}}};
        return std::nullopt;
    };

    rep.run(tag + "equivalence: reflexive", [&]() {
        for (int i = 0; i < cfg.khat_samples; ++i) {
            KHatGen g = random_generator(alg, random_size(rng), k, rng.next());
            if (auto bad = accept(g, g, KCSWitness::trivial(g.p()))) return *bad;
        }
        return Outcome{true, odd, {{"samples", cfg.khat_samples}}};
    });

    // omega1 = omega0 - KCS(D0, D1) makes the defining relation hold by construction.
    auto constructed = [&](const KHatGen& g0, const Connection& d1, const KCSWitness& w) {
        Connection c0 = direct_sum(g0.conn(), w.stab_conn());
        Connection c1 = pullback(direct_sum(d1, w.stab_conn()), w.iso());
        return KHatGen(d1, graded_sub(g0.omega(), kcs_class(kcs_between(c0, c1, k))));
    };

    rep.run(tag + "equivalence: constructed omega and symmetry", [&]() {
        for (int i = 0; i < cfg.khat_samples; ++i) {
            KHatGen g0 = random_generator(alg, random_size(rng), k, rng.next());
            KCSWitness w = KCSWitness::trivial(g0.p());
            KHatGen g1 = constructed(g0, random_connection_on(g0.p(), rng), w);
            if (auto bad = accept(g0, g1, w)) return *bad;
            if (auto bad = accept(g1, g0, KCSWitness(w.stab_conn(), w.iso().inverse()))) return *bad;
        }
        return Outcome{true, odd, {{"samples", cfg.khat_samples}}};
    });

    // p0 = E diagonal, p1 = g E g^-1, stabilizer N with an automorphism.
    auto stabilized = [&](const KHatGen& g0, const ModuleIso& to_p1, const Connection& d1) {
        ModuleIso aut_n = random_automorphism(alg, random_size(rng), rng.next());
        Connection stab = random_connection_on(aut_n.source(), rng);
        KCSWitness w(stab, direct_sum(to_p1, aut_n));
        return std::make_pair(w, constructed(g0, d1, w));
    };

    rep.run(tag + "equivalence: stabilized witness", [&]() {
        for (int i = 0; i < cfg.khat_samples; ++i) {
            ModuleIso conj = random_conjugation(alg, random_size(rng), rng.next());
            KHatGen g0(random_connection_on(conj.source(), rng), random_odd_class(alg, k, rng));
            auto [w, g1] = stabilized(g0, conj, random_connection_on(conj.target(), rng));
            if (auto bad = accept(g0, g1, w)) return *bad;
        }
        return Outcome{true, odd, {{"samples", cfg.khat_samples}}};
    });

    rep.run(tag + "equivalence: chained witnesses compose", [&]() {
        for (int i = 0; i < cfg.khat_samples; ++i) {
            std::size_t n = random_size(rng);
            std::uint64_t s = rng.next();
            ModuleIso conj = random_conjugation(alg, n, s);
            KHatGen g0(random_connection_on(conj.source(), rng), random_odd_class(alg, k, rng));
            auto [w01, g1] = stabilized(g0, conj, random_connection_on(conj.target(), rng));
            ModuleIso aut1 = random_automorphism(alg, n, s, rng.next());  // automorphism of p1
            auto [w12, g2] = stabilized(g1, aut1, random_connection_on(conj.target(), rng));
            if (auto bad = accept(g0, g1, w01)) return *bad;
            if (auto bad = accept(g1, g2, w12)) return *bad;
            KCSWitness w02 = compose_witnesses(g0, g1, g2, w01, w12);
            if (auto bad = accept(g0, g2, w02)) return *bad;
        }
        return Outcome{true, odd, {{"samples", cfg.khat_samples}}};
    });

    rep.run(tag + "equivalence: rejects a nonexact perturbation", [&]() {
        auto cls = nonexact_odd_class(alg, k, false);
        if (!cls) return Outcome{true, odd, {{"applicable", false}, {"reason", "every odd class up to the top degree is exact"}}};
        KHatGen g0 = random_generator(alg, random_size(rng), k, rng.next());
        KHatGen g1(g0.conn(), graded_add(g0.omega(), *cls));
        EquivalenceVerdict v = verify_kcs_equivalence(g0, g1, KCSWitness::trivial(g0.p()), k);
        return Outcome{!v.accepted, odd, {{"applicable", true}, {"perturbation", graded_json(alg, *cls)}, {"verdict", io::to_json(alg, v)}}};
    });

    rep.run(tag + "equivalence: rejects a nonexact closed perturbation", [&]() {
        auto cls = nonexact_odd_class(alg, k, true);
        if (!cls) {
            json dims = json::array();
            for (int n : odd) dims.push_back(de_rham_homology(alg, n).dim);
            return Outcome{true, odd, {{"applicable", false}, {"odd_homology_dims", dims}}};
        }
        KHatGen g0 = random_generator(alg, random_size(rng), k, rng.next());
        KHatGen g1(g0.conn(), graded_add(g0.omega(), *cls));
        EquivalenceVerdict v = verify_kcs_equivalence(g0, g1, KCSWitness::trivial(g0.p()), k);
        return Outcome{!v.accepted, odd, {{"applicable", true}, {"perturbation", graded_json(alg, *cls)}, {"verdict", io::to_json(alg, v)}}};
    });

    auto exact_or_fail = [&](const GradedClass& g, json context) -> Outcome {
        GradedExactness ex = is_exact_graded(alg, with_odd_degrees(alg, g, k));
        if (!ex.exact) {
            context["residual"] = graded_json(alg, g);
            return Outcome{false, odd, context};
        }
        return Outcome{true, odd, {{"primitives", io::exactness_to_json(alg, ex)}}};
    };

    rep.run(tag + "odd Chern: identity automorphism", [&]() {
        Outcome last{true, odd, {}};
        for (int i = 0; i < cfg.khat_samples; ++i) {
            Idempotent p = random_idempotent(alg, random_size(rng), rng.next());
            last = exact_or_fail(odd_chern(K1Pair(ModuleIso::identity(p)), k), {{"p", io::to_json(p)}});
            if (!last.passed) return last;
        }
        return last;
    });

    rep.run(tag + "odd Chern: composition law", [&]() {
        Outcome last{true, odd, {}};
        for (int i = 0; i < cfg.khat_samples; ++i) {
            std::size_t n = random_size(rng);
            std::uint64_t s = rng.next();
            ModuleIso u1 = random_automorphism(alg, n, s, rng.next());
            ModuleIso u2 = random_automorphism(alg, n, s, rng.next());
            GradedClass lhs = odd_chern(K1Pair(u1.compose_after(u2)), k);
            GradedClass rhs = graded_add(odd_chern(K1Pair(u1), k), odd_chern(K1Pair(u2), k));
            last = exact_or_fail(graded_sub(lhs, rhs), {{"u1", io::to_json(u1)}, {"u2", io::to_json(u2)}});
            if (!last.passed) return last;
        }
        return last;
    });

    rep.run(tag + "odd Chern: block-sum law", [&]() {
        Outcome last{true, odd, {}};
        for (int i = 0; i < cfg.khat_samples; ++i) {
            ModuleIso u1 = random_automorphism(alg, random_size(rng), rng.next());
            ModuleIso u2 = random_automorphism(alg, random_size(rng), rng.next());
            GradedClass lhs = odd_chern(K1Pair(direct_sum(u1, u2)), k);
            GradedClass rhs = graded_add(odd_chern(K1Pair(u1), k), odd_chern(K1Pair(u2), k));
            last = exact_or_fail(graded_sub(lhs, rhs), {{"u1", io::to_json(u1)}, {"u2", io::to_json(u2)}});
            if (!last.passed) return last;
        }
        return last;
    });

    rep.run(tag + "odd Chern: independent of the connection", [&]() {
        Outcome last{true, odd, {}};
        for (int i = 0; i < cfg.khat_samples; ++i) {
            ModuleIso u = random_automorphism(alg, random_size(rng), rng.next());
            K1Pair x(u);
            GradedClass diff = graded_sub(odd_chern(x, random_connection_on(x.p(), rng), k), odd_chern(x, k));
            last = exact_or_fail(diff, {{"u", io::to_json(u)}});
            if (!last.passed) return last;
        }
        return last;
    });
    return rep;
}

inline Report hexagon(const fixtures::Fixture& fx, const SuiteConfig& cfg) {
    Report rep = hexagon_suite(fx.algebra, mix(cfg.seed, "hexagon/" + fx.name), cfg.k_max, fixtures::homs_from(fx.name), fx.name,
                               cfg.khat_samples);
    rep.seed = cfg.seed;
    rep.append(khat(fx, cfg));
    return rep;
}

}  // namespace suites

/// Runs a named suite over the given fixtures (all builtin fixtures when empty).
inline Report run_suite(const std::string& name, const SuiteConfig& cfg, std::vector<fixtures::Fixture> fxs = {}) {
    if (fxs.empty()) fxs = fixtures::all();
    Report rep;
    rep.suite = name;
    rep.seed = cfg.seed;
    auto add = [&](const std::string& which) {
        for (const auto& fx : fxs) {
            if (which == "dga") rep.append(suites::dga(fx, cfg));
            if (which == "chern") rep.append(suites::chern(fx, cfg));
            if (which == "transgression") rep.append(suites::transgression(fx, cfg));
            if (which == "hexagon") rep.append(suites::hexagon(fx, cfg));
        }
    };
    if (name == "all") {
        for (const char* s : {"dga", "chern", "transgression", "hexagon"}) add(s);
    } else if (name == "dga" || name == "chern" || name == "transgression" || name == "hexagon") {
        add(name);
    } else {
        throw ValidationError("unknown suite '" + name + "'");
    }
    return rep;
}

}  // namespace kchern
