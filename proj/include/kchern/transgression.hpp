#pragma once

// Polynomial families of connections on a fixed idempotent and the forms
// they transgress: KCS forms on paths, secondary potentials on bigons.

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "kchern/connections.hpp"
#include "kchern/tform.hpp"

namespace kchern {

using PathMatrix = Mat<Form1>;
using SquareMatrix = Mat<Form2>;

template <class T>
Mat<UForm<T>> lift_matrix(const FormMatrix& m) {
    return m.map([](const Form& f) { return f.lift<T>(); });
}

inline Mat<TForm> to_tforms(const PathMatrix& m) {
    return m.map([](const Form1& f) { return TForm(f); });
}

inline Mat<BiForm> to_biforms(const SquareMatrix& m) {
    return m.map([](const Form2& f) { return BiForm(f); });
}

inline FormMatrix eval_matrix(const PathMatrix& m, const Rational& t) {
    return m.map([&t](const Form1& f) { return eval_form(f, t); });
}

inline bool all_degree(const PathMatrix& m, int n) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_homogeneous(n)) return false;
    return true;
}

inline bool all_degree(const SquareMatrix& m, int n) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_homogeneous(n)) return false;
    return true;
}

/// theta(t) with polynomial coefficients on a fixed idempotent.
class PolyPath {
public:
    PolyPath() = default;
    PolyPath(Idempotent p, PathMatrix theta) : p_(std::move(p)), theta_(with_algebra(theta, p_.algebra())) {
        if (theta_.rows() != p_.size() || theta_.cols() != p_.size())
            throw ValidationError("path potential has the wrong size");
        if (!all_degree(theta_, 1)) throw ValidationError("path potential must be a matrix of 1-forms");
        PathMatrix p1 = lift_matrix<Poly1>(p_.matrix());
        if (!(p1 * theta_ * p1 == theta_)) throw ValidationError("path potential is not compressed by the idempotent");
    }

    const Idempotent& idempotent() const noexcept { return p_; }
    const PathMatrix& potential() const noexcept { return theta_; }
    const Algebra& algebra() const noexcept { return p_.algebra(); }

    Connection at(const Rational& t) const { return Connection(p_, eval_matrix(theta_, t)); }

    friend bool operator==(const PolyPath& a, const PolyPath& b) { return a.p_ == b.p_ && a.theta_ == b.theta_; }

private:
    Idempotent p_;
    PathMatrix theta_;
};

/// theta(s, t); s = 0 and s = 1 are the two boundary paths.
class Bigon {
public:
    Bigon() = default;
    Bigon(Idempotent p, SquareMatrix theta) : p_(std::move(p)), theta_(with_algebra(theta, p_.algebra())) {
        if (theta_.rows() != p_.size() || theta_.cols() != p_.size())
            throw ValidationError("bigon potential has the wrong size");
        if (!all_degree(theta_, 1)) throw ValidationError("bigon potential must be a matrix of 1-forms");
        SquareMatrix p2 = lift_matrix<Poly2>(p_.matrix());
        if (!(p2 * theta_ * p2 == theta_)) throw ValidationError("bigon potential is not compressed by the idempotent");
    }

    const Idempotent& idempotent() const noexcept { return p_; }
    const SquareMatrix& potential() const noexcept { return theta_; }
    const Algebra& algebra() const noexcept { return p_.algebra(); }

    /// Path in t at fixed s.
    PolyPath at_s(const Rational& s) const {
        return PolyPath(p_, theta_.map([&s](const Form2& f) {
            return f.map_coeffs<Poly1>([&s](const Poly2& c) { return c.eval_s(s); });
        }));
    }
    /// Path in s at fixed t.
    PolyPath at_t(const Rational& t) const {
        return PolyPath(p_, theta_.map([&t](const Form2& f) {
            return f.map_coeffs<Poly1>([&t](const Poly2& c) { return c.eval_t(t); });
        }));
    }

private:
    Idempotent p_;
    SquareMatrix theta_;
};

inline void require_same_module(const Idempotent& a, const Idempotent& b, const char* what) {
    if (!(a == b)) throw MismatchError(std::string(what) + ": connections live on different idempotents");
}

/// theta(t) = (1 - t) theta0 + t theta1.
inline PolyPath straight_line(const Connection& c0, const Connection& c1) {
    require_same_module(c0.idempotent(), c1.idempotent(), "straight_line");
    const Poly1 t = Poly1::t();
    const Poly1 one_minus_t = Poly1(1) - t;
    PathMatrix theta = scaled(one_minus_t, lift_matrix<Poly1>(c0.potential())) + scaled(t, lift_matrix<Poly1>(c1.potential()));
    return PolyPath(c0.idempotent(), theta);
}

/// Quadratic interpolants through t = 0, 1/2, 1.
inline std::array<Poly1, 3> three_point_interpolants() {
    return {Poly1(std::vector<Rational>{1, -3, 2}), Poly1(std::vector<Rational>{0, 4, -4}),
            Poly1(std::vector<Rational>{0, -1, 2})};
}

/// Path through c1, c2, c3 at t = 0, 1/2, 1.
inline PolyPath three_point_path(const Connection& c1, const Connection& c2, const Connection& c3) {
    require_same_module(c1.idempotent(), c2.idempotent(), "three_point_path");
    require_same_module(c1.idempotent(), c3.idempotent(), "three_point_path");
    auto q = three_point_interpolants();
    PathMatrix theta = scaled(q[0], lift_matrix<Poly1>(c1.potential())) + scaled(q[1], lift_matrix<Poly1>(c2.potential())) +
                       scaled(q[2], lift_matrix<Poly1>(c3.potential()));
    return PolyPath(c1.idempotent(), theta);
}

inline PolyPath constant_path(const Connection& c) { return PolyPath(c.idempotent(), lift_matrix<Poly1>(c.potential())); }

inline PolyPath reverse_path(const PolyPath& path) {
    return PolyPath(path.idempotent(), path.potential().map([](const Form1& f) { return reversed_form(f); }));
}

/// Curvature of the connection induced on the cylinder, R(t) + dt S(t).
struct TildeCurvature {
    PathMatrix curvature;  // R(t)
    PathMatrix velocity;   // S(t)
};

inline Mat<TForm> tilde_curvature_matrix(const PolyPath& path) {
    Mat<TForm> p = to_tforms(lift_matrix<Poly1>(path.idempotent().matrix()));
    return curvature_of(p, to_tforms(path.potential()));
}

inline TildeCurvature tilde_curvature(const PolyPath& path) {
    Mat<TForm> r = tilde_curvature_matrix(path);
    return {r.map([](const TForm& x) { return x.base(); }), r.map([](const TForm& x) { return x.dt_part(); })};
}

/// tr(Rtilde^k)/k! for k = 0..k_max, as interval forms.
inline std::vector<TForm> tilde_chern_forms(const PolyPath& path, int k_max) {
    const Algebra& alg = path.algebra();
    if (2 * k_max > alg.degree_cap()) throw CapExceeded(2 * k_max, alg.degree_cap());
    Mat<TForm> r = tilde_curvature_matrix(path);
    Mat<TForm> power = to_tforms(lift_matrix<Poly1>(path.idempotent().matrix()));
    std::vector<TForm> out;
    for (int k = 0; k <= k_max; ++k) {
        if (k > 0) power = power * r;
        out.push_back(Rational(1) / factorial(k) * power.trace());
    }
    return out;
}

/// Class of an interval form in the abelianization: (base classes, dt classes).
struct TClass {
    Graded<Poly1> base;
    Graded<Poly1> dt;
    friend bool operator==(const TClass& a, const TClass& b) {
        return graded_equal(a.base, b.base) && graded_equal(a.dt, b.dt);
    }
};

inline TClass project_ab(const TForm& w) {
    return {normalized(project_ab(w.base())), normalized(project_ab(w.dt_part()))};
}

inline GradedClass eval_class(const Graded<Poly1>& g, const Rational& t) {
    GradedClass out;
    for (const auto& [n, v] : g) {
        Vec x;
        for (const auto& q : v) x.push_back(q.eval(t));
        out[n] = std::move(x);
    }
    return normalized(std::move(out));
}

inline GradedClass integrate_class(const Graded<Poly1>& g) {
    GradedClass out;
    for (const auto& [n, v] : g) {
        Vec x;
        for (const auto& q : v) x.push_back(q.integrate01());
        out[n] = std::move(x);
    }
    return normalized(std::move(out));
}

/// KCS_1 .. KCS_kmax; entry k-1 is the class in degree 2k-1.
using KCSClasses = std::vector<Vec>;

inline KCSClasses kcs(const PolyPath& path, int k_max) {
    const Algebra& alg = path.algebra();
    std::vector<TForm> ch = tilde_chern_forms(path, k_max);
    KCSClasses out;
    for (int k = 1; k <= k_max; ++k) {
        Form transgressed = homotopy_K(ch[static_cast<std::size_t>(k)]).component(2 * k - 1);
        out.push_back(abelianization(alg, 2 * k - 1).project(transgressed));
    }
    return out;
}

inline KCSClasses kcs_between(const Connection& c0, const Connection& c1, int k_max) {
    return kcs(straight_line(c0, c1), k_max);
}

inline GradedClass kcs_graded(const KCSClasses& v) { return as_graded(v, 1); }

inline KCSClasses negated(KCSClasses v) {
    for (auto& x : v)
        for (auto& c : x) c = -c;
    return v;
}

inline KCSClasses difference(const KCSClasses& a, const KCSClasses& b) {
    if (a.size() != b.size()) throw MismatchError("KCS lists of different length");
    KCSClasses out = a;
    for (std::size_t k = 0; k < a.size(); ++k)
        for (std::size_t i = 0; i < a[k].size(); ++i) out[k][i] -= b[k][i];
    return out;
}

/// (1/(k-1)!) int_0^1 tr(S R^{k-1}) dt, before any sign correction.
inline KCSClasses kcs_closed_form_unsigned(const PolyPath& path, int k_max) {
    const Algebra& alg = path.algebra();
    if (2 * k_max > alg.degree_cap()) throw CapExceeded(2 * k_max, alg.degree_cap());
    TildeCurvature tc = tilde_curvature(path);
    KCSClasses out;
    PathMatrix power = lift_matrix<Poly1>(path.idempotent().matrix());
    for (int k = 1; k <= k_max; ++k) {
        if (k > 1) power = power * tc.curvature;
        Form1 tr = (tc.velocity * power).trace().component(2 * k - 1);
        Graded<Poly1> cls;
        cls[2 * k - 1] = abelianization(alg, 2 * k - 1).project(tr);
        GradedClass integrated = integrate_class(cls);
        Vec v = integrated.count(2 * k - 1) ? integrated[2 * k - 1] : Vec(abelianization(alg, 2 * k - 1).dim());
        Rational inv = Rational(1) / factorial(k - 1);
        for (auto& x : v) x *= inv;
        out.push_back(std::move(v));
    }
    return out;
}

/// Per-k signs relating the closed form to the structural KCS.
using ClosedFormSigns = std::vector<int>;

/// Fixes each sign by comparing both computations on a path where KCS_k != 0.
inline ClosedFormSigns calibrate_closed_form_signs(const PolyPath& seed_path, int k_max) {
    KCSClasses structural = kcs(seed_path, k_max);
    KCSClasses raw = kcs_closed_form_unsigned(seed_path, k_max);
    ClosedFormSigns signs;
    for (int k = 0; k < k_max; ++k) {
        const Vec& a = structural[static_cast<std::size_t>(k)];
        const Vec& b = raw[static_cast<std::size_t>(k)];
        if (is_zero(a)) throw ValidationError("calibration path has vanishing KCS_" + std::to_string(k + 1));
        Vec neg = b;
        for (auto& x : neg) x = -x;
        if (a == b)
            signs.push_back(1);
        else if (a == neg)
            signs.push_back(-1);
        else
            throw ValidationError("closed form disagrees with KCS_" + std::to_string(k + 1) + " beyond a sign");
    }
    return signs;
}

inline KCSClasses kcs_closed_form(const PolyPath& path, int k_max, const ClosedFormSigns& signs) {
    if (static_cast<int>(signs.size()) < k_max) throw MismatchError("closed form needs a sign for every k");
    KCSClasses out = kcs_closed_form_unsigned(path, k_max);
    for (int k = 0; k < k_max; ++k)
        if (signs[static_cast<std::size_t>(k)] < 0)
            for (auto& x : out[static_cast<std::size_t>(k)]) x = -x;
    return out;
}

inline PolyPath random_path(const Idempotent& p, std::uint64_t seed, int max_degree = 2);

/// Signs calibrated once on the first seeded path over Q[x]/(x^3) whose KCS_k are all nonzero.
inline ClosedFormSigns default_closed_form_signs(int k_max) {
    static std::mutex mu;
    static std::map<int, ClosedFormSigns> cache;
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(k_max); it != cache.end()) return it->second;
    Algebra alg = make_truncated_poly(3).with_degree_cap(std::max(Algebra::kDefaultDegreeCap, 2 * k_max));
    for (std::uint64_t seed = 1; seed <= 500; ++seed) {
        PolyPath path = random_path(random_idempotent(alg, 2, seed), seed);
        KCSClasses ks = kcs(path, k_max);
        bool all_nonzero = true;
        for (const auto& v : ks) all_nonzero = all_nonzero && !is_zero(v);
        if (!all_nonzero) continue;
        return cache[k_max] = calibrate_closed_form_signs(path, k_max);
    }
    throw Error("no calibration path found for the closed-form signs");
}

inline KCSClasses kcs_closed_form(const PolyPath& path, int k_max) {
    return kcs_closed_form(path, k_max, default_closed_form_signs(k_max));
}

/// theta(s, t) = (1 - s) theta1(t) + s theta2(t); needs shared endpoints.
inline Bigon bigon_straight(const PolyPath& first, const PolyPath& second) {
    require_same_module(first.idempotent(), second.idempotent(), "bigon_straight");
    if (!(first.at(Rational(0)) == second.at(Rational(0))) || !(first.at(Rational(1)) == second.at(Rational(1))))
        throw MismatchError("bigon_straight: paths do not share endpoints");
    auto in_t = [](const PathMatrix& m) {
        return m.map([](const Form1& f) { return f.map_coeffs<Poly2>([](const Poly1& c) { return Poly2::in_t(c); }); });
    };
    const Poly2 s = Poly2::s();
    SquareMatrix theta = scaled(Poly2(1) - s, in_t(first.potential())) + scaled(s, in_t(second.potential()));
    return Bigon(first.idempotent(), theta);
}

inline Mat<BiForm> bigon_curvature_matrix(const Bigon& b) {
    Mat<BiForm> p = to_biforms(lift_matrix<Poly2>(b.idempotent().matrix()));
    return curvature_of(p, to_biforms(b.potential()));
}

/// tr(curvature^k)/k! on the square, k = 0..k_max.
inline std::vector<BiForm> bigon_chern_forms(const Bigon& b, int k_max) {
    const Algebra& alg = b.algebra();
    if (2 * k_max > alg.degree_cap()) throw CapExceeded(2 * k_max, alg.degree_cap());
    Mat<BiForm> r = bigon_curvature_matrix(b);
    Mat<BiForm> power = to_biforms(lift_matrix<Poly2>(b.idempotent().matrix()));
    std::vector<BiForm> out;
    for (int k = 0; k <= k_max; ++k) {
        if (k > 0) power = power * r;
        out.push_back(Rational(1) / factorial(k) * power.trace());
    }
    return out;
}

/// K K1 of the Chern forms on the square; entry k-1 is the class in degree 2k-2.
/// Its differential is kcs(s = 0 path) - kcs(s = 1 path).
inline std::vector<Vec> secondary_transgression(const Bigon& b, int k_max) {
    const Algebra& alg = b.algebra();
    std::vector<BiForm> ch = bigon_chern_forms(b, k_max);
    std::vector<Vec> out;
    for (int k = 1; k <= k_max; ++k) {
        Form pot = double_homotopy(ch[static_cast<std::size_t>(k)]).component(2 * k - 2);
        out.push_back(abelianization(alg, 2 * k - 2).project(pot));
    }
    return out;
}

inline PolyPath direct_sum(const PolyPath& a, const PolyPath& b) {
    return PolyPath(direct_sum(a.idempotent(), b.idempotent()), block_diag(a.potential(), b.potential()));
}

/// Pullback of every connection on the path along a fixed isomorphism.
inline PolyPath pullback(const PolyPath& path, const ModuleIso& phi) {
    if (!(phi.target() == path.idempotent())) throw MismatchError("pullback: isomorphism target differs from the module");
    PathMatrix u = lift_matrix<Poly1>(phi.forward());
    PathMatrix v = lift_matrix<Poly1>(phi.backward());
    PathMatrix du = lift_matrix<Poly1>(entrywise_differential(phi.forward()));
    PathMatrix p0 = lift_matrix<Poly1>(phi.source().matrix());
    return PolyPath(phi.source(), (v * du + v * path.potential() * u) * p0);
}

inline PolyPath induced_path(const PolyPath& path, const AlgebraHom& psi) {
    return PolyPath(extend_scalars(path.idempotent(), psi),
                    path.potential().map([&psi](const Form1& f) { return extend_hom(psi, f); }));
}

inline PolyPath random_path(const Idempotent& p, std::uint64_t seed, int max_degree) {
    Rng rng(seed);
    PathMatrix theta = lift_matrix<Poly1>(random_potential(p, rng.next()));
    for (int d = 1; d <= max_degree; ++d) {
        Poly1 td = Poly1::monomial(d, Rational(rng.range(-2, 2)));
        theta += scaled(td, lift_matrix<Poly1>(random_potential(p, rng.next())));
    }
    return PolyPath(p, theta);
}

}  // namespace kchern
