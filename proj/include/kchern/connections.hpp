#pragma once

// Projective modules as idempotent matrices, connections in compressed
// (p, theta) form, curvature, traces into the abelianization and the
// Chern character.

#include <cstdint>
#include <random>
#include <vector>

#include "kchern/abelian.hpp"
#include "kchern/matrix.hpp"
#include "kchern/uform.hpp"

namespace kchern {

using FormMatrix = Mat<Form>;

inline FormMatrix identity_matrix(const Algebra& alg, std::size_t n) {
    FormMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Form::one(alg);
    return m;
}

inline bool all_degree(const FormMatrix& m, int n) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_homogeneous(n)) return false;
    return true;
}

/// Re-homes every entry (including zero ones) on the given algebra.
template <class F>
Mat<F> with_algebra(const Mat<F>& m, const Algebra& alg) {
    return m.map([&alg](const F& x) {
        if (x.has_algebra()) alg.require_same(x.algebra(), "matrix entry");
        return x.with_algebra(alg);
    });
}

class Idempotent {
public:
    Idempotent() = default;
    Idempotent(Algebra alg, FormMatrix p) : alg_(std::move(alg)), p_(with_algebra(p, alg_)) {
        if (!p_.square()) throw ValidationError("idempotent must be square");
        if (!all_degree(p_, 0)) throw ValidationError("idempotent entries must be algebra elements");
        if (!(p_ * p_ == p_)) throw ValidationError("matrix is not idempotent");
    }

    static Idempotent zero(const Algebra& alg) { return Idempotent(alg, FormMatrix(0, 0)); }
    static Idempotent identity(const Algebra& alg, std::size_t n) { return Idempotent(alg, identity_matrix(alg, n)); }
    /// Diagonal idempotent from algebra-element idempotents.
    static Idempotent diagonal(const Algebra& alg, const std::vector<AlgElement>& entries) {
        FormMatrix m(entries.size(), entries.size());
        for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = Form::from_element(entries[i]);
        return Idempotent(alg, m);
    }

    const Algebra& algebra() const noexcept { return alg_; }
    std::size_t size() const noexcept { return p_.rows(); }
    const FormMatrix& matrix() const noexcept { return p_; }
    AlgElement entry(std::size_t i, std::size_t j) const {
        AlgElement e(alg_);
        std::vector<Rational> c(static_cast<std::size_t>(alg_.dim()));
        for (const auto& [w, x] : p_(i, j).terms()) c[static_cast<std::size_t>(w[0])] = x;
        return AlgElement(alg_, std::move(c));
    }

    friend bool operator==(const Idempotent& a, const Idempotent& b) { return a.alg_ == b.alg_ && a.p_ == b.p_; }

private:
    Algebra alg_;
    FormMatrix p_;
};

class Connection {
public:
    Connection() = default;
    /// D = p d + theta on Im(p); theta must be degree 1 with p theta p = theta.
    Connection(Idempotent p, FormMatrix theta) : p_(std::move(p)), theta_(with_algebra(theta, p_.algebra())) {
        if (theta_.rows() != p_.size() || theta_.cols() != p_.size())
            throw ValidationError("connection potential has the wrong size");
        if (!all_degree(theta_, 1)) throw ValidationError("connection potential must be a matrix of 1-forms");
        if (!(p_.matrix() * theta_ * p_.matrix() == theta_))
            throw ValidationError("connection potential is not compressed by the idempotent");
    }

    const Idempotent& idempotent() const noexcept { return p_; }
    const FormMatrix& potential() const noexcept { return theta_; }
    const Algebra& algebra() const noexcept { return p_.algebra(); }
    std::size_t size() const noexcept { return p_.size(); }

    friend bool operator==(const Connection& a, const Connection& b) { return a.p_ == b.p_ && a.theta_ == b.theta_; }

private:
    Idempotent p_;
    FormMatrix theta_;
};

/// u: Im(p0) -> Im(p1) with two-sided inverse v.
class ModuleIso {
public:
    ModuleIso() = default;
    ModuleIso(Idempotent p0, Idempotent p1, FormMatrix u, FormMatrix v)
        : p0_(std::move(p0)), p1_(std::move(p1)), u_(with_algebra(u, p0_.algebra())), v_(with_algebra(v, p0_.algebra())) {
        p0_.algebra().require_same(p1_.algebra(), "module isomorphism");
        if (u_.rows() != p1_.size() || u_.cols() != p0_.size() || v_.rows() != p0_.size() || v_.cols() != p1_.size())
            throw ValidationError("module isomorphism has the wrong shape");
        if (!all_degree(u_, 0) || !all_degree(v_, 0)) throw ValidationError("module isomorphism entries must be algebra elements");
        const FormMatrix& a = p0_.matrix();
        const FormMatrix& b = p1_.matrix();
        if (!(b * u_ * a == u_)) throw ValidationError("u is not a map Im(p0) -> Im(p1)");
        if (!(a * v_ * b == v_)) throw ValidationError("v is not a map Im(p1) -> Im(p0)");
        if (!(v_ * u_ == a)) throw ValidationError("v u differs from p0");
        if (!(u_ * v_ == b)) throw ValidationError("u v differs from p1");
    }

    static ModuleIso identity(const Idempotent& p) { return ModuleIso(p, p, p.matrix(), p.matrix()); }

    const Idempotent& source() const noexcept { return p0_; }
    const Idempotent& target() const noexcept { return p1_; }
    const FormMatrix& forward() const noexcept { return u_; }
    const FormMatrix& backward() const noexcept { return v_; }

    ModuleIso inverse() const { return ModuleIso(p1_, p0_, v_, u_); }
    /// this after first.
    ModuleIso compose_after(const ModuleIso& first) const {
        if (!(first.p1_ == p0_)) throw MismatchError("module isomorphisms do not compose");
        return ModuleIso(first.p0_, p1_, u_ * first.u_, first.v_ * v_);
    }

private:
    Idempotent p0_, p1_;
    FormMatrix u_, v_;
};

inline Idempotent direct_sum(const Idempotent& a, const Idempotent& b) {
    a.algebra().require_same(b.algebra(), "direct sum");
    return Idempotent(a.algebra(), block_diag(a.matrix(), b.matrix()));
}

inline ModuleIso direct_sum(const ModuleIso& a, const ModuleIso& b) {
    return ModuleIso(direct_sum(a.source(), b.source()), direct_sum(a.target(), b.target()),
                     block_diag(a.forward(), b.forward()), block_diag(a.backward(), b.backward()));
}

inline Connection grassmann(const Idempotent& p) { return Connection(p, FormMatrix(p.size(), p.size())); }

inline FormMatrix curvature(const Connection& c) {
    return curvature_of(c.idempotent().matrix(), c.potential());
}

inline Connection direct_sum(const Connection& a, const Connection& b) {
    return Connection(direct_sum(a.idempotent(), b.idempotent()), block_diag(a.potential(), b.potential()));
}

/// phi^* D on Im(p0): potential (v du + v theta u) p0.
inline Connection pullback(const Connection& c, const ModuleIso& phi) {
    if (!(phi.target() == c.idempotent())) throw MismatchError("pullback: isomorphism target differs from the module");
    const FormMatrix& u = phi.forward();
    const FormMatrix& v = phi.backward();
    FormMatrix theta = (v * entrywise_differential(u) + v * c.potential() * u) * phi.source().matrix();
    return Connection(phi.source(), theta);
}

inline Idempotent extend_scalars(const Idempotent& p, const AlgebraHom& psi) {
    return Idempotent(psi.target(), p.matrix().map([&psi](const Form& f) { return extend_hom(psi, f); }));
}

inline FormMatrix extend_scalars(const FormMatrix& m, const AlgebraHom& psi) {
    return m.map([&psi](const Form& f) { return extend_hom(psi, f); });
}

inline Connection extend_scalars(const Connection& c, const AlgebraHom& psi) {
    return Connection(extend_scalars(c.idempotent(), psi), extend_scalars(c.potential(), psi));
}

inline ModuleIso extend_scalars(const ModuleIso& phi, const AlgebraHom& psi) {
    return ModuleIso(extend_scalars(phi.source(), psi), extend_scalars(phi.target(), psi),
                     extend_scalars(phi.forward(), psi), extend_scalars(phi.backward(), psi));
}

/// Sum of the diagonal, projected to the abelianization degree by degree.
template <class S>
Graded<S> trace_ab(const Mat<UForm<S>>& m) {
    return normalized(project_ab(m.trace()));
}

/// Image of a class under the extension of a hom to forms.
inline GradedClass push_forward(const AlgebraHom& psi, const GradedClass& g) {
    return normalized(project_ab(extend_hom(psi, lift_graded(psi.source(), g))));
}

inline Rational factorial(int k) {
    Rational f(1);
    for (int i = 2; i <= k; ++i) f *= Rational(i);
    return f;
}

/// ch_0 .. ch_kmax; entry k is the class of tr(R^k)/k! in degree 2k.
using ChernClasses = std::vector<Vec>;

inline ChernClasses chern(const Connection& c, int k_max) {
    const Algebra& alg = c.algebra();
    if (2 * k_max > alg.degree_cap()) throw CapExceeded(2 * k_max, alg.degree_cap());
    ChernClasses out;
    FormMatrix r = curvature(c);
    FormMatrix power = c.idempotent().matrix();
    for (int k = 0; k <= k_max; ++k) {
        if (k > 0) power = power * r;
        AbProjection ab = abelianization(alg, 2 * k);
        Vec v = ab.project(power.trace().component(2 * k));
        Rational inv = Rational(1) / factorial(k);
        for (auto& x : v) x *= inv;
        out.push_back(std::move(v));
    }
    return out;
}

inline GradedClass as_graded(const ChernClasses& ch, int first_degree = 0) {
    GradedClass g;
    for (std::size_t k = 0; k < ch.size(); ++k) g[first_degree + 2 * static_cast<int>(k)] = ch[k];
    return normalized(std::move(g));
}

// ---------------------------------------------------------------------------
// Seeded generators. Draws use raw engine output only, so sequences are
// identical across standard library implementations.

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    /// Uniform-ish integer in [lo, hi].
    int range(int lo, int hi) { return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1)); }
    bool coin() { return (eng_() >> 11) & 1U; }
    std::uint64_t next() { return eng_(); }

private:
    std::mt19937_64 eng_;
};

/// Idempotent algebra elements used as diagonal blocks: 0, 1, idempotent
/// basis elements and their complements, (1 +- g)/2 for involutions g.
inline std::vector<AlgElement> idempotent_pool(const Algebra& alg) {
    std::vector<AlgElement> pool{AlgElement(alg), AlgElement::one(alg)};
    const AlgElement one = AlgElement::one(alg);
    for (int i = 1; i < alg.dim(); ++i) {
        AlgElement e = AlgElement::basis(alg, i);
        AlgElement sq = e * e;
        if (sq == e) {
            pool.push_back(e);
            pool.push_back(one - e);
        } else if (sq == one) {
            Rational half(1, 2);
            pool.push_back(half * (one + e));
            pool.push_back(half * (one - e));
        }
    }
    return pool;
}

inline Form random_element_form(const Algebra& alg, Rng& rng, int max_terms = 2) {
    Form f(alg);
    int terms = rng.range(1, max_terms);
    for (int k = 0; k < terms; ++k) f.add_term(Word{rng.range(0, alg.dim() - 1)}, Rational(rng.range(-2, 2)));
    return f;
}

/// Random homogeneous form with a few words of the given degree.
inline Form random_form(const Algebra& alg, int degree, Rng& rng, int max_terms = 3) {
    Form f(alg);
    if (dimension(alg, degree) == 0) return f;
    int terms = rng.range(1, max_terms);
    for (int k = 0; k < terms; ++k) {
        std::vector<int> s{rng.range(0, alg.dim() - 1)};
        for (int i = 0; i < degree; ++i) s.push_back(rng.range(1, alg.dim() - 1));
        int c = rng.range(-3, 3);
        f.add_term(Word(s), Rational(c == 0 ? 1 : c));
    }
    return f;
}

namespace detail {

inline FormMatrix unipotent_inverse(const FormMatrix& id, const FormMatrix& strict) {
    // (1 + N)^{-1} = sum (-N)^k for nilpotent N.
    FormMatrix inv = id, term = id;
    for (std::size_t k = 1; k < id.rows(); ++k) {
        term = -(term * strict);
        inv += term;
    }
    return inv;
}

inline FormMatrix random_strict_upper(const Algebra& alg, std::size_t n, Rng& rng) {
    FormMatrix strict(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (rng.coin()) strict(i, j) = random_element_form(alg, rng);
    return with_algebra(strict, alg);
}

// p = g E g^{-1}, with E diagonal from the idempotent pool and g unipotent.
struct ConjugatedIdempotent {
    FormMatrix g, g_inv, diag;
    std::vector<std::size_t> pool_index;
};

inline ConjugatedIdempotent conjugated_idempotent(const Algebra& alg, std::size_t n, Rng& rng) {
    std::vector<AlgElement> pool = idempotent_pool(alg);
    ConjugatedIdempotent c;
    c.diag = FormMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        auto k = static_cast<std::size_t>(rng.range(0, static_cast<int>(pool.size()) - 1));
        c.pool_index.push_back(k);
        c.diag(i, i) = Form::from_element(pool[k]);
    }
    c.diag = with_algebra(c.diag, alg);
    FormMatrix id = identity_matrix(alg, n);
    FormMatrix strict = random_strict_upper(alg, n, rng);
    c.g = id + strict;
    c.g_inv = unipotent_inverse(id, strict);
    return c;
}

}  // namespace detail

inline Idempotent random_idempotent(const Algebra& alg, std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    auto c = detail::conjugated_idempotent(alg, n, rng);
    return Idempotent(alg, c.g * c.diag * c.g_inv);
}

inline FormMatrix random_potential(const Idempotent& p, std::uint64_t seed, int max_terms = 2) {
    Rng rng(seed);
    const std::size_t n = p.size();
    FormMatrix raw(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (rng.range(0, 2) != 0) raw(i, j) = random_form(p.algebra(), 1, rng, max_terms);
    return with_algebra(p.matrix() * raw * p.matrix(), p.algebra());
}

inline Connection random_connection(const Idempotent& p, std::uint64_t seed) {
    return Connection(p, random_potential(p, seed));
}

/// Units of the algebra with known inverses: nonzero scalars, 1 + c x for
/// square-zero basis elements x, and invertible basis elements.
inline std::vector<std::pair<AlgElement, AlgElement>> unit_pool(const Algebra& alg) {
    std::vector<std::pair<AlgElement, AlgElement>> pool;
    const AlgElement one = AlgElement::one(alg);
    for (int c : {2, -1, 3}) pool.emplace_back(Rational(c) * one, (Rational(1) / Rational(c)) * one);
    for (int i = 1; i < alg.dim(); ++i) {
        AlgElement x = AlgElement::basis(alg, i);
        if ((x * x).is_zero()) {
            pool.emplace_back(one + x, one - x);
            pool.emplace_back(one - Rational(2) * x, one + Rational(2) * x);
        }
        for (int j = 1; j < alg.dim(); ++j) {
            AlgElement y = AlgElement::basis(alg, j);
            if (x * y == one && y * x == one) pool.emplace_back(x, y);
        }
    }
    return pool;
}

/// Random automorphism of Im(random_idempotent(alg, n, seed)); aut_seed picks the automorphism.
inline ModuleIso random_automorphism(const Algebra& alg, std::size_t n, std::uint64_t seed, std::uint64_t aut_seed) {
    Rng prng(seed);
    auto c = detail::conjugated_idempotent(alg, n, prng);
    Rng rng(aut_seed);
    Idempotent p(alg, c.g * c.diag * c.g_inv);
    std::vector<AlgElement> idem = idempotent_pool(alg);
    auto units = unit_pool(alg);
    // Diagonal D commuting with E: arbitrary units where E_ii = 1, scalars elsewhere.
    FormMatrix d(n, n), d_inv(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const AlgElement& e = idem[c.pool_index[i]];
        std::size_t k = static_cast<std::size_t>(rng.range(0, static_cast<int>(units.size()) - 1));
        if (e == AlgElement::one(alg)) {
            d(i, i) = Form::from_element(units[k].first);
            d_inv(i, i) = Form::from_element(units[k].second);
        } else {
            Rational lambda(rng.coin() ? 2 : -3);
            d(i, i) = Form::from_element(lambda * AlgElement::one(alg));
            d_inv(i, i) = Form::from_element((Rational(1) / lambda) * AlgElement::one(alg));
        }
    }
    d = with_algebra(d, alg);
    d_inv = with_algebra(d_inv, alg);
    const FormMatrix& e = c.diag;
    FormMatrix nil = e * detail::random_strict_upper(alg, n, rng) * e;
    FormMatrix unip = e + nil;
    FormMatrix unip_inv = e, term = e;
    for (std::size_t k = 1; k < n; ++k) {
        term = -(term * nil);
        unip_inv += term;
    }
    FormMatrix u = c.g * d * unip * c.g_inv;
    FormMatrix v = c.g * unip_inv * d_inv * e * c.g_inv;
    return ModuleIso(p, p, u, v);
}

inline ModuleIso random_automorphism(const Algebra& alg, std::size_t n, std::uint64_t seed) {
    return random_automorphism(alg, n, seed, seed ^ 0x9e3779b97f4a7c15ULL);
}

/// Isomorphism from the diagonal idempotent E onto g E g^{-1} = random_idempotent(alg, n, seed).
inline ModuleIso random_conjugation(const Algebra& alg, std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    auto c = detail::conjugated_idempotent(alg, n, rng);
    Idempotent e(alg, c.diag);
    Idempotent p(alg, c.g * c.diag * c.g_inv);
    return ModuleIso(e, p, c.g * c.diag, c.diag * c.g_inv);
}

}  // namespace kchern
