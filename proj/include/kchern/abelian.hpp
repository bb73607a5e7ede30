#pragma once

// Quotient of each form degree by graded commutators, the differential it
// inherits, and de Rham homology of the resulting complex.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "kchern/linalg.hpp"
#include "kchern/uform.hpp"

namespace kchern {

namespace detail {

struct AbelianData {
    int degree = 0;
    QuotientBasis quotient;
    std::vector<Word> selected_words;
};

inline void add_to_sparse(std::map<std::size_t, Rational>& acc, const Form& f, int m) {
    for (const auto& [w, c] : f.terms()) {
        auto [it, inserted] = acc.try_emplace(word_index(w, m), c);
        if (!inserted) it->second += c;
    }
}

inline SparseVec to_sparse_vec(const std::map<std::size_t, Rational>& acc) {
    SparseVec v;
    for (const auto& [i, c] : acc)
        if (!c.is_zero()) v.emplace_back(i, c);
    return v;
}

}  // namespace detail

/// Graded commutator [u, v] = uv - (-1)^{|u||v|} vu for homogeneous u, v.
template <class S>
UForm<S> graded_commutator(const UForm<S>& u, int du, const UForm<S>& v, int dv) {
    UForm<S> uv = u * v;
    UForm<S> vu = v * u;
    return (du * dv) % 2 == 0 ? uv - vu : uv + vu;
}

/// Commutator subspace of degree n, generated by [e_i, w] and [de_i, w'].
/// Every graded commutator is a combination of these: [xy, z] = [x, yz] +- [y, zx].
inline RowEchelon commutator_echelon(const Algebra& alg, int n) {
    const int m = alg.dim();
    const std::size_t N = dimension(alg, n);
    RowEchelon e(N);
    if (N == 0) return e;
    auto push = [&](const Form& f) {
        std::map<std::size_t, Rational> acc;
        detail::add_to_sparse(acc, f, m);
        SparseVec v = detail::to_sparse_vec(acc);
        if (!v.empty()) e.insert(std::move(v));
    };
    for (int i = 1; i < m && !e.full(); ++i) {
        Form ei = Form::basis(alg, i);
        for (std::size_t k = 0; k < N && !e.full(); ++k) {
            Form w(alg, word_at(k, n, m));
            push(ei * w - w * ei);
        }
    }
    if (n >= 1) {
        const std::size_t N1 = dimension(alg, n - 1);
        for (int i = 1; i < m && !e.full(); ++i) {
            Form dei = d_basis(alg, i);
            for (std::size_t k = 0; k < N1 && !e.full(); ++k) {
                Form w(alg, word_at(k, n - 1, m));
                push(graded_commutator(dei, 1, w, n - 1));
            }
        }
    }
    return e;
}

/// The same subspace from every pair of basis words (slow; used to cross-check).
inline RowEchelon commutator_echelon_all_pairs(const Algebra& alg, int n) {
    const int m = alg.dim();
    RowEchelon e(dimension(alg, n));
    for (int i = 0; i <= n; ++i) {
        const int j = n - i;
        if (i > j) break;
        std::vector<Word> wi = all_words(alg, i), wj = all_words(alg, j);
        for (std::size_t a = 0; a < wi.size(); ++a)
            for (std::size_t b = (i == j ? a : 0); b < wj.size(); ++b) {
                Form c = graded_commutator(Form(alg, wi[a]), i, Form(alg, wj[b]), j);
                std::map<std::size_t, Rational> acc;
                detail::add_to_sparse(acc, c, m);
                SparseVec v = detail::to_sparse_vec(acc);
                if (!v.empty()) e.insert(std::move(v));
            }
    }
    return e;
}

/// Handle to the degree-n quotient, memoised per algebra.
class AbProjection {
public:
    AbProjection() = default;
    AbProjection(Algebra alg, std::shared_ptr<const detail::AbelianData> d) : alg_(std::move(alg)), d_(std::move(d)) {}

    int degree() const noexcept { return d_->degree; }
    std::size_t ambient_dim() const noexcept { return d_->quotient.ambient_dim(); }
    std::size_t dim() const noexcept { return d_->quotient.dim(); }
    /// Words whose classes form the quotient basis.
    const std::vector<Word>& basis_words() const noexcept { return d_->selected_words; }
    const QuotientBasis& quotient() const noexcept { return d_->quotient; }
    RatMatrix projection() const { return d_->quotient.projection(); }

    /// Class of a homogeneous degree-n form.
    template <class S>
    std::vector<S> project(const UForm<S>& f) const {
        std::vector<S> out(dim());
        const int m = alg_.dim();
        for (const auto& [w, c] : f.terms()) {
            if (w.degree() != degree()) throw MismatchError("projection applied to a form of the wrong degree");
            for (const auto& [j, x] : d_->quotient.column_image(word_index(w, m))) out[j] += c * x;
        }
        return out;
    }

    /// The form sum_j v_j * basis_word_j.
    template <class S>
    UForm<S> lift(const std::vector<S>& v) const {
        if (v.size() != dim()) throw MismatchError("class vector has wrong length");
        UForm<S> f(alg_);
        for (std::size_t j = 0; j < v.size(); ++j) f.add_term(d_->selected_words[j], v[j]);
        return f;
    }

private:
    Algebra alg_;
    std::shared_ptr<const detail::AbelianData> d_;
};

inline AbProjection abelianization(const Algebra& alg, int n) {
    if (n < 0) throw MismatchError("negative form degree");
    if (n > alg.degree_cap()) throw CapExceeded(n, alg.degree_cap());
    const auto& impl = alg.impl();
    {
        std::lock_guard<std::mutex> lock(impl.ab_mu);
        auto it = impl.ab_cache.find(n);
        if (it != impl.ab_cache.end()) return AbProjection(alg, it->second);
    }
    auto data = std::make_shared<detail::AbelianData>();
    data->degree = n;
    data->quotient = QuotientBasis(dimension(alg, n), commutator_echelon(alg, n));
    for (std::size_t c : data->quotient.selected()) data->selected_words.push_back(word_at(c, n, alg.dim()));
    std::lock_guard<std::mutex> lock(impl.ab_mu);
    auto [it, inserted] = impl.ab_cache.emplace(n, std::move(data));
    return AbProjection(alg, it->second);
}

/// Per-degree classes; absent degrees are zero.
template <class S>
using Graded = std::map<int, std::vector<S>>;
using GradedClass = Graded<Rational>;

template <class S>
Graded<S> project_ab(const UForm<S>& f) {
    Graded<S> out;
    if (f.is_zero()) return out;
    for (int n : f.degrees()) out[n] = abelianization(f.algebra(), n).project(f.component(n));
    return out;
}

template <class S>
bool is_zero(const std::vector<S>& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

template <class S>
bool graded_is_zero(const Graded<S>& g) {
    for (const auto& [n, v] : g)
        if (!is_zero(v)) return false;
    return true;
}

/// Drops identically-zero degrees so that equal classes compare equal.
template <class S>
Graded<S> normalized(Graded<S> g) {
    for (auto it = g.begin(); it != g.end();) {
        if (is_zero(it->second))
            it = g.erase(it);
        else
            ++it;
    }
    return g;
}

template <class S>
Graded<S> graded_add(Graded<S> a, const Graded<S>& b, const S& scale = S(1)) {
    for (const auto& [n, v] : b) {
        auto& dst = a[n];
        if (dst.empty()) dst.resize(v.size());
        if (dst.size() != v.size()) throw MismatchError("graded class length mismatch");
        for (std::size_t i = 0; i < v.size(); ++i) dst[i] += scale * v[i];
    }
    return normalized(std::move(a));
}

template <class S>
Graded<S> graded_sub(const Graded<S>& a, const Graded<S>& b) {
    return graded_add(a, b, S(-1));
}

template <class S>
bool graded_equal(const Graded<S>& a, const Graded<S>& b) {
    return normalized(a) == normalized(b);
}

/// Lift of a graded class to a form via the quotient basis words.
template <class S>
UForm<S> lift_graded(const Algebra& alg, const Graded<S>& g) {
    UForm<S> f(alg);
    for (const auto& [n, v] : g) f += abelianization(alg, n).lift(v);
    return f;
}

/// Matrix of the inherited differential from degree n to n+1 in quotient bases.
inline RatMatrix dbar_matrix(const Algebra& alg, int n) {
    AbProjection src = abelianization(alg, n);
    AbProjection dst = abelianization(alg, n + 1);
    RatMatrix mtx(dst.dim(), src.dim());
    for (std::size_t s = 0; s < src.dim(); ++s) {
        Form dw = Form(alg, src.basis_words()[s]).differential();
        Vec col = dst.project(dw);
        for (std::size_t r = 0; r < col.size(); ++r)
            if (!col[r].is_zero()) mtx.set(r, s, col[r]);
    }
    return mtx;
}

/// d applied to a graded class (computed on lifts; well defined on classes).
template <class S>
Graded<S> dbar(const Algebra& alg, const Graded<S>& g) {
    Graded<S> out;
    for (const auto& [n, v] : g) {
        UForm<S> dl = abelianization(alg, n).lift(v).differential();
        out[n + 1] = abelianization(alg, n + 1).project(dl);
    }
    return normalized(std::move(out));
}

struct Homology {
    int degree = 0;
    std::size_t dim = 0;
    /// Representative cycles, lifted to forms.
    std::vector<Form> representatives;
};

inline Homology de_rham_homology(const Algebra& alg, int n) {
    if (n + 1 > alg.degree_cap()) throw CapExceeded(n + 1, alg.degree_cap());
    AbProjection ab = abelianization(alg, n);
    Homology h;
    h.degree = n;
    std::vector<Vec> cycles = kernel_basis(dbar_matrix(alg, n));
    RowEchelon e(ab.dim());
    if (n >= 1) {
        RatMatrix in = dbar_matrix(alg, n - 1).transpose();
        for (std::size_t r = 0; r < in.rows(); ++r) e.insert(in.row(r));
    }
    for (const Vec& z : cycles)
        if (e.insert(z)) h.representatives.push_back(ab.lift(z));
    h.dim = h.representatives.size();
    return h;
}

struct ExactnessResult {
    bool exact = false;
    int degree = 0;
    /// Coordinates of a primitive in the degree-(n-1) quotient basis.
    std::optional<Vec> primitive;
    /// The primitive lifted to a form.
    std::optional<Form> primitive_form;
};

/// Whether the class of a degree-n vector lies in the image of d from degree n-1.
inline ExactnessResult is_exact_class(const Algebra& alg, int n, const Vec& cls) {
    ExactnessResult r;
    r.degree = n;
    if (n == 0) {
        r.exact = is_zero(cls);
        return r;
    }
    if (is_zero(cls)) {
        AbProjection prev = abelianization(alg, n - 1);
        r.exact = true;
        r.primitive = Vec(prev.dim());
        r.primitive_form = Form(alg);
        return r;
    }
    auto x = solve_membership(dbar_matrix(alg, n - 1), cls);
    if (!x) return r;
    r.exact = true;
    r.primitive_form = abelianization(alg, n - 1).lift(*x);
    r.primitive = std::move(x);
    return r;
}

inline ExactnessResult is_exact_in_ab(const Form& w, int n) {
    if (!w.is_homogeneous(n)) throw MismatchError("exactness test needs a homogeneous form");
    if (w.is_zero() && !w.has_algebra()) {
        ExactnessResult r;
        r.exact = true;
        r.degree = n;
        return r;
    }
    return is_exact_class(w.algebra(), n, abelianization(w.algebra(), n).project(w));
}

/// Per-degree exactness of a graded class; exact iff every degree is.
struct GradedExactness {
    bool exact = true;
    std::map<int, ExactnessResult> per_degree;
};

inline GradedExactness is_exact_graded(const Algebra& alg, const GradedClass& g) {
    GradedExactness out;
    for (const auto& [n, v] : g) {
        ExactnessResult r = is_exact_class(alg, n, v);
        out.exact = out.exact && r.exact;
        out.per_degree.emplace(n, std::move(r));
    }
    return out;
}

}  // namespace kchern
