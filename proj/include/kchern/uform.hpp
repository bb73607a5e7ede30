#pragma once

// Universal differential forms over a structure-constant algebra.
//
// Degree n is modelled on A (x) Abar^{(x)n}, where Abar is spanned by the basis
// elements 1..m-1. A word (i0; i1, ..., in) stands for e_{i0} de_{i1} ... de_{in}.
// Products are computed by moving degree-0 factors leftwards through
// de_a e_b = d(e_a e_b) - e_a de_b, memoised per algebra.

#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kchern/algebra.hpp"
#include "kchern/poly.hpp"

namespace kchern {

namespace detail {

// (word * e_b) for every b, as word expansions of the same degree.
inline const std::vector<WordExpansion>& right_products(const Algebra& alg, const Word& w) {
    const AlgebraImpl& impl = alg.impl();
    {
        std::lock_guard<std::mutex> lock(impl.right_mu);
        auto it = impl.right_cache.find(w);
        if (it != impl.right_cache.end()) return it->second;
    }
    const int m = impl.dim;
    std::vector<WordExpansion> res(static_cast<std::size_t>(m));
    if (w.size() == 1) {
        for (int b = 0; b < m; ++b)
            for (const auto& [l, c] : impl.product(w[0], b)) res[static_cast<std::size_t>(b)].emplace_back(Word{l}, c);
    } else {
        const Word head = w.prefix();
        const int a = w.back();
        const std::vector<WordExpansion>& rp = right_products(alg, head);
        res[0].emplace_back(w, Rational(1));
        for (int b = 1; b < m; ++b) {
            std::map<Word, Rational> acc;
            for (const auto& [l, c] : impl.product(a, b)) {
                if (l == 0) continue;
                Word x = head;
                x.push_back(l);
                acc[x] += c;
            }
            for (const auto& [x, c] : rp[static_cast<std::size_t>(a)]) {
                Word y = x;
                y.push_back(b);
                acc[y] -= c;
            }
            for (auto& [x, c] : acc)
                if (!c.is_zero()) res[static_cast<std::size_t>(b)].emplace_back(x, c);
        }
    }
    std::lock_guard<std::mutex> lock(impl.right_mu);
    auto [it, inserted] = impl.right_cache.emplace(w, std::move(res));
    return it->second;
}

}  // namespace detail

/// Number of words of degree n: m (m-1)^n.
inline std::size_t dimension(const Algebra& alg, int n) {
    if (n < 0) throw MismatchError("negative form degree");
    std::size_t d = static_cast<std::size_t>(alg.dim());
    for (int i = 0; i < n; ++i) d *= static_cast<std::size_t>(alg.dim() - 1);
    return d;
}

/// Position of a word among all words of its degree (lexicographic).
inline std::size_t word_index(const Word& w, int m) {
    std::size_t idx = static_cast<std::size_t>(w[0]);
    for (int i = 1; i < w.size(); ++i) idx = idx * static_cast<std::size_t>(m - 1) + static_cast<std::size_t>(w[i] - 1);
    return idx;
}

inline Word word_at(std::size_t idx, int n, int m) {
    std::vector<int> s(static_cast<std::size_t>(n + 1));
    for (int i = n; i >= 1; --i) {
        s[static_cast<std::size_t>(i)] = static_cast<int>(idx % static_cast<std::size_t>(m - 1)) + 1;
        idx /= static_cast<std::size_t>(m - 1);
    }
    s[0] = static_cast<int>(idx);
    return Word(s);
}

inline std::vector<Word> all_words(const Algebra& alg, int n) {
    std::vector<Word> out;
    const std::size_t N = dimension(alg, n);
    out.reserve(N);
    for (std::size_t i = 0; i < N; ++i) out.push_back(word_at(i, n, alg.dim()));
    return out;
}

template <class S>
class UForm {
public:
    using Scalar = S;

    UForm() = default;
    explicit UForm(Algebra a) : alg_(std::move(a)) {}
    UForm(Algebra a, const Word& w, S c = S(1)) : alg_(std::move(a)) { add_term(w, std::move(c)); }

    /// The degree-0 form c * e_i.
    static UForm basis(const Algebra& a, int i, S c = S(1)) { return UForm(a, Word{i}, std::move(c)); }
    static UForm one(const Algebra& a) { return basis(a, 0); }
    static UForm from_element(const AlgElementT<S>& e) {
        UForm f(e.algebra());
        for (int i = 0; i < e.algebra().dim(); ++i)
            if (!e[i].is_zero()) f.add_term(Word{i}, e[i]);
        return f;
    }

    /// Zero forms may carry no algebra; they combine with anything.
    bool has_algebra() const noexcept { return alg_.valid(); }
    const Algebra& algebra() const noexcept { return alg_; }
    const std::map<Word, S>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    S coeff(const Word& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? S() : it->second;
    }

    void add_term(const Word& w, const S& c) {
        if (c.is_zero()) return;
        check_word(w);
        auto [it, inserted] = terms_.try_emplace(w, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    std::set<int> degrees() const {
        std::set<int> d;
        for (const auto& [w, c] : terms_) d.insert(w.degree());
        return d;
    }
    /// Highest degree present, -1 for zero.
    int max_degree() const noexcept { return terms_.empty() ? -1 : terms_.rbegin()->first.degree(); }
    bool is_homogeneous(int n) const {
        for (const auto& [w, c] : terms_)
            if (w.degree() != n) return false;
        return true;
    }

    UForm component(int n) const {
        UForm r(alg_);
        for (const auto& [w, c] : terms_)
            if (w.degree() == n) r.terms_.emplace(w, c);
        return r;
    }

    UForm operator-() const {
        UForm r = *this;
        for (auto& [w, c] : r.terms_) c = -c;
        return r;
    }
    UForm& operator+=(const UForm& o) {
        adopt(o);
        for (const auto& [w, c] : o.terms_) add_raw(w, c);
        return *this;
    }
    UForm& operator-=(const UForm& o) {
        adopt(o);
        for (const auto& [w, c] : o.terms_) add_raw(w, -c);
        return *this;
    }
    friend UForm operator+(UForm a, const UForm& b) { return a += b; }
    friend UForm operator-(UForm a, const UForm& b) { return a -= b; }

    friend UForm operator*(const S& s, const UForm& f) {
        UForm r(f.alg_);
        if (s.is_zero()) return r;
        for (const auto& [w, c] : f.terms_) {
            S x = s * c;
            if (!x.is_zero()) r.terms_.emplace_hint(r.terms_.end(), w, std::move(x));
        }
        return r;
    }
    friend UForm operator*(const UForm& f, const S& s) { return s * f; }

    friend UForm operator*(const UForm& u, const UForm& v) {
        if (u.is_zero() || v.is_zero()) return UForm(u.has_algebra() ? u.alg_ : v.alg_);
        u.alg_.require_same(v.alg_, "form product");
        const Algebra& alg = u.alg_;
        const int cap = alg.degree_cap();
        std::map<Word, S> acc;
        for (const auto& [w1, c1] : u.terms_) {
            const auto& rp = detail::right_products(alg, w1);
            for (const auto& [w2, c2] : v.terms_) {
                const int deg = w1.degree() + w2.degree();
                if (deg > cap) throw CapExceeded(deg, cap);
                const auto& exp = rp[static_cast<std::size_t>(w2[0])];
                if (exp.empty()) continue;
                S c12 = c1 * c2;
                if (c12.is_zero()) continue;
                for (const auto& [x, c] : exp) {
                    Word y = x.concat_tail(w2);
                    auto [it, inserted] = acc.try_emplace(y, c12 * c);
                    if (!inserted) it->second += c12 * c;
                }
            }
        }
        UForm r(alg);
        for (auto& [w, c] : acc)
            if (!c.is_zero()) r.terms_.emplace_hint(r.terms_.end(), w, std::move(c));
        return r;
    }

    /// Universal differential: e_{i0} de... -> de_{i0} de...; scalars are constants.
    UForm differential() const {
        UForm r(alg_);
        for (const auto& [w, c] : terms_) {
            if (w[0] == 0) continue;
            if (w.degree() + 1 > alg_.degree_cap()) throw CapExceeded(w.degree() + 1, alg_.degree_cap());
            Word x{0};
            for (int i = 0; i < w.size(); ++i) x.push_back(w[i]);
            r.terms_.emplace(x, c);
        }
        return r;
    }

    /// Negates odd-degree components.
    UForm parity_twist() const {
        UForm r = *this;
        for (auto& [w, c] : r.terms_)
            if (w.degree() % 2 != 0) c = -c;
        return r;
    }

    template <class T, class F>
    UForm<T> map_coeffs(F&& f) const {
        UForm<T> r(alg_);
        for (const auto& [w, c] : terms_) r.add_term(w, f(c));
        return r;
    }

    /// Lift Rational coefficients into a polynomial scalar ring.
    template <class T>
    UForm<T> lift() const {
        return map_coeffs<T>([](const S& c) { return T(c); });
    }

    UForm with_algebra(const Algebra& a) const {
        UForm r = *this;
        r.alg_ = a;
        return r;
    }

    friend bool operator==(const UForm& a, const UForm& b) {
        if (a.is_zero() && b.is_zero()) return true;
        if (a.has_algebra() && b.has_algebra() && !(a.alg_ == b.alg_)) return false;
        return a.terms_ == b.terms_;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [w, c] : terms_) {
            if (!out.empty()) out += " + ";
            out += "(" + c.str() + ")";
            const auto& names = alg_.names();
            out += names[static_cast<std::size_t>(w[0])];
            for (int i = 1; i < w.size(); ++i) out += " d" + names[static_cast<std::size_t>(w[i])];
        }
        return out;
    }

private:
    void adopt(const UForm& o) {
        if (!o.has_algebra()) return;
        if (!has_algebra())
            alg_ = o.alg_;
        else if (!o.is_zero())
            alg_.require_same(o.alg_, "form sum");
    }
    void add_raw(const Word& w, const S& c) {
        auto [it, inserted] = terms_.try_emplace(w, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    void check_word(const Word& w) const {
        if (!has_algebra()) throw MismatchError("form term added without an algebra");
        const int m = alg_.dim();
        if (w.size() < 1) throw MismatchError("empty word");
        if (w[0] >= m) throw MismatchError("word slot 0 out of range: " + w.str());
        for (int i = 1; i < w.size(); ++i)
            if (w[i] < 1 || w[i] >= m) throw MismatchError("word d-slot out of range: " + w.str());
        if (w.degree() > alg_.degree_cap()) throw CapExceeded(w.degree(), alg_.degree_cap());
    }

    Algebra alg_;
    std::map<Word, S> terms_;
};

using Form = UForm<Rational>;
using Form1 = UForm<Poly1>;
using Form2 = UForm<Poly2>;

template <class S>
UForm<S> differential(const UForm<S>& f) {
    return f.differential();
}
template <class S>
UForm<S> multiply(const UForm<S>& u, const UForm<S>& v) {
    return u * v;
}

/// The form of a single d: d(e_i).
template <class S = Rational>
UForm<S> d_basis(const Algebra& a, int i) {
    return UForm<S>::basis(a, i).differential();
}

/// psi^u(e_{a0} de_{a1} ... de_{an}) = psi(e_{a0}) d psi(e_{a1}) ... d psi(e_{an}).
template <class S>
UForm<S> extend_hom(const AlgebraHom& psi, const UForm<S>& f) {
    UForm<S> out(psi.target());
    if (f.is_zero()) return out;
    psi.source().require_same(f.algebra(), "extend_hom");
    for (const auto& [w, c] : f.terms()) {
        // Expand slot by slot; d-slots drop the unit component of the image.
        std::vector<std::pair<Word, Rational>> partial;
        for (const auto& [l, x] : psi.image(w[0])) partial.emplace_back(Word{l}, x);
        for (int i = 1; i < w.size() && !partial.empty(); ++i) {
            std::vector<std::pair<Word, Rational>> next;
            for (const auto& [pw, px] : partial)
                for (const auto& [l, x] : psi.image(w[i])) {
                    if (l == 0) continue;
                    Word y = pw;
                    y.push_back(l);
                    next.emplace_back(y, px * x);
                }
            partial = std::move(next);
        }
        for (const auto& [y, x] : partial) out.add_term(y, c * x);
    }
    return out;
}

}  // namespace kchern
