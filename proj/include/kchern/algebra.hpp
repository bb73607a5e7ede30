#pragma once

// Finite-dimensional unital associative Q-algebras given by structure
// constants, with the unit pinned to basis slot 0.

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kchern/error.hpp"
#include "kchern/linalg.hpp"
#include "kchern/poly.hpp"
#include "kchern/rational.hpp"
#include "kchern/word.hpp"

namespace kchern {

/// Sparse product e_i e_j as (basis index, coefficient) pairs.
using BasisExpansion = std::vector<std::pair<int, Rational>>;
/// Sparse expansion over words.
using WordExpansion = std::vector<std::pair<Word, Rational>>;

struct AlgebraCheck {
    bool unit_ok = true;
    bool assoc_ok = true;
    /// Basis index violating unitality.
    std::optional<int> unit_failure;
    /// First (i, j, k) with (e_i e_j) e_k != e_i (e_j e_k).
    std::optional<std::array<int, 3>> assoc_failure;
    std::string hint;

    bool ok() const noexcept { return unit_ok && assoc_ok; }
    std::string message() const {
        if (ok()) return "ok";
        std::string m;
        if (!unit_ok) m += "basis element 0 is not a two-sided unit (fails on e_" + std::to_string(*unit_failure) + ")";
        if (!assoc_ok) {
            if (!m.empty()) m += "; ";
            const auto& t = *assoc_failure;
            m += "associativity fails on triple (" + std::to_string(t[0]) + ", " + std::to_string(t[1]) + ", " +
                 std::to_string(t[2]) + ")";
        }
        if (!hint.empty()) m += "; " + hint;
        return m;
    }
};

namespace detail {

struct AbelianData;  // defined in abelian.hpp

struct AlgebraImpl {
    int dim = 0;
    std::vector<std::string> names;
    std::vector<BasisExpansion> mul;  // index i * dim + j

    const BasisExpansion& product(int i, int j) const { return mul[static_cast<std::size_t>(i * dim + j)]; }

    // Memo for word * e_b, keyed by (word, b).
    mutable std::mutex right_mu;
    mutable std::unordered_map<Word, std::vector<WordExpansion>, WordHash> right_cache;

    mutable std::mutex ab_mu;
    mutable std::map<int, std::shared_ptr<const AbelianData>> ab_cache;
};

}  // namespace detail

class Algebra {
public:
    static constexpr int kDefaultDegreeCap = 8;

    Algebra() = default;

    /// Builds and validates. mul[i][j] is the coefficient vector of e_i e_j.
    Algebra(const std::vector<std::vector<Vec>>& mul, std::vector<std::string> names = {},
            int degree_cap = kDefaultDegreeCap) {
        impl_ = build(mul, std::move(names));
        set_degree_cap(degree_cap);
        AlgebraCheck c = check();
        if (!c.ok()) throw ValidationError(c.message());
    }

    /// Unit and associativity verdicts for a raw table without constructing an algebra.
    /// Shape errors still throw ValidationError.
    static AlgebraCheck inspect(const std::vector<std::vector<Vec>>& mul) { return check_table(*build(mul, {})); }

private:
    static std::shared_ptr<detail::AlgebraImpl> build(const std::vector<std::vector<Vec>>& mul,
                                                      std::vector<std::string> names) {
        const int m = static_cast<int>(mul.size());
        if (m < 1) throw ValidationError("algebra must have dimension >= 1");
        if (m > 255) throw ValidationError("algebra dimension above 255 is not supported");
        auto impl = std::make_shared<detail::AlgebraImpl>();
        impl->dim = m;
        impl->mul.resize(static_cast<std::size_t>(m * m));
        for (int i = 0; i < m; ++i) {
            if (static_cast<int>(mul[static_cast<std::size_t>(i)].size()) != m)
                throw ValidationError("multiplication table row " + std::to_string(i) + " has wrong length");
            for (int j = 0; j < m; ++j) {
                const Vec& v = mul[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                if (static_cast<int>(v.size()) != m)
                    throw ValidationError("product e_" + std::to_string(i) + " e_" + std::to_string(j) +
                                          " has wrong length");
                BasisExpansion& e = impl->mul[static_cast<std::size_t>(i * m + j)];
                for (int l = 0; l < m; ++l)
                    if (!v[static_cast<std::size_t>(l)].is_zero()) e.emplace_back(l, v[static_cast<std::size_t>(l)]);
            }
        }
        if (names.empty())
            for (int i = 0; i < m; ++i) names.push_back(i == 0 ? "1" : "e" + std::to_string(i));
        if (static_cast<int>(names.size()) != m) throw ValidationError("names list has wrong length");
        impl->names = std::move(names);
        return impl;
    }

public:

    bool valid() const noexcept { return impl_ != nullptr; }
    int dim() const noexcept { return impl_->dim; }
    const std::vector<std::string>& names() const noexcept { return impl_->names; }
    int degree_cap() const noexcept { return cap_; }

    void set_degree_cap(int cap) {
        if (cap < 1 || cap > Word::kMaxDegree)
            throw ValidationError("degree cap must lie in [1, " + std::to_string(Word::kMaxDegree) + "]");
        cap_ = cap;
    }
    /// Same algebra (and shared caches) with another degree cap.
    Algebra with_degree_cap(int cap) const {
        Algebra a = *this;
        a.set_degree_cap(cap);
        return a;
    }

    const BasisExpansion& product(int i, int j) const { return impl_->product(i, j); }

    /// Dense coefficient vector of e_i e_j.
    Vec product_vec(int i, int j) const {
        Vec v(static_cast<std::size_t>(dim()));
        for (const auto& [l, c] : product(i, j)) v[static_cast<std::size_t>(l)] = c;
        return v;
    }

    std::vector<std::vector<Vec>> table() const {
        std::vector<std::vector<Vec>> t(static_cast<std::size_t>(dim()));
        for (int i = 0; i < dim(); ++i)
            for (int j = 0; j < dim(); ++j) t[static_cast<std::size_t>(i)].push_back(product_vec(i, j));
        return t;
    }

    /// Exhaustive unit and associativity check.
    AlgebraCheck check() const { return check_table(*impl_); }

    /// Structural equality of presentations (degree caps ignored).
    friend bool operator==(const Algebra& a, const Algebra& b) {
        if (a.impl_ == b.impl_) return true;
        if (!a.impl_ || !b.impl_) return false;
        return a.impl_->dim == b.impl_->dim && a.impl_->mul == b.impl_->mul;
    }

    /// Throws MismatchError unless both describe the same algebra.
    void require_same(const Algebra& o, const char* what) const {
        if (!(*this == o)) throw MismatchError(std::string(what) + ": operands live over different algebras");
    }

    const detail::AlgebraImpl& impl() const { return *impl_; }

private:
    static AlgebraCheck check_table(const detail::AlgebraImpl& a) {
        AlgebraCheck r;
        const int m = a.dim;
        auto is_basis = [](const BasisExpansion& e, int i) {
            return e.size() == 1 && e[0].first == i && e[0].second.is_one();
        };
        for (int i = 0; i < m && r.unit_ok; ++i)
            if (!is_basis(a.product(0, i), i) || !is_basis(a.product(i, 0), i)) {
                r.unit_ok = false;
                r.unit_failure = i;
            }
        if (!r.unit_ok) r.hint = unit_hint(a);
        for (int i = 0; i < m && r.assoc_ok; ++i)
            for (int j = 0; j < m && r.assoc_ok; ++j)
                for (int k = 0; k < m && r.assoc_ok; ++k) {
                    Vec lhs(static_cast<std::size_t>(m)), rhs(static_cast<std::size_t>(m));
                    for (const auto& [l, c] : a.product(i, j))
                        for (const auto& [q, x] : a.product(l, k)) lhs[static_cast<std::size_t>(q)] += c * x;
                    for (const auto& [l, c] : a.product(j, k))
                        for (const auto& [q, x] : a.product(i, l)) rhs[static_cast<std::size_t>(q)] += c * x;
                    if (lhs != rhs) {
                        r.assoc_ok = false;
                        r.assoc_failure = std::array<int, 3>{i, j, k};
                    }
                }
        return r;
    }

    // Looks for a basis element, or failing that any element, acting as a
    // two-sided unit.
    static std::string unit_hint(const detail::AlgebraImpl& a) {
        const int m = a.dim;
        for (int u = 1; u < m; ++u) {
            bool ok = true;
            for (int i = 0; i < m && ok; ++i) {
                const auto& l = a.product(u, i);
                const auto& r = a.product(i, u);
                ok = l.size() == 1 && l[0].first == i && l[0].second.is_one() && r.size() == 1 && r[0].first == i &&
                     r[0].second.is_one();
            }
            if (ok)
                return "basis element " + std::to_string(u) + " is the unit; swap it into slot 0";
        }
        // Solve sum_u x_u e_u e_i = e_i and e_i e_u x_u = e_i for all i.
        RatMatrix sys(static_cast<std::size_t>(2 * m * m), static_cast<std::size_t>(m));
        Vec rhs(static_cast<std::size_t>(2 * m * m));
        for (int i = 0; i < m; ++i) {
            for (int u = 0; u < m; ++u) {
                for (const auto& [l, c] : a.product(u, i))
                    sys.set(static_cast<std::size_t>(i * m + l), static_cast<std::size_t>(u), c);
                for (const auto& [l, c] : a.product(i, u))
                    sys.set(static_cast<std::size_t>(m * m + i * m + l), static_cast<std::size_t>(u), c);
            }
            rhs[static_cast<std::size_t>(i * m + i)] = Rational(1);
            rhs[static_cast<std::size_t>(m * m + i * m + i)] = Rational(1);
        }
        auto x = solve_membership(sys, rhs);
        if (!x) return "the table has no two-sided unit";
        return "the unit is " + to_string(*x) + " in the given basis; rebase so it occupies slot 0";
    }

    std::shared_ptr<detail::AlgebraImpl> impl_;
    int cap_ = kDefaultDegreeCap;
};

/// Element of an algebra with coefficients in S (Rational, Poly1 or Poly2).
template <class S>
class AlgElementT {
public:
    AlgElementT() = default;
    explicit AlgElementT(Algebra a) : alg_(std::move(a)), c_(static_cast<std::size_t>(alg_.dim())) {}
    AlgElementT(Algebra a, std::vector<S> coeffs) : alg_(std::move(a)), c_(std::move(coeffs)) {
        if (static_cast<int>(c_.size()) != alg_.dim()) throw MismatchError("element length does not match algebra");
    }

    static AlgElementT basis(const Algebra& a, int i, S c = S(1)) {
        AlgElementT e(a);
        e.c_.at(static_cast<std::size_t>(i)) = std::move(c);
        return e;
    }
    static AlgElementT one(const Algebra& a) { return basis(a, 0); }

    const Algebra& algebra() const noexcept { return alg_; }
    const std::vector<S>& coeffs() const noexcept { return c_; }
    const S& operator[](int i) const { return c_.at(static_cast<std::size_t>(i)); }
    bool is_zero() const {
        for (const auto& x : c_)
            if (!x.is_zero()) return false;
        return true;
    }

    friend AlgElementT operator+(const AlgElementT& a, const AlgElementT& b) {
        a.alg_.require_same(b.alg_, "element sum");
        AlgElementT r = a;
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
        return r;
    }
    friend AlgElementT operator-(const AlgElementT& a, const AlgElementT& b) {
        a.alg_.require_same(b.alg_, "element difference");
        AlgElementT r = a;
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] -= b.c_[i];
        return r;
    }
    friend AlgElementT operator*(const AlgElementT& a, const AlgElementT& b) {
        a.alg_.require_same(b.alg_, "element product");
        AlgElementT r(a.alg_);
        const int m = a.alg_.dim();
        for (int i = 0; i < m; ++i) {
            if (a.c_[static_cast<std::size_t>(i)].is_zero()) continue;
            for (int j = 0; j < m; ++j) {
                if (b.c_[static_cast<std::size_t>(j)].is_zero()) continue;
                S ab = a.c_[static_cast<std::size_t>(i)] * b.c_[static_cast<std::size_t>(j)];
                for (const auto& [l, c] : a.alg_.product(i, j)) r.c_[static_cast<std::size_t>(l)] += ab * c;
            }
        }
        return r;
    }
    friend AlgElementT operator*(const S& s, const AlgElementT& a) {
        AlgElementT r = a;
        for (auto& x : r.c_) x = s * x;
        return r;
    }
    friend bool operator==(const AlgElementT& a, const AlgElementT& b) { return a.alg_ == b.alg_ && a.c_ == b.c_; }

    std::string str() const {
        std::string out;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            if (!out.empty()) out += " + ";
            out += "(" + c_[i].str() + ")*" + alg_.names()[i];
        }
        return out.empty() ? "0" : out;
    }

private:
    Algebra alg_;
    std::vector<S> c_;
};

using AlgElement = AlgElementT<Rational>;

inline AlgElement mul(const AlgElement& a, const AlgElement& b) { return a * b; }

/// Unital algebra map psi: source -> target, stored as a dim(target) x dim(source) matrix.
class AlgebraHom {
public:
    AlgebraHom() = default;
    AlgebraHom(Algebra source, Algebra target, RatMatrix matrix)
        : src_(std::move(source)), tgt_(std::move(target)), mat_(std::move(matrix)) {
        if (mat_.rows() != static_cast<std::size_t>(tgt_.dim()) || mat_.cols() != static_cast<std::size_t>(src_.dim()))
            throw ValidationError("hom matrix has wrong shape");
        images_.resize(static_cast<std::size_t>(src_.dim()));
        auto cols = mat_.transpose();
        for (int i = 0; i < src_.dim(); ++i)
            for (const auto& [l, c] : cols.row(static_cast<std::size_t>(i)))
                images_[static_cast<std::size_t>(i)].emplace_back(static_cast<int>(l), c);
        validate();
    }

    /// Hom given by the images of the source basis.
    static AlgebraHom from_images(const Algebra& source, const Algebra& target, const std::vector<Vec>& images) {
        return AlgebraHom(source, target, RatMatrix::from_columns(images, static_cast<std::size_t>(target.dim())));
    }
    static AlgebraHom identity(const Algebra& a) {
        return AlgebraHom(a, a, RatMatrix::identity(static_cast<std::size_t>(a.dim())));
    }

    const Algebra& source() const noexcept { return src_; }
    const Algebra& target() const noexcept { return tgt_; }
    const RatMatrix& matrix() const noexcept { return mat_; }
    /// psi(e_i) in the target basis.
    const BasisExpansion& image(int i) const { return images_.at(static_cast<std::size_t>(i)); }

    template <class S>
    AlgElementT<S> operator()(const AlgElementT<S>& a) const {
        src_.require_same(a.algebra(), "apply_hom");
        AlgElementT<S> r(tgt_);
        std::vector<S> c(static_cast<std::size_t>(tgt_.dim()));
        for (int i = 0; i < src_.dim(); ++i) {
            if (a[i].is_zero()) continue;
            for (const auto& [l, x] : image(i)) c[static_cast<std::size_t>(l)] += a[i] * x;
        }
        return AlgElementT<S>(tgt_, std::move(c));
    }

    AlgebraHom compose_after(const AlgebraHom& first) const {
        first.tgt_.require_same(src_, "hom composition");
        return AlgebraHom(first.src_, tgt_, mat_ * first.mat_);
    }

private:
    void validate() const {
        Vec one(static_cast<std::size_t>(tgt_.dim()));
        one[0] = Rational(1);
        Vec img0(static_cast<std::size_t>(tgt_.dim()));
        for (const auto& [l, c] : image(0)) img0[static_cast<std::size_t>(l)] = c;
        if (img0 != one) throw ValidationError("algebra hom does not preserve the unit");
        const int m = src_.dim();
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                AlgElement lhs = (*this)(AlgElement(src_, src_.product_vec(i, j)));
                AlgElement rhs = (*this)(AlgElement::basis(src_, i)) * (*this)(AlgElement::basis(src_, j));
                if (!(lhs == rhs))
                    throw ValidationError("algebra hom is not multiplicative on (e_" + std::to_string(i) + ", e_" +
                                          std::to_string(j) + ")");
            }
    }

    Algebra src_, tgt_;
    RatMatrix mat_;
    std::vector<BasisExpansion> images_;
};

inline AlgElement apply_hom(const AlgebraHom& psi, const AlgElement& a) { return psi(a); }

// ---------------------------------------------------------------------------
// Constructors

/// Q[x]/(x^k), basis 1, x, ..., x^{k-1}.
inline Algebra make_truncated_poly(int k) {
    if (k < 1) throw ValidationError("truncated polynomial algebra needs k >= 1");
    std::vector<std::vector<Vec>> mul(static_cast<std::size_t>(k), std::vector<Vec>(static_cast<std::size_t>(k), Vec(static_cast<std::size_t>(k))));
    std::vector<std::string> names;
    for (int i = 0; i < k; ++i) {
        names.push_back(i == 0 ? "1" : i == 1 ? "x" : "x^" + std::to_string(i));
        for (int j = 0; j < k; ++j)
            if (i + j < k) mul[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][static_cast<std::size_t>(i + j)] = Rational(1);
    }
    return Algebra(mul, names);
}

/// M_k(Q) with basis 1 followed by every matrix unit E_ij except E_kk.
inline Algebra make_matrix_algebra(int k) {
    if (k < 1) throw ValidationError("matrix algebra needs k >= 1");
    const int m = k * k;
    // Basis in matrix coordinates (row-major k x k).
    std::vector<Vec> basis;
    std::vector<std::string> names{"1"};
    Vec id(static_cast<std::size_t>(m));
    for (int i = 0; i < k; ++i) id[static_cast<std::size_t>(i * k + i)] = Rational(1);
    basis.push_back(id);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            if (i == k - 1 && j == k - 1) continue;
            Vec e(static_cast<std::size_t>(m));
            e[static_cast<std::size_t>(i * k + j)] = Rational(1);
            basis.push_back(e);
            names.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
        }
    // Coordinates of a matrix in this basis: the E_kk entry fixes the unit
    // coefficient, the rest follow.
    auto coords = [&](const Vec& a) {
        Vec c(static_cast<std::size_t>(m));
        Rational u = a[static_cast<std::size_t>(m - 1)];
        c[0] = u;
        int slot = 1;
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                if (i == k - 1 && j == k - 1) continue;
                Rational v = a[static_cast<std::size_t>(i * k + j)];
                if (i == j) v -= u;
                c[static_cast<std::size_t>(slot++)] = v;
            }
        return c;
    };
    auto matmul = [&](const Vec& a, const Vec& b) {
        Vec c(static_cast<std::size_t>(m));
        for (int i = 0; i < k; ++i)
            for (int l = 0; l < k; ++l) {
                const Rational& x = a[static_cast<std::size_t>(i * k + l)];
                if (x.is_zero()) continue;
                for (int j = 0; j < k; ++j) c[static_cast<std::size_t>(i * k + j)] += x * b[static_cast<std::size_t>(l * k + j)];
            }
        return c;
    };
    std::vector<std::vector<Vec>> mul(static_cast<std::size_t>(m));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) mul[static_cast<std::size_t>(a)].push_back(coords(matmul(basis[static_cast<std::size_t>(a)], basis[static_cast<std::size_t>(b)])));
    return Algebra(mul, names);
}

/// A x B with basis (1,1), (e^A_i, 0) for every i, (0, e^B_j) for j >= 1.
inline Algebra make_product(const Algebra& a, const Algebra& b) {
    const int ma = a.dim(), mb = b.dim();
    const int m = ma + mb;
    // Basis vectors in A (+) B coordinates.
    std::vector<Vec> basis;
    std::vector<std::string> names{"1"};
    Vec unit(static_cast<std::size_t>(m));
    unit[0] = Rational(1);
    unit[static_cast<std::size_t>(ma)] = Rational(1);
    basis.push_back(unit);
    for (int i = 0; i < ma; ++i) {
        Vec e(static_cast<std::size_t>(m));
        e[static_cast<std::size_t>(i)] = Rational(1);
        basis.push_back(e);
        names.push_back("(" + a.names()[static_cast<std::size_t>(i)] + ",0)");
    }
    for (int j = 1; j < mb; ++j) {
        Vec e(static_cast<std::size_t>(m));
        e[static_cast<std::size_t>(ma + j)] = Rational(1);
        basis.push_back(e);
        names.push_back("(0," + b.names()[static_cast<std::size_t>(j)] + ")");
    }
    if (ma == 1 && mb == 1) names[1] = "e";
    auto coords = [&](const Vec& x) {
        Vec c(static_cast<std::size_t>(m));
        const Rational& y0 = x[static_cast<std::size_t>(ma)];
        c[0] = y0;
        for (int i = 0; i < ma; ++i) c[static_cast<std::size_t>(1 + i)] = x[static_cast<std::size_t>(i)] - (i == 0 ? y0 : Rational());
        for (int j = 1; j < mb; ++j) c[static_cast<std::size_t>(ma + j)] = x[static_cast<std::size_t>(ma + j)];
        return c;
    };
    auto prod = [&](const Vec& x, const Vec& y) {
        Vec z(static_cast<std::size_t>(m));
        for (int i = 0; i < ma; ++i)
            for (int j = 0; j < ma; ++j) {
                Rational c = x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)];
                if (c.is_zero()) continue;
                for (const auto& [l, v] : a.product(i, j)) z[static_cast<std::size_t>(l)] += c * v;
            }
        for (int i = 0; i < mb; ++i)
            for (int j = 0; j < mb; ++j) {
                Rational c = x[static_cast<std::size_t>(ma + i)] * y[static_cast<std::size_t>(ma + j)];
                if (c.is_zero()) continue;
                for (const auto& [l, v] : b.product(i, j)) z[static_cast<std::size_t>(ma + l)] += c * v;
            }
        return z;
    };
    std::vector<std::vector<Vec>> mul(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) mul[static_cast<std::size_t>(i)].push_back(coords(prod(basis[static_cast<std::size_t>(i)], basis[static_cast<std::size_t>(j)])));
    return Algebra(mul, names);
}

/// Q[G] from a Cayley table whose row/column 0 is the identity.
inline Algebra make_group_algebra(const std::vector<std::vector<int>>& cayley) {
    const int n = static_cast<int>(cayley.size());
    if (n < 1) throw ValidationError("empty group table");
    for (int i = 0; i < n; ++i) {
        const auto& row = cayley[static_cast<std::size_t>(i)];
        if (static_cast<int>(row.size()) != n) throw ValidationError("group table is not square");
        std::vector<bool> seen(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            int v = row[static_cast<std::size_t>(j)];
            if (v < 0 || v >= n) throw ValidationError("group table entry out of range");
            if (seen[static_cast<std::size_t>(v)]) throw ValidationError("group table row " + std::to_string(i) + " is not a permutation");
            seen[static_cast<std::size_t>(v)] = true;
        }
    }
    for (int i = 0; i < n; ++i)
        if (cayley[0][static_cast<std::size_t>(i)] != i || cayley[static_cast<std::size_t>(i)][0] != i)
            throw ValidationError("element 0 is not the group identity");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                int l = cayley[static_cast<std::size_t>(cayley[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])][static_cast<std::size_t>(k)];
                int r = cayley[static_cast<std::size_t>(i)][static_cast<std::size_t>(cayley[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)])];
                if (l != r)
                    throw ValidationError("group table is not associative on (" + std::to_string(i) + ", " + std::to_string(j) + ", " + std::to_string(k) + ")");
            }
    std::vector<std::vector<Vec>> mul(static_cast<std::size_t>(n));
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) {
        names.push_back(i == 0 ? "1" : "g" + std::to_string(i));
        for (int j = 0; j < n; ++j) {
            Vec v(static_cast<std::size_t>(n));
            v[static_cast<std::size_t>(cayley[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])] = Rational(1);
            mul[static_cast<std::size_t>(i)].push_back(v);
        }
    }
    if (n == 2) names[1] = "g";
    return Algebra(mul, names);
}

/// Cyclic group table C_n.
inline std::vector<std::vector<int>> cyclic_group_table(int n) {
    std::vector<std::vector<int>> t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (i + j) % n;
    return t;
}

}  // namespace kchern
