#pragma once

// Slow reference implementations used only by the tests. They work on plain
// GMP rationals and dense vectors and share no code paths with the library's
// memoized word products or quotient bases.

#include <gmpxx.h>

#include <map>
#include <vector>

#include "kchern/kchern.hpp"

namespace oracle {

using Q = mpq_class;
using Slots = std::vector<int>;
using NForm = std::map<Slots, Q>;  // word slots -> coefficient

struct Table {
    int m = 0;
    std::vector<std::vector<std::vector<Q>>> mul;  // mul[i][j][l]

    explicit Table(const kchern::Algebra& alg) : m(alg.dim()) {
        auto t = alg.table();
        mul.resize(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                std::vector<Q> v;
                for (const auto& c : t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) v.push_back(c.to_mpq());
                mul[static_cast<std::size_t>(i)].push_back(v);
            }
    }
    const std::vector<Q>& prod(int i, int j) const { return mul[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
};

inline void add(NForm& f, const Slots& s, const Q& c) {
    if (c == 0) return;
    Q& x = f[s];
    x += c;
    if (x == 0) f.erase(s);
}

inline NForm from_form(const kchern::Form& f) {
    NForm out;
    for (const auto& [w, c] : f.terms()) add(out, w.slots(), c.to_mpq());
    return out;
}

/// (a0 da1 ... dan) * e_b via  w' dan b = w' d(an b) - (w' an) db.
inline NForm right_mult(const Table& t, const Slots& w, int b) {
    NForm out;
    if (w.size() == 1) {
        const auto& v = t.prod(w[0], b);
        for (int l = 0; l < t.m; ++l) add(out, {l}, v[static_cast<std::size_t>(l)]);
        return out;
    }
    Slots head(w.begin(), w.end() - 1);
    int an = w.back();
    const auto& v = t.prod(an, b);
    for (int l = 1; l < t.m; ++l) {  // d e_0 = 0
        Slots s = head;
        s.push_back(l);
        add(out, s, v[static_cast<std::size_t>(l)]);
    }
    if (b != 0) {
        for (const auto& [s, c] : right_mult(t, head, an)) {
            Slots s2 = s;
            s2.push_back(b);
            add(out, s2, -c);
        }
    }
    return out;
}

inline NForm mult(const Table& t, const NForm& x, const NForm& y) {
    NForm out;
    for (const auto& [u, a] : x)
        for (const auto& [v, b] : y)
            for (const auto& [s, c] : right_mult(t, u, v[0])) {
                Slots s2 = s;
                s2.insert(s2.end(), v.begin() + 1, v.end());
                add(out, s2, a * b * c);
            }
    return out;
}

inline NForm differential(const NForm& x) {
    NForm out;
    for (const auto& [s, c] : x) {
        if (s[0] == 0) continue;
        Slots s2{0};
        s2.insert(s2.end(), s.begin(), s.end());
        add(out, s2, c);
    }
    return out;
}

inline std::vector<Slots> words(int m, int n) {
    std::vector<Slots> out;
    if (m == 1 && n > 0) return out;
    Slots s(static_cast<std::size_t>(n + 1), 1);
    s[0] = 0;
    for (;;) {
        out.push_back(s);
        int k = n;
        while (k >= 0) {
            int lo = k == 0 ? 0 : 1;
            if (++s[static_cast<std::size_t>(k)] < m) break;
            s[static_cast<std::size_t>(k)] = lo;
            --k;
        }
        if (k < 0) break;
    }
    return out;
}

/// Dense index of a word of degree n in lexicographic order.
inline std::size_t index(int m, const Slots& s) {
    std::size_t i = static_cast<std::size_t>(s[0]);
    for (std::size_t k = 1; k < s.size(); ++k) i = i * static_cast<std::size_t>(m - 1) + static_cast<std::size_t>(s[k] - 1);
    return i;
}

inline std::vector<Q> dense(int m, int n, const NForm& f) {
    std::size_t dim = static_cast<std::size_t>(m);
    for (int k = 0; k < n; ++k) dim *= static_cast<std::size_t>(m - 1);
    std::vector<Q> v(dim);
    for (const auto& [s, c] : f) v[index(m, s)] += c;
    return v;
}

/// Incremental row echelon over Q.
class Echelon {
public:
    bool insert(std::vector<Q> v) {
        for (const auto& [p, r] : rows_) {
            if (v[p] == 0) continue;
            Q f = v[p];
            for (std::size_t j = 0; j < v.size(); ++j) v[j] -= f * r[j];
        }
        for (std::size_t p = 0; p < v.size(); ++p)
            if (v[p] != 0) {
                Q inv = 1 / v[p];
                for (auto& x : v) x *= inv;
                for (auto& [q, r] : rows_)
                    if (r[p] != 0) {
                        Q f = r[p];
                        for (std::size_t j = 0; j < r.size(); ++j) r[j] -= f * v[j];
                    }
                rows_.emplace_back(p, std::move(v));
                return true;
            }
        return false;
    }
    bool contains(const std::vector<Q>& v) const {
        Echelon copy = *this;
        return !copy.insert(v);
    }
    std::size_t rank() const { return rows_.size(); }

private:
    std::vector<std::pair<std::size_t, std::vector<Q>>> rows_;
};

/// All graded commutators of basis words of total degree n.
inline Echelon commutators(const Table& t, int n) {
    Echelon e;
    for (int p = 0; p <= n; ++p)
        for (const Slots& u : words(t.m, p))
            for (const Slots& v : words(t.m, n - p)) {
                NForm x{{u, 1}}, y{{v, 1}};
                NForm c = mult(t, x, y);
                Q sign = (p * (n - p)) % 2 ? -1 : 1;
                for (const auto& [s, a] : mult(t, y, x)) add(c, s, -sign * a);
                e.insert(dense(t.m, n, c));
            }
    return e;
}

inline std::size_t omega_dim(int m, int n) {
    std::size_t d = static_cast<std::size_t>(m);
    for (int k = 0; k < n; ++k) d *= static_cast<std::size_t>(m - 1);
    return d;
}

inline std::size_t ab_dim(const Table& t, int n) { return omega_dim(t.m, n) - commutators(t, n).rank(); }

/// Rank of d: Omega_ab,n -> Omega_ab,n+1.
inline std::size_t dbar_rank(const Table& t, int n) {
    if (n < 0) return 0;
    Echelon c = commutators(t, n + 1);
    std::size_t base = c.rank();
    for (const Slots& w : words(t.m, n)) c.insert(dense(t.m, n + 1, differential(NForm{{w, 1}})));
    return c.rank() - base;
}

inline std::size_t homology_dim(const Table& t, int n) { return ab_dim(t, n) - dbar_rank(t, n) - dbar_rank(t, n - 1); }

/// Is f (degree n) exact in the abelianization, i.e. in d(Omega_{n-1}) + [Omega, Omega]?
inline bool exact_in_ab(const Table& t, int n, const NForm& f) {
    Echelon c = commutators(t, n);
    if (n > 0)
        for (const Slots& w : words(t.m, n - 1)) c.insert(dense(t.m, n, differential(NForm{{w, 1}})));
    return c.contains(dense(t.m, n, f));
}

inline bool closed_in_ab(const Table& t, int n, const NForm& f) {
    return commutators(t, n + 1).contains(dense(t.m, n + 1, differential(f)));
}

}  // namespace oracle
