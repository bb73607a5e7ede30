#pragma once

// Polynomials with rational coefficients in one variable t (Poly1) and in two
// commuting variables s, t (Poly2). These are the scalar rings of the
// interval and square form complexes.

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kchern/rational.hpp"

namespace kchern {

class Poly1 {
public:
    Poly1() = default;
    Poly1(const Rational& c) {  // NOLINT(google-explicit-constructor)
        if (!c.is_zero()) coeffs_.push_back(c);
    }
    Poly1(int c) : Poly1(Rational(c)) {}  // NOLINT(google-explicit-constructor)
    explicit Poly1(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { strip(); }

    static Poly1 monomial(int k, const Rational& c = Rational(1)) {
        std::vector<Rational> v(static_cast<std::size_t>(k) + 1);
        v[static_cast<std::size_t>(k)] = c;
        return Poly1(std::move(v));
    }
    /// The polynomial t.
    static Poly1 t() { return monomial(1); }

    bool is_zero() const noexcept { return coeffs_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
    Rational coeff(int k) const {
        return k >= 0 && k < static_cast<int>(coeffs_.size()) ? coeffs_[static_cast<std::size_t>(k)] : Rational();
    }

    Rational eval(const Rational& x) const {
        Rational acc;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Poly1 derivative() const {
        std::vector<Rational> v;
        for (std::size_t k = 1; k < coeffs_.size(); ++k) v.push_back(coeffs_[k] * Rational(static_cast<long long>(k)));
        return Poly1(std::move(v));
    }

    /// Definite integral over [0, 1].
    Rational integrate01() const {
        Rational acc;
        for (std::size_t k = 0; k < coeffs_.size(); ++k)
            if (!coeffs_[k].is_zero()) acc += coeffs_[k] / Rational(static_cast<long long>(k + 1));
        return acc;
    }

    /// q(t) -> q(1 - t).
    Poly1 reversed() const {
        // Horner in (1 - t).
        Poly1 acc;
        Poly1 one_minus_t(std::vector<Rational>{Rational(1), Rational(-1)});
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * one_minus_t + Poly1(*it);
        return acc;
    }

    Poly1 operator-() const {
        Poly1 r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }
    Poly1& operator+=(const Poly1& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
        strip();
        return *this;
    }
    Poly1& operator-=(const Poly1& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
        strip();
        return *this;
    }
    friend Poly1 operator+(Poly1 a, const Poly1& b) { return a += b; }
    friend Poly1 operator-(Poly1 a, const Poly1& b) { return a -= b; }
    friend Poly1 operator*(const Poly1& a, const Poly1& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> v(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return Poly1(std::move(v));
    }
    Poly1& operator*=(const Poly1& o) { return *this = *this * o; }
    friend Poly1 operator*(const Poly1& a, const Rational& c) {
        if (c.is_zero()) return {};
        Poly1 r = a;
        for (auto& x : r.coeffs_) x *= c;
        return r;
    }
    friend Poly1 operator*(const Rational& c, const Poly1& a) { return a * c; }

    friend bool operator==(const Poly1&, const Poly1&) = default;

    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            if (coeffs_[k].is_zero()) continue;
            if (!out.empty()) out += " + ";
            out += coeffs_[k].str();
            if (k > 0) out += "*t^" + std::to_string(k);
        }
        return out;
    }

private:
    void strip() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }

    std::vector<Rational> coeffs_;
};

/// Polynomial in (s, t); keys are (deg_s, deg_t).
class Poly2 {
public:
    using Key = std::pair<int, int>;

    Poly2() = default;
    Poly2(const Rational& c) {  // NOLINT(google-explicit-constructor)
        if (!c.is_zero()) terms_.emplace(Key{0, 0}, c);
    }
    Poly2(int c) : Poly2(Rational(c)) {}  // NOLINT(google-explicit-constructor)

    static Poly2 monomial(int ds, int dt, const Rational& c = Rational(1)) {
        Poly2 p;
        if (!c.is_zero()) p.terms_.emplace(Key{ds, dt}, c);
        return p;
    }
    static Poly2 s() { return monomial(1, 0); }
    static Poly2 t() { return monomial(0, 1); }
    static Poly2 in_s(const Poly1& q) {
        Poly2 p;
        for (int k = 0; k <= q.degree(); ++k)
            if (!q.coeff(k).is_zero()) p.terms_.emplace(Key{k, 0}, q.coeff(k));
        return p;
    }
    static Poly2 in_t(const Poly1& q) {
        Poly2 p;
        for (int k = 0; k <= q.degree(); ++k)
            if (!q.coeff(k).is_zero()) p.terms_.emplace(Key{0, k}, q.coeff(k));
        return p;
    }

    bool is_zero() const noexcept { return terms_.empty(); }
    const std::map<Key, Rational>& terms() const noexcept { return terms_; }
    Rational coeff(int ds, int dt) const {
        auto it = terms_.find(Key{ds, dt});
        return it == terms_.end() ? Rational() : it->second;
    }

    Poly2 d_s() const {
        Poly2 r;
        for (const auto& [k, c] : terms_)
            if (k.first > 0) r.terms_.emplace(Key{k.first - 1, k.second}, c * Rational(k.first));
        return r;
    }
    Poly2 d_t() const {
        Poly2 r;
        for (const auto& [k, c] : terms_)
            if (k.second > 0) r.terms_.emplace(Key{k.first, k.second - 1}, c * Rational(k.second));
        return r;
    }

    /// Integrate s over [0, 1]; the result is a polynomial in t.
    Poly1 integrate_s() const {
        Poly1 r;
        for (const auto& [k, c] : terms_) r += Poly1::monomial(k.second, c / Rational(k.first + 1));
        return r;
    }
    /// Integrate t over [0, 1]; the result is a polynomial in s.
    Poly1 integrate_t() const {
        Poly1 r;
        for (const auto& [k, c] : terms_) r += Poly1::monomial(k.first, c / Rational(k.second + 1));
        return r;
    }
    /// Substitute s = x; the result is a polynomial in t.
    Poly1 eval_s(const Rational& x) const {
        Poly1 r;
        for (const auto& [k, c] : terms_) r += Poly1::monomial(k.second, c * pow(x, k.first));
        return r;
    }
    /// Substitute t = x; the result is a polynomial in s.
    Poly1 eval_t(const Rational& x) const {
        Poly1 r;
        for (const auto& [k, c] : terms_) r += Poly1::monomial(k.first, c * pow(x, k.second));
        return r;
    }

    Poly2 operator-() const {
        Poly2 r = *this;
        for (auto& [k, c] : r.terms_) c = -c;
        return r;
    }
    Poly2& operator+=(const Poly2& o) {
        for (const auto& [k, c] : o.terms_) add(k, c);
        return *this;
    }
    Poly2& operator-=(const Poly2& o) {
        for (const auto& [k, c] : o.terms_) add(k, -c);
        return *this;
    }
    friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }
    friend Poly2 operator-(Poly2 a, const Poly2& b) { return a -= b; }
    friend Poly2 operator*(const Poly2& a, const Poly2& b) {
        Poly2 r;
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_) r.add(Key{ka.first + kb.first, ka.second + kb.second}, ca * cb);
        return r;
    }
    Poly2& operator*=(const Poly2& o) { return *this = *this * o; }
    friend Poly2 operator*(const Poly2& a, const Rational& c) {
        if (c.is_zero()) return {};
        Poly2 r = a;
        for (auto& [k, x] : r.terms_) x *= c;
        return r;
    }
    friend Poly2 operator*(const Rational& c, const Poly2& a) { return a * c; }

    friend bool operator==(const Poly2&, const Poly2&) = default;

    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        for (const auto& [k, c] : terms_) {
            if (!out.empty()) out += " + ";
            out += c.str();
            if (k.first > 0) out += "*s^" + std::to_string(k.first);
            if (k.second > 0) out += "*t^" + std::to_string(k.second);
        }
        return out;
    }

private:
    static Rational pow(const Rational& x, int k) {
        Rational r(1);
        for (int i = 0; i < k; ++i) r *= x;
        return r;
    }

    void add(const Key& k, const Rational& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    std::map<Key, Rational> terms_;
};

}  // namespace kchern
