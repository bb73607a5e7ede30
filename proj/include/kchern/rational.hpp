#pragma once

// Exact rational numbers.
//
// Values that fit a reduced int64 numerator/denominator pair are stored
// inline; everything else falls back to a shared, immutable GMP rational.
// The representation is canonical: a value is stored in the GMP form iff it
// does not fit the inline form, so equality and hashing can compare
// representations directly.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <ostream>
#include <string>
#include <string_view>

#include "kchern/error.hpp"

namespace kchern {

class Rational {
public:
    Rational() noexcept = default;

    template <class Int>
        requires std::is_integral_v<Int>
    Rational(Int v) {  // NOLINT(google-explicit-constructor)
        if constexpr (std::is_signed_v<Int>) {
            if (static_cast<long long>(v) == kMin) {
                set_big(mpq_class(mpz_class(static_cast<long>(v))));
                return;
            }
            num_ = static_cast<std::int64_t>(v);
        } else {
            if (static_cast<unsigned long long>(v) >
                static_cast<unsigned long long>(kMax)) {
                set_big(mpq_class(mpz_class(static_cast<unsigned long>(v))));
                return;
            }
            num_ = static_cast<std::int64_t>(v);
        }
    }

    Rational(long long num, long long den) {
        if (den == 0) throw Error("rational with zero denominator");
        *this = from_i128(num, den);
    }

    explicit Rational(const mpq_class& q) { assign_mpq(q); }

    static Rational parse(std::string_view text);

    bool is_zero() const noexcept { return !big_ && num_ == 0; }
    bool is_one() const noexcept { return !big_ && num_ == 1 && den_ == 1; }
    bool is_integer() const noexcept {
        return big_ ? mpz_cmp_ui(big_->get_den_mpz_t(), 1) == 0 : den_ == 1;
    }
    int sign() const noexcept {
        if (big_) return sgn(*big_);
        return (num_ > 0) - (num_ < 0);
    }

    mpq_class to_mpq() const {
        if (big_) return *big_;
        mpq_class q{mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_))};
        return q;
    }

    /// "num/den", with the denominator omitted when it is 1.
    std::string str() const {
        if (big_) {
            if (mpz_cmp_ui(big_->get_den_mpz_t(), 1) == 0) return big_->get_num().get_str();
            return big_->get_str();
        }
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    std::size_t hash() const noexcept {
        if (big_) return std::hash<std::string>{}(big_->get_str());
        std::size_t h = std::hash<std::int64_t>{}(num_);
        return h ^ (std::hash<std::int64_t>{}(den_) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    }

    Rational operator-() const {
        if (big_) return Rational(mpq_class(-*big_));
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) {
            if (a.den_ == 1 && b.den_ == 1) {
                long long s;
                if (!__builtin_add_overflow(a.num_, b.num_, &s) && s != kMin) return small(s, 1);
            }
            __int128 n = static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_;
            __int128 d = static_cast<__int128>(a.den_) * b.den_;
            return from_i128(n, d);
        }
        return Rational(mpq_class(a.to_mpq() + b.to_mpq()));
    }

    friend Rational operator-(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) {
            if (a.den_ == 1 && b.den_ == 1) {
                long long s;
                if (!__builtin_sub_overflow(a.num_, b.num_, &s) && s != kMin) return small(s, 1);
            }
            __int128 n = static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_;
            __int128 d = static_cast<__int128>(a.den_) * b.den_;
            return from_i128(n, d);
        }
        return Rational(mpq_class(a.to_mpq() - b.to_mpq()));
    }

    friend Rational operator*(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) {
            if (a.num_ == 0 || b.num_ == 0) return Rational();
            if (a.den_ == 1 && b.den_ == 1) {
                long long s;
                if (!__builtin_mul_overflow(a.num_, b.num_, &s) && s != kMin) return small(s, 1);
            }
            __int128 n = static_cast<__int128>(a.num_) * b.num_;
            __int128 d = static_cast<__int128>(a.den_) * b.den_;
            return from_i128(n, d);
        }
        return Rational(mpq_class(a.to_mpq() * b.to_mpq()));
    }

    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw Error("rational division by zero");
        if (!a.big_ && !b.big_) {
            __int128 n = static_cast<__int128>(a.num_) * b.den_;
            __int128 d = static_cast<__int128>(a.den_) * b.num_;
            if (d < 0) {
                n = -n;
                d = -d;
            }
            return from_i128(n, d);
        }
        return Rational(mpq_class(a.to_mpq() / b.to_mpq()));
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
        if (a.big_ && b.big_) return *a.big_ == *b.big_;
        return false;
    }

    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) {
            __int128 l = static_cast<__int128>(a.num_) * b.den_;
            __int128 r = static_cast<__int128>(b.num_) * a.den_;
            return l <=> r;
        }
        int c = cmp(a.to_mpq(), b.to_mpq());
        return c <=> 0;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    static constexpr long long kMax = std::numeric_limits<long long>::max();
    static constexpr long long kMin = std::numeric_limits<long long>::min();

    static Rational small(long long n, long long d) {
        Rational r;
        r.num_ = n;
        r.den_ = d;
        return r;
    }

    static unsigned __int128 gcd_u128(unsigned __int128 a, unsigned __int128 b) {
        while (b != 0) {
            if (a <= std::numeric_limits<std::uint64_t>::max() &&
                b <= std::numeric_limits<std::uint64_t>::max()) {
                std::uint64_t x = static_cast<std::uint64_t>(a), y = static_cast<std::uint64_t>(b);
                while (y != 0) {
                    std::uint64_t t = x % y;
                    x = y;
                    y = t;
                }
                return x;
            }
            unsigned __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    static mpz_class mpz_from_i128(__int128 v) {
        bool neg = v < 0;
        unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
                                  : static_cast<unsigned __int128>(v);
        std::uint64_t words[2] = {static_cast<std::uint64_t>(u), static_cast<std::uint64_t>(u >> 64)};
        mpz_class z;
        mpz_import(z.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, words);
        if (neg) z = -z;
        return z;
    }

    // d > 0 required.
    static Rational from_i128(__int128 n, __int128 d) {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        if (n == 0) return Rational();
        unsigned __int128 an = n < 0 ? static_cast<unsigned __int128>(-(n + 1)) + 1
                                     : static_cast<unsigned __int128>(n);
        unsigned __int128 g = gcd_u128(an, static_cast<unsigned __int128>(d));
        if (g != 1) {
            n /= static_cast<__int128>(g);
            d /= static_cast<__int128>(g);
        }
        if (n <= kMax && n > kMin && d <= kMax) return small(static_cast<long long>(n), static_cast<long long>(d));
        Rational r;
        r.set_big(mpq_class(mpz_from_i128(n), mpz_from_i128(d)));
        return r;
    }

    void set_big(mpq_class q) {
        q.canonicalize();
        big_ = std::make_shared<const mpq_class>(std::move(q));
        num_ = 0;
        den_ = 1;
    }

    void assign_mpq(mpq_class q) {
        q.canonicalize();
        const mpz_class& n = q.get_num();
        const mpz_class& d = q.get_den();
        if (n.fits_slong_p() && d.fits_slong_p() && n.get_si() != kMin) {
            num_ = n.get_si();
            den_ = d.get_si();
            big_.reset();
        } else {
            set_big(std::move(q));
        }
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    std::shared_ptr<const mpq_class> big_;
};

inline Rational Rational::parse(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    auto valid_int = [](std::string_view s, bool allow_sign) {
        if (s.empty()) return false;
        std::size_t i = 0;
        if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    auto slash = text.find('/');
    std::string_view num = slash == std::string_view::npos ? text : text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!valid_int(num, true) || !valid_int(den, false))
        throw ParseError("invalid rational literal '" + std::string(text) + "'");
    std::string ns(num);
    if (!ns.empty() && ns[0] == '+') ns.erase(0, 1);
    mpz_class n(ns, 10), d(std::string(den), 10);
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return Rational(mpq_class(n, d));
}

}  // namespace kchern

template <>
struct std::hash<kchern::Rational> {
    std::size_t operator()(const kchern::Rational& r) const noexcept { return r.hash(); }
};
