#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "kchern/error.hpp"

namespace kchern {

/// Dense matrix over a (possibly graded, noncommutative) ring F.
/// Default-constructed F must be the zero element.
template <class F>
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), e_(rows * cols) {}

    std::size_t rows() const noexcept { return r_; }
    std::size_t cols() const noexcept { return c_; }
    bool square() const noexcept { return r_ == c_; }

    F& operator()(std::size_t i, std::size_t j) { return e_[index(i, j)]; }
    const F& operator()(std::size_t i, std::size_t j) const { return e_[index(i, j)]; }

    bool is_zero() const {
        for (const auto& x : e_)
            if (!x.is_zero()) return false;
        return true;
    }

    template <class Fn>
    auto map(Fn&& fn) const -> Mat<decltype(fn(std::declval<const F&>()))> {
        Mat<decltype(fn(std::declval<const F&>()))> out(r_, c_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) out(i, j) = fn((*this)(i, j));
        return out;
    }

    Mat operator-() const {
        Mat out = *this;
        for (auto& x : out.e_) x = -x;
        return out;
    }
    Mat& operator+=(const Mat& o) {
        same_shape(o);
        for (std::size_t k = 0; k < e_.size(); ++k) e_[k] += o.e_[k];
        return *this;
    }
    Mat& operator-=(const Mat& o) {
        same_shape(o);
        for (std::size_t k = 0; k < e_.size(); ++k) e_[k] -= o.e_[k];
        return *this;
    }
    friend Mat operator+(Mat a, const Mat& b) { return a += b; }
    friend Mat operator-(Mat a, const Mat& b) { return a -= b; }

    friend Mat operator*(const Mat& a, const Mat& b) {
        if (a.c_ != b.r_) throw MismatchError("matrix product shape mismatch");
        Mat out(a.r_, b.c_);
        for (std::size_t i = 0; i < a.r_; ++i)
            for (std::size_t k = 0; k < a.c_; ++k) {
                const F& x = a(i, k);
                if (x.is_zero()) continue;
                for (std::size_t j = 0; j < b.c_; ++j) {
                    const F& y = b(k, j);
                    if (y.is_zero()) continue;
                    out(i, j) += x * y;
                }
            }
        return out;
    }

    template <class S>
    friend Mat scaled(const S& s, const Mat& m) {
        Mat out = m;
        for (auto& x : out.e_) x = s * x;
        return out;
    }

    F trace() const {
        if (!square()) throw MismatchError("trace of a non-square matrix");
        F t{};
        for (std::size_t i = 0; i < r_; ++i) t += (*this)(i, i);
        return t;
    }

    friend bool operator==(const Mat& a, const Mat& b) {
        if (a.r_ != b.r_ || a.c_ != b.c_) return false;
        for (std::size_t k = 0; k < a.e_.size(); ++k)
            if (!(a.e_[k] == b.e_[k])) return false;
        return true;
    }

    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < r_; ++i) {
            s += "[";
            for (std::size_t j = 0; j < c_; ++j) {
                if (j) s += " | ";
                s += (*this)(i, j).str();
            }
            s += "]\n";
        }
        return s;
    }

private:
    std::size_t index(std::size_t i, std::size_t j) const {
        if (i >= r_ || j >= c_) throw MismatchError("matrix index out of range");
        return i * c_ + j;
    }
    void same_shape(const Mat& o) const {
        if (r_ != o.r_ || c_ != o.c_) throw MismatchError("matrix shape mismatch");
    }

    std::size_t r_ = 0, c_ = 0;
    std::vector<F> e_;
};

template <class F>
Mat<F> block_diag(const Mat<F>& a, const Mat<F>& b) {
    Mat<F> out(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, a.cols() + j) = b(i, j);
    return out;
}

template <class F>
Mat<F> entrywise_differential(const Mat<F>& m) {
    return m.map([](const F& x) { return x.differential(); });
}

/// p dp dp p + p dtheta p + theta theta: the square of X -> p dX + theta X on Im(p).
template <class F>
Mat<F> curvature_of(const Mat<F>& p, const Mat<F>& theta) {
    Mat<F> dp = entrywise_differential(p);
    Mat<F> r = p * dp * dp * p;
    r += p * entrywise_differential(theta) * p;
    r += theta * theta;
    return r;
}

}  // namespace kchern
