#pragma once

// Forms on the interval and on the square with values in universal forms.
//
// TForm  a + dt b             (a, b with coefficients in Q[t])
// BiForm a + ds b + dt c + ds dt e   (coefficients in Q[s, t])
//
// The parameter differentials are kept on the left. They anticommute with
// odd forms and with each other.

#include <string>
#include <utility>

#include "kchern/uform.hpp"

namespace kchern {

inline Form eval_form(const Form1& f, const Rational& t) {
    Form out(f.algebra());
    for (const auto& [w, c] : f.terms()) out.add_term(w, c.eval(t));
    return out;
}

inline Form integrate_form(const Form1& f) {
    Form out(f.algebra());
    for (const auto& [w, c] : f.terms()) out.add_term(w, c.integrate01());
    return out;
}

inline Form1 derivative_form(const Form1& f) {
    return f.map_coeffs<Poly1>([](const Poly1& c) { return c.derivative(); });
}

inline Form1 reversed_form(const Form1& f) {
    return f.map_coeffs<Poly1>([](const Poly1& c) { return c.reversed(); });
}

class TForm {
public:
    TForm() = default;
    TForm(Form1 base) : base_(std::move(base)) {}  // NOLINT(google-explicit-constructor)
    TForm(Form1 base, Form1 dt) : base_(std::move(base)), dt_(std::move(dt)) {}

    static TForm constant(const Form& f) { return TForm(f.lift<Poly1>()); }

    const Form1& base() const noexcept { return base_; }
    /// Coefficient of the leftmost dt.
    const Form1& dt_part() const noexcept { return dt_; }
    bool is_zero() const noexcept { return base_.is_zero() && dt_.is_zero(); }

    TForm operator-() const { return TForm(-base_, -dt_); }
    TForm& operator+=(const TForm& o) {
        base_ += o.base_;
        dt_ += o.dt_;
        return *this;
    }
    TForm& operator-=(const TForm& o) {
        base_ -= o.base_;
        dt_ -= o.dt_;
        return *this;
    }
    friend TForm operator+(TForm a, const TForm& b) { return a += b; }
    friend TForm operator-(TForm a, const TForm& b) { return a -= b; }
    friend TForm operator*(const Poly1& q, const TForm& x) { return TForm(q * x.base_, q * x.dt_); }
    friend TForm operator*(const Rational& q, const TForm& x) { return Poly1(q) * x; }

    /// (a + dt b)(c + dt e) = ac + dt (bc + sigma(a) e).
    friend TForm operator*(const TForm& x, const TForm& y) {
        Form1 base = x.base_ * y.base_;
        Form1 dt = x.dt_ * y.base_;
        if (!y.dt_.is_zero()) dt += x.base_.parity_twist() * y.dt_;
        return TForm(std::move(base), std::move(dt));
    }

    /// d(a + dt b) = da + dt (da/dt - db).
    TForm differential() const {
        return TForm(base_.differential(), derivative_form(base_) - dt_.differential());
    }

    Form ev(const Rational& t) const { return eval_form(base_, t); }
    /// Integrates the dt component over [0, 1].
    Form homotopy() const { return integrate_form(dt_); }
    /// Pullback along t -> 1 - t.
    TForm reversed() const { return TForm(reversed_form(base_), -reversed_form(dt_)); }

    friend bool operator==(const TForm& a, const TForm& b) { return a.base_ == b.base_ && a.dt_ == b.dt_; }

    std::string str() const {
        if (dt_.is_zero()) return base_.str();
        return base_.str() + " + dt*(" + dt_.str() + ")";
    }

private:
    Form1 base_;
    Form1 dt_;
};

inline Form homotopy_K(const TForm& w) { return w.homotopy(); }
inline Form ev(const TForm& w, const Rational& t) { return w.ev(t); }

class BiForm {
public:
    BiForm() = default;
    BiForm(Form2 one) : one_(std::move(one)) {}  // NOLINT(google-explicit-constructor)
    BiForm(Form2 one, Form2 ds, Form2 dt, Form2 dsdt)
        : one_(std::move(one)), ds_(std::move(ds)), dt_(std::move(dt)), dsdt_(std::move(dsdt)) {}

    static BiForm constant(const Form& f) { return BiForm(f.lift<Poly2>()); }

    const Form2& one() const noexcept { return one_; }
    const Form2& ds_part() const noexcept { return ds_; }
    const Form2& dt_part() const noexcept { return dt_; }
    const Form2& dsdt_part() const noexcept { return dsdt_; }
    bool is_zero() const noexcept { return one_.is_zero() && ds_.is_zero() && dt_.is_zero() && dsdt_.is_zero(); }

    BiForm operator-() const { return BiForm(-one_, -ds_, -dt_, -dsdt_); }
    BiForm& operator+=(const BiForm& o) {
        one_ += o.one_;
        ds_ += o.ds_;
        dt_ += o.dt_;
        dsdt_ += o.dsdt_;
        return *this;
    }
    BiForm& operator-=(const BiForm& o) {
        one_ -= o.one_;
        ds_ -= o.ds_;
        dt_ -= o.dt_;
        dsdt_ -= o.dsdt_;
        return *this;
    }
    friend BiForm operator+(BiForm a, const BiForm& b) { return a += b; }
    friend BiForm operator-(BiForm a, const BiForm& b) { return a -= b; }
    friend BiForm operator*(const Poly2& q, const BiForm& x) {
        return BiForm(q * x.one_, q * x.ds_, q * x.dt_, q * x.dsdt_);
    }
    friend BiForm operator*(const Rational& q, const BiForm& x) { return Poly2(q) * x; }

    friend BiForm operator*(const BiForm& x, const BiForm& y) {
        Form2 one = x.one_ * y.one_;
        Form2 ds = x.ds_ * y.one_;
        Form2 dt = x.dt_ * y.one_;
        Form2 dsdt = x.dsdt_ * y.one_;
        if (!y.ds_.is_zero() || !y.dt_.is_zero() || !y.dsdt_.is_zero()) {
            Form2 a = x.one_.parity_twist();
            ds += a * y.ds_;
            dt += a * y.dt_;
            dsdt += x.one_ * y.dsdt_;
            if (!y.dt_.is_zero()) dsdt += x.ds_.parity_twist() * y.dt_;
            if (!y.ds_.is_zero()) dsdt -= x.dt_.parity_twist() * y.ds_;
        }
        return BiForm(std::move(one), std::move(ds), std::move(dt), std::move(dsdt));
    }

    BiForm differential() const {
        auto d_s = [](const Form2& f) { return f.map_coeffs<Poly2>([](const Poly2& c) { return c.d_s(); }); };
        auto d_t = [](const Form2& f) { return f.map_coeffs<Poly2>([](const Poly2& c) { return c.d_t(); }); };
        return BiForm(one_.differential(), d_s(one_) - ds_.differential(), d_t(one_) - dt_.differential(),
                      d_s(dt_) - d_t(ds_) + dsdt_.differential());
    }

    /// Integrate s over [0, 1]; the result is an interval form in t.
    TForm K1() const {
        auto in_s = [](const Form2& f) { return f.map_coeffs<Poly1>([](const Poly2& c) { return c.integrate_s(); }); };
        return TForm(in_s(ds_), in_s(dsdt_));
    }
    /// Integrate t over [0, 1]; the result is an interval form in s.
    TForm K2() const {
        auto in_t = [](const Form2& f) { return f.map_coeffs<Poly1>([](const Poly2& c) { return c.integrate_t(); }); };
        return TForm(in_t(dt_), in_t(dsdt_));
    }
    /// Restrict to s = x; the result is an interval form in t.
    TForm ev_s(const Rational& x) const {
        auto at = [&x](const Form2& f) { return f.map_coeffs<Poly1>([&x](const Poly2& c) { return c.eval_s(x); }); };
        return TForm(at(one_), at(dt_));
    }
    /// Restrict to t = x; the result is an interval form in s.
    TForm ev_t(const Rational& x) const {
        auto at = [&x](const Form2& f) { return f.map_coeffs<Poly1>([&x](const Poly2& c) { return c.eval_t(x); }); };
        return TForm(at(one_), at(ds_));
    }

    friend bool operator==(const BiForm& a, const BiForm& b) {
        return a.one_ == b.one_ && a.ds_ == b.ds_ && a.dt_ == b.dt_ && a.dsdt_ == b.dsdt_;
    }

    std::string str() const {
        return one_.str() + " + ds*(" + ds_.str() + ") + dt*(" + dt_.str() + ") + ds dt*(" + dsdt_.str() + ")";
    }

private:
    Form2 one_, ds_, dt_, dsdt_;
};

/// K K1 = K K2: the double integral of the ds dt component.
inline Form double_homotopy(const BiForm& w) { return w.K1().homotopy(); }

}  // namespace kchern
