#pragma once

#include "cyp/numeric/real.hpp"

#include <string>

namespace cyp {

struct Complex {
    Real re, im;

    Complex() = default;
    Complex(int x) : re(x) {}
    Complex(long x) : re(x) {}
    Complex(const Rational &x) : re(x) {}
    Complex(const Real &x) : re(x) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

    static Complex i() { return Complex(Real(0), Real(1)); }
    static Complex two_pi_i() { return Complex(Real(0), ldexp(Real::pi(), 1)); }

    Complex &operator+=(const Complex &o)
    {
        re += o.re;
        im += o.im;
        return *this;
    }
    Complex &operator-=(const Complex &o)
    {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    Complex &operator*=(const Complex &o)
    {
        Real r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    Complex &operator/=(const Complex &o)
    {
        Real d = o.re * o.re + o.im * o.im;
        Real r = (re * o.re + im * o.im) / d;
        im = (im * o.re - re * o.im) / d;
        re = std::move(r);
        return *this;
    }

    friend Complex operator+(Complex a, const Complex &b) { return a += b; }
    friend Complex operator-(Complex a, const Complex &b) { return a -= b; }
    friend Complex operator*(Complex a, const Complex &b) { return a *= b; }
    friend Complex operator/(Complex a, const Complex &b) { return a /= b; }
    friend Complex operator-(const Complex &a) { return Complex(-a.re, -a.im); }

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    std::string str(int digits = 30) const;
};

Complex conj(const Complex &z);
Real abs(const Complex &z);
Real norm2(const Complex &z);
Real arg(const Complex &z);
Complex exp(const Complex &z);
// Principal branch, cut along the negative real axis.
Complex log(const Complex &z);
Complex sqrt(const Complex &z);
Complex pow(const Complex &z, long e);
Complex polar(const Real &r, const Real &theta);

} // namespace cyp
