#include "cyp/numeric/complex.hpp"

namespace cyp {

std::string Complex::str(int digits) const
{
    std::string s = re.str(digits);
    if (im.sign() >= 0)
        s += "+";
    return s + im.str(digits) + "i";
}

Complex conj(const Complex &z)
{
    return Complex(z.re, -z.im);
}

Real norm2(const Complex &z)
{
    return z.re * z.re + z.im * z.im;
}

Real abs(const Complex &z)
{
    Real r;
    mpfr_hypot(r.get(), z.re.get(), z.im.get(), MPFR_RNDN);
    return r;
}

Real arg(const Complex &z)
{
    return atan2(z.im, z.re);
}

Complex exp(const Complex &z)
{
    return polar(exp(z.re), z.im);
}

Complex log(const Complex &z)
{
    return Complex(log(abs(z)), arg(z));
}

Complex sqrt(const Complex &z)
{
    if (z.is_zero())
        return Complex();
    return polar(sqrt(abs(z)), ldexp(arg(z), -1));
}

Complex pow(const Complex &z, long e)
{
    if (e < 0)
        return Complex(1) / pow(z, -e);
    Complex r(1), b = z;
    while (e) {
        if (e & 1)
            r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

Complex polar(const Real &r, const Real &theta)
{
    Real s, c;
    mpfr_sin_cos(s.get(), c.get(), theta.get(), MPFR_RNDN);
    return Complex(r * c, r * s);
}

} // namespace cyp
