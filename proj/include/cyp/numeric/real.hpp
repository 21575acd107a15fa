#pragma once

#include "cyp/exact/rational.hpp"

#include <mpfr.h>
#include <string>

namespace cyp {

// Thin RAII wrapper over mpfr_t. New values and operation results use the
// calling thread's working precision (bits), set with PrecisionScope.
class Real {
public:
    Real();
    Real(int x);
    Real(long x);
    Real(double x);
    Real(const Integer &x);
    Real(const Rational &x);
    Real(const Real &o);
    Real(Real &&o) noexcept;
    Real &operator=(const Real &o);
    Real &operator=(Real &&o) noexcept;
    ~Real();

    static long working_precision();
    static void set_working_precision(long bits);

    static Real pi();
    static Real zeta3();
    static Real from_string(const std::string &s);

    long precision() const { return static_cast<long>(mpfr_get_prec(v_)); }
    mpfr_srcptr get() const { return v_; }
    mpfr_ptr get() { return v_; }

    int sign() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    // Binary exponent e with |x| in [2^(e-1), 2^e); very negative for zero.
    long exponent() const;
    std::string str(int digits = 30) const;

    Real &operator+=(const Real &o);
    Real &operator-=(const Real &o);
    Real &operator*=(const Real &o);
    Real &operator/=(const Real &o);

    friend Real operator+(Real a, const Real &b) { return a += b; }
    friend Real operator-(Real a, const Real &b) { return a -= b; }
    friend Real operator*(Real a, const Real &b) { return a *= b; }
    friend Real operator/(Real a, const Real &b) { return a /= b; }
    friend Real operator-(const Real &a);

    friend bool operator<(const Real &a, const Real &b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(const Real &a, const Real &b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const Real &a, const Real &b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const Real &a, const Real &b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
    friend bool operator==(const Real &a, const Real &b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

private:
    mpfr_t v_;
};

Real abs(const Real &x);
Real sqrt(const Real &x);
Real log(const Real &x);
Real exp(const Real &x);
Real sin(const Real &x);
Real cos(const Real &x);
Real atan2(const Real &y, const Real &x);
Real pow(const Real &x, long e);
Real ldexp(const Real &x, long e);
Real max(const Real &a, const Real &b);
Real min(const Real &a, const Real &b);
Integer floor_integer(const Real &x);
// x * k for a machine integer, avoiding a temporary.
Real mul_si(const Real &x, long k);

// RAII override of the thread's working precision.
class PrecisionScope {
public:
    explicit PrecisionScope(long bits) : saved_(Real::working_precision())
    {
        Real::set_working_precision(bits);
    }
    ~PrecisionScope() { Real::set_working_precision(saved_); }
    PrecisionScope(const PrecisionScope &) = delete;
    PrecisionScope &operator=(const PrecisionScope &) = delete;

private:
    long saved_;
};

} // namespace cyp
