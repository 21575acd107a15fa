#include "cyp/numeric/real.hpp"
#include "cyp/error.hpp"

#include <vector>

namespace cyp {

namespace {
thread_local long g_precision = 256;
}

long Real::working_precision()
{
    return g_precision;
}

void Real::set_working_precision(long bits)
{
    if (bits < MPFR_PREC_MIN || bits > 1L << 24)
        input_error("bad-precision", std::to_string(bits) + " bits");
    g_precision = bits;
}

Real::Real()
{
    mpfr_init2(v_, g_precision);
    mpfr_set_zero(v_, 1);
}

Real::Real(int x) : Real(static_cast<long>(x)) {}

Real::Real(long x)
{
    mpfr_init2(v_, g_precision);
    mpfr_set_si(v_, x, MPFR_RNDN);
}

Real::Real(double x)
{
    mpfr_init2(v_, g_precision);
    mpfr_set_d(v_, x, MPFR_RNDN);
}

Real::Real(const Integer &x)
{
    mpfr_init2(v_, g_precision);
    mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN);
}

Real::Real(const Rational &x)
{
    mpfr_init2(v_, g_precision);
    mpfr_set_q(v_, x.raw().get_mpq_t(), MPFR_RNDN);
}

Real::Real(const Real &o)
{
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

Real::Real(Real &&o) noexcept
{
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
}

Real &Real::operator=(const Real &o)
{
    if (this != &o) {
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

Real &Real::operator=(Real &&o) noexcept
{
    mpfr_swap(v_, o.v_);
    return *this;
}

Real::~Real()
{
    mpfr_clear(v_);
}

Real Real::pi()
{
    Real r;
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
}

Real Real::zeta3()
{
    Real r;
    mpfr_zeta_ui(r.v_, 3, MPFR_RNDN);
    return r;
}

Real Real::from_string(const std::string &s)
{
    Real r;
    if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
        input_error("malformed-number", "'" + s + "'");
    return r;
}

long Real::exponent() const
{
    if (mpfr_zero_p(v_))
        return -(1L << 30);
    return mpfr_get_exp(v_);
}

std::string Real::str(int digits) const
{
    if (mpfr_zero_p(v_))
        return "0";
    std::vector<char> buf(static_cast<size_t>(digits) + 64);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
    return std::string(buf.data());
}

// Results are produced at the working precision, as a fresh target would be.
#define CYP_REAL_BINOP(OP, FN)                                   \
    Real &Real::operator OP(const Real &o)                       \
    {                                                            \
        if (mpfr_get_prec(v_) != g_precision) {                  \
            Real t;                                              \
            FN(t.v_, v_, o.v_, MPFR_RNDN);                       \
            mpfr_swap(v_, t.v_);                                 \
        } else {                                                 \
            FN(v_, v_, o.v_, MPFR_RNDN);                         \
        }                                                        \
        return *this;                                            \
    }

CYP_REAL_BINOP(+=, mpfr_add)
CYP_REAL_BINOP(-=, mpfr_sub)
CYP_REAL_BINOP(*=, mpfr_mul)
CYP_REAL_BINOP(/=, mpfr_div)
#undef CYP_REAL_BINOP

Real operator-(const Real &a)
{
    Real r;
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
}

#define CYP_REAL_UNARY(NAME, FN)                  \
    Real NAME(const Real &x)                      \
    {                                             \
        Real r;                                   \
        FN(r.get(), x.get(), MPFR_RNDN);          \
        return r;                                 \
    }

CYP_REAL_UNARY(abs, mpfr_abs)
CYP_REAL_UNARY(sqrt, mpfr_sqrt)
CYP_REAL_UNARY(log, mpfr_log)
CYP_REAL_UNARY(exp, mpfr_exp)
CYP_REAL_UNARY(sin, mpfr_sin)
CYP_REAL_UNARY(cos, mpfr_cos)
#undef CYP_REAL_UNARY

Real atan2(const Real &y, const Real &x)
{
    Real r;
    mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
    return r;
}

Real pow(const Real &x, long e)
{
    Real r;
    mpfr_pow_si(r.get(), x.get(), e, MPFR_RNDN);
    return r;
}

Real ldexp(const Real &x, long e)
{
    Real r;
    if (e >= 0)
        mpfr_mul_2ui(r.get(), x.get(), static_cast<unsigned long>(e), MPFR_RNDN);
    else
        mpfr_div_2ui(r.get(), x.get(), static_cast<unsigned long>(-e), MPFR_RNDN);
    return r;
}

Real max(const Real &a, const Real &b)
{
    return a < b ? b : a;
}

Integer floor_integer(const Real &x)
{
    Integer z;
    mpfr_get_z(z.get_mpz_t(), x.get(), MPFR_RNDD);
    return z;
}

Real mul_si(const Real &x, long k)
{
    Real r;
    mpfr_mul_si(r.get(), x.get(), k, MPFR_RNDN);
    return r;
}

Real min(const Real &a, const Real &b)
{
    return b < a ? b : a;
}

} // namespace cyp
