#include "cyp/exact/rational.hpp"
#include "cyp/error.hpp"

#include <ostream>

namespace cyp {

Rational::Rational(const Integer &num, const Integer &den)
{
    if (den == 0)
        input_error("zero-denominator", "rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational Rational::parse(std::string_view text)
{
    std::string s(text);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\n'))
        s.pop_back();
    size_t start = s.find_first_not_of(' ');
    if (start == std::string::npos)
        input_error("malformed-rational", "empty string");
    s = s.substr(start);

    auto check_int = [&](const std::string &t) {
        size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i >= t.size())
            input_error("malformed-rational", "'" + s + "'");
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9')
                input_error("malformed-rational", "'" + s + "'");
    };
    auto to_int = [](std::string t) {
        if (!t.empty() && t[0] == '+')
            t = t.substr(1);
        return Integer(t);
    };

    if (auto slash = s.find('/'); slash != std::string::npos) {
        std::string a = s.substr(0, slash), b = s.substr(slash + 1);
        check_int(a);
        check_int(b);
        return Rational(to_int(a), to_int(b));
    }
    if (auto dot = s.find('.'); dot != std::string::npos) {
        std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
        bool neg = !ip.empty() && ip[0] == '-';
        std::string digits = (neg || (!ip.empty() && ip[0] == '+')) ? ip.substr(1) : ip;
        if (digits.empty())
            digits = "0";
        check_int(digits);
        if (!fp.empty())
            check_int(fp);
        Integer den = 1;
        for (size_t i = 0; i < fp.size(); ++i)
            den *= 10;
        Integer num = to_int(digits + fp);
        return Rational(neg ? Integer(-num) : num, den);
    }
    check_int(s);
    return Rational(to_int(s));
}

Rational &Rational::operator/=(const Rational &o)
{
    if (o.is_zero())
        computation_error("division-by-zero", "rational division by zero");
    q_ /= o.q_;
    return *this;
}

Rational Rational::abs() const
{
    Rational r;
    r.q_ = ::abs(q_);
    return r;
}

Rational Rational::inverse() const
{
    return Rational(1) / *this;
}

Rational Rational::pow(long e) const
{
    if (e < 0)
        return inverse().pow(-e);
    Integer n, d;
    mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), static_cast<unsigned long>(e));
    return Rational(n, d);
}

std::string Rational::str() const
{
    if (is_integer())
        return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::ostream &operator<<(std::ostream &os, const Rational &r)
{
    return os << r.str();
}

Integer gcd(const Integer &a, const Integer &b)
{
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Integer lcm(const Integer &a, const Integer &b)
{
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

Integer binomial(long n, long k)
{
    if (k < 0 || n < 0 || k > n)
        return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

Integer factorial(long n)
{
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

long valuation(const Rational &r, unsigned long p)
{
    if (r.is_zero())
        computation_error("valuation-of-zero", "valuation of zero is undefined");
    Integer pz = p;
    auto val = [&](Integer x) {
        long v = 0;
        while (mpz_divisible_p(x.get_mpz_t(), pz.get_mpz_t())) {
            x /= pz;
            ++v;
        }
        return v;
    };
    return val(abs(r.num())) - val(r.den());
}

} // namespace cyp
