#pragma once

#include <compare>
#include <cstdint>
#include <gmpxx.h>
#include <iosfwd>
#include <string>
#include <string_view>

namespace cyp {

using Integer = mpz_class;

// Exact rational in lowest terms with positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(int n) : q_(n) {}
    Rational(long n) : q_(n) {}
    Rational(long long n) : q_(Integer(std::to_string(n))) {}
    Rational(unsigned long n) : q_(n) {}
    Rational(const Integer &n) : q_(n) {}
    Rational(const Integer &num, const Integer &den);
    explicit Rational(const mpq_class &q) : q_(q) { q_.canonicalize(); }

    // Accepts "p", "p/q", and finite decimals such as "-0.05".
    static Rational parse(std::string_view text);

    Integer num() const { return q_.get_num(); }
    Integer den() const { return q_.get_den(); }
    const mpq_class &raw() const { return q_; }

    int sign() const { return sgn(q_); }
    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    bool is_one() const { return q_ == 1; }

    Rational abs() const;
    Rational inverse() const;
    Rational pow(long e) const;
    double to_double() const { return q_.get_d(); }
    std::string str() const;

    Rational &operator+=(const Rational &o) { q_ += o.q_; return *this; }
    Rational &operator-=(const Rational &o) { q_ -= o.q_; return *this; }
    Rational &operator*=(const Rational &o) { q_ *= o.q_; return *this; }
    Rational &operator/=(const Rational &o);

    friend Rational operator+(Rational a, const Rational &b) { return a += b; }
    friend Rational operator-(Rational a, const Rational &b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational &b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational &b) { return a /= b; }
    friend Rational operator-(const Rational &a) { Rational r; r.q_ = -a.q_; return r; }

    friend bool operator==(const Rational &a, const Rational &b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational &a, const Rational &b)
    {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class q_;
};

std::ostream &operator<<(std::ostream &os, const Rational &r);

Integer gcd(const Integer &a, const Integer &b);
Integer lcm(const Integer &a, const Integer &b);
Integer binomial(long n, long k);
Integer factorial(long n);

// 2-adic and general p-adic valuation of a nonzero rational.
long valuation(const Rational &r, unsigned long p);

} // namespace cyp
