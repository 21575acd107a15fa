#pragma once

#include "cyp/exact/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace cyp {

struct Complex;

// Univariate polynomial with rational coefficients, ascending powers, no trailing zeros.
class Poly {
public:
    Poly() = default;
    Poly(const Rational &c);
    Poly(int c) : Poly(Rational(c)) {}
    explicit Poly(std::vector<Rational> coeffs);

    static Poly x();
    static Poly monomial(int k, const Rational &c = 1);
    // (x - r)
    static Poly linear_root(const Rational &r);

    const std::vector<Rational> &coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    Rational coeff(int k) const;
    Rational lc() const { return c_.empty() ? Rational(0) : c_.back(); }
    // Lowest power with a nonzero coefficient; -1 for the zero polynomial.
    int low_degree() const;

    Rational eval(const Rational &x) const;
    Complex eval(const Complex &x) const;

    Poly &operator+=(const Poly &o);
    Poly &operator-=(const Poly &o);
    Poly &operator*=(const Rational &k);
    friend Poly operator+(Poly a, const Poly &b) { return a += b; }
    friend Poly operator-(Poly a, const Poly &b) { return a -= b; }
    friend Poly operator*(Poly a, const Rational &k) { return a *= k; }
    friend Poly operator*(const Rational &k, Poly a) { return a *= k; }
    friend Poly operator-(Poly a) { return a *= Rational(-1); }
    friend Poly operator*(const Poly &a, const Poly &b);
    friend bool operator==(const Poly &a, const Poly &b) { return a.c_ == b.c_; }

    std::pair<Poly, Poly> divmod(const Poly &d) const;
    Poly derivative() const;
    // p(a x + b)
    Poly compose_linear(const Rational &a, const Rational &b) const;
    // x^deg p(1/x) for a given deg >= degree()
    Poly reversed(int deg) const;
    Poly pow(int e) const;
    Poly monic() const;
    // Positive rational c with p = c * primitive, primitive having coprime integer coefficients.
    Rational content() const;
    Poly primitive() const;

    std::string str(const std::string &var = "z") const;

private:
    void trim();
    std::vector<Rational> c_;
};

Poly gcd(Poly a, Poly b);
// Yun: p = c * prod f_i^i with f_i squarefree, coprime. Entry i-1 holds f_i.
std::vector<Poly> squarefree_decomposition(const Poly &p);

struct RationalRoot {
    Rational value;
    int multiplicity;
};

// Exact rational roots of p with multiplicities, ascending.
std::vector<RationalRoot> rational_roots(const Poly &p);
// Numeric roots of a squarefree polynomial at the current working precision.
std::vector<Complex> numeric_roots(const Poly &p);
// Same for complex coefficients, ascending.
std::vector<Complex> numeric_roots(std::vector<Complex> coeffs);

} // namespace cyp
