#pragma once

#include "cyp/exact/rational.hpp"

#include <array>
#include <map>
#include <string>

namespace cyp {

// Exponents of y1..y4 followed by the modulus a.
using Exponent = std::array<int, 5>;
constexpr int kYVars = 4;
constexpr int kAIndex = 4;

class LaurentPolynomial {
public:
    using Terms = std::map<Exponent, Rational>;

    LaurentPolynomial() = default;
    static LaurentPolynomial constant(const Rational &c);
    static LaurentPolynomial monomial(const Exponent &e, const Rational &c = 1);

    const Terms &terms() const { return t_; }
    size_t size() const { return t_.size(); }
    bool is_zero() const { return t_.empty(); }
    Rational coeff(const Exponent &e) const;
    void add_term(const Exponent &e, const Rational &c);

    int max_a_degree() const;
    int min_a_degree() const;
    // Terms with the given a-power (a exponent zeroed in the result).
    LaurentPolynomial a_part(int k) const;

    LaurentPolynomial &operator+=(const LaurentPolynomial &o);
    LaurentPolynomial &operator-=(const LaurentPolynomial &o);
    LaurentPolynomial &operator*=(const Rational &k);
    friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial &b) { return a += b; }
    friend LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial &b) { return a -= b; }
    friend LaurentPolynomial operator*(LaurentPolynomial a, const Rational &k) { return a *= k; }
    friend LaurentPolynomial operator*(const LaurentPolynomial &a, const LaurentPolynomial &b);
    friend bool operator==(const LaurentPolynomial &a, const LaurentPolynomial &b) { return a.t_ == b.t_; }

    std::string str() const;

private:
    Terms t_;
};

} // namespace cyp
