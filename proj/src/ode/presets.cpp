#include "cyp/error.hpp"
#include "cyp/ode/operator.hpp"

namespace cyp {

namespace {

Poly P(std::initializer_list<long> ascending)
{
    std::vector<Rational> c;
    for (long x : ascending)
        c.emplace_back(x);
    return Poly(std::move(c));
}

Poly z()
{
    return Poly::x();
}

Poly lin(long a, long b) // a z + b
{
    return P({b, a});
}

DifferentialOperator family_d()
{
    Poly a4 = Rational(16) * lin(1, -1).pow(3) * lin(1, -4).pow(2) * lin(1, 8);
    Poly a3 = Rational(96) * z() * lin(1, -1).pow(2) * lin(1, -4) * P({-28, 0, 1});
    Poly a2 = Rational(12) * z() * lin(1, -1) * P({-1024, 2000, -136, -129, 18});
    Poly a1 = Rational(36) * z() * P({192, -752, 540, 99, -58, 6});
    Poly a0 = Rational(3) * z() * P({512, -2688, 1824, 856, -288, 27});
    return DifferentialOperator({a0, a1, a2, a3, a4});
}

DifferentialOperator family_dtilde()
{
    Poly a4 = Rational(16) * lin(1, -1).pow(3) * lin(4, -1).pow(2) * lin(8, 1);
    Poly a3 = Rational(96) * z() * lin(1, -1).pow(2) * lin(4, -1) * P({3, -8, 32});
    Poly a2 = Rational(12) * z() * lin(1, -1) * P({15, -118, 992, -2464, 2304});
    Poly a1 = Rational(36) * z() * lin(4, -1) * P({1, -30, 150, -304, 192});
    Poly a0 = Rational(3) * z().pow(2) * P({152, -933, 3408, -5840, 3456});
    return DifferentialOperator({a0, a1, a2, a3, a4});
}

// theta^4 - 5 z (5 theta + 1)(5 theta + 2)(5 theta + 3)(5 theta + 4)
DifferentialOperator quintic()
{
    Poly t = P({1, 5}) * P({2, 5}) * P({3, 5}) * P({4, 5}); // in theta
    std::vector<Poly> a(5);
    for (int i = 0; i <= 4; ++i)
        a[static_cast<size_t>(i)] = Poly::monomial(1, Rational(-5) * t.coeff(i));
    a[4] += Poly(1);
    return DifferentialOperator(std::move(a));
}

} // namespace

DifferentialOperator preset_operator(const std::string &name)
{
    if (name == "dn-31-1-D")
        return family_d();
    if (name == "dn-31-1-Dtilde")
        return family_dtilde();
    if (name == "quintic")
        return quintic();
    input_error("unknown-preset", "no operator preset named '" + name + "'");
}

} // namespace cyp
