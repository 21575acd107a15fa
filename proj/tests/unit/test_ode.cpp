#include "random_util.hpp"

#include "cyp/ode/cy_check.hpp"
#include "cyp/ode/operator.hpp"

#include <doctest.h>

using namespace cyp;
using namespace cyp::testing;

namespace {

Rational R(long n, long d = 1)
{
    return Rational(Integer(n), Integer(d));
}

std::vector<Rational> roots_at(const RiemannScheme &s, const Rational &p)
{
    for (auto &c : s)
        if (c.point.kind == SingularPoint::Finite && c.point.value == p)
            return c.exponents.roots;
    return {};
}

std::vector<Rational> roots_at_infinity(const RiemannScheme &s)
{
    for (auto &c : s)
        if (c.point.kind == SingularPoint::Infinity)
            return c.exponents.roots;
    return {};
}

} // namespace

TEST_CASE("quintic holomorphic period and annihilator")
{
    auto op = preset_operator("quintic");
    QSeries f = holomorphic_solution(op, 12);
    for (long n = 0; n < 12; ++n) {
        Integer w = factorial(5 * n);
        for (int i = 0; i < 5; ++i)
            w /= factorial(n);
        CHECK(f[static_cast<size_t>(n)] == Rational(w));
    }
    QSeries r = apply(op, f);
    for (size_t n = 0; n < r.order(); ++n)
        CHECK(r[n].is_zero());
    CHECK(fit_operator(holomorphic_solution(op, 24), 4, 1) == op);
}

TEST_CASE("fit_operator refuses short series")
{
    auto f = holomorphic_solution(preset_operator("quintic"), 10);
    CHECK_THROWS_AS(fit_operator(f, 4, 6), Error);
}

TEST_CASE("operator normal form")
{
    std::vector<Poly> a{Poly(std::vector<Rational>{R(2), R(4)}), Poly(std::vector<Rational>{R(6)})};
    DifferentialOperator op(a);
    CHECK(op.coeff(0) == Poly(std::vector<Rational>{1, 2}));
    CHECK(op.coeff(1) == Poly(3));
    DifferentialOperator neg({Poly(-1), Poly(-2)});
    CHECK(neg.coeff(1).lc().sign() > 0);
}

TEST_CASE("Weyl form round trip")
{
    for (auto name : {"dn-31-1-D", "dn-31-1-Dtilde", "quintic"}) {
        auto op = preset_operator(name);
        CHECK(from_weyl(to_weyl(op)) == op);
    }
}

TEST_CASE("moves invert each other")
{
    auto op = preset_operator("dn-31-1-D");
    CHECK(transform(op, {Move::invert(), Move::invert()}) == op);
    for (int t = 0; t < 25; ++t) {
        Rational g = random_rational(5, 4), l = random_rational(5, 4), c = random_rational(5, 4);
        if (l.is_zero())
            l = 3;
        CHECK(transform(op, {Move::gauge(g), Move::gauge(-g)}) == op);
        CHECK(transform(op, {Move::rescale(l), Move::rescale(l.inverse())}) == op);
        CHECK(transform(op, {Move::shift(c), Move::shift(-c)}) == op);
    }
}

TEST_CASE("gauge move acts as a shift of theta")
{
    // theta - 1/2 gauged by 1/2 is theta
    DifferentialOperator op({Poly(R(-1, 2)), Poly(1)});
    CHECK(transform(op, {Move::gauge(R(1, 2))}) == DifferentialOperator({Poly(0), Poly(1)}));
}

TEST_CASE("inversion and gauge take D to Dtilde")
{
    auto d = preset_operator("dn-31-1-D");
    CHECK(transform(d, {Move::invert(), Move::gauge(R(3, 2))}) == preset_operator("dn-31-1-Dtilde"));
}

TEST_CASE("Riemann scheme of D and the Fuchs relation")
{
    auto s = riemann_scheme(preset_operator("dn-31-1-D"));
    CHECK(roots_at(s, -8) == std::vector<Rational>{0, 1, 1, 2});
    CHECK(roots_at(s, 0) == std::vector<Rational>{0, 0, 0, 0});
    CHECK(roots_at(s, 1) == std::vector<Rational>{R(-1, 2), 0, 0, R(1, 2)});
    CHECK(roots_at_infinity(s) == std::vector<Rational>{R(3, 2), R(3, 2), R(3, 2), R(3, 2)});
    // order 4: total = 6 (points - 2)
    for (auto name : {"dn-31-1-D", "dn-31-1-Dtilde", "quintic"}) {
        auto sc = riemann_scheme(preset_operator(name));
        CHECK(exponent_total(sc) == Rational(6 * (static_cast<long>(sc.size()) - 2)));
    }
}

TEST_CASE("MUM classification")
{
    auto d = preset_operator("dn-31-1-D");
    CHECK(mum_check(d, SingularPoint::at(0)) == MumClass::MUM);
    CHECK(mum_check(d, SingularPoint::at(-8)) != MumClass::MUM);
    CHECK(mum_check(preset_operator("dn-31-1-Dtilde"), SingularPoint::at(0)) == MumClass::MUM);
    CHECK(mum_check(preset_operator("quintic"), SingularPoint::infinity()) != MumClass::MUM);
}

TEST_CASE("CY conditions")
{
    auto d = preset_operator("dn-31-1-D");
    auto scaled = cy_check(d, 30, R(1, 32));
    CHECK(scaled.all_pass());
    auto raw = cy_check(d, 30);
    CHECK(raw.failed() == std::vector<int>{4});
    CHECK(cy_check(preset_operator("dn-31-1-Dtilde"), 30, R(-1, 16)).all_pass());
    CHECK(cy_check(preset_operator("quintic"), 30).all_pass());
    CHECK(cy_identity_defect(preset_operator("quintic")).is_zero());
}
