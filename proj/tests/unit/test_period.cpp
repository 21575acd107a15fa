#include "random_util.hpp"

#include "cyp/period/period.hpp"

#include <doctest.h>

using namespace cyp;
using namespace cyp::testing;

namespace {

Rational R(long n, long d = 1)
{
    return Rational(Integer(n), Integer(d));
}

// CT of 1/(c0 (1 - V)) = sum_k CT(V^k) / c0 by direct expansion, valid when
// every monomial of V carries a positive power of a.
std::vector<Rational> geometric_oracle(const CTProblem &p)
{
    Decomposition dec = decompose(p);
    std::vector<Rational> out(static_cast<size_t>(p.order), Rational(0));
    LaurentPolynomial power = LaurentPolynomial::constant(1);
    for (int k = 0; k < p.order; ++k) {
        for (auto &[e, c] : power.terms())
            if (e[0] == 0 && e[1] == 0 && e[2] == 0 && e[3] == 0 && e[kAIndex] < p.order)
                out[static_cast<size_t>(e[kAIndex])] += c / dec.c0;
        LaurentPolynomial next = power * dec.V, kept;
        for (auto &[e, c] : next.terms())
            if (e[kAIndex] < p.order)
                kept.add_term(e, c);
        power = kept;
    }
    return out;
}

CTProblem random_problem(int order)
{
    CTProblem p;
    p.order = order;
    p.P.add_term(Exponent{}, Rational(uniform(1, 3)));
    int terms = static_cast<int>(uniform(2, 4));
    for (int t = 0; t < terms; ++t) {
        Exponent e{};
        for (int i = 0; i < 4; ++i)
            e[static_cast<size_t>(i)] = static_cast<int>(uniform(-1, 1));
        e[kAIndex] = static_cast<int>(uniform(1, 2));
        p.P.add_term(e, random_rational(5, 3));
    }
    return p;
}

} // namespace

TEST_CASE("constant-term series matches the geometric expansion")
{
    for (int t = 0; t < 40; ++t) {
        CTProblem p = random_problem(7);
        auto want = geometric_oracle(p);
        auto exact = constant_term_series(p, CTEngine::Exact);
        REQUIRE(exact.order() == want.size());
        CHECK(exact.coeffs() == want);
        if (detail::modular_engine_applicable(detail::make_setup(decompose(p), p.order)))
            CHECK(constant_term_series(p, CTEngine::Modular).coeffs() == want);
    }
}

TEST_CASE("a^0 part with one monomial: exact and modular engines agree")
{
    for (int t = 0; t < 10; ++t) {
        CTProblem p = random_problem(6);
        // y1 y2^-1 at a^0 never balances on its own; |y1/y2| = 1/2 on the torus
        p.P.add_term(Exponent{1, -1, 0, 0, 0}, Rational(1));
        p.torus.radii = {R(1, 2), R(1), R(1), R(1)};
        CTStats se, sm;
        auto e = constant_term_series(p, CTEngine::Exact, &se);
        auto m = constant_term_series(p, CTEngine::Modular, &sm);
        CHECK(e == m);
        CHECK(se.engine == CTEngine::Exact);
        CHECK(sm.engine == CTEngine::Modular);
    }
}

TEST_CASE("preset family: leading normalized coefficients")
{
    // printed series 1 + 3/4 a^2 + 81/128 a^4 + 143/256 a^6 + 66357/131072 a^8
    QSeries f = normalized(constant_term_series(preset_problem("dn-31-1", 16)));
    CHECK(f[2] == Rational(Integer(3), Integer(4)));
    CHECK(f[4] == Rational(Integer(81), Integer(128)));
    CHECK(f[6] == Rational(Integer(143), Integer(256)));
    CHECK(f[8] == Rational(Integer(66357), Integer(131072)));
    for (size_t k = 1; k < f.order(); k += 2)
        CHECK(f[k].is_zero());
    QSeries z = even_reduction(f);
    CHECK(z.order() == 8);
    CHECK(z[3] == f[6]);
}

TEST_CASE("preset family: engines agree at low order")
{
    auto p = preset_problem("dn-31-1", 12);
    CHECK(constant_term_series(p, CTEngine::Exact) == constant_term_series(p, CTEngine::Modular));
}

TEST_CASE("input validation")
{
    CTProblem p = random_problem(4);
    p.P.add_term(Exponent{0, 0, 0, 0, -1}, 1);
    CHECK_THROWS_AS(constant_term_series(p), Error);
    CTProblem q = random_problem(4);
    q.P.add_term(Exponent{}, -q.P.coeff(Exponent{}));
    CHECK_THROWS_AS(constant_term_series(q), Error);
    CHECK_THROWS_AS(preset_problem("nope", 4), Error);
    CHECK_THROWS_AS(even_reduction(QSeries("a", std::vector<Rational>{1, 1})), Error);
}

TEST_CASE("balanced combinations")
{
    CHECK(has_balanced_combination({{1, 0, 0, 0}, {-1, 0, 0, 0}}));
    CHECK(has_balanced_combination({{2, 1, 0, 0}, {-1, 0, 0, 0}, {0, -1, 0, 0}}));
    CHECK_FALSE(has_balanced_combination({{1, 0, 0, 0}, {0, 1, 0, 0}}));
}
