#include "cyp/conifold/conifold.hpp"

#include <doctest.h>

using namespace cyp;

namespace {

Rational R(long n, long d = 1)
{
    return Rational(Integer(n), Integer(d));
}

} // namespace

TEST_CASE("conifold points of the presets")
{
    CHECK(conifold_point(preset_operator("dn-31-1-D"))->value == -8);
    CHECK(conifold_point(preset_operator("dn-31-1-Dtilde"))->value == R(-1, 8));
    CHECK(conifold_point(preset_operator("quintic"))->value == R(1, 3125));
}

TEST_CASE("conifold period is the exponent-1 log multiplier")
{
    auto d = preset_operator("dn-31-1-D");
    auto f = conifold_period(d, 12);
    CHECK(f.exponent == 1);
    CHECK(f.depth == 0);
    CHECK(f.S[0][0] == 1);
    // the log solution at -8 has f as its log coefficient
    auto b = local_basis(d, SingularPoint::at(-8), 12);
    for (auto &s : b.solutions)
        if (s.depth == 1) {
            QSeries mult = s.S[1];
            Rational lead;
            size_t lo = 0;
            while (lo < mult.order() && mult[lo].is_zero())
                ++lo;
            REQUIRE(lo < mult.order());
            lead = mult[lo];
            for (size_t k = lo; k < mult.order() && k - lo < f.S[0].order(); ++k)
                CHECK(mult[k] / lead == f.S[0][k - lo]);
        }
}

TEST_CASE("spectrum mismatch")
{
    auto d = preset_operator("dn-31-1-D");
    CHECK_THROWS_AS(conifold_period(d, 8, SingularPoint::at(0)), Error);
    CHECK_THROWS_AS(conifold_period(d, 8, SingularPoint::at(1)), Error);
    CHECK_THROWS_AS(conifold_period(d, 8, SingularPoint::infinity()), Error);
}

TEST_CASE("a MUM basis member continues to itself")
{
    auto op = preset_operator("dn-31-1-Dtilde");
    auto basis = mum_scaled_basis(op, 20);
    auto m = continue_to_mum(op, basis.solutions[0], 128);
    PrecisionScope ps(192);
    REQUIRE(m.beta.size() == 4);
    CHECK(abs(m.beta[0] - Complex(1)) < ldexp(Real(1), -100));
    for (size_t k = 1; k < 4; ++k)
        CHECK(abs(m.beta[k]) < ldexp(Real(1), -100));
}

TEST_CASE("invariants of Dtilde with H^3 fixed")
{
    auto op = preset_operator("dn-31-1-Dtilde");
    auto m = continue_to_mum(op, conifold_period(op, 30), 256);
    auto fixed = extract_invariants(m, {ScaleMode::FixH3, 24});
    REQUIRE(fixed.failure.empty());
    CHECK(fixed.h3 == 24);
    CHECK(fixed.c2h == 48);
    CHECK(fixed.c3 == 48);
    PrecisionScope ps(320);
    CHECK(abs(fixed.s2) < ldexp(Real(1), -128));
    CHECK(fixed.residual < ldexp(Real(1), -128));
    // scaling by -1 flips every invariant
    auto flipped = extract_invariants(m, {ScaleMode::FixC3, -48});
    CHECK(flipped.h3 == -24);
    CHECK(flipped.c2h == -48);
}

TEST_CASE("extraction reports rather than throws on reconstruction failure")
{
    auto op = preset_operator("dn-31-1-Dtilde");
    auto m = continue_to_mum(op, conifold_period(op, 30), 128);
    // c2.H = 48/7 needs denominator 7 > 2
    auto bad = extract_invariants(m, {ScaleMode::FixH3, R(24, 7)}, std::nullopt, 2);
    CHECK_FALSE(bad.failure.empty());
    CHECK_THROWS_AS(extract_invariants(m, {ScaleMode::FixH3, 0}), Error);
}
