#include "cyp/frobenius/frobenius.hpp"

#include <doctest.h>

using namespace cyp;

namespace {

Rational R(long n, long d = 1)
{
    return Rational(Integer(n), Integer(d));
}

bool all_zero(const std::vector<std::vector<Rational>> &rows)
{
    for (auto &r : rows)
        for (auto &x : r)
            if (!x.is_zero())
                return false;
    return true;
}

} // namespace

TEST_CASE("local bases satisfy the operator exactly")
{
    auto d = preset_operator("dn-31-1-D");
    for (auto p : {SingularPoint::at(0), SingularPoint::at(-8), SingularPoint::at(1), SingularPoint::at(4),
                   SingularPoint::infinity()}) {
        auto b = local_basis(d, p, 10);
        CHECK(b.solutions.size() == 4);
        for (auto &s : b.solutions)
            CHECK(all_zero(residual(s)));
    }
}

TEST_CASE("log structure at the conifold point")
{
    auto b = local_basis(preset_operator("dn-31-1-D"), SingularPoint::at(-8), 8);
    int logs = 0;
    for (auto &s : b.solutions)
        logs += s.depth;
    CHECK(logs == 1);
}

TEST_CASE("MUM scaled basis continues with the standard unipotent matrix")
{
    for (auto name : {"dn-31-1-D", "dn-31-1-Dtilde", "quintic"}) {
        auto b = mum_scaled_basis(preset_operator(name), 8);
        CHECK(b.solutions.size() == 4);
        CHECK(continuation_matches(b, standard_t0()));
        CHECK_FALSE(continuation_matches(b, QMatrix::identity(4)));
    }
}

TEST_CASE("singular points and radii")
{
    PrecisionScope ps(128);
    auto d = preset_operator("dn-31-1-D");
    auto s = finite_singularities(d);
    CHECK(s.size() == 4);
    Real sum(0);
    for (auto &z : s) {
        CHECK(abs(z.im) < ldexp(Real(1), -100));
        sum += z.re;
    }
    CHECK(abs(sum - Real(-3)) < ldexp(Real(1), -100));  // 0 - 8 + 1 + 4
    CHECK(abs(convergence_radius(d, SingularPoint::at(0)) - Real(1)) < ldexp(Real(1), -100));
    CHECK(abs(convergence_radius(d, SingularPoint::at(4)) - Real(3)) < ldexp(Real(1), -100));
}

TEST_CASE("jet of the holomorphic period against direct summation")
{
    const long bits = 256;
    PrecisionScope ps(bits + 32);
    auto d = preset_operator("dn-31-1-D");
    auto basis = mum_scaled_basis(d, 20);
    QSeries f0 = holomorphic_solution(d, 300);
    Complex z0(Real(R(-1, 10)));
    // sum f0[n] z^n and its first derivative; |z| = 1/10 of radius 1
    Real x(R(-1, 10)), v(0), dv(0), p(1);
    for (size_t n = 0; n < f0.order(); ++n) {
        v += Real(f0[n]) * p;
        if (n)
            dv += Real(f0[n]) * Real(static_cast<long>(n)) * p / x;
        p *= x;
    }
    // basis.solutions[0] is f0 itself
    auto jet = evaluate_jet(d, basis.solutions[0], z0, bits, 2);
    CHECK(abs(jet.d[0] - Complex(v)) < ldexp(Real(1), -(bits - 8)));
    CHECK(abs(jet.d[1] - Complex(dv)) < ldexp(Real(1), -(bits - 8)));
}
