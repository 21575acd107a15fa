#include "random_util.hpp"

#include "cyp/monodromy/monodromy.hpp"

#include <doctest.h>

using namespace cyp;
using namespace cyp::testing;

namespace {

Rational R(long n, long d = 1)
{
    return Rational(Integer(n), Integer(d));
}

QMatrix t_conifold_d()
{
    return QMatrix::from_rows({{1, -8, 0, -192}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
}

QMatrix t_one_d()
{
    return QMatrix::from_rows({{8, -28, 72, -96},
                               {R(7, 2), -11, 24, -24},
                               {R(5, 8), R(-3, 2), 2, 0},
                               {R(1, 48), R(1, 12), R(-1, 2), 1}});
}

QMatrix random_word(const std::vector<QMatrix> &gens, int max_len)
{
    QMatrix m = QMatrix::identity(4);
    int len = static_cast<int>(uniform(1, max_len));
    for (int i = 0; i < len; ++i) {
        const QMatrix &g = gens[static_cast<size_t>(uniform(0, static_cast<long>(gens.size()) - 1))];
        m = m * (uniform(0, 1) ? g : inverse(g));
    }
    return m;
}

Real distance(const CMatrix &a, const CMatrix &b)
{
    return max_abs(a - b);
}

} // namespace

TEST_CASE("rational reconstruction")
{
    PrecisionScope ps(256);
    Real tol = ldexp(Real(1), -100);
    CHECK(rational_reconstruct(Complex(Real(R(1, 2))), 1000000, tol) == R(1, 2));
    Complex noisy(Real(R(-1, 48)) + ldexp(Real(1), -180), ldexp(Real(1), -200));
    CHECK(rational_reconstruct(noisy, 1000000, tol) == R(-1, 48));
    CHECK(rational_reconstruct(Complex(Real(7)), 10, tol) == 7);
    CHECK_THROWS_AS(rational_reconstruct(Complex(Real::pi()), 1000, tol), Error);
    // a large imaginary part is not a rational number
    CHECK_THROWS_AS(rational_reconstruct(Complex(Real(1), Real(R(1, 3))), 1000, tol), Error);
}

TEST_CASE("transport along an empty path is the identity")
{
    PrecisionScope ps(128);
    auto d = preset_operator("dn-31-1-D");
    PathPlan p;
    p.base = Complex(Real(R(-1, 10)));
    CHECK(distance(transport(d, p, 128), CMatrix::identity(4)) < ldexp(Real(1), -120));
}

TEST_CASE("transport of the holomorphic period jet")
{
    const long bits = 192;
    PrecisionScope ps(bits + 32);
    auto d = preset_operator("dn-31-1-D");
    auto basis = mum_scaled_basis(d, 20);
    Complex a(Real(R(-1, 10))), b(Real(R(-1, 5)), Real(R(1, 20)));
    PathPlan p;
    p.base = a;
    p.waypoints = {b};
    CMatrix phi = transport(d, p, bits);
    auto ja = evaluate_jet(d, basis.solutions[0], a, bits, 4);
    auto jb = evaluate_jet(d, basis.solutions[0], b, bits, 4);
    for (size_t i = 0; i < 4; ++i) {
        Complex acc;
        for (size_t j = 0; j < 4; ++j)
            acc += phi(i, j) * ja.d[j];
        CHECK(abs(acc - jb.d[i]) < ldexp(Real(1), -(bits - 16)) * (Real(1) + abs(jb.d[i])));
    }
}

TEST_CASE("transport inverse-path identity, 1000 random cases")
{
    const long bits = 40;
    PrecisionScope ps(bits + 32);
    auto d = preset_operator("dn-31-1-D");
    int failures = 0;
    Real tol = ldexp(Real(1), -(bits - 12));
    auto point = [] {
        // within 1/20 of the basepoint; nearest singularity is 1/10 away
        return Complex(Real(R(-1, 10)) + Real(R(uniform(-35, 35), 1000)), Real(R(uniform(-35, 35), 1000)));
    };
    for (int t = 0; t < 1000; ++t) {
        PathPlan p;
        p.base = point();
        for (long k = uniform(1, 2); k > 0; --k)
            p.waypoints.push_back(point());
        CMatrix there = transport(d, p, bits, 12), back = transport(d, reversed(p), bits, 12);
        failures += !(distance(back * there, CMatrix::identity(4)) < tol);
    }
    CHECK(failures == 0);
}

TEST_CASE("paths refuse to run into a singularity")
{
    PrecisionScope ps(96);
    auto d = preset_operator("dn-31-1-D");
    PathPlan p;
    p.base = Complex(Real(R(-1, 10)));
    p.waypoints = {Complex(Real(0))};
    CHECK_THROWS_AS(transport(d, p, 64), Error);
}

TEST_CASE("loop around the MUM point at low precision")
{
    MonodromyOptions opt;
    opt.precision = 128;
    auto rep = monodromy(preset_operator("dn-31-1-Dtilde"), {SingularPoint::at(0)}, opt);
    REQUIRE(rep.conifold.has_value());
    CHECK(rep.conifold->value == R(-1, 8));
    const MonodromyResult *t0 = nullptr, *tc = nullptr;
    for (auto &l : rep.loops)
        if (l.point.value.is_zero())
            t0 = &l;
    REQUIRE(t0);
    REQUIRE(t0->reconstructed);
    auto tcr = loop_monodromy(preset_operator("dn-31-1-Dtilde"), *rep.conifold, opt);
    REQUIRE(tcr.reconstructed);
    tc = &tcr;
    CHECK(t0->exact == standard_t0());
    CHECK(hms_invariants(t0->exact, tc->exact) == std::pair<Rational, Rational>(24, 48));
    // the scaled-basis matrix is the unipotent standard one as well
    CHECK(distance(t0->scaled, to_complex(standard_t0())) < ldexp(Real(1), -100));
}

TEST_CASE("HMS pattern")
{
    CHECK(hms_invariants(standard_t0(), t_conifold_d()) == std::pair<Rational, Rational>(192, 96));
    CHECK_THROWS_AS(hms_invariants(standard_t0(), QMatrix::identity(4)), Error);
    CHECK_THROWS_AS(hms_invariants(QMatrix::identity(4), t_conifold_d()), Error);
}

TEST_CASE("characteristic polynomial and Jordan type")
{
    auto x = [](std::vector<long> c) {
        std::vector<Rational> r(c.begin(), c.end());
        return Poly(r);
    };
    CHECK(charpoly(standard_t0()) == x({1, -4, 6, -4, 1}));
    CHECK(charpoly(t_one_d()) == x({1, 0, -2, 0, 1}));
    auto jt = jordan_type(standard_t0());
    REQUIRE(jt.size() == 1);
    CHECK(jt[0].first == 1);
    CHECK(jt[0].second == std::vector<size_t>{3, 2, 1, 0});
    auto j1 = jordan_type(t_one_d());
    REQUIRE(j1.size() == 2);
    CHECK(j1[0].first == -1);
    CHECK(j1[0].second == std::vector<size_t>{2, 2, 2, 2});
    CHECK(j1[1].first == 1);
    CHECK(j1[1].second == std::vector<size_t>{3, 2, 2, 2});
}

TEST_CASE("conjugator search")
{
    QMatrix t0 = standard_t0(), t1 = t_one_d();
    QMatrix b = inverse(t0) * t1 * t0;
    auto w = find_conjugator(t1, b, {t0, t_conifold_d()});
    REQUIRE(w.has_value());
    QMatrix g = QMatrix::identity(4);
    for (int i : *w)
        g = g * (i > 0 ? std::vector<QMatrix>{t0, t_conifold_d()}[static_cast<size_t>(i - 1)]
                       : inverse(std::vector<QMatrix>{t0, t_conifold_d()}[static_cast<size_t>(-i - 1)]));
    CHECK(g * t1 * inverse(g) == b);
}

TEST_CASE("determinant-1 and symplectic checks, 1000 random cases")
{
    std::vector<QMatrix> gens{standard_t0(), t_conifold_d(), t_one_d()};
    auto omega = common_symplectic_form(gens);
    REQUIRE(omega.has_value());
    REQUIRE_FALSE(det(*omega).is_zero());
    CHECK(omega->transpose() == Rational(-1) * *omega);
    int failures = 0;
    for (int t = 0; t < 1000; ++t) {
        QMatrix m = random_word(gens, 6);
        Poly cp = charpoly(m);
        // symplectic: determinant one, reciprocal characteristic polynomial
        bool ok = det(m) == 1 && m * *omega * m.transpose() == *omega && cp.coeff(0) == det(m) &&
                  cp == cp.reversed(4);
        failures += !ok;
    }
    CHECK(failures == 0);
    // a non-symplectic matrix destroys the common form
    QMatrix bad = QMatrix::identity(4);
    bad(0, 0) = 2;
    auto none = common_symplectic_form({standard_t0(), t_conifold_d(), t_one_d(), bad});
    CHECK((!none.has_value() || det(*none).is_zero()));
}

TEST_CASE("declared loop order")
{
    auto order = declared_loop_order(preset_operator("dn-31-1-D"));
    REQUIRE(order.size() == 4);
    CHECK(order[0].value == 4);
    CHECK(order[1].value == 1);
    CHECK(order[2].value == 0);
    CHECK(order[3].value == -8);
}
