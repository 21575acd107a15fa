#include "random_util.hpp"

#include "cyp/mirror/mirror.hpp"

#include <doctest.h>

using namespace cyp;
using namespace cyp::testing;

namespace {

Rational R(long n, long d = 1)
{
    return Rational(Integer(n), Integer(d));
}

// N_d = sum over k | d of n_(d/k) / k^3
std::vector<Rational> multicover(const std::vector<Rational> &n)
{
    std::vector<Rational> N(n.size(), Rational(0));
    for (size_t d = 1; d <= n.size(); ++d)
        for (size_t k = 1; k <= d; ++k)
            if (d % k == 0)
                N[d - 1] += n[d / k - 1] / Rational(static_cast<long>(k * k * k));
    return N;
}

} // namespace

TEST_CASE("multicover formula against a direct sum")
{
    std::vector<Rational> n{1, 2, 3, 4, 5, 6};
    CHECK(gw_from_gv(n) == multicover(n));
}

TEST_CASE("GV/GW inversion round trips, 1000 random cases")
{
    int failures = 0;
    for (int t = 0; t < 1000; ++t) {
        size_t len = static_cast<size_t>(uniform(1, 12));
        std::vector<Rational> n, N;
        for (size_t i = 0; i < len; ++i) {
            n.push_back(random_rational(1000, 7));
            N.push_back(random_rational(1000, 7));
        }
        bool ok = gv_from_gw(gw_from_gv(n)) == n && gw_from_gv(gv_from_gw(N)) == N && gw_from_gv(n) == multicover(n);
        // resummation and extraction invert each other
        Rational h3 = random_rational(50, 3);
        auto table = gw_gv(resum_gv(h3, n, len + 1));
        ok = ok && table.h3 == h3 && table.n == n;
        failures += !ok;
    }
    CHECK(failures == 0);
}

TEST_CASE("quintic mirror map against the harmonic-number closed form")
{
    auto op = preset_operator("quintic");
    const size_t n = 8;
    auto mm = mirror_map(op, static_cast<int>(n));
    // f1 = sum (5k)!/(k!)^5 * 5 (H_5k - H_k) z^k, g = f1 / f0
    QSeries f0("z", n), f1("z", n);
    for (size_t k = 0; k < n; ++k) {
        long kk = static_cast<long>(k);
        Integer w = factorial(5 * kk);
        for (int i = 0; i < 5; ++i)
            w /= factorial(kk);
        Rational h(0);
        for (long j = kk + 1; j <= 5 * kk; ++j)
            h += R(1, j);
        f0[k] = Rational(w);
        f1[k] = Rational(w) * h * Rational(5);
    }
    CHECK(mm.g == f1 * reciprocal(f0));
    CHECK(compose(mm.z_of_q, mm.q) == QSeries::variable("z", n));
}

TEST_CASE("mirror map of D")
{
    auto mm = mirror_map(preset_operator("dn-31-1-D"), 6);
    CHECK(mm.g[1] == R(3, 8));
    CHECK(mm.g[2] == R(81, 512));
    CHECK(mm.g[3] == R(187, 2048));
    CHECK(mm.g[4] == R(64797, 1048576));
}

TEST_CASE("B-model coupling in closed form")
{
    auto y = yukawa_B(preset_operator("dn-31-1-D"), 10);
    REQUIRE(y.closed_form);
    std::map<Rational, Rational> f(y.factors.begin(), y.factors.end());
    CHECK(f.size() == 3);
    CHECK(f[Rational(-8)] == -1);
    CHECK(f[Rational(1)] == -3);
    CHECK(f[Rational(4)] == 1);
}

TEST_CASE("quintic instantons")
{
    auto nz = normalize_instantons(preset_operator("quintic"), 12);
    CHECK(nz.table.h3 == 1);
    REQUIRE(nz.table.n.size() >= 3);
    CHECK(nz.table.n[0] * R(5) == 2875);
    CHECK(nz.table.n[1] * R(5) == 609250);
    CHECK(nz.table.n[2] * R(5) == 317206375);
    CHECK(nz.c2 == 1);
}

TEST_CASE("couplings of D and Dtilde")
{
    const int N = 20;
    auto d = normalize_instantons(preset_operator("dn-31-1-D"), N);
    auto dt = normalize_instantons(preset_operator("dn-31-1-Dtilde"), N);
    CHECK(d.c2 == R(1, 32));
    CHECK(d.kappa[0] == 2 * d.m);
    CHECK(d.kappa[2] == 72 * d.m);
    CHECK(d.kappa[4] == -2232 * d.m);
    CHECK(d.kappa[6] == 436176 * d.m);
    CHECK(d.kappa[8] == -7425720 * d.m);
    for (size_t k = 1; k < 9; k += 2)
        CHECK(d.kappa[k].is_zero());
    CHECK(dt.kappa[0] == dt.m);
    CHECK(dt.kappa[1] == 36 * dt.m);
    CHECK(dt.kappa[2] == -1116 * dt.m);
    CHECK(relation_check(dt.kappa, d.kappa, N));
    CHECK_FALSE(relation_check(d.kappa, dt.kappa, N));
}

TEST_CASE("central charge identity")
{
    auto d = normalize_instantons(preset_operator("dn-31-1-D"), 12);
    // c1 scaled to H^3 = 192
    std::vector<Rational> Nd;
    for (auto &x : d.table.N)
        Nd.push_back(x * Rational(96) / d.m);
    auto ok = central_charge_check(192, 96, 48, Nd, 8);
    CHECK(ok.polynomial_part_zero);
    // q^d terms: (2 N_d - d N_d t) / (2 pi i)^3
    CHECK(ok.leading_q == 2);
    CHECK(ok.leading.size() == 2);
    CHECK(ok.leading[FormalKey{2, 0, -3, 0}] == 2 * Nd[1]);
    CHECK(ok.leading[FormalKey{2, 1, -3, 0}] == -2 * Nd[1]);
    auto any = central_charge_check(7, -3, R(5, 2), {1, 2, 3}, 4);
    CHECK(any.polynomial_part_zero);
    auto none = central_charge_check(192, 96, 48, {0, 0, 0}, 4);
    CHECK(none.residual.empty());
}
