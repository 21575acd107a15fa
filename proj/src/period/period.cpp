#include "cyp/period/period.hpp"
#include "cyp/error.hpp"
#include "cyp/exact/matrix.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace cyp {

namespace {

// Terms of h2 with c = 1: coefficient, powers of a, b, y0..y5.
struct H2Term {
    int coeff, a, b, y[6];
};

constexpr H2Term kH2[] = {
    {8, 0, 3, {0, 2, 0, 0, 2, 0}},   {-16, 0, 3, {1, 1, 0, 0, 1, 1}},  {4, 1, 2, {0, 1, 0, 1, 2, 0}},
    {4, 1, 2, {0, 1, 1, 0, 2, 0}},   {4, 1, 2, {0, 2, 0, 1, 1, 0}},    {4, 1, 2, {0, 2, 1, 0, 1, 0}},
    {4, 1, 2, {1, 0, 0, 0, 1, 2}},   {-4, 1, 2, {1, 0, 0, 1, 1, 1}},   {-4, 1, 2, {1, 0, 1, 0, 1, 1}},
    {-4, 1, 2, {1, 1, 0, 0, 0, 2}},  {-4, 1, 2, {1, 1, 0, 1, 0, 1}},   {-4, 1, 2, {1, 1, 1, 0, 0, 1}},
    {-4, 1, 2, {2, 0, 0, 0, 1, 1}},  {4, 1, 2, {2, 1, 0, 0, 0, 1}},    {2, 2, 1, {0, 1, 0, 0, 1, 2}},
    {2, 2, 1, {0, 1, 0, 0, 3, 0}},   {2, 2, 1, {0, 1, 0, 1, 1, 1}},    {2, 2, 1, {0, 1, 0, 2, 1, 0}},
    {-2, 2, 1, {0, 1, 1, 0, 1, 1}},  {2, 2, 1, {0, 1, 2, 0, 1, 0}},    {2, 2, 1, {0, 3, 0, 0, 1, 0}},
    {2, 2, 1, {1, 1, 0, 1, 1, 0}},   {-2, 2, 1, {1, 1, 1, 0, 1, 0}},   {2, 2, 1, {2, 1, 0, 0, 1, 0}},
    {-1, 3, 0, {0, 0, 0, 0, 1, 2}},  {1, 3, 0, {0, 0, 1, 0, 1, 2}},    {-1, 3, 0, {0, 0, 2, 0, 1, 1}},
    {1, 3, 0, {0, 1, 0, 0, 2, 1}},   {1, 3, 0, {0, 1, 0, 1, 0, 2}},    {1, 3, 0, {0, 1, 0, 2, 0, 1}},
    {-1, 3, 0, {0, 2, 0, 0, 1, 1}},  {1, 3, 0, {1, 0, 0, 1, 1, 1}},    {1, 3, 0, {1, 0, 0, 2, 1, 0}},
    {1, 3, 0, {1, 0, 1, 0, 1, 1}},   {1, 3, 0, {1, 1, 0, 0, 0, 2}},    {-1, 3, 0, {1, 1, 0, 0, 2, 0}},
    {1, 3, 0, {1, 1, 0, 1, 0, 1}},   {1, 3, 0, {1, 1, 1, 0, 0, 1}},    {-1, 3, 0, {1, 1, 2, 0, 0, 0}},
    {1, 3, 0, {1, 2, 0, 0, 1, 0}},   {1, 3, 0, {2, 0, 0, 0, 1, 1}},    {1, 3, 0, {2, 0, 0, 1, 1, 0}},
    {-1, 3, 0, {2, 1, 0, 0, 0, 1}},  {1, 3, 0, {2, 1, 1, 0, 0, 0}},
};

Exponent yexp(int y1, int y2, int y3, int y4, int a = 0)
{
    return Exponent{y1, y2, y3, y4, a};
}

LaurentPolynomial power(const LaurentPolynomial &p, int e)
{
    LaurentPolynomial r = LaurentPolynomial::constant(1);
    for (int i = 0; i < e; ++i)
        r = r * p;
    return r;
}

} // namespace

LaurentPolynomial affine_equation(const std::string &preset)
{
    if (preset != "dn-31-1")
        input_error("unknown-preset", "no built-in family named '" + preset + "'");
    // y0 = 1, b = c = 1, y5 = y1 y4 - y2 y3.
    LaurentPolynomial y5 = LaurentPolynomial::monomial(yexp(1, 0, 0, 1)) -
                           LaurentPolynomial::monomial(yexp(0, 1, 1, 0));
    LaurentPolynomial h;
    for (const auto &t : kH2) {
        LaurentPolynomial m = LaurentPolynomial::monomial(
            yexp(t.y[1], t.y[2], t.y[3], t.y[4], t.a), Rational(t.coeff));
        h += m * power(y5, t.y[5]);
    }
    LaurentPolynomial out;
    for (auto &[e, c] : h.terms())
        out.add_term(Exponent{e[0] - 1, e[1] - 1, e[2] - 1, e[3] - 1, e[4]}, c);
    return out;
}

CTProblem preset_problem(const std::string &preset, int order)
{
    CTProblem p;
    p.P = affine_equation(preset);
    p.torus.radii = {Rational(1, 20), Rational(1, 2), Rational(1, 20), Rational(1, 2)};
    p.torus.a_bound = Rational(1, 40);
    p.order = order;
    return p;
}

Decomposition decompose(const CTProblem &problem)
{
    for (auto &r : problem.torus.radii)
        if (r.sign() <= 0)
            input_error("bad-torus", "torus radii must be positive");
    if (problem.torus.a_bound.sign() < 0)
        input_error("bad-torus", "modulus bound on a must be nonnegative");
    if (problem.P.min_a_degree() < 0 && !problem.P.is_zero())
        input_error("negative-a-power", "coefficients must be polynomial in a");

    Decomposition d;
    d.c0 = problem.P.coeff(Exponent{});
    if (d.c0.is_zero())
        input_error("no-constant-term", "the a^0 part of P has no constant monomial");
    Rational inv = d.c0.inverse();
    for (auto &[e, c] : problem.P.terms()) {
        if (e == Exponent{})
            continue;
        d.V.add_term(e, -c * inv);
    }
    for (auto &[e, c] : d.V.terms()) {
        Rational mod = c.abs() * problem.torus.a_bound.pow(e[kAIndex]);
        for (int i = 0; i < kYVars; ++i)
            mod *= problem.torus.radii[static_cast<size_t>(i)].pow(e[static_cast<size_t>(i)]);
        if (mod >= Rational(1))
            computation_error("decomposition-infeasible",
                              "monomial with torus modulus " + mod.str() + " >= 1");
    }
    return d;
}

bool has_balanced_combination(const std::vector<std::array<int, 4>> &vectors)
{
    size_t n = vectors.size();
    if (n == 0)
        return false;
    int cap = 4 * static_cast<int>(n);
    std::vector<int> lam(n, 0);
    while (true) {
        size_t i = 0;
        while (i < n && lam[i] == cap)
            lam[i++] = 0;
        if (i == n)
            return false;
        ++lam[i];
        std::array<long, 4> s{};
        for (size_t j = 0; j < n; ++j)
            for (int k = 0; k < 4; ++k)
                s[k] += static_cast<long>(lam[j]) * vectors[j][static_cast<size_t>(k)];
        if (s == std::array<long, 4>{})
            return true;
    }
}

namespace detail {

namespace {

long long dot(const std::array<int, 4> &w, const std::array<long long, 4> &x)
{
    long long s = 0;
    for (size_t i = 0; i < 4; ++i)
        s += w[i] * x[i];
    return s;
}

} // namespace

CTSetup make_setup(const Decomposition &dec, int order)
{
    CTSetup s;
    s.order = order;
    int B = 0;
    for (auto &[e, c] : dec.V.terms()) {
        CTMonomial m;
        for (size_t i = 0; i < 4; ++i)
            m.e[i] = e[i];
        m.k = e[kAIndex];
        m.c = c;
        if (m.k == 0) {
            s.zero.push_back(m);
        } else {
            for (int x : m.e)
                B = std::max(B, std::abs(x));
            s.positive.push_back(m);
        }
    }
    s.box = order * B;

    std::vector<std::array<int, 4>> rays;
    for (auto &m : s.zero)
        rays.push_back(m.e);
    if (has_balanced_combination(rays))
        computation_error("cone-not-pointed", "the a^0 monomials of V admit a balanced product");

    // Feasibility cuts: state e at a-degree d can still reach a balanced term
    // below order N only if -e lies in R*conv(0, e_m/k_m) + cone(a^0 exponents)
    // with R = N-1-d. Keep the facet normals found among small integer vectors.
    long long L = 1;
    for (auto &m : s.positive)
        L = std::lcm(L, static_cast<long long>(m.k));
    s.scale = L;
    std::vector<std::array<long long, 4>> pts{{0, 0, 0, 0}};
    for (auto &m : s.positive) {
        std::array<long long, 4> p;
        for (size_t i = 0; i < 4; ++i)
            p[i] = m.e[i] * (L / m.k);
        pts.push_back(p);
    }
    size_t dim;
    {
        QMatrix M(pts.size() + rays.size(), 4);
        for (size_t i = 0; i < pts.size(); ++i)
            for (size_t j = 0; j < 4; ++j)
                M(i, j) = Rational(static_cast<long>(pts[i][j]));
        for (size_t i = 0; i < rays.size(); ++i)
            for (size_t j = 0; j < 4; ++j)
                M(pts.size() + i, j) = Rational(rays[i][j]);
        dim = rank(M);
    }
    std::array<int, 4> w;
    for (w[0] = -3; w[0] <= 3; ++w[0])
        for (w[1] = -3; w[1] <= 3; ++w[1])
            for (w[2] = -3; w[2] <= 3; ++w[2])
                for (w[3] = -3; w[3] <= 3; ++w[3]) {
                    int g = 0;
                    for (int x : w)
                        g = std::gcd(g, x);
                    if (g != 1)
                        continue;
                    bool bounded = true;
                    for (auto &r : rays) {
                        std::array<long long, 4> rl{r[0], r[1], r[2], r[3]};
                        bounded = bounded && dot(w, rl) <= 0;
                    }
                    if (!bounded)
                        continue;
                    long long h = 0;
                    for (auto &p : pts)
                        h = std::max(h, dot(w, p));
                    std::vector<std::array<long long, 4>> active;
                    for (auto &p : pts)
                        if (dot(w, p) == h)
                            active.push_back(p);
                    QMatrix M(active.size() - 1 + rays.size(), 4);
                    size_t row = 0;
                    for (size_t i = 1; i < active.size(); ++i, ++row)
                        for (size_t j = 0; j < 4; ++j)
                            M(row, j) = Rational(static_cast<long>(active[i][j] - active[0][j]));
                    for (auto &r : rays) {
                        std::array<long long, 4> rl{r[0], r[1], r[2], r[3]};
                        if (dot(w, rl) == 0)
                            for (size_t j = 0; j < 4; ++j)
                                M(row, j) = Rational(r[j]);
                        ++row;
                    }
                    if (rank(M) + 1 >= dim)
                        s.constraints.push_back({w, h});
                }
    return s;
}

bool feasible(const CTSetup &s, const std::array<int, 4> &e, int remaining)
{
    for (auto &c : s.constraints) {
        long long we = 0;
        for (size_t i = 0; i < 4; ++i)
            we += static_cast<long long>(c.w[i]) * e[i];
        if (-we * s.scale > static_cast<long long>(remaining) * c.h)
            return false;
    }
    return true;
}

bool modular_engine_applicable(const CTSetup &s)
{
    if (s.zero.size() > 1)
        return false;
    Integer den = 1;
    for (auto &m : s.positive)
        den = lcm(den, m.c.den());
    for (auto &m : s.zero)
        den = lcm(den, m.c.den());
    // at most four distinct primes in the denominators
    int primes = 0;
    for (unsigned long p = 2; den > 1; ++p) {
        if (den % p != 0)
            continue;
        ++primes;
        while (den % p == 0)
            den /= p;
        if (p > 1000000)
            return false;
    }
    return primes <= 4;
}

} // namespace detail

QSeries constant_term_series(const CTProblem &problem, CTEngine engine, CTStats *stats)
{
    if (problem.order < 1)
        input_error("bad-order", "truncation order must be positive");
    Decomposition dec = decompose(problem);
    detail::CTSetup setup = detail::make_setup(dec, problem.order);
    CTStats local;
    CTStats &st = stats ? *stats : local;
    if (engine == CTEngine::Auto)
        engine = detail::modular_engine_applicable(setup) ? CTEngine::Modular : CTEngine::Exact;
    if (engine == CTEngine::Modular && !detail::modular_engine_applicable(setup))
        input_error("engine-unavailable", "modular engine needs at most one a^0 monomial");
    st.engine = engine;
    std::vector<Rational> ct = engine == CTEngine::Modular ? detail::modular_engine(setup, st)
                                                          : detail::exact_engine(setup, st);
    Rational inv = dec.c0.inverse();
    for (auto &c : ct)
        c *= inv;
    return QSeries("a", std::move(ct));
}

QSeries even_reduction(const QSeries &s, const std::string &var)
{
    std::vector<Rational> out;
    for (size_t i = 0; i < s.order(); ++i) {
        if (i % 2 == 1) {
            if (!s[i].is_zero())
                computation_error("odd-coefficient-nonzero",
                                  "coefficient of " + s.var() + "^" + std::to_string(i) + " is " + s[i].str());
        } else {
            out.push_back(s[i]);
        }
    }
    return QSeries(var, std::move(out));
}

QSeries normalized(const QSeries &s)
{
    if (s.order() == 0 || s[0].is_zero())
        computation_error("zero-constant-term", "cannot normalize a series with zero constant term");
    return s * s[0].inverse();
}

} // namespace cyp
