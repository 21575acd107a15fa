#include "cyp/mirror/mirror.hpp"
#include "cyp/error.hpp"
#include "cyp/frobenius/frobenius.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace cyp {

namespace {

int moebius(long n)
{
    int mu = 1;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p)
            continue;
        n /= p;
        if (n % p == 0)
            return 0;
        mu = -mu;
    }
    return n > 1 ? -mu : mu;
}

QSeries from_poly(const Poly &p, size_t order, const std::string &var)
{
    QSeries s(var, order);
    for (size_t i = 0; i < order && static_cast<int>(i) <= p.degree(); ++i)
        s[i] = p.coeff(static_cast<int>(i));
    return s;
}

// (1 + x)^e as a series with x = c z.
QSeries binomial_series(const Rational &c, const Rational &e, size_t order, const std::string &var)
{
    QSeries s(var, order);
    Rational term = 1;
    for (size_t k = 0; k < order; ++k) {
        s[k] = term;
        term = term * (e - Rational(static_cast<long>(k))) / Rational(static_cast<long>(k) + 1) * c;
    }
    return s;
}

struct FrobeniusPair {
    QSeries f0, g;
};

FrobeniusPair mum_data(const DifferentialOperator &op, int N)
{
    FrobeniusBasis b = mum_scaled_basis(op, N);
    const auto &y1 = b.solutions[1];
    QSeries f0 = b.solutions[0].S[0].renamed(op.var());
    QSeries g = (y1.S[0] * reciprocal(y1.S[1])).renamed(op.var());
    return {f0, g};
}

} // namespace

MirrorMap mirror_map(const DifferentialOperator &op, int N, const Rational &c2)
{
    if (N < 2)
        input_error("bad-order", "mirror map needs at least two terms");
    if (c2.is_zero())
        input_error("bad-normalization", "c2 must be nonzero");
    auto [f0, g] = mum_data(op, N);
    MirrorMap m;
    m.g = g;
    m.c2 = c2;
    m.q = shift_up(exp(g), 1) * c2;
    m.z_of_q = reverse(m.q).renamed("q");
    return m;
}

std::string YukawaB::str() const
{
    if (!closed_form)
        return "series only";
    std::string s = "c1";
    for (auto &[r, e] : factors) {
        std::string a = r.den() == 1 ? "" : r.den().get_str();
        std::string base = "(" + a + "z " + std::string(r.sign() > 0 ? "- " : "+ ") + Integer(abs(r.num())).get_str() + ")";
        s += " * " + base;
        if (!e.is_one())
            s += "^(" + e.str() + ")";
    }
    return s;
}

YukawaB yukawa_B(const DifferentialOperator &op, int N)
{
    const int r = op.order();
    const size_t n = static_cast<size_t>(std::max(N, 1));
    YukawaB out;
    Poly num = -op.coeff(r - 1);
    Poly den = Rational(2) * Poly::x() * op.coeff(r);
    if (num.is_zero()) {
        out.closed_form = true;
        out.series = QSeries::constant(op.var(), n, 1);
        return out;
    }
    Poly g = gcd(num, den);
    num = num.divmod(g).first;
    den = den.divmod(g).first;

    auto roots = rational_roots(den);
    int simple = 0;
    bool ok = num.degree() < den.degree();
    for (auto &rt : roots) {
        ok = ok && rt.multiplicity == 1 && !rt.value.is_zero();
        simple += rt.multiplicity;
    }
    ok = ok && simple == den.degree();
    if (ok) {
        Poly dd = den.derivative();
        out.closed_form = true;
        QSeries L = QSeries::constant(op.var(), n, 1);
        for (auto &rt : roots) {
            Rational e = num.eval(rt.value) / dd.eval(rt.value);
            out.factors.emplace_back(rt.value, e);
            if (e.is_integer()) {
                // primitive integer factor den*z - num
                QSeries lin = from_poly(Poly::linear_root(rt.value) * Rational(rt.value.den()), n, op.var());
                long k = e.num().get_si();
                QSeries p = QSeries::constant(op.var(), n, 1);
                for (long i = 0; i < std::labs(k); ++i)
                    p = p * lin;
                L = L * (k >= 0 ? p : reciprocal(p));
            } else {
                // (den z - num)^e up to the constant (-num)^e
                L = L * binomial_series(-rt.value.inverse(), e, n, op.var());
            }
        }
        out.series = L;
        return out;
    }
    if (den.coeff(0).is_zero())
        computation_error("yukawa-pole-at-origin", "dL/L has a pole at the origin");
    QSeries R = from_poly(num, n, op.var()) * reciprocal(from_poly(den, n, op.var()));
    QSeries I(op.var(), n);
    for (size_t i = 1; i < n; ++i)
        I[i] = R[i - 1] / Rational(static_cast<long>(i));
    out.series = exp(I);
    return out;
}

QSeries yukawa_A(const DifferentialOperator &op, const Rational &c1, const Rational &c2, int N)
{
    if (N < 2)
        input_error("bad-order", "couplings need at least two terms");
    if (c2.is_zero())
        input_error("bad-normalization", "c2 must be nonzero");
    auto [f0, g] = mum_data(op, N);
    const size_t n = static_cast<size_t>(N);
    QSeries one = QSeries::constant(op.var(), n, 1);
    QSeries dq = one + theta(g);  // d log q / d log z
    QSeries L = yukawa_B(op, N).series;
    QSeries K = L * reciprocal(f0 * f0 * dq * dq * dq) * c1;
    QSeries Q = shift_up(exp(g), 1);
    QSeries kappa = compose(K, reverse(Q));
    return scale_var(kappa, c2.inverse()).renamed("q");
}

std::vector<Rational> gw_from_gv(const std::vector<Rational> &n)
{
    std::vector<Rational> N(n.size());
    for (long d = 1; d <= static_cast<long>(n.size()); ++d)
        for (long k = 1; k <= d; ++k)
            if (d % k == 0)
                N[static_cast<size_t>(d - 1)] += n[static_cast<size_t>(d / k - 1)] / Rational(k * k * k);
    return N;
}

std::vector<Rational> gv_from_gw(const std::vector<Rational> &N)
{
    std::vector<Rational> n(N.size());
    for (long d = 1; d <= static_cast<long>(N.size()); ++d)
        for (long k = 1; k <= d; ++k) {
            if (d % k)
                continue;
            int mu = moebius(k);
            if (mu)
                n[static_cast<size_t>(d - 1)] += Rational(mu) * N[static_cast<size_t>(d / k - 1)] / Rational(k * k * k);
        }
    return n;
}

InstantonTable gw_gv(const QSeries &kappa)
{
    InstantonTable t;
    if (kappa.order() == 0)
        return t;
    t.h3 = kappa[0];
    for (size_t d = 1; d < kappa.order(); ++d) {
        long dl = static_cast<long>(d);
        t.N.push_back(kappa[d] / Rational(dl * dl * dl));
    }
    t.n = gv_from_gw(t.N);
    return t;
}

QSeries resum_gv(const Rational &h3, const std::vector<Rational> &n, size_t order, const std::string &var)
{
    QSeries k(var, order);
    if (order)
        k[0] = h3;
    for (size_t d = 1; d <= n.size(); ++d) {
        long dl = static_cast<long>(d);
        Rational c = n[d - 1] * Rational(dl * dl * dl);
        for (size_t j = d; j < order; j += d)
            k[j] += c;
    }
    return k;
}

std::string InstantonTable::text() const
{
    std::ostringstream os;
    os << "H^3 term: " << h3.str() << "   c1 = " << c1.str() << "   c2 = " << c2.str() << "   m = " << m.str()
       << "\n";
    size_t wN = 3, wn = 3;
    for (size_t i = 0; i < N.size(); ++i) {
        wN = std::max(wN, N[i].str().size());
        wn = std::max(wn, n[i].str().size());
    }
    os << std::setw(4) << "d" << "  " << std::setw(static_cast<int>(wN)) << "N_d" << "  "
       << std::setw(static_cast<int>(wn)) << "n_d" << "\n";
    for (size_t i = 0; i < N.size(); ++i)
        os << std::setw(4) << i + 1 << "  " << std::setw(static_cast<int>(wN)) << N[i].str() << "  "
           << std::setw(static_cast<int>(wn)) << n[i].str() << "\n";
    return os.str();
}

namespace {

std::map<unsigned long, long> small_factors(Integer x, std::map<unsigned long, long> acc = {})
{
    x = abs(x);
    for (unsigned long p = 2; p < 1000 && x > 1; ++p) {
        if (!mpz_divisible_ui_p(x.get_mpz_t(), p))
            continue;
        long e = 0;
        while (mpz_divisible_ui_p(x.get_mpz_t(), p)) {
            x /= p;
            ++e;
        }
        acc[p] = std::max(acc[p], e);
    }
    return acc;
}

// Stable lcm of the denominators of n_d for kappa(q / c2), or 0 if the
// denominators keep growing.
Integer stable_denominator(const QSeries &kappa, const Rational &c2)
{
    QSeries k = scale_var(kappa, c2.inverse());
    auto t = gw_gv(k);
    const size_t D = t.n.size();
    Integer half = 1, full = 1;
    for (size_t d = 0; d < D; ++d) {
        full = lcm(full, t.n[d].den());
        if (2 * (d + 1) <= D)
            half = lcm(half, t.n[d].den());
    }
    return half == full ? full : Integer(0);
}

} // namespace

Normalization normalize_instantons(const DifferentialOperator &op, int N, long search_bound)
{
    if (N < 12)
        input_error("bad-order", "normalization needs at least 12 terms");
    QSeries kappa = yukawa_A(op, 1, 1, N);

    // Primes whose valuations drift linearly in d: those in some denominator,
    // and small primes dividing every nonzero numerator beyond q^1.
    std::map<unsigned long, long> primes;
    std::set<unsigned long> everywhere;
    bool first = true;
    for (size_t d = 1; d < kappa.order(); ++d) {
        if (kappa[d].is_zero())
            continue;
        primes = small_factors(kappa[d].den(), primes);
        if (d < 2)
            continue;
        std::set<unsigned long> here;
        for (auto &[p, e] : small_factors(kappa[d].num()))
            if (p < 100)
                here.insert(p);
        if (first)
            everywhere = here;
        else {
            std::set<unsigned long> keep;
            std::set_intersection(everywhere.begin(), everywhere.end(), here.begin(), here.end(),
                                  std::inserter(keep, keep.begin()));
            everywhere = keep;
        }
        first = false;
    }
    for (auto p : everywhere)
        primes.emplace(p, 0);

    std::vector<std::pair<unsigned long, std::vector<long>>> ranges;
    size_t total = 1;
    const size_t D = kappa.order() - 1;
    for (auto &[p, unused] : primes) {
        double lo = 1e300, hi = -1e300;
        for (size_t d = (D + 1) / 2; d <= D; ++d) {
            if (kappa[d].is_zero())
                continue;
            double s = static_cast<double>(valuation(kappa[d], p)) / static_cast<double>(d);
            lo = std::min(lo, s);
            hi = std::max(hi, s);
        }
        if (lo > hi)
            continue;
        std::vector<long> es;
        for (long e = static_cast<long>(std::floor(lo)) - 1; e <= std::max(0L, static_cast<long>(std::ceil(hi))) + 1; ++e)
            es.push_back(e);
        total *= es.size();
        ranges.emplace_back(p, es);
    }
    if (total > 100000)
        computation_error("no-integral-normalization", "normalization search space too large");

    struct Candidate {
        Rational c2;
        Integer den;
    };
    std::vector<Candidate> valid;
    std::vector<size_t> pos(ranges.size(), 0);
    for (size_t it = 0; it < total; ++it) {
        Rational c = 1;
        for (size_t i = 0; i < ranges.size(); ++i)
            c *= Rational(static_cast<long>(ranges[i].first)).pow(ranges[i].second[pos[i]]);
        for (size_t i = 0; i < ranges.size(); ++i) {
            if (++pos[i] < ranges[i].second.size())
                break;
            pos[i] = 0;
        }
        if (abs(c.num()) > search_bound || c.den() > search_bound)
            continue;
        for (int sign : {1, -1}) {
            Rational cs = c * Rational(sign);
            Integer den = stable_denominator(kappa, cs);
            if (den != 0)
                valid.push_back({cs, den});
        }
    }
    if (valid.empty())
        computation_error("no-integral-normalization", "no c2 = +-prod p^e with bounded parts gives integral n_d");

    const int h3_sign = kappa[0].sign() < 0 ? -1 : 1;
    auto first_n_positive = [&](const Rational &c2) {
        auto t = gw_gv(scale_var(kappa, c2.inverse()));
        for (auto &x : t.n)
            if (!x.is_zero())
                return x.sign() == h3_sign;
        return true;
    };
    std::sort(valid.begin(), valid.end(), [&](const Candidate &a, const Candidate &b) {
        if (a.c2.den() != b.c2.den())
            return a.c2.den() < b.c2.den();
        if (abs(a.c2.num()) != abs(b.c2.num()))
            return abs(a.c2.num()) < abs(b.c2.num());
        bool pa = first_n_positive(a.c2), pb = first_n_positive(b.c2);
        if (pa != pb)
            return pa;
        return a.c2.sign() > b.c2.sign();
    });

    Normalization out;
    out.c2 = valid.front().c2;
    out.m = 1;
    out.c1 = Rational(valid.front().den) * out.m * Rational(h3_sign);
    out.kappa = scale_var(kappa, out.c2.inverse()) * out.c1;
    out.kappa = out.kappa.renamed("q");
    out.table = gw_gv(out.kappa);
    out.table.c1 = out.c1;
    out.table.c2 = out.c2;
    out.table.m = out.m;
    return out;
}

bool relation_check(const QSeries &kappa_a, const QSeries &kappa_b, int N)
{
    if (N < 0 || kappa_b.order() < static_cast<size_t>(N) || 2 * kappa_a.order() < static_cast<size_t>(N))
        input_error("bad-order", "series too short for the requested relation order");
    for (size_t n = 0; n < static_cast<size_t>(N); ++n) {
        Rational lhs = n % 2 ? Rational(0) : Rational(2) * kappa_a[n / 2];
        if (lhs != kappa_b[n])
            return false;
    }
    return true;
}

CentralChargeCheck central_charge_check(const Rational &h3, const Rational &c2h, const Rational &c3,
                                        const std::vector<Rational> &Nd, int N)
{
    CentralChargeCheck out;
    auto add = [](FormalSum &s, FormalKey k, const Rational &v) {
        if (v.is_zero())
            return;
        Rational &x = s[k];
        x += v;
        if (x.is_zero())
            s.erase(k);
    };
    // F0 = h3/6 t^3 + sum N_d q^d,  q = e^t
    FormalSum F0;
    add(F0, {0, 3, 0, 0}, h3 / Rational(6));
    for (int d = 1; d < N && d <= static_cast<int>(Nd.size()); ++d)
        add(F0, {d, 0, 0, 0}, Nd[static_cast<size_t>(d - 1)]);
    // G = 2 F0 - t dF0/dt
    FormalSum G;
    for (auto &[k, v] : F0) {
        add(G, k, Rational(2) * v);
        if (k.t > 0)
            add(G, {k.q, k.t, k.tau, k.zeta}, -Rational(k.t) * v);
        if (k.q > 0)
            add(G, {k.q, k.t + 1, k.tau, k.zeta}, -Rational(k.q) * v);
    }
    // Z = -c3 zeta(3)/(2 pi i)^3 - c2h/24 t/(2 pi i) + G/(2 pi i)^3
    add(out.Z, {0, 0, -3, 1}, -c3);
    add(out.Z, {0, 1, -1, 0}, -c2h / Rational(24));
    for (auto &[k, v] : G)
        add(out.Z, {k.q, k.t, k.tau - 3, k.zeta}, v);

    // residual = Z + (h3/6 s^3 + c2h/24 s + c3 zeta(3)/(2 pi i)^3), s = t/(2 pi i)
    out.residual = out.Z;
    add(out.residual, {0, 3, -3, 0}, h3 / Rational(6));
    add(out.residual, {0, 1, -1, 0}, c2h / Rational(24));
    add(out.residual, {0, 0, -3, 1}, c3);

    out.polynomial_part_zero = true;
    for (auto &[k, v] : out.residual)
        if (k.q == 0)
            out.polynomial_part_zero = false;
    for (auto &[k, v] : out.residual)
        if (k.q > 0 && (out.leading_q == 0 || k.q < out.leading_q))
            out.leading_q = k.q;
    for (auto &[k, v] : out.residual)
        if (k.q == out.leading_q && out.leading_q > 0)
            out.leading.emplace(k, v);
    return out;
}

std::string to_string(const FormalSum &s)
{
    if (s.empty())
        return "0";
    std::string out;
    for (auto &[k, v] : s) {
        if (!out.empty())
            out += " + ";
        out += "(" + v.str() + ")";
        if (k.q)
            out += "*q^" + std::to_string(k.q);
        if (k.t)
            out += "*t^" + std::to_string(k.t);
        if (k.tau)
            out += "*(2*pi*i)^" + std::to_string(k.tau);
        if (k.zeta)
            out += "*zeta(3)";
    }
    return out;
}

} // namespace cyp
