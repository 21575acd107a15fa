// Multi-modular constant-term engine for V with at most one a^0 monomial.
//
// States at a-degree d are stored as dense rows along one exponent axis,
// keyed by the remaining three exponents (the prefix). Each target row pulls
// from the rows of earlier degrees shifted by every a-positive monomial and
// from its predecessor along the a^0 monomial in the same degree. Rows are
// visited in the order of (m0'.p, p) so that predecessors are always final.
//
// A first sweep propagates absolute values and p-adic valuations for the
// primes in the coefficient denominators; it fixes how many 31-bit moduli the
// residue sweeps need so that the CRT lift is exact.

#include "cyp/error.hpp"
#include "cyp/period/period.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <deque>

namespace cyp::detail {

namespace {

using u32 = uint32_t;
using u64 = uint64_t;
using Prefix = std::array<int, 3>;

struct GeoMonomial {
    Prefix p{};
    int r = 0;
    int k = 0;
};

struct GeoConstraint {
    Prefix wp{};
    long long a = 0; // coefficient of the row coordinate after moving it left
    long long h = 0;
};

struct Geometry {
    int order = 0;
    int axis = 0;
    int kmax = 0;
    std::vector<GeoMonomial> pos;
    bool chain = false;
    Prefix m0p{};
    int m0r = 0;
    long long scale = 1;
    std::vector<GeoConstraint> cons;

    Prefix prefix_of(const std::array<int, 4> &e) const
    {
        Prefix p{};
        int j = 0;
        for (int i = 0; i < 4; ++i)
            if (i != axis)
                p[static_cast<size_t>(j++)] = e[static_cast<size_t>(i)];
        return p;
    }

    long long key(const Prefix &p) const
    {
        return static_cast<long long>(m0p[0]) * p[0] + static_cast<long long>(m0p[1]) * p[1] +
               static_cast<long long>(m0p[2]) * p[2];
    }

    // Narrow [lo, hi] to the feasible row coordinates of prefix p at budget R.
    void clip(const Prefix &p, int R, int &lo, int &hi) const
    {
        for (auto &c : cons) {
            long long rhs = static_cast<long long>(R) * c.h +
                            scale * (static_cast<long long>(c.wp[0]) * p[0] +
                                     static_cast<long long>(c.wp[1]) * p[1] +
                                     static_cast<long long>(c.wp[2]) * p[2]);
            long long a = c.a;
            if (a == 0) {
                if (rhs < 0) {
                    lo = 1;
                    hi = 0;
                    return;
                }
            } else if (a > 0) {
                long long ub = rhs >= 0 ? rhs / a : -((-rhs + a - 1) / a);
                if (ub < hi)
                    hi = static_cast<int>(std::max<long long>(ub, INT_MIN / 2));
            } else {
                long long aa = -a;
                long long lb = rhs >= 0 ? -(rhs / aa) : (-rhs + aa - 1) / aa;
                if (lb > lo)
                    lo = static_cast<int>(std::min<long long>(lb, INT_MAX / 2));
            }
            if (lo > hi)
                return;
        }
    }
};

// Row axes for which the a^0 monomial still moves the prefix.
std::vector<int> admissible_axes(const CTSetup &s)
{
    std::vector<int> out;
    for (int i = 0; i < 4; ++i) {
        bool ok = s.zero.empty();
        for (int j = 0; j < 4 && !ok; ++j)
            ok = j != i && s.zero[0].e[static_cast<size_t>(j)] != 0;
        if (ok)
            out.push_back(i);
    }
    return out;
}

Geometry make_geometry(const CTSetup &s, int axis, int order)
{
    Geometry g;
    g.order = order;
    g.scale = s.scale;
    g.axis = axis;
    std::array<int, 4> m0{};
    if (!s.zero.empty()) {
        g.chain = true;
        m0 = s.zero[0].e;
    }
    for (auto &m : s.positive) {
        g.pos.push_back({g.prefix_of(m.e), m.e[static_cast<size_t>(g.axis)], m.k});
        g.kmax = std::max(g.kmax, m.k);
    }
    if (g.chain) {
        g.m0p = g.prefix_of(m0);
        g.m0r = m0[static_cast<size_t>(g.axis)];
    }
    for (auto &c : s.constraints) {
        GeoConstraint gc;
        gc.wp = g.prefix_of(c.w);
        gc.a = -s.scale * c.w[static_cast<size_t>(g.axis)];
        gc.h = c.h;
        g.cons.push_back(gc);
    }
    return g;
}

template <class Cell>
struct Layer {
    Prefix b0{0, 0, 0}, b1{-1, -1, -1};
    std::vector<int> index;
    std::vector<Prefix> pre;
    std::vector<int> lo, hi;
    std::vector<size_t> off;
    std::vector<Cell> pool;

    size_t slot(const Prefix &p) const
    {
        return (static_cast<size_t>(p[0] - b0[0]) * static_cast<size_t>(b1[1] - b0[1] + 1) +
                static_cast<size_t>(p[1] - b0[1])) *
                   static_cast<size_t>(b1[2] - b0[2] + 1) +
               static_cast<size_t>(p[2] - b0[2]);
    }
    int find(const Prefix &p) const
    {
        for (size_t i = 0; i < 3; ++i)
            if (p[i] < b0[i] || p[i] > b1[i])
                return -1;
        return index[slot(p)];
    }
    void build_index()
    {
        if (pre.empty()) {
            b0 = {0, 0, 0};
            b1 = {-1, -1, -1};
            index.clear();
            return;
        }
        b0 = b1 = pre[0];
        for (auto &p : pre)
            for (size_t i = 0; i < 3; ++i) {
                b0[i] = std::min(b0[i], p[i]);
                b1[i] = std::max(b1[i], p[i]);
            }
        size_t n = 1;
        for (size_t i = 0; i < 3; ++i)
            n *= static_cast<size_t>(b1[i] - b0[i] + 1);
        index.assign(n, -1);
        for (size_t r = 0; r < pre.size(); ++r)
            index[slot(pre[r])] = static_cast<int>(r);
    }
};

// Runs one sweep over all a-degrees; Arith supplies the cell algebra.
template <class Arith>
long sweep(const Geometry &g, Arith &arith)
{
    using Cell = typename Arith::Cell;
    const int N = g.order;
    std::vector<Layer<Cell>> S(static_cast<size_t>(N));
    long cells = 0;

    struct Candidate {
        Prefix p;
        int lo, hi;
    };
    struct Pending {
        Prefix p;
        int pred;
    };

    for (int d = 0; d < N; ++d) {
        const int R = N - 1 - d;
        Layer<Cell> &cur = S[static_cast<size_t>(d)];

        // Candidate rows from the a-positive monomials.
        std::vector<Candidate> cand;
        if (d == 0) {
            cand.push_back({{0, 0, 0}, 0, 0});
        } else {
            Prefix b0{INT_MAX, INT_MAX, INT_MAX}, b1{INT_MIN, INT_MIN, INT_MIN};
            for (auto &m : g.pos) {
                if (m.k > d)
                    continue;
                auto &L = S[static_cast<size_t>(d - m.k)];
                if (L.pre.empty())
                    continue;
                for (size_t i = 0; i < 3; ++i) {
                    b0[i] = std::min(b0[i], L.b0[i] + m.p[i]);
                    b1[i] = std::max(b1[i], L.b1[i] + m.p[i]);
                }
            }
            if (b0[0] <= b1[0]) {
                Layer<Cell> box;
                box.b0 = b0;
                box.b1 = b1;
                size_t n = 1;
                for (size_t i = 0; i < 3; ++i)
                    n *= static_cast<size_t>(b1[i] - b0[i] + 1);
                box.index.assign(n, -1);
                for (auto &m : g.pos) {
                    if (m.k > d)
                        continue;
                    auto &L = S[static_cast<size_t>(d - m.k)];
                    for (size_t r = 0; r < L.pre.size(); ++r) {
                        Prefix q{L.pre[r][0] + m.p[0], L.pre[r][1] + m.p[1], L.pre[r][2] + m.p[2]};
                        int &id = box.index[box.slot(q)];
                        if (id < 0) {
                            id = static_cast<int>(cand.size());
                            cand.push_back({q, INT_MAX, INT_MIN});
                        }
                        auto &c = cand[static_cast<size_t>(id)];
                        c.lo = std::min(c.lo, L.lo[r] + m.r);
                        c.hi = std::max(c.hi, L.hi[r] + m.r);
                    }
                }
            }
        }
        std::vector<Candidate> live;
        for (auto &c : cand) {
            g.clip(c.p, R, c.lo, c.hi);
            if (c.lo <= c.hi)
                live.push_back(c);
        }
        auto less = [&](const Prefix &a, const Prefix &b) {
            long long ka = g.key(a), kb = g.key(b);
            return ka != kb ? ka < kb : a < b;
        };
        std::sort(live.begin(), live.end(), [&](auto &a, auto &b) { return less(a.p, b.p); });

        // Merge with the chain successors, which arrive in increasing order.
        std::vector<int> pred;
        std::deque<Pending> succ;
        size_t i = 0;
        while (i < live.size() || !succ.empty()) {
            Prefix p;
            bool from_live = false, from_succ = false;
            if (!succ.empty() && (i == live.size() || !less(live[i].p, succ.front().p))) {
                p = succ.front().p;
                from_succ = true;
                if (i < live.size() && live[i].p == p)
                    from_live = true;
            } else {
                p = live[i].p;
                from_live = true;
            }
            int lo = INT_MAX, hi = INT_MIN, pr = -1;
            if (from_live) {
                lo = live[i].lo;
                hi = live[i].hi;
                ++i;
            }
            if (from_succ) {
                pr = succ.front().pred;
                succ.pop_front();
                lo = std::min(lo, cur.lo[static_cast<size_t>(pr)] + g.m0r);
                hi = std::max(hi, cur.hi[static_cast<size_t>(pr)] + g.m0r);
                g.clip(p, R, lo, hi);
            }
            if (lo > hi)
                continue;
            int id = static_cast<int>(cur.pre.size());
            cur.pre.push_back(p);
            cur.lo.push_back(lo);
            cur.hi.push_back(hi);
            pred.push_back(pr);
            if (g.chain)
                succ.push_back({{p[0] + g.m0p[0], p[1] + g.m0p[1], p[2] + g.m0p[2]}, id});
        }
        size_t off = 0;
        for (size_t r = 0; r < cur.pre.size(); ++r) {
            cur.off.push_back(off);
            off += static_cast<size_t>(cur.hi[r] - cur.lo[r] + 1);
        }
        cells += static_cast<long>(off);
        cur.pool.resize(off);
        arith.clear(cur.pool.data(), off);
        cur.build_index();

        // Values.
        for (size_t t = 0; t < cur.pre.size(); ++t) {
            const Prefix &q = cur.pre[t];
            const int lo = cur.lo[t], hi = cur.hi[t];
            Cell *dst = cur.pool.data() + cur.off[t];
            if (d == 0 && q == Prefix{0, 0, 0} && lo <= 0 && hi >= 0)
                arith.set_one(dst[-lo]);
            for (size_t mi = 0; mi < g.pos.size(); ++mi) {
                const auto &m = g.pos[mi];
                if (m.k > d)
                    continue;
                const auto &L = S[static_cast<size_t>(d - m.k)];
                int r = L.find({q[0] - m.p[0], q[1] - m.p[1], q[2] - m.p[2]});
                if (r < 0)
                    continue;
                int a = std::max(lo, L.lo[static_cast<size_t>(r)] + m.r);
                int b = std::min(hi, L.hi[static_cast<size_t>(r)] + m.r);
                if (a > b)
                    continue;
                arith.axpy(dst + (a - lo),
                           L.pool.data() + L.off[static_cast<size_t>(r)] +
                               (a - m.r - L.lo[static_cast<size_t>(r)]),
                           static_cast<size_t>(b - a + 1), mi);
            }
            if (int pr = pred[t]; pr >= 0) {
                size_t u = static_cast<size_t>(pr);
                int a = std::max(lo, cur.lo[u] + g.m0r);
                int b = std::min(hi, cur.hi[u] + g.m0r);
                if (a <= b)
                    arith.axpy(dst + (a - lo), cur.pool.data() + cur.off[u] + (a - g.m0r - cur.lo[u]),
                               static_cast<size_t>(b - a + 1), g.pos.size());
            }
        }

        int z = cur.find({0, 0, 0});
        if (z >= 0 && cur.lo[static_cast<size_t>(z)] <= 0 && cur.hi[static_cast<size_t>(z)] >= 0)
            arith.take(d, cur.pool[cur.off[static_cast<size_t>(z)] + static_cast<size_t>(-cur.lo[static_cast<size_t>(z)])]);
        else
            arith.take_zero(d);
        if (d >= g.kmax)
            S[static_cast<size_t>(d - g.kmax)] = Layer<Cell>();
    }
    return cells;
}

// Absolute values and valuations at up to four primes.
constexpr int kMaxPrimes = 4;
constexpr int kNoValue = 1 << 29;

struct BoundArith {
    struct Cell {
        double a;
        int v[kMaxPrimes];
    };
    std::vector<double> absc;
    std::vector<std::array<int, kMaxPrimes>> valc;
    std::vector<Cell> out;

    void clear(Cell *c, size_t n)
    {
        for (size_t i = 0; i < n; ++i) {
            c[i].a = 0;
            for (int &v : c[i].v)
                v = kNoValue;
        }
    }
    void set_one(Cell &c)
    {
        c.a = 1;
        for (int &v : c.v)
            v = 0;
    }
    void axpy(Cell *dst, const Cell *src, size_t n, size_t m)
    {
        const double ca = absc[m];
        const auto &cv = valc[m];
        for (size_t i = 0; i < n; ++i) {
            dst[i].a += ca * src[i].a;
            for (int j = 0; j < kMaxPrimes; ++j)
                dst[i].v[j] = std::min(dst[i].v[j], std::min(src[i].v[j] + cv[static_cast<size_t>(j)], kNoValue));
        }
    }
    void take(int d, const Cell &c) { out[static_cast<size_t>(d)] = c; }
    void take_zero(int d) { clear(&out[static_cast<size_t>(d)], 1); }
};

// Shape only; used to compare row axes.
struct NullArith {
    struct Cell {};
    void clear(Cell *, size_t) {}
    void set_one(Cell &) {}
    void axpy(Cell *, const Cell *, size_t, size_t) {}
    void take(int, const Cell &) {}
    void take_zero(int) {}
};

template <int L>
struct ModArith {
    struct alignas(4 * L) Cell {
        u32 v[L];
    };
    Cell p;
    std::vector<Cell> c, cs; // coefficient and its Shoup companion, per monomial
    std::vector<Cell> out;

    void clear(Cell *x, size_t n) { std::memset(static_cast<void *>(x), 0, n * sizeof(Cell)); }
    void set_one(Cell &x)
    {
        for (int j = 0; j < L; ++j)
            x.v[j] = 1;
    }
    void axpy(Cell *__restrict dst, const Cell *__restrict src, size_t n, size_t m)
    {
        const Cell cm = c[m], csm = cs[m], pm = p;
        for (size_t i = 0; i < n; ++i) {
#pragma GCC unroll 16
            for (int j = 0; j < L; ++j) {
                u32 t = src[i].v[j];
                u32 q = static_cast<u32>((static_cast<u64>(csm.v[j]) * t) >> 32);
                u32 r = cm.v[j] * t - q * pm.v[j];
                r = std::min(r, r - pm.v[j]);
                u32 s = dst[i].v[j] + r;
                dst[i].v[j] = std::min(s, s - pm.v[j]);
            }
        }
    }
    void take(int d, const Cell &x) { out[static_cast<size_t>(d)] = x; }
    void take_zero(int d) { clear(&out[static_cast<size_t>(d)], 1); }
};

u32 pow_mod(u64 a, u64 e, u32 p)
{
    u64 r = 1;
    a %= p;
    while (e) {
        if (e & 1)
            r = r * a % p;
        a = a * a % p;
        e >>= 1;
    }
    return static_cast<u32>(r);
}

u32 residue(const Rational &x, u32 p)
{
    u32 n = static_cast<u32>(mpz_fdiv_ui(x.num().get_mpz_t(), p));
    u32 d = static_cast<u32>(mpz_fdiv_ui(x.den().get_mpz_t(), p));
    return static_cast<u32>(static_cast<u64>(n) * pow_mod(d, p - 2, p) % p);
}

bool is_prime(u32 n)
{
    if (n < 2 || n % 2 == 0)
        return n == 2;
    for (u32 f = 3; static_cast<u64>(f) * f <= n; f += 2)
        if (n % f == 0)
            return false;
    return true;
}

template <int L>
void residue_sweep(const Geometry &g, const std::vector<Rational> &coef, const std::vector<u32> &primes,
                   size_t first, std::vector<std::vector<u32>> &res)
{
    ModArith<L> arith;
    arith.c.resize(coef.size());
    arith.cs.resize(coef.size());
    arith.out.resize(static_cast<size_t>(g.order));
    for (int j = 0; j < L; ++j) {
        u32 p = primes[first + static_cast<size_t>(j)];
        arith.p.v[j] = p;
        for (size_t m = 0; m < coef.size(); ++m) {
            u32 c = residue(coef[m], p);
            arith.c[m].v[j] = c;
            arith.cs[m].v[j] = static_cast<u32>((static_cast<u64>(c) << 32) / p);
        }
    }
    sweep(g, arith);
    for (int d = 0; d < g.order; ++d)
        for (int j = 0; j < L; ++j)
            res[static_cast<size_t>(d)][first + static_cast<size_t>(j)] = arith.out[static_cast<size_t>(d)].v[j];
}

} // namespace

std::vector<Rational> modular_engine(const CTSetup &s, CTStats &stats)
{
    if (!modular_engine_applicable(s))
        input_error("engine-unavailable", "modular engine needs at most one a^0 monomial");
    const int N = s.order;
    std::vector<Rational> ct(static_cast<size_t>(N));
    if (s.positive.empty()) {
        // Only the a^0 chain: its powers are never balanced.
        ct[0] = 1;
        return ct;
    }
    // Lattice parity can leave every other cell of a row empty; pick the axis
    // with the fewest stored cells on a short trial run.
    int axis = -1;
    long fewest = 0;
    for (int a : admissible_axes(s)) {
        NullArith null;
        long cells = sweep(make_geometry(s, a, std::min(N, 16)), null);
        if (axis < 0 || cells < fewest) {
            axis = a;
            fewest = cells;
        }
    }
    Geometry g = make_geometry(s, axis, N);

    std::vector<Rational> coef;
    for (auto &m : s.positive)
        coef.push_back(m.c);
    if (g.chain)
        coef.push_back(s.zero[0].c);
    else
        coef.push_back(Rational(0));

    // Primes of the denominators.
    std::vector<unsigned long> vp;
    {
        Integer den = 1;
        for (auto &c : coef)
            den = lcm(den, c.den());
        for (unsigned long p = 2; den > 1; ++p)
            if (den % p == 0) {
                vp.push_back(p);
                while (den % p == 0)
                    den /= p;
            }
    }

    BoundArith bound;
    bound.out.resize(static_cast<size_t>(N));
    for (auto &c : coef) {
        bound.absc.push_back(std::abs(c.to_double()));
        std::array<int, kMaxPrimes> v{};
        for (size_t i = 0; i < vp.size(); ++i)
            v[i] = c.is_zero() ? kNoValue : static_cast<int>(valuation(c, vp[i]));
        bound.valc.push_back(v);
    }
    stats.states = sweep(g, bound);

    // |S_d D_d| <= abs_d D_d with D_d clearing the denominator primes.
    std::vector<Integer> D(static_cast<size_t>(N), Integer(1));
    double need = 1;
    for (int d = 0; d < N; ++d) {
        auto &c = bound.out[static_cast<size_t>(d)];
        if (!std::isfinite(c.a))
            computation_error("bound-overflow", "magnitude bound exceeds double range");
        if (c.a == 0)
            continue;
        double bits = std::log2(c.a) + 1e-6 * std::abs(std::log2(c.a)) + 1;
        for (size_t i = 0; i < vp.size(); ++i)
            if (c.v[i] < 0) {
                Integer f;
                mpz_ui_pow_ui(f.get_mpz_t(), vp[i], static_cast<unsigned long>(-c.v[i]));
                D[static_cast<size_t>(d)] *= f;
                bits += -c.v[i] * std::log2(static_cast<double>(vp[i]));
            }
        need = std::max(need, bits);
    }
    stats.bits = static_cast<long>(std::ceil(need));

    Integer den = 1;
    for (auto &c : coef)
        den = lcm(den, c.den());
    std::vector<u32> primes;
    double have = 0;
    for (u32 c = (1u << 31) - 1; have < need + 2; c -= 2)
        if (is_prime(c) && den % c != 0) {
            primes.push_back(c);
            have += std::log2(static_cast<double>(c));
        }
    const int lanes = primes.size() <= 8 ? 8 : 16;
    for (u32 c = primes.back() - 2; primes.size() % static_cast<size_t>(lanes) != 0; c -= 2)
        if (is_prime(c) && den % c != 0)
            primes.push_back(c);
    stats.primes = static_cast<int>(primes.size());

    std::vector<std::vector<u32>> res(static_cast<size_t>(N), std::vector<u32>(primes.size()));
    for (size_t first = 0; first < primes.size(); first += static_cast<size_t>(lanes)) {
        if (lanes == 8)
            residue_sweep<8>(g, coef, primes, first, res);
        else
            residue_sweep<16>(g, coef, primes, first, res);
    }

    for (int d = 0; d < N; ++d) {
        if (bound.out[static_cast<size_t>(d)].a == 0)
            continue;
        const Integer &Dd = D[static_cast<size_t>(d)];
        Integer x = 0, M = 1;
        for (size_t i = 0; i < primes.size(); ++i) {
            u32 p = primes[i];
            u64 ri = static_cast<u64>(res[static_cast<size_t>(d)][i]) * mpz_fdiv_ui(Dd.get_mpz_t(), p) % p;
            u64 xm = mpz_fdiv_ui(x.get_mpz_t(), p);
            u64 t = (ri + p - xm) % p * pow_mod(mpz_fdiv_ui(M.get_mpz_t(), p), p - 2, p) % p;
            x += M * static_cast<unsigned long>(t);
            M *= p;
        }
        if (2 * x > M)
            x -= M;
        Integer limit = 1;
        mpz_mul_2exp(limit.get_mpz_t(), limit.get_mpz_t(), static_cast<mp_bitcnt_t>(std::ceil(need)));
        if (abs(x) > limit)
            reconstruction_error("crt-bound", "lifted coefficient exceeds its a priori bound");
        ct[static_cast<size_t>(d)] = Rational(x, Dd);
    }
    return ct;
}

} // namespace cyp::detail
