#include "cyp/frobenius/frobenius.hpp"
#include "cyp/error.hpp"

#include <algorithm>
#include <climits>
#include <map>

namespace cyp {

namespace {

Poly falling(int k)
{
    Poly p(1);
    for (int i = 0; i < k; ++i)
        p = p * Poly::linear_root(i);
    return p;
}

// Coefficients of P(s + x) in x.
std::vector<Rational> taylor_at(const Poly &P, const Rational &s)
{
    return P.compose_linear(1, s).coeffs();
}

using Row = std::vector<Rational>;

// sum_t tay[t] v[k + t]: the action of P(s + N) on a log vector.
Rational apply_shifted(const std::vector<Rational> &tay, const Row &v, size_t k)
{
    Rational acc;
    for (size_t t = 0; t < tay.size() && k + t < v.size(); ++t)
        if (!tay[t].is_zero() && !v[k + t].is_zero())
            acc += tay[t] * v[k + t];
    return acc;
}

// Extends rows[0..] in place up to n_max with the recurrence; P_0(base + n)
// must be nonzero for every new n.
void extend_exact(const LocalOperator &L, const Rational &base, std::vector<Row> &rows, long n_max)
{
    const size_t width = rows.empty() ? 1 : rows[0].size();
    const long jmax = static_cast<long>(L.P.size()) - 1;
    for (long n = static_cast<long>(rows.size()); n <= n_max; ++n) {
        Row rhs(width);
        for (long j = 1; j <= jmax && j <= n; ++j) {
            if (L.P[static_cast<size_t>(j)].is_zero())
                continue;
            auto tay = taylor_at(L.P[static_cast<size_t>(j)], base + Rational(n - j));
            const Row &v = rows[static_cast<size_t>(n - j)];
            for (size_t k = 0; k < width; ++k)
                rhs[k] -= apply_shifted(tay, v, k);
        }
        auto t0 = taylor_at(L.P[0], base + Rational(n));
        Row v(width);
        for (size_t k = width; k-- > 0;) {
            Rational acc = rhs[k];
            for (size_t t = 1; t < t0.size() && k + t < width; ++t)
                acc -= t0[t] * v[k + t];
            v[k] = acc / t0[0];
        }
        rows.push_back(std::move(v));
    }
}

struct Group {
    Rational base;
    int size = 0;
    long span = 0;  // largest root minus base
};

std::vector<Group> exponent_groups(const Poly &P0, int order)
{
    auto roots = rational_roots(P0);
    int total = 0;
    for (auto &r : roots)
        total += r.multiplicity;
    if (total != P0.degree() || P0.degree() != order)
        computation_error("irrational-exponents",
                          "local exponents must be rational and " + std::to_string(order) + " in number");
    std::vector<Group> groups;
    for (auto &r : roots) {
        auto it = std::find_if(groups.begin(), groups.end(),
                               [&](const Group &g) { return (r.value - g.base).is_integer(); });
        if (it == groups.end()) {
            groups.push_back({r.value, r.multiplicity, 0});
            continue;
        }
        it->size += r.multiplicity;
        // roots are ascending, so base stays the minimum
        Rational d = r.value - it->base;
        it->span = std::max(it->span, d.num().get_si());
    }
    return groups;
}

std::vector<LocalSolution> solve_group(const std::shared_ptr<const LocalOperator> &L, const Group &g, int N)
{
    const size_t W = static_cast<size_t>(g.size);  // log vector width, depth <= size - 1
    const long K = g.span;
    const long jmax = static_cast<long>(L->P.size()) - 1;
    const size_t unknowns = static_cast<size_t>(K + 1) * W;
    auto idx = [&](long n, size_t m) { return static_cast<size_t>(n) * W + m; };

    QMatrix A(unknowns, unknowns);
    for (long n = 0; n <= K; ++n)
        for (long j = 0; j <= jmax && j <= n; ++j) {
            if (L->P[static_cast<size_t>(j)].is_zero())
                continue;
            auto tay = taylor_at(L->P[static_cast<size_t>(j)], g.base + Rational(n - j));
            for (size_t k = 0; k < W; ++k)
                for (size_t t = 0; t < tay.size() && k + t < W; ++t)
                    A(idx(n, k), idx(n - j, k + t)) += tay[t];
        }
    auto ns = nullspace(A);
    if (ns.size() != W)
        computation_error("frobenius-dimension", "expected " + std::to_string(W) + " solutions in the class of " +
                                                     g.base.str() + ", found " + std::to_string(ns.size()));

    // Column order: highest log power first, then ascending n.
    std::vector<std::pair<long, size_t>> perm;
    for (size_t m = W; m-- > 0;)
        for (long n = 0; n <= K; ++n)
            perm.emplace_back(n, m);
    QMatrix B(W, unknowns);
    for (size_t r = 0; r < W; ++r)
        for (size_t c = 0; c < unknowns; ++c)
            B(r, c) = ns[r][idx(perm[c].first, perm[c].second)];
    auto piv = rref(B);

    std::vector<std::vector<Row>> sol(W);
    std::vector<std::pair<long, size_t>> pivot(W);
    for (size_t r = 0; r < W; ++r) {
        pivot[r] = perm[piv[r]];
        sol[r].assign(static_cast<size_t>(K + 1), Row(W));
        for (size_t c = 0; c < unknowns; ++c)
            sol[r][static_cast<size_t>(perm[c].first)][perm[c].second] = B(r, c);
    }

    // Replace the member whose pivot sits one log power below by N applied to
    // the higher one, so log multipliers are basis members.
    std::vector<size_t> order(W);
    for (size_t r = 0; r < W; ++r)
        order[r] = r;
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return pivot[a].second > pivot[b].second; });
    for (size_t r : order) {
        size_t d = pivot[r].second;
        if (d == 0)
            continue;
        for (size_t t = 0; t < W; ++t)
            if (pivot[t].first == pivot[r].first && pivot[t].second == d - 1) {
                for (size_t n = 0; n < sol[r].size(); ++n)
                    for (size_t m = 0; m < W; ++m)
                        sol[t][n][m] = m + 1 < W ? sol[r][n][m + 1] : Rational(0);
                break;
            }
    }

    std::vector<LocalSolution> out;
    const long n_max = K + N - 1;
    for (size_t r = 0; r < W; ++r) {
        extend_exact(*L, g.base, sol[r], n_max);
        long lead = -1;
        int depth = 0;
        for (size_t n = 0; n < sol[r].size(); ++n)
            for (size_t m = 0; m < W; ++m)
                if (!sol[r][n][m].is_zero()) {
                    if (lead < 0)
                        lead = static_cast<long>(n);
                    depth = std::max(depth, static_cast<int>(m));
                }
        LocalSolution s;
        s.point = L->point;
        s.exponent = g.base + Rational(lead);
        s.depth = depth;
        s.local = L;
        s.base = g.base;
        for (auto &row : sol[r])
            row.resize(static_cast<size_t>(depth) + 1);
        Rational fact = 1;
        for (int m = 0; m <= depth; ++m) {
            if (m > 0)
                fact *= Rational(m);
            QSeries S("w", static_cast<size_t>(N));
            for (long i = 0; i < N; ++i)
                S[static_cast<size_t>(i)] = sol[r][static_cast<size_t>(lead + i)][static_cast<size_t>(m)] / fact;
            s.S.push_back(std::move(S));
        }
        s.coeffs = std::move(sol[r]);
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace

LocalOperator local_operator(const DifferentialOperator &op, const SingularPoint &p)
{
    const int r = op.order();
    LocalOperator L;
    L.point = p;
    std::vector<Poly> c;  // c[k] multiplies the basis operator number k
    std::vector<Poly> ops;
    if (p.kind == SingularPoint::Infinity) {
        int deg = op.degree();
        for (int i = 0; i <= r; ++i) {
            c.push_back(op.coeff(i).is_zero() ? Poly() : op.coeff(i).reversed(deg));
            ops.push_back(Poly::monomial(i, Rational(i % 2 ? -1 : 1)));  // (-theta)^i
        }
    } else if (p.kind == SingularPoint::Finite) {
        auto b = to_weyl(op);
        for (int k = 0; k <= r; ++k) {
            c.push_back(b[static_cast<size_t>(k)].compose_linear(1, p.value) * Poly::monomial(r - k));
            ops.push_back(falling(k));
        }
    } else {
        input_error("unsupported-point", "local bases need a rational point or infinity, got " + p.label());
    }
    int nu = INT_MAX, top = 0;
    for (auto &q : c)
        if (!q.is_zero()) {
            nu = std::min(nu, q.low_degree());
            top = std::max(top, q.degree());
        }
    for (int j = 0; j <= top - nu; ++j) {
        Poly Pj;
        for (size_t k = 0; k < c.size(); ++k)
            Pj += ops[k] * c[k].coeff(nu + j);
        L.P.push_back(std::move(Pj));
    }
    return L;
}

std::string LocalSolution::coordinate() const
{
    if (point.kind == SingularPoint::Infinity)
        return "w = 1/z";
    if (point.value.is_zero())
        return "w = z";
    return "w = z - (" + point.value.str() + ")";
}

FrobeniusBasis local_basis(const DifferentialOperator &op, const SingularPoint &p, int N)
{
    if (N < 1)
        input_error("bad-order", "need at least one series coefficient");
    auto L = std::make_shared<const LocalOperator>(local_operator(op, p));
    FrobeniusBasis basis;
    basis.point = p;
    for (auto &g : exponent_groups(L->P[0], op.order()))
        for (auto &s : solve_group(L, g, N))
            basis.solutions.push_back(std::move(s));
    std::stable_sort(basis.solutions.begin(), basis.solutions.end(), [](auto &a, auto &b) {
        return a.exponent != b.exponent ? a.exponent < b.exponent : a.depth < b.depth;
    });
    return basis;
}

FrobeniusBasis mum_scaled_basis(const DifferentialOperator &op, int N)
{
    if (mum_check(op, SingularPoint::at(0)) != MumClass::MUM)
        input_error("not-a-MUM-point", "the origin is not a point of maximally unipotent monodromy");
    FrobeniusBasis b = local_basis(op, SingularPoint::at(0), N);
    const int r = op.order();
    for (int k = 0; k < r; ++k) {
        auto &s = b.solutions[static_cast<size_t>(k)];
        if (s.depth != k)
            computation_error("not-a-MUM-point", "log depths at the origin are not 0.." + std::to_string(r - 1));
        s.tau_power = k;
    }
    return b;
}

QMatrix standard_t0()
{
    QMatrix T(4, 4);
    for (size_t i = 0; i < 4; ++i)
        for (size_t j = 0; j <= i; ++j)
            T(i, j) = Rational(1) / Rational(factorial(static_cast<long>(i - j)));
    return T;
}

bool continuation_matches(const FrobeniusBasis &b, const QMatrix &T)
{
    // A member is sum_m (log w)^m S_m (2 pi i)^(-tau) = sum_m u^m (2 pi i)^(m - tau) S_m.
    // Represent as map (u power, 2 pi i power) -> series.
    using Form = std::map<std::pair<int, int>, QSeries>;
    auto add = [](Form &f, std::pair<int, int> key, const QSeries &s) {
        auto it = f.find(key);
        if (it == f.end())
            f.emplace(key, s);
        else
            it->second += s;
    };
    auto clean = [](Form f) {
        for (auto it = f.begin(); it != f.end();) {
            bool zero = std::all_of(it->second.coeffs().begin(), it->second.coeffs().end(),
                                    [](auto &c) { return c.is_zero(); });
            it = zero ? f.erase(it) : std::next(it);
        }
        return f;
    };
    const size_t n = b.solutions.size();
    if (T.rows() != n || T.cols() != n)
        return false;
    for (auto &s : b.solutions)
        if (!(s.exponent == b.solutions[0].exponent))
            return false;  // a common factor w^rho is assumed
    std::vector<Form> forms(n), moved(n);
    for (size_t k = 0; k < n; ++k) {
        const auto &s = b.solutions[k];
        for (int m = 0; m <= s.depth; ++m) {
            add(forms[k], {m, m - s.tau_power}, s.S[static_cast<size_t>(m)]);
            // u^m -> (u + 1)^m
            for (int i = 0; i <= m; ++i)
                add(moved[k], {i, m - s.tau_power}, s.S[static_cast<size_t>(m)] * Rational(binomial(m, i)));
        }
    }
    for (size_t k = 0; k < n; ++k) {
        Form target;
        for (size_t j = 0; j < n; ++j)
            if (!T(k, j).is_zero())
                for (auto &[key, ser] : forms[j])
                    add(target, key, ser * T(k, j));
        if (clean(target) != clean(moved[k]))
            return false;
    }
    return true;
}

std::vector<std::vector<Rational>> residual(const LocalSolution &s)
{
    const auto &L = *s.local;
    const long jmax = static_cast<long>(L.P.size()) - 1;
    std::vector<Row> out;
    for (long n = 0; n < static_cast<long>(s.coeffs.size()); ++n) {
        Row acc(s.coeffs[0].size());
        for (long j = 0; j <= jmax && j <= n; ++j) {
            if (L.P[static_cast<size_t>(j)].is_zero())
                continue;
            auto tay = taylor_at(L.P[static_cast<size_t>(j)], s.base + Rational(n - j));
            for (size_t k = 0; k < acc.size(); ++k)
                acc[k] += apply_shifted(tay, s.coeffs[static_cast<size_t>(n - j)], k);
        }
        out.push_back(std::move(acc));
    }
    return out;
}

std::vector<Complex> finite_singularities(const DifferentialOperator &op)
{
    std::vector<Complex> pts{Complex(0)};
    for (auto &f : squarefree_decomposition(op.coeff(op.order())))
        if (f.degree() > 0)
            for (auto &z : numeric_roots(f))
                if (!z.is_zero())
                    pts.push_back(z);
    return pts;
}

Real convergence_radius(const DifferentialOperator &op, const SingularPoint &p)
{
    auto pts = finite_singularities(op);
    const Real tiny = ldexp(Real(1), -(Real::working_precision() / 2));
    if (p.kind == SingularPoint::Infinity) {
        Real far(0);
        for (auto &z : pts)
            far = max(far, abs(z));
        return far.is_zero() ? ldexp(Real(1), 64) : Real(1) / far;
    }
    Complex c = p.kind == SingularPoint::Finite ? Complex(p.value) : p.numeric;
    Real best = ldexp(Real(1), 64);
    for (auto &z : pts) {
        Real d = abs(z - c);
        if (d > tiny)
            best = min(best, d);
    }
    return best;
}

Jet evaluate_jet(const DifferentialOperator &op, const LocalSolution &s, const Complex &z0, long bits, int count)
{
    if (count < 1)
        input_error("bad-jet", "need at least the value");
    PrecisionScope ps(bits + 64);
    const bool at_inf = s.point.kind == SingularPoint::Infinity;
    if (!at_inf && s.point.kind != SingularPoint::Finite)
        input_error("unsupported-point", "jets need a rational point or infinity");
    if (at_inf && z0.is_zero())
        input_error("outside-disk", "z0 = 0 is not near infinity");
    Complex w0 = at_inf ? Complex(1) / z0 : z0 - Complex(s.point.value);
    Real R = convergence_radius(op, s.point);
    Real aw = abs(w0);
    if (aw.is_zero() || !(aw < R))
        input_error("outside-disk", "|w0| = " + aw.str(10) + " is not inside (0, " + R.str(10) + ")");
    Real q = aw / R;

    const auto &L = *s.local;
    const size_t width = static_cast<size_t>(s.depth) + 1;
    const long jmax = static_cast<long>(L.P.size()) - 1;
    const size_t C = static_cast<size_t>(count);

    // A[m][k] = sum_n c(n,m) binom(n,k) w0^n
    std::vector<std::vector<Complex>> A(width, std::vector<Complex>(C));
    std::vector<std::vector<Real>> hist;  // numeric rows, index n
    const Real eps = ldexp(Real(1), -(bits + 16));
    Real peak(0), last(0);
    Complex pw(1);
    int quiet = 0;
    long n = 0;
    const long limit = 200000;
    for (;; ++n) {
        if (n >= limit)
            computation_error("precision-exhausted", "series did not converge within " + std::to_string(limit) + " terms");
        std::vector<Real> v(width);
        if (n < static_cast<long>(s.coeffs.size())) {
            for (size_t m = 0; m < width; ++m)
                v[m] = Real(s.coeffs[static_cast<size_t>(n)][m]);
        } else {
            std::vector<Real> rhs(width);
            for (long j = 1; j <= jmax && j <= n; ++j) {
                if (L.P[static_cast<size_t>(j)].is_zero())
                    continue;
                auto tay = taylor_at(L.P[static_cast<size_t>(j)], s.base + Rational(n - j));
                const auto &u = hist[static_cast<size_t>(n - j)];
                for (size_t k = 0; k < width; ++k)
                    for (size_t t = 0; t < tay.size() && k + t < width; ++t)
                        if (!tay[t].is_zero())
                            rhs[k] -= Real(tay[t]) * u[k + t];
            }
            auto t0 = taylor_at(L.P[0], s.base + Rational(n));
            for (size_t k = width; k-- > 0;) {
                Real acc = rhs[k];
                for (size_t t = 1; t < t0.size() && k + t < width; ++t)
                    acc -= Real(t0[t]) * v[k + t];
                v[k] = acc / Real(t0[0]);
            }
        }
        Real mag(0);
        for (size_t m = 0; m < width; ++m) {
            if (v[m].is_zero())
                continue;
            Complex term = pw * Complex(v[m]);
            Real bin(1);
            for (size_t k = 0; k < C; ++k) {
                if (k > 0)
                    bin = bin * Real(n - static_cast<long>(k) + 1) / Real(static_cast<long>(k));
                if (bin.is_zero())
                    break;
                A[m][k] += term * Complex(bin);
            }
            mag = max(mag, abs(term) * Real(n + 1) * Real(n + 1) * Real(n + 1));
        }
        hist.push_back(std::move(v));
        if (static_cast<long>(hist.size()) > jmax + 1)
            hist[hist.size() - static_cast<size_t>(jmax) - 2].clear();
        peak = max(peak, mag);
        last = mag;
        pw *= w0;
        if (n >= static_cast<long>(s.coeffs.size()) && n > 8) {
            quiet = mag <= eps * peak ? quiet + 1 : 0;
            if (quiet >= 2 * (jmax + 1))
                break;
        }
    }

    // Truncated power series in delta = w - w0.
    auto mul = [&](const std::vector<Complex> &a, const std::vector<Complex> &b) {
        std::vector<Complex> r(C);
        for (size_t i = 0; i < C; ++i)
            for (size_t j = 0; i + j < C; ++j)
                r[i + j] += a[i] * b[j];
        return r;
    };
    Complex inv_w0 = Complex(1) / w0;
    std::vector<Complex> ell(C), E(C), F(C);
    Complex lw = log(w0);
    ell[0] = lw;
    {
        Complex p = inv_w0;
        for (size_t k = 1; k < C; ++k) {
            ell[k] = p * Complex(Rational(k % 2 ? 1 : -1, static_cast<long>(k)));
            p *= inv_w0;
        }
        Complex w0rho = exp(lw * Complex(s.base));
        Complex bin = w0rho;
        for (size_t k = 0; k < C; ++k) {
            E[k] = bin;
            bin = bin * Complex(s.base - Rational(static_cast<long>(k))) / Complex(static_cast<long>(k) + 1) * inv_w0;
        }
    }
    std::vector<Complex> ellpow(C);
    ellpow[0] = Complex(1);
    Rational fact = 1;
    for (size_t m = 0; m < width; ++m) {
        if (m > 0) {
            ellpow = mul(ellpow, ell);
            fact *= Rational(static_cast<long>(m));
        }
        std::vector<Complex> Sm(C);
        Complex p(1);
        for (size_t k = 0; k < C; ++k) {
            Sm[k] = A[m][k] * p * Complex(fact.inverse());
            p *= inv_w0;
        }
        auto t = mul(ellpow, Sm);
        for (size_t k = 0; k < C; ++k)
            F[k] += t[k];
    }
    F = mul(E, F);

    std::vector<Complex> G = F;
    if (at_inf) {
        // delta(eps) = 1/(z0 + eps) - 1/z0
        std::vector<Complex> delta(C);
        Complex inv_z0 = Complex(1) / z0;
        Complex p = inv_z0;
        for (size_t k = 1; k < C; ++k) {
            p *= inv_z0;
            delta[k] = k % 2 ? -p : p;
        }
        G.assign(C, Complex());
        for (size_t k = C; k-- > 0;) {
            G = mul(G, delta);
            G[0] += F[k];
        }
    }
    Complex scale(1);
    if (s.tau_power != 0)
        scale = Complex(1) / pow(Complex::two_pi_i(), s.tau_power);
    Jet jet;
    Real kf(1);
    for (size_t k = 0; k < C; ++k) {
        if (k > 0)
            kf *= Real(static_cast<long>(k));
        jet.d.push_back(G[k] * scale * Complex(kf));
    }
    jet.tail = last * q / (Real(1) - q);
    jet.terms = n + 1;
    return jet;
}

} // namespace cyp
