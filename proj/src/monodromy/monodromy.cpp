#include "cyp/monodromy/monodromy.hpp"
#include "cyp/error.hpp"

#include <algorithm>
#include <future>
#include <map>

namespace cyp {

namespace {

Complex position(const SingularPoint &p)
{
    return p.kind == SingularPoint::Finite ? Complex(p.value) : p.numeric;
}

bool on_axis(const Complex &z)
{
    return abs(z.im) < ldexp(Real(1), -60);
}

// Other singularities nearest to z, excluding z itself.
Real isolation(const std::vector<Complex> &sing, const Complex &z)
{
    Real best(-1);
    for (auto &s : sing) {
        Real d = abs(s - z);
        if (d < ldexp(Real(1), -60))
            continue;
        if (best.sign() < 0 || d < best)
            best = d;
    }
    return best;
}

// Real-axis travel from a to b, passing below every singular point strictly between.
void travel(std::vector<Complex> &wp, const std::vector<Complex> &sing, const Real &a, const Real &b,
            const Real &base)
{
    const bool right = b > a;
    std::vector<Real> hits;
    for (auto &s : sing)
        if (on_axis(s) && (right ? (s.re > a && s.re < b) : (s.re < a && s.re > b)))
            hits.push_back(s.re);
    std::sort(hits.begin(), hits.end(), [&](const Real &x, const Real &y) { return right ? x < y : x > y; });
    const Real pi = Real::pi();
    for (auto &s : hits) {
        Real rho = isolation(sing, Complex(s)) / Real(2);
        rho = min(rho, abs(s - base) / Real(2));
        rho = min(rho, abs(s - b) / Real(2));
        const int n = 8;
        Real dir = right ? Real(-1) : Real(1);
        wp.emplace_back(s + dir * rho);
        for (int k = 1; k <= n; ++k) {
            // angle from pi to 2 pi going right, from 0 to -pi going left
            Real phi = right ? pi + pi * Real(k) / Real(n) : -pi * Real(k) / Real(n);
            wp.push_back(Complex(s) + polar(rho, phi));
        }
    }
    wp.emplace_back(b);
}

} // namespace

PathPlan loop_path(const DifferentialOperator &op, const SingularPoint &point, const MonodromyOptions &opt)
{
    PrecisionScope ps(opt.precision + 64);
    auto sing = finite_singularities(op);
    PathPlan plan;
    plan.theta = opt.theta;
    const Real base(opt.basepoint);
    plan.base = Complex(base);
    std::vector<Complex> out;
    const Real pi = Real::pi();
    if (point.kind == SingularPoint::Infinity) {
        Real R(0);
        for (auto &s : sing)
            R = max(R, abs(s));
        R = R * Real(2);
        if (R.is_zero())
            R = Real(2);
        travel(out, sing, base, -R, base);
        const int n = 64;
        std::vector<Complex> circle;
        for (int k = 1; k <= n; ++k)
            circle.push_back(polar(R, pi - Real(2) * pi * Real(k) / Real(n)));
        plan.waypoints = out;
        plan.waypoints.insert(plan.waypoints.end(), circle.begin(), circle.end());
        plan.descriptor = "along the real axis to -" + R.str(6) + ", clockwise circle of radius " + R.str(6) +
                          ", back";
    } else {
        Complex p = position(point);
        Real rp = isolation(sing, p);
        if (rp.sign() < 0)
            input_error("not-singular", "no other singularity to measure the loop radius");
        Real rho = rp / Real(2);
        Complex entry;
        if (on_axis(p)) {
            Real side = base < p.re ? Real(-1) : Real(1);
            entry = Complex(p.re + side * rho);
            travel(out, sing, base, entry.re, base);
        } else {
            travel(out, sing, base, p.re, base);
            Real side = p.im.sign() > 0 ? Real(-1) : Real(1);
            entry = Complex(p.re, p.im + side * rho);
            out.push_back(entry);
        }
        Complex u = (entry - p) / Complex(rho);
        Real start = arg(u);
        const int n = 24;
        plan.waypoints = out;
        for (int k = 1; k <= n; ++k)
            plan.waypoints.push_back(p + polar(rho, start + Real(2) * pi * Real(k) / Real(n)));
        plan.descriptor = "from " + base.str(6) + " to " + entry.str(8) +
                          " passing below real singular points, counterclockwise circle of radius " +
                          rho.str(6) + " around " + point.label() + ", back";
    }
    // return leg
    std::vector<Complex> back(out.rbegin(), out.rend());
    back.erase(back.begin());
    back.push_back(plan.base);
    plan.waypoints.insert(plan.waypoints.end(), back.begin(), back.end());
    return plan;
}

Rational rational_reconstruct(const Complex &x, long den_bound, const Real &tol)
{
    if (!(abs(x.im) < tol))
        reconstruction_error("reconstruction-failed", "imaginary part " + x.im.str(8) + " above tolerance");
    // continued fraction convergents of the real part
    Real r = x.re;
    Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int it = 0; it < 200; ++it) {
        Integer a = floor_integer(r);
        Integer p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > den_bound)
            break;
        Rational c(p2, q2);
        if (abs(Real(c) - x.re) < tol)
            return c;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        Real frac = r - Real(a);
        if (frac.is_zero())
            break;
        r = Real(1) / frac;
    }
    reconstruction_error("reconstruction-failed", "no rational with denominator <= " + std::to_string(den_bound) +
                                                   " within tolerance of " + x.re.str(20));
}

namespace {

std::vector<SingularPoint> finite_points(const DifferentialOperator &op)
{
    std::vector<SingularPoint> pts{SingularPoint::at(0)};
    for (auto &col : riemann_scheme(op))
        if (col.point.kind != SingularPoint::Infinity &&
            !(col.point.kind == SingularPoint::Finite && col.point.value.is_zero()))
            pts.push_back(col.point);
    return pts;
}

bool conifold_exponents(const DifferentialOperator &op, const SingularPoint &p)
{
    if (p.kind != SingularPoint::Finite || p.value.is_zero())
        return false;
    auto ind = indicial(op, p);
    return ind.exact && ind.roots == std::vector<Rational>{0, 1, 1, 2};
}

struct Context {
    const DifferentialOperator *op;
    MonodromyOptions opt;
    CMatrix W, Winv;
};

CMatrix loop_in_basis(const Context &ctx, const SingularPoint &p, std::string &descr)
{
    PrecisionScope ps(ctx.opt.precision + 64);
    PathPlan path = loop_path(*ctx.op, p, ctx.opt);
    descr = path.descriptor;
    CMatrix phi = transport(*ctx.op, path, ctx.opt.precision, ctx.opt.order);
    return ctx.W * phi.transpose() * ctx.Winv;
}

} // namespace

std::vector<SingularPoint> declared_loop_order(const DifferentialOperator &op)
{
    // Loops pass below the real axis, so the product in decreasing order of
    // position is the inverse of the clockwise loop around infinity.
    auto pts = finite_points(op);
    std::stable_sort(pts.begin(), pts.end(), [](const SingularPoint &a, const SingularPoint &b) {
        return position(a).re > position(b).re;
    });
    return pts;
}

MonodromyReport monodromy(const DifferentialOperator &op, const std::vector<SingularPoint> &points,
                          const MonodromyOptions &opt)
{
    if (op.order() != 4)
        input_error("bad-order", "monodromy is implemented for order-4 operators");
    PrecisionScope ps(opt.precision + 64);
    MonodromyReport rep;
    rep.precision = opt.precision;

    Context ctx{&op, opt, {}, {}};
    auto basis = mum_scaled_basis(op, 20);
    const size_t R = 4;
    ctx.W = CMatrix(R, R);
    Complex z0(opt.basepoint);
    for (size_t k = 0; k < R; ++k) {
        auto jet = evaluate_jet(op, basis.solutions[k], z0, opt.precision + 32, 4);
        for (size_t i = 0; i < R; ++i)
            ctx.W(k, i) = jet.d[i];
    }
    ctx.Winv = inverse(ctx.W);

    // conifold point: nearest the origin among points with exponents 0, 1, 1, 2
    std::optional<SingularPoint> con;
    for (auto &p : finite_points(op))
        if (conifold_exponents(op, p) && (!con || Rational(abs(p.value.num()), p.value.den()) < Rational(abs(con->value.num()), con->value.den())))
            con = p;
    rep.conifold = con;

    std::vector<SingularPoint> todo = points;
    bool extra = con && std::none_of(points.begin(), points.end(), [&](const SingularPoint &p) {
        return p.kind == SingularPoint::Finite && p.value == con->value;
    });
    if (extra)
        todo.push_back(*con);

    struct Raw {
        CMatrix M;
        std::string path;
        std::string failure;
    };
    std::vector<std::future<Raw>> jobs;
    for (auto &p : todo)
        jobs.push_back(std::async(std::launch::async, [&ctx, p]() {
            Raw r;
            try {
                r.M = loop_in_basis(ctx, p, r.path);
            } catch (const Error &e) {
                r.failure = e.what();
            }
            return r;
        }));
    std::vector<Raw> raw;
    for (auto &j : jobs)
        raw.push_back(j.get());

    CMatrix B = CMatrix::identity(R), Binv = CMatrix::identity(R);
    if (con) {
        const Raw &rc = raw[extra ? raw.size() - 1 : static_cast<size_t>(std::find_if(todo.begin(), todo.end(),
                                                                                         [&](auto &p) {
                                                                                             return p.kind == SingularPoint::Finite &&
                                                                                                    p.value == con->value;
                                                                                         }) -
                                                                                     todo.begin())];
        if (rc.failure.empty()) {
            CMatrix D = rc.M - CMatrix::identity(R);
            size_t col = 0;
            Real best(-1);
            for (size_t j = 0; j < R; ++j) {
                Real n(0);
                for (size_t i = 0; i < R; ++i)
                    n += norm2(D(i, j));
                if (n > best) {
                    best = n;
                    col = j;
                }
            }
            std::vector<Complex> alpha(R);
            for (size_t i = 0; i < R; ++i)
                alpha[i] = D(i, col) / D(0, col);
            // P = sum_j alpha_j N^j with N the subdiagonal shift
            CMatrix P(R, R);
            for (size_t i = 0; i < R; ++i)
                for (size_t j = 0; j <= i; ++j)
                    P(i, j) = alpha[i - j];
            Binv = P;
            B = inverse(P);
        }
    }
    rep.basis_change = B;

    const Real tol = ldexp(Real(1), -(opt.precision / 2));
    for (size_t i = 0; i < points.size(); ++i) {
        MonodromyResult res;
        res.point = points[i];
        res.path = raw[i].path;
        res.failure = raw[i].failure;
        if (res.failure.empty()) {
            res.scaled = raw[i].M;
            res.numeric = B * raw[i].M * Binv;
            res.exact = QMatrix(R, R);
            try {
                for (size_t a = 0; a < R; ++a)
                    for (size_t b = 0; b < R; ++b)
                        res.exact(a, b) = rational_reconstruct(res.numeric(a, b), opt.den_bound, tol);
                res.residual = max_abs(res.numeric - to_complex(res.exact));
                res.reconstructed = true;
            } catch (const Error &e) {
                res.failure = e.what();
            }
        }
        rep.loops.push_back(std::move(res));
    }
    return rep;
}

MonodromyResult loop_monodromy(const DifferentialOperator &op, const SingularPoint &point,
                               const MonodromyOptions &opt)
{
    return monodromy(op, {point}, opt).loops.at(0);
}

std::pair<Rational, Rational> hms_invariants(const QMatrix &t_mum, const QMatrix &t_conifold)
{
    if (!(t_mum == standard_t0()))
        computation_error("pattern-mismatch", "the MUM matrix is not in standard form");
    QMatrix D = t_conifold - QMatrix::identity(4);
    for (size_t i = 1; i < 4; ++i)
        for (size_t j = 0; j < 4; ++j)
            if (!D(i, j).is_zero())
                computation_error("pattern-mismatch", "the conifold matrix differs from the identity below the first row");
    if (!D(0, 0).is_zero() || !D(0, 2).is_zero() || D(0, 1).is_zero())
        computation_error("pattern-mismatch", "first row of the conifold matrix is not (1, -c, 0, -d)");
    Rational c = -t_conifold(0, 1), d = -t_conifold(0, 3);
    return {d, Rational(12) * c};
}

std::optional<QMatrix> common_symplectic_form(const std::vector<QMatrix> &ms)
{
    const size_t n = ms.empty() ? 4 : ms[0].rows();
    std::vector<std::pair<size_t, size_t>> vars;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            vars.emplace_back(i, j);
    auto basis_form = [&](size_t v) {
        QMatrix O(n, n);
        O(vars[v].first, vars[v].second) = 1;
        O(vars[v].second, vars[v].first) = -1;
        return O;
    };
    QMatrix A(ms.size() * n * n, vars.size());
    for (size_t v = 0; v < vars.size(); ++v) {
        QMatrix O = basis_form(v);
        for (size_t m = 0; m < ms.size(); ++m) {
            QMatrix E = ms[m] * O * ms[m].transpose() - O;
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j)
                    A(m * n * n + i * n + j, v) = E(i, j);
        }
    }
    auto ns = nullspace(A);
    if (ns.empty())
        return std::nullopt;
    auto build = [&](const std::vector<Rational> &x) {
        QMatrix O(n, n);
        for (size_t v = 0; v < vars.size(); ++v) {
            O(vars[v].first, vars[v].second) += x[v];
            O(vars[v].second, vars[v].first) -= x[v];
        }
        return O;
    };
    for (auto &x : ns) {
        QMatrix O = build(x);
        if (!det(O).is_zero())
            return O;
    }
    // try small integer combinations
    std::vector<Rational> x(vars.size());
    for (size_t k = 0; k < ns.size(); ++k)
        for (size_t v = 0; v < vars.size(); ++v)
            x[v] += Rational(static_cast<long>(k) + 1) * ns[k][v];
    QMatrix O = build(x);
    return det(O).is_zero() ? build(ns[0]) : O;
}

Poly charpoly(const QMatrix &m)
{
    // Faddeev-LeVerrier
    const size_t n = m.rows();
    std::vector<Rational> c(n + 1);
    c[n] = 1;
    QMatrix Mk = QMatrix(n, n);
    QMatrix I = QMatrix::identity(n);
    for (size_t k = 1; k <= n; ++k) {
        Mk = m * Mk + c[n - k + 1] * I;
        QMatrix AM = m * Mk;
        Rational tr;
        for (size_t i = 0; i < n; ++i)
            tr += AM(i, i);
        c[n - k] = -tr / Rational(static_cast<long>(k));
    }
    return Poly(c);
}

std::vector<std::pair<Rational, std::vector<size_t>>> jordan_type(const QMatrix &m)
{
    std::vector<std::pair<Rational, std::vector<size_t>>> out;
    const size_t n = m.rows();
    for (auto &r : rational_roots(charpoly(m))) {
        QMatrix S = m - r.value * QMatrix::identity(n);
        QMatrix P = QMatrix::identity(n);
        std::vector<size_t> ranks;
        for (size_t k = 1; k <= n; ++k) {
            P = P * S;
            ranks.push_back(rank(P));
        }
        out.emplace_back(r.value, ranks);
    }
    return out;
}

std::optional<std::vector<int>> find_conjugator(const QMatrix &a, const QMatrix &b,
                                                const std::vector<QMatrix> &generators, int max_length)
{
    std::vector<std::pair<int, QMatrix>> letters;
    for (size_t i = 0; i < generators.size(); ++i) {
        letters.emplace_back(static_cast<int>(i) + 1, generators[i]);
        letters.emplace_back(-static_cast<int>(i) - 1, inverse(generators[i]));
    }
    std::vector<std::pair<std::vector<int>, QMatrix>> layer{{{}, QMatrix::identity(a.rows())}};
    for (int len = 0; len <= max_length; ++len) {
        for (auto &[word, G] : layer)
            if (G * a == b * G)
                return word;
        if (len == max_length)
            break;
        std::vector<std::pair<std::vector<int>, QMatrix>> next;
        for (auto &[word, G] : layer)
            for (auto &[id, L] : letters) {
                if (!word.empty() && word.back() == -id)
                    continue;
                auto w = word;
                w.push_back(id);
                next.emplace_back(std::move(w), G * L);
            }
        layer = std::move(next);
    }
    return std::nullopt;
}

} // namespace cyp
