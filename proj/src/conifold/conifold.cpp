#include "cyp/conifold/conifold.hpp"
#include "cyp/error.hpp"
#include "cyp/mirror/mirror.hpp"

#include <algorithm>

namespace cyp {

std::string ScaleMode::str() const
{
    return (kind == FixH3 ? "fix_H3=" : "fix_c3=") + value.str();
}

std::optional<SingularPoint> conifold_point(const DifferentialOperator &op)
{
    std::optional<SingularPoint> best;
    for (auto &col : riemann_scheme(op)) {
        const auto &p = col.point;
        if (p.kind != SingularPoint::Finite || p.value.is_zero())
            continue;
        if (!(col.exponents.exact && col.exponents.roots == std::vector<Rational>{0, 1, 1, 2}))
            continue;
        auto mag = [](const Rational &r) { return r.sign() < 0 ? -r : r; };
        if (!best || mag(p.value) < mag(best->value))
            best = p;
    }
    return best;
}

LocalSolution conifold_period(const DifferentialOperator &op, int N, const std::optional<SingularPoint> &point)
{
    auto p = point ? point : conifold_point(op);
    if (!p)
        input_error("spectrum-mismatch", "no finite point with exponents 0, 1, 1, 2");
    if (p->kind != SingularPoint::Finite)
        input_error("spectrum-mismatch", "the conifold point must be rational");
    auto ind = indicial(op, *p);
    if (!(ind.exact && ind.roots == std::vector<Rational>{0, 1, 1, 2}))
        input_error("spectrum-mismatch", "exponents at " + p->label() + " are not 0, 1, 1, 2");
    auto basis = local_basis(op, *p, N);
    const LocalSolution *logsol = nullptr;
    for (auto &s : basis.solutions) {
        if (s.depth > 1 || (s.depth == 1 && logsol))
            input_error("spectrum-mismatch", "expected exactly one solution with a single log at " + p->label());
        if (s.depth == 1)
            logsol = &s;
    }
    if (!logsol)
        input_error("spectrum-mismatch", "no logarithmic solution at " + p->label());
    // the log multiplier is a basis member: find it
    for (auto &s : basis.solutions) {
        if (s.depth != 0 || s.exponent != Rational(1))
            continue;
        LocalSolution f = s;
        Rational lead = f.S[0][0];
        if (lead.is_zero())
            break;
        f.S[0] = f.S[0] * lead.inverse();
        for (auto &row : f.coeffs)
            for (auto &c : row)
                c /= lead;
        return f;
    }
    computation_error("spectrum-mismatch", "log multiplier is not an exponent-1 series");
}

ConifoldMatch continue_to_mum(const DifferentialOperator &op, const LocalSolution &f, long precision,
                              const std::optional<Rational> &c2)
{
    if (f.point.kind != SingularPoint::Finite)
        input_error("unsupported-point", "continuation starts from a rational point");
    PrecisionScope ps(precision + 64);
    auto sing = finite_singularities(op);
    auto other = [&](const Complex &z) {
        Real best(-1);
        for (auto &s : sing) {
            Real d = abs(s - z);
            if (d < ldexp(Real(1), -60))
                continue;
            if (best.sign() < 0 || d < best)
                best = d;
        }
        return best;
    };
    Complex p(f.point.value);
    ConifoldMatch m;
    m.precision = precision;
    if (f.point.value.is_zero()) {
        m.start = m.end = Complex(Real(other(p) / Real(-2)));
    } else {
        Complex dir = Complex(Real(-f.point.value.sign()));
        m.start = p + dir * Complex(other(p) / Real(2));
        m.end = Complex(-dir.re * other(Complex(0)) / Real(2));
    }

    auto jf = evaluate_jet(op, f, m.start, precision + 32, 4);
    std::vector<Complex> v = jf.d;
    PathPlan path;
    path.base = m.start;
    if (abs(m.end - m.start) > ldexp(Real(1), -60))
        path.waypoints.push_back(m.end);
    path.descriptor = "straight segment " + m.start.str(8) + " -> " + m.end.str(8);
    CMatrix phi = transport(op, path, precision);
    std::vector<Complex> ve(4);
    for (size_t i = 0; i < 4; ++i)
        for (size_t j = 0; j < 4; ++j)
            ve[i] += phi(i, j) * v[j];

    auto basis = mum_scaled_basis(op, 20);
    CMatrix Wt(4, 4);  // Wt(i, k) = i-th derivative of yhat_k
    for (size_t k = 0; k < 4; ++k) {
        auto jet = evaluate_jet(op, basis.solutions[k], m.end, precision + 32, 4);
        for (size_t i = 0; i < 4; ++i)
            Wt(i, k) = jet.d[i];
    }
    CMatrix inv = inverse(Wt);
    m.beta.assign(4, Complex());
    for (size_t k = 0; k < 4; ++k)
        for (size_t i = 0; i < 4; ++i)
            m.beta[k] += inv(k, i) * ve[i];

    m.c2 = c2 ? *c2 : normalize_instantons(op).c2;
    if (m.c2.is_zero())
        input_error("bad-scale", "c2 must be nonzero");
    // log z (principal) + log|c2| - (log|z| + log|c2|) = i arg z
    const Complex tpi = Complex::two_pi_i();
    Real lc = log(abs(Real(m.c2)));
    m.shift = (Complex(lc) - Complex(Real(0), arg(m.end))) / tpi;
    // sum_k beta_k (t - a)^k / k!
    m.poly.assign(4, Complex());
    Complex ma = -m.shift;
    for (size_t k = 0; k < 4; ++k) {
        Complex kf = Complex(Real(factorial(static_cast<long>(k))));
        for (size_t j = 0; j <= k; ++j) {
            Complex term = m.beta[k] / kf * Complex(Real(binomial(static_cast<long>(k), static_cast<long>(j)))) *
                           pow(ma, static_cast<long>(k - j));
            m.poly[j] += term;
        }
    }
    return m;
}

ConifoldMatch extract_invariants(const ConifoldMatch &in, const ScaleMode &mode, std::optional<Real> tol,
                                 long den_bound)
{
    PrecisionScope ps(in.precision + 64);
    ConifoldMatch m = in;
    m.mode = mode;
    if (m.poly.size() != 4 || m.poly[3].is_zero())
        computation_error("degenerate-match", "the t^3 coefficient vanishes");
    const Real t = tol ? *tol : ldexp(Real(1), -128);
    const Complex tpi3 = pow(Complex::two_pi_i(), 3);
    const Complex z3(Real::zeta3());
    const auto &p = m.poly;
    if (mode.kind == ScaleMode::FixH3) {
        if (mode.value.is_zero())
            input_error("bad-mode", "H^3 must be nonzero");
        m.lambda = Complex(6) * p[3] / Complex(mode.value);
    } else {
        if (mode.value.is_zero() || p[0].is_zero())
            input_error("bad-mode", "c3 scaling needs nonzero c3 and constant term");
        m.lambda = p[0] * tpi3 / (Complex(mode.value) * z3);
    }
    Complex h3 = Complex(6) * p[3] / m.lambda;
    Complex c2h = Complex(24) * p[1] / m.lambda;
    Complex c3 = p[0] * tpi3 / (m.lambda * z3);
    m.s2 = p[2] / m.lambda;
    try {
        m.h3 = rational_reconstruct(h3, den_bound, t);
        m.c2h = rational_reconstruct(c2h, den_bound, t);
        m.c3 = rational_reconstruct(c3, den_bound, t);
        m.residual = max(abs(h3 - Complex(m.h3)), max(abs(c2h - Complex(m.c2h)), abs(c3 - Complex(m.c3))));
    } catch (const Error &e) {
        m.failure = e.what();
    }
    return m;
}

Real reflection_defect(const std::vector<Complex> &beta, const CMatrix &M)
{
    CMatrix D = M - CMatrix::identity(M.rows());
    Real bn(0);
    size_t piv = 0;
    for (size_t j = 0; j < beta.size(); ++j)
        if (abs(beta[j]) > bn) {
            bn = abs(beta[j]);
            piv = j;
        }
    Real worst(0), scale(0);
    for (size_t i = 0; i < D.rows(); ++i) {
        Complex c = D(i, piv) / beta[piv];
        for (size_t j = 0; j < beta.size(); ++j) {
            worst = max(worst, abs(D(i, j) - c * beta[j]));
            scale = max(scale, abs(D(i, j)));
        }
    }
    return scale.is_zero() ? worst : worst / scale;
}

} // namespace cyp
