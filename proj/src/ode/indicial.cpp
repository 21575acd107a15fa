#include "cyp/error.hpp"
#include "cyp/ode/operator.hpp"

#include <algorithm>
#include <climits>

namespace cyp {

namespace {

// y(y-1)...(y-k+1)
Poly falling(int k)
{
    Poly p(1);
    for (int i = 0; i < k; ++i)
        p = p * Poly::linear_root(i);
    return p;
}

Indicial from_poly(Poly p)
{
    Indicial out;
    p = p.monic();
    out.poly = p;
    Poly rest = p;
    for (auto &r : rational_roots(p))
        for (int m = 0; m < r.multiplicity; ++m) {
            out.roots.push_back(r.value);
            rest = rest.divmod(Poly::linear_root(r.value)).first;
        }
    if (rest.degree() > 0) {
        out.exact = false;
        PrecisionScope ps(256);
        for (auto &f : squarefree_decomposition(rest))
            for (auto &z : numeric_roots(f))
                out.numeric_roots.push_back(z);
    }
    return out;
}

std::vector<Complex> numeric_vector(const Poly &p)
{
    std::vector<Complex> v;
    for (auto &c : p.coeffs())
        v.emplace_back(c);
    return v;
}

} // namespace

std::string SingularPoint::label() const
{
    switch (kind) {
    case Infinity:
        return "inf";
    case Finite:
        return value.str();
    case Algebraic:
        return "root of " + minimal.str("z") + " near " + numeric.str(12);
    }
    return "";
}

Indicial indicial(const DifferentialOperator &op, const SingularPoint &p)
{
    const int r = op.order();
    if (p.kind == SingularPoint::Infinity) {
        int deg = op.degree();
        int nu = INT_MAX;
        std::vector<Poly> rev;
        for (int i = 0; i <= r; ++i) {
            rev.push_back(op.coeff(i).is_zero() ? Poly() : op.coeff(i).reversed(deg));
            if (!rev.back().is_zero())
                nu = std::min(nu, rev.back().low_degree());
        }
        Poly ind;
        for (int i = 0; i <= r; ++i)
            ind += Poly::monomial(i, rev[static_cast<size_t>(i)].coeff(nu) * Rational(i % 2 ? -1 : 1));
        return from_poly(ind);
    }

    // Work in d/dz form at w = z - p, then multiply by w^r:
    // sum_k B_k(w + p) w^(r-k) theta(theta-1)...(theta-k+1), theta = w d/dw.
    auto b = to_weyl(op);
    if (p.kind == SingularPoint::Finite) {
        std::vector<Poly> c;
        int nu = INT_MAX;
        for (int k = 0; k <= r; ++k) {
            Poly ck = b[static_cast<size_t>(k)].compose_linear(1, p.value) * Poly::monomial(r - k);
            if (!ck.is_zero())
                nu = std::min(nu, ck.low_degree());
            c.push_back(std::move(ck));
        }
        Poly ind;
        for (int k = 0; k <= r; ++k)
            ind += falling(k) * c[static_cast<size_t>(k)].coeff(nu);
        return from_poly(ind);
    }

    // Algebraic point: Taylor coefficients of B_k at the numeric root, with a
    // numeric zero test at the working precision.
    Indicial out;
    out.exact = false;
    const Real tiny = ldexp(Real(1), -(Real::working_precision() * 3 / 4));
    int nu = INT_MAX;
    std::vector<std::vector<Complex>> taylor(static_cast<size_t>(r) + 1);
    for (int k = 0; k <= r; ++k) {
        Poly q = b[static_cast<size_t>(k)];
        Rational fact = 1;
        for (int j = 0; j <= q.degree(); ++j) {
            if (j > 0)
                fact *= Rational(j);
            Complex v = q.eval(p.numeric) * Complex(fact.inverse());
            Real scale(1);
            for (auto &cf : q.coeffs())
                scale = max(scale, abs(Real(cf)));
            if (abs(v) > tiny * scale)
                nu = std::min(nu, j + r - k);
            taylor[static_cast<size_t>(k)].push_back(v);
            q = q.derivative();
        }
    }
    std::vector<Complex> ind(static_cast<size_t>(r) + 1);
    for (int k = 0; k <= r; ++k) {
        int j = nu - (r - k);
        if (j < 0 || j >= static_cast<int>(taylor[static_cast<size_t>(k)].size()))
            continue;
        auto fk = numeric_vector(falling(k));
        for (size_t t = 0; t < fk.size(); ++t)
            ind[t] += fk[t] * taylor[static_cast<size_t>(k)][static_cast<size_t>(j)];
    }
    out.numeric_roots = numeric_roots(ind);
    return out;
}

RiemannScheme riemann_scheme(const DifferentialOperator &op, int digits)
{
    RiemannScheme scheme;
    const Poly &lead = op.coeff(op.order());
    Poly rest = lead;
    std::vector<SingularPoint> pts;
    for (auto &r : rational_roots(lead)) {
        pts.push_back(SingularPoint::at(r.value));
        for (int m = 0; m < r.multiplicity; ++m)
            rest = rest.divmod(Poly::linear_root(r.value)).first;
    }
    // z = 0 is singular for every D-form operator whose exponents there are not 0..r-1.
    if (std::none_of(pts.begin(), pts.end(), [](auto &p) { return p.value.is_zero(); })) {
        Indicial at0 = indicial(op, SingularPoint::at(0));
        bool ordinary = at0.exact && at0.roots.size() == static_cast<size_t>(op.order());
        for (int i = 0; ordinary && i < op.order(); ++i)
            ordinary = at0.roots[static_cast<size_t>(i)] == Rational(i);
        if (!ordinary) {
            pts.push_back(SingularPoint::at(0));
            std::sort(pts.begin(), pts.end(), [](auto &a, auto &b) { return a.value < b.value; });
        }
    }
    for (auto &p : pts) {
        SchemeColumn col{p, indicial(op, p), false};
        auto &ex = col.exponents;
        if (ex.exact && !ex.roots.empty()) {
            bool apparent = true;
            for (size_t i = 0; i < ex.roots.size(); ++i)
                apparent = apparent && ex.roots[i].is_integer() && ex.roots[i].sign() >= 0 &&
                           (i == 0 || ex.roots[i] != ex.roots[i - 1]);
            col.apparent_candidate = apparent;
        }
        scheme.push_back(std::move(col));
    }
    if (rest.degree() > 0) {
        PrecisionScope ps(static_cast<long>(digits * 3.33) + 32);
        for (auto &f : squarefree_decomposition(rest))
            for (auto &z : numeric_roots(f)) {
                SingularPoint p;
                p.kind = SingularPoint::Algebraic;
                p.minimal = f;
                p.numeric = z;
                scheme.push_back({p, indicial(op, p), false});
            }
    }
    scheme.push_back({SingularPoint::infinity(), indicial(op, SingularPoint::infinity()), false});
    return scheme;
}

Rational exponent_total(const RiemannScheme &scheme)
{
    Rational t;
    for (auto &c : scheme)
        for (auto &r : c.exponents.roots)
            t += r;
    return t;
}

std::string to_string(MumClass c)
{
    switch (c) {
    case MumClass::MUM:
        return "MUM";
    case MumClass::UnipotentNotMUM:
        return "unipotent-not-MUM";
    case MumClass::QuasiUnipotent:
        return "quasi-unipotent";
    case MumClass::Other:
        return "other";
    }
    return "other";
}

MumClass mum_check(const DifferentialOperator &op, const SingularPoint &p)
{
    Indicial ind = indicial(op, p);
    if (!ind.exact)
        return MumClass::Other;
    const auto &r = ind.roots;
    bool integral = std::all_of(r.begin(), r.end(), [](auto &x) { return x.is_integer(); });
    bool equal = std::all_of(r.begin(), r.end(), [&](auto &x) { return x == r.front(); });
    if (integral)
        return equal ? MumClass::MUM : MumClass::UnipotentNotMUM;
    return MumClass::QuasiUnipotent;
}

} // namespace cyp
