#include "cyp/exact/poly.hpp"
#include "cyp/error.hpp"
#include "cyp/numeric/complex.hpp"

#include <algorithm>

namespace cyp {

Poly::Poly(const Rational &c)
{
    if (!c.is_zero())
        c_.push_back(c);
}

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs))
{
    trim();
}

Poly Poly::x()
{
    return monomial(1);
}

Poly Poly::monomial(int k, const Rational &c)
{
    std::vector<Rational> v(static_cast<size_t>(k) + 1);
    v[static_cast<size_t>(k)] = c;
    return Poly(std::move(v));
}

Poly Poly::linear_root(const Rational &r)
{
    return Poly({-r, Rational(1)});
}

void Poly::trim()
{
    while (!c_.empty() && c_.back().is_zero())
        c_.pop_back();
}

Rational Poly::coeff(int k) const
{
    if (k < 0 || k > degree())
        return 0;
    return c_[static_cast<size_t>(k)];
}

int Poly::low_degree() const
{
    for (size_t i = 0; i < c_.size(); ++i)
        if (!c_[i].is_zero())
            return static_cast<int>(i);
    return -1;
}

Rational Poly::eval(const Rational &x) const
{
    Rational r;
    for (size_t i = c_.size(); i-- > 0;)
        r = r * x + c_[i];
    return r;
}

Complex Poly::eval(const Complex &x) const
{
    Complex r;
    for (size_t i = c_.size(); i-- > 0;)
        r = r * x + Complex(c_[i]);
    return r;
}

Poly &Poly::operator+=(const Poly &o)
{
    if (o.c_.size() > c_.size())
        c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i)
        c_[i] += o.c_[i];
    trim();
    return *this;
}

Poly &Poly::operator-=(const Poly &o)
{
    if (o.c_.size() > c_.size())
        c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i)
        c_[i] -= o.c_[i];
    trim();
    return *this;
}

Poly &Poly::operator*=(const Rational &k)
{
    for (auto &x : c_)
        x *= k;
    trim();
    return *this;
}

Poly operator*(const Poly &a, const Poly &b)
{
    if (a.is_zero() || b.is_zero())
        return Poly();
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero())
            continue;
        for (size_t j = 0; j < b.c_.size(); ++j)
            r[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(r));
}

std::pair<Poly, Poly> Poly::divmod(const Poly &d) const
{
    if (d.is_zero())
        computation_error("division-by-zero", "polynomial division by zero");
    Poly r = *this;
    if (degree() < d.degree())
        return {Poly(), r};
    std::vector<Rational> q(static_cast<size_t>(degree() - d.degree() + 1));
    Rational inv = d.lc().inverse();
    while (!r.is_zero() && r.degree() >= d.degree()) {
        int k = r.degree() - d.degree();
        Rational f = r.lc() * inv;
        q[static_cast<size_t>(k)] = f;
        for (int i = 0; i <= d.degree(); ++i)
            r.c_[static_cast<size_t>(i + k)] -= f * d.c_[static_cast<size_t>(i)];
        r.trim();
    }
    return {Poly(std::move(q)), r};
}

Poly Poly::derivative() const
{
    if (c_.size() <= 1)
        return Poly();
    std::vector<Rational> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i)
        r[i - 1] = c_[i] * Rational(static_cast<long>(i));
    return Poly(std::move(r));
}

Poly Poly::compose_linear(const Rational &a, const Rational &b) const
{
    Poly lin({b, a});
    Poly r;
    for (size_t i = c_.size(); i-- > 0;)
        r = r * lin + Poly(c_[i]);
    return r;
}

Poly Poly::reversed(int deg) const
{
    if (deg < degree())
        computation_error("bad-reversal-degree", "degree below polynomial degree");
    std::vector<Rational> r(static_cast<size_t>(deg) + 1);
    for (size_t i = 0; i < c_.size(); ++i)
        r[static_cast<size_t>(deg) - i] = c_[i];
    return Poly(std::move(r));
}

Poly Poly::pow(int e) const
{
    Poly r(1), b = *this;
    while (e > 0) {
        if (e & 1)
            r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

Poly Poly::monic() const
{
    if (is_zero())
        return *this;
    return *this * lc().inverse();
}

Rational Poly::content() const
{
    if (is_zero())
        return 1;
    Integer g = 0, l = 1;
    for (auto &c : c_) {
        if (c.is_zero())
            continue;
        g = gcd(g, c.num());
        l = lcm(l, c.den());
    }
    return Rational(abs(g), l);
}

Poly Poly::primitive() const
{
    if (is_zero())
        return *this;
    return *this * content().inverse();
}

std::string Poly::str(const std::string &var) const
{
    if (is_zero())
        return "0";
    std::string s;
    for (size_t i = c_.size(); i-- > 0;) {
        const Rational &c = c_[i];
        if (c.is_zero())
            continue;
        std::string mag = c.abs().str();
        if (s.empty())
            s += c.sign() < 0 ? "-" : "";
        else
            s += c.sign() < 0 ? " - " : " + ";
        if (i == 0) {
            s += mag;
            continue;
        }
        if (mag != "1")
            s += mag + "*";
        s += var;
        if (i > 1)
            s += "^" + std::to_string(i);
    }
    return s;
}

Poly gcd(Poly a, Poly b)
{
    while (!b.is_zero()) {
        Poly r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

std::vector<Poly> squarefree_decomposition(const Poly &p)
{
    std::vector<Poly> out;
    if (p.degree() < 1)
        return out;
    Poly f = p.monic();
    Poly a = gcd(f, f.derivative());
    Poly b = f.divmod(a).first;
    Poly c = f.derivative().divmod(a).first;
    Poly d = c - b.derivative();
    while (b.degree() > 0) {
        Poly g = gcd(b, d);
        out.push_back(g);
        b = b.divmod(g).first;
        c = d.divmod(g).first;
        d = c - b.derivative();
    }
    while (!out.empty() && out.back().degree() == 0)
        out.pop_back();
    return out;
}

std::vector<Complex> numeric_roots(const Poly &p)
{
    std::vector<Complex> c;
    for (auto &x : p.coeffs())
        c.emplace_back(x);
    return numeric_roots(c);
}

std::vector<Complex> numeric_roots(std::vector<Complex> c)
{
    while (!c.empty() && c.back().is_zero())
        c.pop_back();
    int n = static_cast<int>(c.size()) - 1;
    std::vector<Complex> roots;
    if (n < 1)
        return roots;
    long prec = Real::working_precision();
    Complex lead = c.back();
    for (auto &x : c)
        x /= lead;
    std::vector<Complex> dc;
    for (int i = 1; i <= n; ++i)
        dc.push_back(c[static_cast<size_t>(i)] * Complex(i));
    auto eval = [](const std::vector<Complex> &q, const Complex &z) {
        Complex r;
        for (size_t i = q.size(); i-- > 0;)
            r = r * z + q[i];
        return r;
    };

    // Aberth-Ehrlich iteration from points on a circle of Cauchy-bound radius.
    Real bound(1);
    for (int i = 0; i < n; ++i)
        bound = max(bound, Real(1) + abs(c[static_cast<size_t>(i)]));
    for (int k = 0; k < n; ++k) {
        Real ang = Real::pi() * Real(2 * k + 1) / Real(n) + Real(0.4);
        roots.push_back(polar(bound * Real(0.8), ang));
    }
    Real tol = ldexp(Real(1), -(prec - 8));
    for (int iter = 0; iter < 50 * (n + 10) + prec; ++iter) {
        Real worst(0);
        for (int k = 0; k < n; ++k) {
            Complex &z = roots[static_cast<size_t>(k)];
            Complex fz = eval(c, z);
            if (fz.is_zero())
                continue;
            Complex ratio = fz / eval(dc, z);
            Complex s;
            for (int j = 0; j < n; ++j)
                if (j != k)
                    s += Complex(1) / (z - roots[static_cast<size_t>(j)]);
            Complex w = ratio / (Complex(1) - ratio * s);
            z -= w;
            Real rel = abs(w) / max(Real(1), abs(z));
            worst = max(worst, rel);
        }
        if (worst < tol)
            break;
    }
    return roots;
}

namespace {

// Best rational approximations of x with denominator <= bound.
std::vector<Rational> convergents(const Real &x, const Integer &bound)
{
    std::vector<Rational> out;
    Integer h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    Real y = x;
    for (int it = 0; it < 4000; ++it) {
        Real fl;
        mpfr_floor(fl.get(), y.get());
        Integer a;
        mpfr_get_z(a.get_mpz_t(), fl.get(), MPFR_RNDN);
        Integer h2 = a * h1 + h0, k2 = a * k1 + k0;
        if (k2 > bound)
            break;
        out.emplace_back(h2, k2);
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        Real frac = y - fl;
        if (frac.is_zero() || frac.exponent() < -(Real::working_precision() - 16))
            break;
        y = Real(1) / frac;
    }
    return out;
}

} // namespace

std::vector<RationalRoot> rational_roots(const Poly &p)
{
    std::vector<RationalRoot> out;
    if (p.degree() < 1)
        return out;
    auto parts = squarefree_decomposition(p);
    for (size_t i = 0; i < parts.size(); ++i) {
        Poly f = parts[i].primitive();
        if (f.degree() < 1)
            continue;
        // Any rational root has denominator dividing the leading coefficient.
        Integer lc = abs(f.lc().num());
        long bits = static_cast<long>(mpz_sizeinbase(lc.get_mpz_t(), 2));
        for (auto &c : f.coeffs())
            bits = std::max(bits, static_cast<long>(mpz_sizeinbase(c.num().get_mpz_t(), 2)));
        PrecisionScope ps(std::max(192L, 4 * bits + 128));
        while (f.degree() >= 1) {
            if (f.coeff(0).is_zero()) {
                out.push_back({Rational(0), static_cast<int>(i) + 1});
                f = f.divmod(Poly::x()).first;
                continue;
            }
            bool found = false;
            for (auto &z : numeric_roots(f)) {
                if (abs(z.im) > ldexp(Real(1), -(Real::working_precision() / 2)) * max(Real(1), abs(z.re)))
                    continue;
                for (auto &cand : convergents(z.re, lc)) {
                    if (f.eval(cand).is_zero()) {
                        out.push_back({cand, static_cast<int>(i) + 1});
                        f = f.divmod(Poly::linear_root(cand)).first;
                        found = true;
                        break;
                    }
                }
                if (found)
                    break;
            }
            if (!found)
                break;
        }
    }
    std::sort(out.begin(), out.end(), [](auto &a, auto &b) { return a.value < b.value; });
    return out;
}

} // namespace cyp
