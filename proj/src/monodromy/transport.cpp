#include "cyp/error.hpp"
#include "cyp/monodromy/monodromy.hpp"

#include <algorithm>

namespace cyp {

CMatrix inverse(const CMatrix &m)
{
    const size_t n = m.rows();
    if (n != m.cols())
        input_error("bad-matrix", "inverse of a non-square matrix");
    CMatrix a = m, inv = CMatrix::identity(n);
    for (size_t c = 0; c < n; ++c) {
        size_t best = c;
        for (size_t r = c + 1; r < n; ++r)
            if (abs(a(r, c)) > abs(a(best, c)))
                best = r;
        if (a(best, c).is_zero())
            computation_error("singular-matrix", "numeric matrix is singular");
        if (best != c)
            for (size_t j = 0; j < n; ++j) {
                std::swap(a(c, j), a(best, j));
                std::swap(inv(c, j), inv(best, j));
            }
        Complex p = Complex(1) / a(c, c);
        for (size_t j = 0; j < n; ++j) {
            a(c, j) *= p;
            inv(c, j) *= p;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == c || a(r, c).is_zero())
                continue;
            Complex f = a(r, c);
            for (size_t j = 0; j < n; ++j) {
                a(r, j) -= f * a(c, j);
                inv(r, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

Real max_abs(const CMatrix &m)
{
    Real r(0);
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j)
            r = max(r, abs(m(i, j)));
    return r;
}

CMatrix to_complex(const QMatrix &m)
{
    CMatrix c(m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j)
            c(i, j) = Complex(m(i, j));
    return c;
}

PathPlan reversed(const PathPlan &p)
{
    PathPlan r = p;
    if (p.waypoints.empty())
        return r;
    r.base = p.waypoints.back();
    r.waypoints.clear();
    for (size_t i = p.waypoints.size() - 1; i-- > 0;)
        r.waypoints.push_back(p.waypoints[i]);
    r.waypoints.push_back(p.base);
    r.descriptor = "reverse of " + p.descriptor;
    return r;
}

namespace {

Real falling_real(long n, int k)
{
    Real r(1);
    for (int i = 0; i < k; ++i)
        r = mul_si(r, n - i);
    return r;
}

// Taylor coefficients of p at c.
std::vector<Complex> taylor_complex(const Poly &p, const Complex &c)
{
    std::vector<Complex> a;
    for (auto &x : p.coeffs())
        a.emplace_back(x);
    const size_t n = a.size();
    for (size_t k = 0; k + 1 < n; ++k)
        for (size_t i = n - 1; i > k; --i)
            a[i - 1] += c * a[i];
    return a;
}

class Stepper {
public:
    Stepper(const DifferentialOperator &op, long bits, int min_terms)
        : B_(to_weyl(op)), sing_(finite_singularities(op)), bits_(bits), min_terms_(min_terms)
    {
        r_ = static_cast<int>(B_.size()) - 1;
    }

    Real distance(const Complex &z) const
    {
        Real d = abs(z - sing_[0]);
        for (auto &s : sing_)
            d = min(d, abs(z - s));
        return d;
    }

    // Column l holds the derivatives at c + h of the solution whose jet at c is e_l.
    CMatrix step(const Complex &c, const Complex &h) const
    {
        const int r = r_;
        const size_t R = static_cast<size_t>(r);
        std::vector<std::vector<Complex>> gamma(R + 1);
        auto beta = taylor_complex(B_[R], c);
        Complex lead_inv = Complex(1) / beta[0];
        for (int k = 0; k <= r; ++k) {
            auto t = taylor_complex(B_[static_cast<size_t>(k)], c);
            Complex hp = pow(h, r - k);
            for (size_t j = 0; j < t.size(); ++j) {
                gamma[static_cast<size_t>(k)].push_back(t[j] * hp * lead_inv);
                hp *= h;
            }
        }

        std::vector<std::vector<Complex>> b;  // b[n][l] = a_n h^n
        std::vector<std::vector<Complex>> acc(R, std::vector<Complex>(R));
        const Real eps = ldexp(Real(1), -(bits_ + 16));
        Real peak(0);
        int quiet = 0;
        size_t maxdeg = 0;
        for (auto &g : gamma)
            maxdeg = std::max(maxdeg, g.size());
        const long limit = 100000;
        for (long n = 0;; ++n) {
            if (n >= limit)
                computation_error("precision-exhausted", "local series did not converge");
            std::vector<Complex> v(R);
            if (n < r) {
                v[static_cast<size_t>(n)] = pow(h, n) / Complex(Real(factorial(n)));
            } else {
                const long m = n - r;  // v = b_{m + r}
                for (int k = 0; k <= r; ++k) {
                    const auto &g = gamma[static_cast<size_t>(k)];
                    for (size_t j = (k == r ? 1 : 0); j < g.size() && static_cast<long>(j) <= m; ++j) {
                        if (g[j].is_zero())
                            continue;
                        long idx = m - static_cast<long>(j) + k;
                        Complex f = g[j] * Complex(falling_real(idx, k));
                        const auto &u = b[static_cast<size_t>(idx)];
                        for (size_t l = 0; l < R; ++l)
                            if (!u[l].is_zero())
                                v[l] -= f * u[l];
                    }
                }
                Real d = falling_real(n, r);
                for (auto &x : v)
                    x /= Complex(d);
            }
            Real mag(0);
            for (int i = 0; i < r; ++i) {
                Real ff = falling_real(n, i);
                if (ff.is_zero())
                    continue;
                for (size_t l = 0; l < R; ++l)
                    acc[static_cast<size_t>(i)][l] += v[l] * Complex(ff);
            }
            Real w = Real(n + 1) * Real(n + 1) * Real(n + 1);
            for (auto &x : v)
                mag = max(mag, abs(x) * w);
            b.push_back(std::move(v));
            peak = max(peak, mag);
            if (n >= min_terms_) {
                quiet = mag <= eps * peak ? quiet + 1 : 0;
                if (quiet >= static_cast<int>(maxdeg) + r)
                    break;
            }
        }
        CMatrix phi(R, R);
        Complex hinv = Complex(1) / h, hp(1);
        for (size_t i = 0; i < R; ++i) {
            for (size_t l = 0; l < R; ++l)
                phi(i, l) = acc[i][l] * hp;
            hp *= hinv;
        }
        return phi;
    }

    int order() const { return r_; }

private:
    std::vector<Poly> B_;
    std::vector<Complex> sing_;
    long bits_;
    int min_terms_;
    int r_ = 0;
};

} // namespace

CMatrix transport(const DifferentialOperator &op, const PathPlan &path, long precision, int order)
{
    PrecisionScope ps(precision + 64);
    Stepper st(op, precision, order);
    const size_t R = static_cast<size_t>(st.order());
    CMatrix total = CMatrix::identity(R);
    const Real theta(path.theta);
    const Real tiny = ldexp(Real(1), -40);
    Complex pos = path.base;
    for (auto &target : path.waypoints) {
        for (;;) {
            Complex rest = target - pos;
            Real len = abs(rest);
            if (len.is_zero())
                break;
            Real room = theta * st.distance(pos);
            if (room < tiny)
                computation_error("path-hits-singularity", "path passes through a singular point near " + pos.str(12));
            Complex h = len <= room ? rest : rest * Complex(room / len);
            total = st.step(pos, h) * total;
            if (len <= room) {
                pos = target;
                break;
            }
            pos += h;
        }
    }
    return total;
}

} // namespace cyp
