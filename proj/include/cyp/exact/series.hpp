#pragma once

#include "cyp/error.hpp"
#include "cyp/exact/rational.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace cyp {

// Power series in one variable with coefficients for exponents 0..order()-1.
// Binary operations truncate at the smaller of the operand orders.
template <class T>
class Series {
public:
    Series() = default;
    Series(std::string var, size_t order) : var_(std::move(var)), c_(order, T(0)) {}
    Series(std::string var, std::vector<T> coeffs) : var_(std::move(var)), c_(std::move(coeffs)) {}

    static Series constant(std::string var, size_t order, const T &v)
    {
        Series s(std::move(var), order);
        if (order)
            s.c_[0] = v;
        return s;
    }
    static Series variable(std::string var, size_t order)
    {
        Series s(std::move(var), order);
        if (order > 1)
            s.c_[1] = T(1);
        return s;
    }

    const std::string &var() const { return var_; }
    size_t order() const { return c_.size(); }
    const std::vector<T> &coeffs() const { return c_; }
    const T &operator[](size_t n) const { return c_.at(n); }
    T &operator[](size_t n) { return c_.at(n); }

    Series truncated(size_t n) const
    {
        Series r = *this;
        r.c_.resize(std::min(n, c_.size()), T(0));
        return r;
    }
    Series renamed(std::string var) const
    {
        Series r = *this;
        r.var_ = std::move(var);
        return r;
    }

    Series &operator+=(const Series &o)
    {
        check_var(o);
        c_.resize(std::min(order(), o.order()));
        for (size_t i = 0; i < c_.size(); ++i)
            c_[i] += o.c_[i];
        return *this;
    }
    Series &operator-=(const Series &o)
    {
        check_var(o);
        c_.resize(std::min(order(), o.order()));
        for (size_t i = 0; i < c_.size(); ++i)
            c_[i] -= o.c_[i];
        return *this;
    }
    Series &operator*=(const T &k)
    {
        for (auto &x : c_)
            x *= k;
        return *this;
    }

    friend Series operator+(Series a, const Series &b) { return a += b; }
    friend Series operator-(Series a, const Series &b) { return a -= b; }
    friend Series operator*(Series a, const T &k) { return a *= k; }
    friend Series operator*(const T &k, Series a) { return a *= k; }
    friend Series operator-(Series a)
    {
        for (auto &x : a.c_)
            x = -x;
        return a;
    }
    friend Series operator*(const Series &a, const Series &b)
    {
        a.check_var(b);
        size_t n = std::min(a.order(), b.order());
        Series r(a.var_, n);
        for (size_t i = 0; i < n; ++i) {
            if (is_zero_coeff(a.c_[i]))
                continue;
            for (size_t j = 0; i + j < n; ++j)
                r.c_[i + j] += a.c_[i] * b.c_[j];
        }
        return r;
    }
    friend bool operator==(const Series &a, const Series &b)
    {
        return a.var_ == b.var_ && a.c_ == b.c_;
    }

    void check_var(const Series &o) const
    {
        if (var_ != o.var_)
            input_error("variable-mismatch", "'" + var_ + "' vs '" + o.var_ + "'");
    }

    static bool is_zero_coeff(const T &x)
    {
        if constexpr (requires { x.is_zero(); })
            return x.is_zero();
        else
            return x == T(0);
    }

private:
    std::string var_;
    std::vector<T> c_;
};

using QSeries = Series<Rational>;

template <class T>
Series<T> reciprocal(const Series<T> &s)
{
    size_t n = s.order();
    if (n == 0)
        return s;
    if (Series<T>::is_zero_coeff(s[0]))
        computation_error("zero-constant-term", "reciprocal of a series with zero constant term");
    Series<T> r(s.var(), n);
    T inv = T(1) / s[0];
    r[0] = inv;
    for (size_t k = 1; k < n; ++k) {
        T acc(0);
        for (size_t j = 1; j <= k; ++j)
            acc += s[j] * r[k - j];
        r[k] = -(acc * inv);
    }
    return r;
}

// f(g) with g(0) = 0.
template <class T>
Series<T> compose(const Series<T> &f, const Series<T> &g)
{
    if (g.order() && !Series<T>::is_zero_coeff(g[0]))
        computation_error("nonzero-constant-term", "compose needs g(0) = 0");
    size_t n = std::min(f.order(), g.order());
    Series<T> r = Series<T>::constant(g.var(), n, n ? f[n - 1] : T(0));
    Series<T> gt = g.truncated(n);
    for (size_t k = n; k-- > 1;) {
        r = r * gt;
        r[0] += f[k - 1];
    }
    return r;
}

template <class T>
Series<T> exp(const Series<T> &f)
{
    size_t n = f.order();
    if (n && !Series<T>::is_zero_coeff(f[0]))
        computation_error("nonzero-constant-term", "exp needs a zero constant term");
    Series<T> e(f.var(), n);
    if (n)
        e[0] = T(1);
    for (size_t m = 1; m < n; ++m) {
        T acc(0);
        for (size_t k = 1; k <= m; ++k)
            acc += T(static_cast<long>(k)) * f[k] * e[m - k];
        e[m] = acc / T(static_cast<long>(m));
    }
    return e;
}

template <class T>
Series<T> log(const Series<T> &f)
{
    size_t n = f.order();
    if (n && !(f[0] == T(1)))
        computation_error("constant-term-not-one", "log needs constant term 1");
    Series<T> l(f.var(), n);
    for (size_t m = 1; m < n; ++m) {
        T acc(0);
        for (size_t k = 1; k < m; ++k)
            acc += T(static_cast<long>(k)) * l[k] * f[m - k];
        l[m] = f[m] - acc / T(static_cast<long>(m));
    }
    return l;
}

// Compositional inverse: reverse(f)(f(z)) = z. Lagrange inversion.
template <class T>
Series<T> reverse(const Series<T> &f)
{
    size_t n = f.order();
    if (n < 2 || !Series<T>::is_zero_coeff(f[0]) || Series<T>::is_zero_coeff(f[1]))
        computation_error("not-reversible", "reverse needs f(0) = 0 and f'(0) != 0");
    // h = w / f(w), then [z^m] g = [w^(m-1)] h^m / m.
    Series<T> q(f.var(), n - 1);
    for (size_t i = 0; i + 1 < n; ++i)
        q[i] = f[i + 1];
    Series<T> h = reciprocal(q);
    Series<T> g(f.var(), n);
    Series<T> p = Series<T>::constant(f.var(), n - 1, T(1));
    for (size_t m = 1; m < n; ++m) {
        p = p * h;
        g[m] = p[m - 1] / T(static_cast<long>(m));
    }
    return g;
}

// Euler derivative z d/dz.
template <class T>
Series<T> theta(const Series<T> &f)
{
    Series<T> r = f;
    for (size_t i = 0; i < r.order(); ++i)
        r[i] *= T(static_cast<long>(i));
    return r;
}

// d/dz; the order drops by one.
template <class T>
Series<T> derivative(const Series<T> &f)
{
    if (f.order() == 0)
        return f;
    Series<T> r(f.var(), f.order() - 1);
    for (size_t i = 0; i + 1 < f.order(); ++i)
        r[i] = f[i + 1] * T(static_cast<long>(i + 1));
    return r;
}

// z^k f, keeping the order.
template <class T>
Series<T> shift_up(const Series<T> &f, size_t k)
{
    Series<T> r(f.var(), f.order());
    for (size_t i = 0; i + k < f.order(); ++i)
        r[i + k] = f[i];
    return r;
}

// f(c z)
template <class T>
Series<T> scale_var(const Series<T> &f, const T &c)
{
    Series<T> r = f;
    T p(1);
    for (size_t i = 0; i < r.order(); ++i) {
        r[i] *= p;
        p *= c;
    }
    return r;
}

} // namespace cyp
