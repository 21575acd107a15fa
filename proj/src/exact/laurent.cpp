#include "cyp/exact/laurent.hpp"

#include <climits>

namespace cyp {

LaurentPolynomial LaurentPolynomial::constant(const Rational &c)
{
    return monomial(Exponent{}, c);
}

LaurentPolynomial LaurentPolynomial::monomial(const Exponent &e, const Rational &c)
{
    LaurentPolynomial p;
    p.add_term(e, c);
    return p;
}

Rational LaurentPolynomial::coeff(const Exponent &e) const
{
    auto it = t_.find(e);
    return it == t_.end() ? Rational(0) : it->second;
}

void LaurentPolynomial::add_term(const Exponent &e, const Rational &c)
{
    if (c.is_zero())
        return;
    auto [it, inserted] = t_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            t_.erase(it);
    }
}

int LaurentPolynomial::max_a_degree() const
{
    int m = INT_MIN;
    for (auto &[e, c] : t_)
        m = std::max(m, e[kAIndex]);
    return m;
}

int LaurentPolynomial::min_a_degree() const
{
    int m = INT_MAX;
    for (auto &[e, c] : t_)
        m = std::min(m, e[kAIndex]);
    return m;
}

LaurentPolynomial LaurentPolynomial::a_part(int k) const
{
    LaurentPolynomial p;
    for (auto &[e, c] : t_)
        if (e[kAIndex] == k) {
            Exponent f = e;
            f[kAIndex] = 0;
            p.t_.emplace(f, c);
        }
    return p;
}

LaurentPolynomial &LaurentPolynomial::operator+=(const LaurentPolynomial &o)
{
    for (auto &[e, c] : o.t_)
        add_term(e, c);
    return *this;
}

LaurentPolynomial &LaurentPolynomial::operator-=(const LaurentPolynomial &o)
{
    for (auto &[e, c] : o.t_)
        add_term(e, -c);
    return *this;
}

LaurentPolynomial &LaurentPolynomial::operator*=(const Rational &k)
{
    if (k.is_zero()) {
        t_.clear();
        return *this;
    }
    for (auto &[e, c] : t_)
        c *= k;
    return *this;
}

LaurentPolynomial operator*(const LaurentPolynomial &a, const LaurentPolynomial &b)
{
    LaurentPolynomial r;
    for (auto &[ea, ca] : a.t_)
        for (auto &[eb, cb] : b.t_) {
            Exponent e;
            for (int i = 0; i < 5; ++i)
                e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    return r;
}

std::string LaurentPolynomial::str() const
{
    if (t_.empty())
        return "0";
    static const char *names[5] = {"y1", "y2", "y3", "y4", "a"};
    std::string s;
    for (auto &[e, c] : t_) {
        std::string cs = c.str();
        if (!s.empty())
            s += c.sign() < 0 ? " - " : " + ";
        else if (c.sign() < 0)
            s += "-";
        if (cs[0] == '-')
            cs = cs.substr(1);
        bool unit = cs == "1";
        bool any = false;
        if (!unit)
            s += cs;
        for (int i = 0; i < 5; ++i) {
            if (e[i] == 0)
                continue;
            if (!unit || any)
                s += "*";
            s += names[i];
            if (e[i] != 1)
                s += "^" + std::to_string(e[i]);
            any = true;
        }
        if (unit && !any)
            s += "1";
    }
    return s;
}

} // namespace cyp
