#include "cyp/ode/operator.hpp"
#include "cyp/error.hpp"
#include "cyp/exact/matrix.hpp"

#include <algorithm>

namespace cyp {

namespace {

// Signed Stirling numbers of the first kind s(k, j): x(x-1)...(x-k+1) = sum_j s(k,j) x^j.
std::vector<std::vector<Integer>> stirling1(int n)
{
    std::vector<std::vector<Integer>> s(static_cast<size_t>(n) + 1,
                                        std::vector<Integer>(static_cast<size_t>(n) + 1, 0));
    s[0][0] = 1;
    for (int k = 1; k <= n; ++k)
        for (int j = 1; j <= k; ++j)
            s[k][j] = s[k - 1][j - 1] - Integer(k - 1) * s[k - 1][j];
    return s;
}

// Stirling numbers of the second kind S(i, k): x^i = sum_k S(i,k) x(x-1)...(x-k+1).
std::vector<std::vector<Integer>> stirling2(int n)
{
    std::vector<std::vector<Integer>> s(static_cast<size_t>(n) + 1,
                                        std::vector<Integer>(static_cast<size_t>(n) + 1, 0));
    s[0][0] = 1;
    for (int i = 1; i <= n; ++i)
        for (int k = 1; k <= i; ++k)
            s[i][k] = Integer(k) * s[i - 1][k] + s[i - 1][k - 1];
    return s;
}

} // namespace

DifferentialOperator::DifferentialOperator(std::vector<Poly> coeffs, std::string var)
    : a_(std::move(coeffs)), var_(std::move(var))
{
    while (!a_.empty() && a_.back().is_zero())
        a_.pop_back();
    if (a_.empty())
        input_error("zero-operator", "operator has no nonzero coefficient");
    Poly g;
    for (auto &p : a_)
        g = gcd(g, p);
    if (g.degree() > 0)
        for (auto &p : a_)
            p = p.divmod(g).first;
    Integer num = 0, den = 1;
    for (auto &p : a_) {
        if (p.is_zero())
            continue;
        Rational c = p.content();
        num = gcd(num, c.num());
        den = lcm(den, c.den());
    }
    Rational scale(den, num);
    if (a_.back().lc().sign() < 0)
        scale = -scale;
    for (auto &p : a_)
        p *= scale;
}

int DifferentialOperator::degree() const
{
    int d = 0;
    for (auto &p : a_)
        d = std::max(d, p.degree());
    return d;
}

std::string DifferentialOperator::str() const
{
    std::string s;
    for (int i = order(); i >= 0; --i) {
        const Poly &p = a_[static_cast<size_t>(i)];
        if (p.is_zero())
            continue;
        if (!s.empty())
            s += " + ";
        s += "(" + p.str(var_) + ")";
        if (i > 0)
            s += "*D^" + std::to_string(i);
    }
    return s;
}

QSeries apply(const DifferentialOperator &op, const QSeries &s)
{
    QSeries out(s.var(), s.order());
    for (size_t n = 0; n < s.order(); ++n) {
        Rational acc;
        for (int i = 0; i <= op.order(); ++i) {
            const auto &c = op.coeff(i).coeffs();
            for (size_t j = 0; j < c.size() && j <= n; ++j) {
                if (c[j].is_zero() || s[n - j].is_zero())
                    continue;
                Rational m = Rational(static_cast<long>(n - j)).pow(i);
                acc += c[j] * m * s[n - j];
            }
        }
        out[n] = acc;
    }
    return out;
}

DifferentialOperator fit_operator(const QSeries &s, int max_order, int max_degree)
{
    if (max_order < 1 || max_degree < 0)
        input_error("bad-bounds", "need max_order >= 1 and max_degree >= 0");
    size_t need = static_cast<size_t>((max_order + 1) * (max_degree + 1) + 8);
    if (s.order() < need)
        input_error("underdetermined", "series has " + std::to_string(s.order()) + " coefficients, " +
                                           std::to_string(need) + " needed including guard rows");
    const size_t M = s.order();
    for (int r = 1; r <= max_order; ++r)
        for (int d = 0; d <= max_degree; ++d) {
            size_t cols = static_cast<size_t>((r + 1) * (d + 1));
            QMatrix A(M, cols);
            for (size_t n = 0; n < M; ++n)
                for (int i = 0; i <= r; ++i)
                    for (int j = 0; j <= d && static_cast<size_t>(j) <= n; ++j) {
                        const Rational &v = s[n - static_cast<size_t>(j)];
                        if (v.is_zero())
                            continue;
                        A(n, static_cast<size_t>(i * (d + 1) + j)) =
                            Rational(static_cast<long>(n) - j).pow(i) * v;
                    }
            auto ns = nullspace(A);
            if (ns.empty())
                continue;
            if (ns.size() > 1)
                computation_error("underdetermined",
                                  "annihilators of order " + std::to_string(r) + " and degree " +
                                      std::to_string(d) + " form a space of dimension " +
                                      std::to_string(ns.size()));
            std::vector<Poly> coeffs;
            for (int i = 0; i <= r; ++i) {
                std::vector<Rational> c(ns[0].begin() + i * (d + 1), ns[0].begin() + (i + 1) * (d + 1));
                coeffs.emplace_back(std::move(c));
            }
            return DifferentialOperator(std::move(coeffs), s.var());
        }
    computation_error("no-annihilator-found", "no operator of order <= " + std::to_string(max_order) +
                                                  " and degree <= " + std::to_string(max_degree));
}

std::vector<Poly> to_weyl(const DifferentialOperator &op)
{
    int r = op.order();
    auto S = stirling2(r);
    std::vector<Poly> b(static_cast<size_t>(r) + 1);
    for (int k = 0; k <= r; ++k) {
        Poly acc;
        for (int i = k; i <= r; ++i)
            if (S[i][k] != 0)
                acc += op.coeff(i) * Rational(S[i][k]);
        b[static_cast<size_t>(k)] = acc * Poly::monomial(k);
    }
    return b;
}

DifferentialOperator from_weyl(const std::vector<Poly> &b, const std::string &var)
{
    int r = static_cast<int>(b.size()) - 1;
    auto s = stirling1(r);
    std::vector<Poly> a(static_cast<size_t>(r) + 1);
    for (int k = 0; k <= r; ++k) {
        Poly t = b[static_cast<size_t>(k)] * Poly::monomial(r - k);
        for (int j = 0; j <= k; ++j)
            if (s[k][j] != 0)
                a[static_cast<size_t>(j)] += t * Rational(s[k][j]);
    }
    return DifferentialOperator(std::move(a), var);
}

DifferentialOperator transform(const DifferentialOperator &op, const std::vector<Move> &moves)
{
    DifferentialOperator cur = op;
    for (auto &mv : moves) {
        std::vector<Poly> a;
        switch (mv.kind) {
        case Move::InvertZ: {
            int deg = cur.degree();
            for (int i = 0; i <= cur.order(); ++i) {
                Poly p = cur.coeff(i).is_zero() ? Poly() : cur.coeff(i).reversed(deg);
                a.push_back(i % 2 ? -p : p);
            }
            break;
        }
        case Move::Rescale:
            if (mv.value.is_zero())
                input_error("bad-rescale", "rescale factor must be nonzero");
            for (auto &p : cur.coeffs())
                a.push_back(p.compose_linear(mv.value.inverse(), 0));
            break;
        case Move::Shift: {
            auto b = to_weyl(cur);
            for (auto &p : b)
                p = p.compose_linear(1, -mv.value);
            cur = from_weyl(b, cur.var());
            continue;
        }
        case Move::Gauge: {
            // (D + g)^i = sum_j binom(i, j) g^(i-j) D^j
            a.assign(static_cast<size_t>(cur.order()) + 1, Poly());
            for (int i = 0; i <= cur.order(); ++i)
                for (int j = 0; j <= i; ++j)
                    a[static_cast<size_t>(j)] +=
                        cur.coeff(i) * (Rational(binomial(i, j)) * mv.value.pow(i - j));
            break;
        }
        }
        cur = DifferentialOperator(std::move(a), cur.var());
    }
    return cur;
}

QSeries holomorphic_solution(const DifferentialOperator &op, int terms)
{
    if (terms < 1)
        input_error("bad-terms", "need at least one term");
    auto p0 = [&](long n) {
        Rational v;
        for (int i = 0; i <= op.order(); ++i)
            v += op.coeff(i).coeff(0) * Rational(n).pow(i);
        return v;
    };
    if (!p0(0).is_zero())
        computation_error("no-holomorphic-solution", "0 is not an exponent at the origin");
    QSeries f(op.var(), static_cast<size_t>(terms));
    f[0] = 1;
    for (long n = 1; n < terms; ++n) {
        Rational rhs;
        for (int i = 0; i <= op.order(); ++i) {
            const auto &c = op.coeff(i).coeffs();
            for (long j = 1; j < static_cast<long>(c.size()) && j <= n; ++j)
                if (!c[static_cast<size_t>(j)].is_zero())
                    rhs -= c[static_cast<size_t>(j)] * Rational(n - j).pow(i) * f[static_cast<size_t>(n - j)];
        }
        Rational lead = p0(n);
        if (lead.is_zero()) {
            if (!rhs.is_zero())
                computation_error("no-holomorphic-solution",
                                  "resonant exponent " + std::to_string(n) + " forces a logarithm");
            continue;
        }
        f[static_cast<size_t>(n)] = rhs / lead;
    }
    return f;
}

} // namespace cyp
