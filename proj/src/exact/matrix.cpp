#include "cyp/exact/matrix.hpp"
#include "cyp/error.hpp"

namespace cyp {

std::vector<size_t> rref(QMatrix &m)
{
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        size_t p = row;
        while (p < m.rows() && m(p, col).is_zero())
            ++p;
        if (p == m.rows())
            continue;
        if (p != row)
            for (size_t j = 0; j < m.cols(); ++j)
                std::swap(m(p, j), m(row, j));
        Rational inv = m(row, col).inverse();
        for (size_t j = col; j < m.cols(); ++j)
            m(row, j) *= inv;
        for (size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col).is_zero())
                continue;
            Rational f = m(i, col);
            for (size_t j = col; j < m.cols(); ++j)
                if (!m(row, j).is_zero())
                    m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

size_t rank(QMatrix m)
{
    return rref(m).size();
}

std::vector<std::vector<Rational>> nullspace(QMatrix m)
{
    auto piv = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : piv)
        is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f])
            continue;
        std::vector<Rational> v(m.cols());
        v[f] = 1;
        for (size_t r = 0; r < piv.size(); ++r)
            v[piv[r]] = -m(r, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

Rational det(QMatrix m)
{
    if (m.rows() != m.cols())
        computation_error("non-square", "determinant of a non-square matrix");
    Rational d = 1;
    size_t n = m.rows();
    for (size_t col = 0; col < n; ++col) {
        size_t p = col;
        while (p < n && m(p, col).is_zero())
            ++p;
        if (p == n)
            return 0;
        if (p != col) {
            for (size_t j = 0; j < n; ++j)
                std::swap(m(p, j), m(col, j));
            d = -d;
        }
        d *= m(col, col);
        Rational inv = m(col, col).inverse();
        for (size_t i = col + 1; i < n; ++i) {
            if (m(i, col).is_zero())
                continue;
            Rational f = m(i, col) * inv;
            for (size_t j = col; j < n; ++j)
                m(i, j) -= f * m(col, j);
        }
    }
    return d;
}

QMatrix inverse(QMatrix m)
{
    size_t n = m.rows();
    if (n != m.cols())
        computation_error("non-square", "inverse of a non-square matrix");
    QMatrix aug(n, 2 * n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j)
            aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    auto piv = rref(aug);
    if (piv.size() < n || piv[n - 1] != n - 1)
        computation_error("singular-matrix", "matrix is not invertible");
    QMatrix inv(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            inv(i, j) = aug(i, n + j);
    return inv;
}

QMatrix matrix_power(const QMatrix &m, int e)
{
    if (e < 0)
        return matrix_power(inverse(m), -e);
    QMatrix r = QMatrix::identity(m.rows()), b = m;
    while (e > 0) {
        if (e & 1)
            r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

std::string to_string(const QMatrix &m)
{
    std::string s;
    for (size_t i = 0; i < m.rows(); ++i) {
        s += "(";
        for (size_t j = 0; j < m.cols(); ++j) {
            if (j)
                s += ", ";
            s += m(i, j).str();
        }
        s += ")";
        if (i + 1 < m.rows())
            s += "\n";
    }
    return s;
}

} // namespace cyp
