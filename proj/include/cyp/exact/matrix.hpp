#pragma once

#include "cyp/exact/rational.hpp"

#include <string>
#include <vector>

namespace cyp {

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(size_t rows, size_t cols) : r_(rows), c_(cols), a_(rows * cols, T(0)) {}

    static Matrix identity(size_t n)
    {
        Matrix m(n, n);
        for (size_t i = 0; i < n; ++i)
            m(i, i) = T(1);
        return m;
    }
    static Matrix from_rows(const std::vector<std::vector<T>> &rows)
    {
        Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
        for (size_t i = 0; i < m.r_; ++i)
            for (size_t j = 0; j < m.c_; ++j)
                m(i, j) = rows[i].at(j);
        return m;
    }

    size_t rows() const { return r_; }
    size_t cols() const { return c_; }
    T &operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
    const T &operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }

    Matrix transpose() const
    {
        Matrix t(c_, r_);
        for (size_t i = 0; i < r_; ++i)
            for (size_t j = 0; j < c_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix &a, const Matrix &b)
    {
        Matrix m(a.r_, b.c_);
        for (size_t i = 0; i < a.r_; ++i)
            for (size_t k = 0; k < a.c_; ++k)
                for (size_t j = 0; j < b.c_; ++j)
                    m(i, j) += a(i, k) * b(k, j);
        return m;
    }
    friend Matrix operator+(Matrix a, const Matrix &b)
    {
        for (size_t i = 0; i < a.a_.size(); ++i)
            a.a_[i] += b.a_[i];
        return a;
    }
    friend Matrix operator-(Matrix a, const Matrix &b)
    {
        for (size_t i = 0; i < a.a_.size(); ++i)
            a.a_[i] -= b.a_[i];
        return a;
    }
    friend Matrix operator*(const T &k, Matrix a)
    {
        for (auto &x : a.a_)
            x *= k;
        return a;
    }
    friend bool operator==(const Matrix &a, const Matrix &b)
    {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
    }

private:
    size_t r_ = 0, c_ = 0;
    std::vector<T> a_;
};

using QMatrix = Matrix<Rational>;

// Reduced row echelon form in place; returns pivot columns.
std::vector<size_t> rref(QMatrix &m);
size_t rank(QMatrix m);
// Basis of {x : m x = 0}, each vector with a 1 in its free column.
std::vector<std::vector<Rational>> nullspace(QMatrix m);
Rational det(QMatrix m);
QMatrix inverse(QMatrix m);
QMatrix matrix_power(const QMatrix &m, int e);
std::string to_string(const QMatrix &m);

} // namespace cyp
