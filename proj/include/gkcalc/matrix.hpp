#ifndef GKCALC_MATRIX_HPP
#define GKCALC_MATRIX_HPP

#include "gkcalc/scalar.hpp"
#include <vector>
#include <optional>

namespace gk {

/* Dense matrix over the Gaussian rationals.  Row major. */
struct Matrix {
    int rows = 0, cols = 0;
    std::vector<Scalar> a;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(size_t(r) * c) {}

    Scalar& at(int r, int c) { return a[size_t(r) * cols + c]; }
    const Scalar& at(int r, int c) const { return a[size_t(r) * cols + c]; }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; i++) m.at(i, i) = Scalar(1);
        return m;
    }
    static Matrix zero(int r, int c) { return Matrix(r, c); }

    bool is_zero() const {
        for (const auto& x : a) if (!x.is_zero()) return false;
        return true;
    }
    bool is_identity() const {
        if (rows != cols) return false;
        for (int i = 0; i < rows; i++)
            for (int j = 0; j < cols; j++)
                if (at(i, j) != (i == j ? Scalar(1) : Scalar(0))) return false;
        return true;
    }

    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix operator*(const Matrix& o) const;
    Matrix operator*(const Scalar& s) const;
    Matrix operator-() const { return *this * Scalar(-1); }
    bool operator==(const Matrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix transpose() const;
    Matrix kron(const Matrix& o) const;

    /* block diagonal with `o` appended */
    Matrix dsum(const Matrix& o) const;

    int rank() const;
    std::optional<Matrix> inverse() const;

    /* solve  this * X = rhs ; nullopt if inconsistent.  When the system is
     * underdetermined the free variables are set to zero. */
    std::optional<Matrix> solve(const Matrix& rhs) const;

    /* basis of the (right) null space, returned as columns */
    Matrix null_space() const;

    /* returns a matrix whose columns are a basis of the column span */
    Matrix column_space() const;
};

/* reduced row echelon form in place; returns pivot column indices */
std::vector<int> rref(Matrix& m);

} // namespace gk

#endif
