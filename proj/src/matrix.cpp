#include "gkcalc/matrix.hpp"

namespace gk {

Matrix Matrix::operator+(const Matrix& o) const {
    if (rows != o.rows || cols != o.cols) throw Error("Matrix: shape mismatch in +");
    Matrix r(rows, cols);
    for (size_t k = 0; k < a.size(); k++) r.a[k] = a[k] + o.a[k];
    return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
    if (rows != o.rows || cols != o.cols) throw Error("Matrix: shape mismatch in -");
    Matrix r(rows, cols);
    for (size_t k = 0; k < a.size(); k++) r.a[k] = a[k] - o.a[k];
    return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols != o.rows) throw Error("Matrix: shape mismatch in *");
    Matrix r(rows, o.cols);
    for (int i = 0; i < rows; i++)
        for (int k = 0; k < cols; k++) {
            const Scalar& x = at(i, k);
            if (x.is_zero()) continue;
            for (int j = 0; j < o.cols; j++) {
                const Scalar& y = o.at(k, j);
                if (y.is_zero()) continue;
                r.at(i, j) += x * y;
            }
        }
    return r;
}

Matrix Matrix::operator*(const Scalar& s) const {
    Matrix r(rows, cols);
    for (size_t k = 0; k < a.size(); k++) r.a[k] = a[k] * s;
    return r;
}

Matrix Matrix::transpose() const {
    Matrix r(cols, rows);
    for (int i = 0; i < rows; i++)
        for (int j = 0; j < cols; j++) r.at(j, i) = at(i, j);
    return r;
}

Matrix Matrix::kron(const Matrix& o) const {
    Matrix r(rows * o.rows, cols * o.cols);
    for (int i = 0; i < rows; i++)
        for (int j = 0; j < cols; j++) {
            if (at(i, j).is_zero()) continue;
            for (int p = 0; p < o.rows; p++)
                for (int q = 0; q < o.cols; q++)
                    r.at(i * o.rows + p, j * o.cols + q) = at(i, j) * o.at(p, q);
        }
    return r;
}

Matrix Matrix::dsum(const Matrix& o) const {
    Matrix r(rows + o.rows, cols + o.cols);
    for (int i = 0; i < rows; i++)
        for (int j = 0; j < cols; j++) r.at(i, j) = at(i, j);
    for (int i = 0; i < o.rows; i++)
        for (int j = 0; j < o.cols; j++) r.at(rows + i, cols + j) = o.at(i, j);
    return r;
}

std::vector<int> rref(Matrix& m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; c++) {
        // pick the sparsest candidate row to limit coefficient growth
        int p = -1;
        size_t best = SIZE_MAX;
        for (int i = r; i < m.rows; i++) {
            if (m.at(i, c).is_zero()) continue;
            size_t nnz = 0;
            for (int j = c; j < m.cols; j++)
                if (!m.at(i, j).is_zero()) nnz++;
            if (nnz < best) { best = nnz; p = i; }
            if (best == 1) break;
        }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < m.cols; j++) std::swap(m.at(p, j), m.at(r, j));
        Scalar inv = m.at(r, c).inv();
        for (int j = c; j < m.cols; j++) m.at(r, j) = m.at(r, j) * inv;
        for (int i = 0; i < m.rows; i++) {
            if (i == r || m.at(i, c).is_zero()) continue;
            Scalar f = m.at(i, c);
            for (int j = c; j < m.cols; j++) m.at(i, j) -= f * m.at(r, j);
        }
        pivots.push_back(c);
        r++;
    }
    return pivots;
}

int Matrix::rank() const {
    Matrix m = *this;
    return (int)rref(m).size();
}

std::optional<Matrix> Matrix::solve(const Matrix& rhs) const {
    if (rhs.rows != rows) throw Error("Matrix::solve: shape mismatch");
    Matrix aug(rows, cols + rhs.cols);
    for (int i = 0; i < rows; i++) {
        for (int j = 0; j < cols; j++) aug.at(i, j) = at(i, j);
        for (int j = 0; j < rhs.cols; j++) aug.at(i, cols + j) = rhs.at(i, j);
    }
    std::vector<int> piv = rref(aug);
    // inconsistent if a pivot falls in the rhs columns
    for (int p : piv)
        if (p >= cols) return std::nullopt;
    Matrix x(cols, rhs.cols);
    for (size_t k = 0; k < piv.size(); k++)
        for (int j = 0; j < rhs.cols; j++)
            x.at(piv[k], j) = aug.at((int)k, cols + j);
    return x;
}

std::optional<Matrix> Matrix::inverse() const {
    if (rows != cols) return std::nullopt;
    auto x = solve(identity(rows));
    if (!x) return std::nullopt;
    if (!((*this) * *x == identity(rows)) || !((*x) * (*this) == identity(rows)))
        return std::nullopt;
    return x;
}

Matrix Matrix::null_space() const {
    Matrix m = *this;
    std::vector<int> piv = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (int p : piv) is_pivot[p] = true;
    int nfree = cols - (int)piv.size();
    Matrix basis(cols, nfree);
    int col = 0;
    for (int c = 0; c < cols; c++) {
        if (is_pivot[c]) continue;
        basis.at(c, col) = Scalar(1);
        for (size_t k = 0; k < piv.size(); k++)
            basis.at(piv[k], col) = -m.at((int)k, c);
        col++;
    }
    return basis;
}

Matrix Matrix::column_space() const {
    Matrix m = *this;
    std::vector<int> piv = rref(m);
    Matrix basis(rows, (int)piv.size());
    for (size_t k = 0; k < piv.size(); k++)
        for (int i = 0; i < rows; i++)
            basis.at(i, (int)k) = at(i, piv[k]);
    return basis;
}

} // namespace gk
