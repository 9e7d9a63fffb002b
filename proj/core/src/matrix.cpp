#include "susyqm/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace susyqm {

namespace {
void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw LengthMismatchError(std::string(what) + ": shape mismatch");
}
} // namespace

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

std::vector<double> Matrix::apply(std::span<const double> v) const {
    if (static_cast<int>(v.size()) != cols_)
        throw LengthMismatchError("Matrix::apply: vector length mismatch");
    std::vector<double> out(rows_, 0.0);
    for (int i = 0; i < rows_; ++i) {
        const double* row = row_data(i);
        double sum = 0.0;
        for (int j = 0; j < cols_; ++j) sum += row[j] * v[j];
        out[i] = sum;
    }
    return out;
}

Matrix& Matrix::operator+=(const Matrix& other) {
    require_same_shape(*this, other, "Matrix::operator+=");
    for (size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
    require_same_shape(*this, other, "Matrix::operator-=");
    for (size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

Matrix& Matrix::operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

double Matrix::max_asymmetry() const {
    double m = 0.0;
    for (int i = 0; i < rows_; ++i)
        for (int j = i + 1; j < cols_; ++j)
            m = std::max(m, std::abs((*this)(i, j) - (*this)(j, i)));
    return m;
}

bool Matrix::is_symmetric(double tol_relative) const {
    if (rows_ != cols_) return false;
    const double scale = max_abs();
    if (scale == 0.0) return true;
    return max_asymmetry() <= tol_relative * scale;
}

Matrix operator+(Matrix a, const Matrix& b) { a += b; return a; }
Matrix operator-(Matrix a, const Matrix& b) { a -= b; return a; }
Matrix operator*(double s, Matrix a) { a *= s; return a; }

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows())
        throw LengthMismatchError("Matrix::operator*: inner dimension mismatch");
    Matrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        double* crow = c.row_data(i);
        for (int k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            const double* brow = b.row_data(k);
            for (int j = 0; j < b.cols(); ++j) crow[j] += aik * brow[j];
        }
    }
    return c;
}

Matrix gram(const Matrix& b) {
    Matrix c(b.cols(), b.cols());
    std::vector<int> nz;
    nz.reserve(16);
    for (int k = 0; k < b.rows(); ++k) {
        const double* row = b.row_data(k);
        nz.clear();
        for (int j = 0; j < b.cols(); ++j)
            if (row[j] != 0.0) nz.push_back(j);
        for (int i : nz) {
            const double bki = row[i];
            for (int j : nz) c(i, j) += bki * row[j];
        }
    }
    return c;
}

} // namespace susyqm
