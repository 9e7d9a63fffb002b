#ifndef SUSYQM_MATRIX_HPP
#define SUSYQM_MATRIX_HPP

#include <span>
#include <vector>

#include "susyqm/errors.hpp"

namespace susyqm {

// Dense real matrix, row-major.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, 0.0) {}

    static Matrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

    double* row_data(int i) { return data_.data() + static_cast<size_t>(i) * cols_; }
    const double* row_data(int i) const { return data_.data() + static_cast<size_t>(i) * cols_; }

    Matrix transpose() const;
    std::vector<double> apply(std::span<const double> v) const;

    Matrix& operator+=(const Matrix& other);
    Matrix& operator-=(const Matrix& other);
    Matrix& operator*=(double s);

    double max_abs() const;
    double max_asymmetry() const;  // max |M_ij - M_ji|
    bool is_symmetric(double tol_relative) const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(double s, Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);

// B^T * B, accumulated over rows of B with zero entries skipped. The result
// is bit-exactly symmetric.
Matrix gram(const Matrix& b);

} // namespace susyqm

#endif
