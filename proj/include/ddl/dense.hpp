#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace ddl {

using Vec = std::vector<double>;

// Column-major dense matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, fill) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    double& operator()(int i, int j) { return data_[static_cast<size_t>(j) * rows_ + i]; }
    double operator()(int i, int j) const { return data_[static_cast<size_t>(j) * rows_ + i]; }

    void resize(int rows, int cols) {
        rows_ = rows;
        cols_ = cols;
        data_.assign(static_cast<size_t>(rows) * cols, 0.0);
    }
    void fill(double v) { std::fill(data_.begin(), data_.end(), v); }

    static Matrix identity(int n);

private:
    int rows_ = 0, cols_ = 0;
    std::vector<double> data_;
};

Vec matvec(const Matrix& A, const Vec& x);
Matrix matmul(const Matrix& A, const Matrix& B);

struct SingularMatrix : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// In-place LU with partial pivoting, PA = LU. Recursive column splitting so
// nearly all flops land in simd::gemm_sub; `leaf` is the unblocked width.
class LU {
public:
    LU() = default;
    explicit LU(Matrix a, int leaf = 16) { factor(std::move(a), leaf); }

    void factor(Matrix a, int leaf = 16);
    Vec solve(const Vec& b) const;
    int size() const { return a_.rows(); }

private:
    Matrix a_;
    std::vector<int> piv_;
};

double norm_inf(const Vec& v);
double norm2(const Vec& v);

}  // namespace ddl
