#include "ddl/dense.hpp"

#include "ddl/simd.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ddl {

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Vec matvec(const Matrix& A, const Vec& x) {
    Vec y(A.rows(), 0.0);
    for (int j = 0; j < A.cols(); ++j) {
        const double xj = x[j];
        const double* col = A.data() + static_cast<size_t>(j) * A.rows();
        for (int i = 0; i < A.rows(); ++i) y[i] += col[i] * xj;
    }
    return y;
}

Matrix matmul(const Matrix& A, const Matrix& B) {
    Matrix C(A.rows(), B.cols());
    for (int j = 0; j < B.cols(); ++j)
        for (int p = 0; p < A.cols(); ++p) {
            const double b = B(p, j);
            if (b == 0.0) continue;
            for (int i = 0; i < A.rows(); ++i) C(i, j) += A(i, p) * b;
        }
    return C;
}

double norm_inf(const Vec& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double norm2(const Vec& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

namespace {

// B <- L^{-1} B with L unit lower triangular (m x m).
void trsm_lower_unit(int m, int n, const double* L, int ldl, double* B, int ldb) {
    if (m <= 32) {
        for (int c = 0; c < n; ++c) {
            double* colc = B + static_cast<size_t>(c) * ldb;
            for (int j = 0; j < m; ++j) {
                const double u = colc[j];
                if (u == 0.0) continue;
                const double* colj = L + static_cast<size_t>(j) * ldl;
                for (int i = j + 1; i < m; ++i) colc[i] -= colj[i] * u;
            }
        }
        return;
    }
    const int h = m / 2;
    trsm_lower_unit(h, n, L, ldl, B, ldb);
    simd::gemm_sub(m - h, n, h, L + h, ldl, B, ldb, B + h, ldb);
    trsm_lower_unit(m - h, n, L + h + static_cast<size_t>(h) * ldl, ldl, B + h, ldb);
}

void swap_rows(double* A, int lda, int r1, int r2, int c0, int c1) {
    if (r1 == r2) return;
    for (int j = c0; j < c1; ++j)
        std::swap(A[static_cast<size_t>(j) * lda + r1], A[static_cast<size_t>(j) * lda + r2]);
}

// Recursive LU of the m x n panel (m >= n); piv is relative to the panel.
void getrf_rec(int m, int n, double* A, int lda, int* piv, int leaf, double tiny, int offset) {
    if (n <= leaf) {
        for (int j = 0; j < n; ++j) {
            double* colj = A + static_cast<size_t>(j) * lda;
            int p = j;
            double best = std::abs(colj[j]);
            for (int i = j + 1; i < m; ++i)
                if (std::abs(colj[i]) > best) best = std::abs(colj[i]), p = i;
            if (!(best > tiny))
                throw SingularMatrix("LU: zero pivot in column " + std::to_string(offset + j));
            piv[j] = p;
            swap_rows(A, lda, j, p, 0, n);
            const double inv = 1.0 / colj[j];
            for (int i = j + 1; i < m; ++i) colj[i] *= inv;
            for (int c = j + 1; c < n; ++c) {
                double* colc = A + static_cast<size_t>(c) * lda;
                const double u = colc[j];
                if (u == 0.0) continue;
                for (int i = j + 1; i < m; ++i) colc[i] -= colj[i] * u;
            }
        }
        return;
    }
    const int h = n / 2;
    double* A12 = A + static_cast<size_t>(h) * lda;
    getrf_rec(m, h, A, lda, piv, leaf, tiny, offset);
    for (int j = 0; j < h; ++j) swap_rows(A, lda, j, piv[j], h, n);
    trsm_lower_unit(h, n - h, A, lda, A12, lda);
    simd::gemm_sub(m - h, n - h, h, A + h, lda, A12, lda, A12 + h, lda);
    getrf_rec(m - h, n - h, A12 + h, lda, piv + h, leaf, tiny, offset + h);
    for (int j = h; j < n; ++j) {
        piv[j] += h;
        swap_rows(A, lda, j, piv[j], 0, h);
    }
}

}  // namespace

void LU::factor(Matrix a, int leaf) {
    if (a.rows() != a.cols()) throw std::invalid_argument("LU: matrix not square");
    a_ = std::move(a);
    const int n = a_.rows();
    piv_.assign(n, 0);
    double scale = 0.0;
    for (size_t t = 0; t < static_cast<size_t>(n) * n; ++t)
        scale = std::max(scale, std::abs(a_.data()[t]));
    getrf_rec(n, n, a_.data(), n, piv_.data(), std::max(1, leaf), scale * 1e-300, 0);
}

Vec LU::solve(const Vec& b) const {
    const int n = a_.rows();
    if (static_cast<int>(b.size()) != n) throw std::invalid_argument("LU::solve: size mismatch");
    Vec x = b;
    for (int j = 0; j < n; ++j) std::swap(x[j], x[piv_[j]]);
    for (int j = 0; j < n; ++j) {
        const double xj = x[j];
        if (xj == 0.0) continue;
        const double* col = a_.data() + static_cast<size_t>(j) * n;
        for (int i = j + 1; i < n; ++i) x[i] -= col[i] * xj;
    }
    for (int j = n - 1; j >= 0; --j) {
        const double* col = a_.data() + static_cast<size_t>(j) * n;
        x[j] /= col[j];
        const double xj = x[j];
        for (int i = 0; i < j; ++i) x[i] -= col[i] * xj;
    }
    return x;
}

}  // namespace ddl
