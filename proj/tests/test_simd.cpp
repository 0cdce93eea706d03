#include "ddl/dense.hpp"
#include "ddl/simd.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace ddl;

namespace {

Matrix random_matrix(int r, int c, std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Matrix m(r, c);
    for (int j = 0; j < c; ++j)
        for (int i = 0; i < r; ++i) m(i, j) = u(rng);
    return m;
}

// textbook triple loop
Matrix naive_sub(const Matrix& C, const Matrix& A, const Matrix& B) {
    Matrix out = C;
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < B.cols(); ++j) {
            double s = 0.0;
            for (int p = 0; p < A.cols(); ++p) s += A(i, p) * B(p, j);
            out(i, j) -= s;
        }
    return out;
}

double max_diff(const Matrix& a, const Matrix& b) {
    double d = 0.0;
    for (int j = 0; j < a.cols(); ++j)
        for (int i = 0; i < a.rows(); ++i) d = std::max(d, std::abs(a(i, j) - b(i, j)));
    return d;
}

struct IsaGuard {
    simd::Isa saved = simd::active_isa();
    ~IsaGuard() { simd::set_isa(saved); }
};

}  // namespace

TEST_CASE("micro-kernels agree with the scalar reference") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k : {1, 3, 17, 256}) {
        std::vector<double> a(k * simd::MR), b(k * simd::NR);
        for (auto& x : a) x = u(rng);
        for (auto& x : b) x = u(rng);
        std::vector<double> ref(simd::MR * simd::NR), acc(simd::MR * simd::NR);
        simd::kernel_scalar(k, a.data(), b.data(), ref.data());
#if defined(__x86_64__)
        if (simd::isa_available(simd::Isa::avx2)) {
            simd::kernel_avx2(k, a.data(), b.data(), acc.data());
            for (size_t i = 0; i < acc.size(); ++i) CHECK(acc[i] == doctest::Approx(ref[i]).epsilon(1e-13));
        }
#endif
#if defined(__aarch64__)
        simd::kernel_neon(k, a.data(), b.data(), acc.data());
        for (size_t i = 0; i < acc.size(); ++i) CHECK(acc[i] == doctest::Approx(ref[i]).epsilon(1e-13));
#endif
    }
}

TEST_CASE("gemm_sub matches the triple loop on ragged shapes for every kernel") {
    std::mt19937 rng(11);
    std::vector<simd::MicroKernel> kernels{simd::kernel_scalar};
#if defined(__x86_64__)
    if (simd::isa_available(simd::Isa::avx2)) kernels.push_back(simd::kernel_avx2);
#endif
#if defined(__aarch64__)
    kernels.push_back(simd::kernel_neon);
#endif
    const int shapes[][3] = {{1, 1, 1}, {7, 5, 3}, {8, 6, 256}, {33, 29, 300}, {130, 97, 61}, {9, 2100, 5}};
    for (auto& s : shapes) {
        const Matrix A = random_matrix(s[0], s[2], rng), B = random_matrix(s[2], s[1], rng),
                     C = random_matrix(s[0], s[1], rng);
        const Matrix ref = naive_sub(C, A, B);
        for (auto kern : kernels) {
            Matrix out = C;
            simd::gemm_sub_with(kern, s[0], s[1], s[2], A.data(), A.rows(), B.data(), B.rows(), out.data(),
                                out.rows());
            CHECK(max_diff(out, ref) < 1e-12 * s[2]);
        }
    }
}

TEST_CASE("gemm_sub respects leading dimensions of sub-blocks") {
    std::mt19937 rng(3);
    Matrix big = random_matrix(50, 40, rng);
    const Matrix A = random_matrix(20, 10, rng), B = random_matrix(10, 15, rng);
    Matrix expect = big;
    for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 15; ++j) {
            double s = 0.0;
            for (int p = 0; p < 10; ++p) s += A(i, p) * B(p, j);
            expect(5 + i, 7 + j) -= s;
        }
    simd::gemm_sub(20, 15, 10, A.data(), A.rows(), B.data(), B.rows(), &big(5, 7), big.rows());
    CHECK(max_diff(big, expect) < 1e-13);
}

TEST_CASE("LU solves agree across kernels and against the residual") {
    IsaGuard guard;
    std::mt19937 rng(5);
    for (int n : {1, 5, 31, 200, 517}) {
        Matrix A = random_matrix(n, n, rng);
        for (int i = 0; i < n; ++i) A(i, i) += 0.5;   // keep it comfortably nonsingular
        Vec b(n);
        for (auto& x : b) x = std::uniform_real_distribution<double>(-1, 1)(rng);
        std::vector<Vec> sols;
        for (simd::Isa isa : {simd::Isa::scalar, simd::Isa::avx2, simd::Isa::neon}) {
            if (!simd::set_isa(isa)) continue;
            const Vec x = LU(A).solve(b);
            const Vec Ax = matvec(A, x);
            double r = 0.0;
            for (int i = 0; i < n; ++i) r = std::max(r, std::abs(Ax[i] - b[i]));
            CHECK(r < 1e-10);
            sols.push_back(x);
        }
        for (size_t s = 1; s < sols.size(); ++s)
            for (int i = 0; i < n; ++i) CHECK(sols[s][i] == doctest::Approx(sols[0][i]).epsilon(1e-9));
    }
}

TEST_CASE("LU pivots through a zero leading entry and rejects singular input") {
    Matrix A(3, 3);
    A(0, 1) = 1;
    A(1, 0) = 1;
    A(2, 2) = 2;
    const Vec x = LU(A).solve({2, 3, 4});
    CHECK(x[0] == doctest::Approx(3));
    CHECK(x[1] == doctest::Approx(2));
    CHECK(x[2] == doctest::Approx(2));
    Matrix S(2, 2, 1.0);
    CHECK_THROWS_AS(LU{S}, SingularMatrix);
}

TEST_CASE("scalar path can be forced") {
    IsaGuard guard;
    CHECK(simd::set_isa(simd::Isa::scalar));
    CHECK(simd::active_isa() == simd::Isa::scalar);
    CHECK(simd::isa_name(simd::Isa::scalar) == "scalar");
}
