// Built with -mavx2 -mfma; only reached after a runtime CPU check.
#include "ddl/simd.hpp"

#include <immintrin.h>

namespace ddl::simd {

void kernel_avx2(int k, const double* a, const double* b, double* acc) {
    __m256d c00 = _mm256_setzero_pd(), c10 = _mm256_setzero_pd();
    __m256d c01 = _mm256_setzero_pd(), c11 = _mm256_setzero_pd();
    __m256d c02 = _mm256_setzero_pd(), c12 = _mm256_setzero_pd();
    __m256d c03 = _mm256_setzero_pd(), c13 = _mm256_setzero_pd();
    __m256d c04 = _mm256_setzero_pd(), c14 = _mm256_setzero_pd();
    __m256d c05 = _mm256_setzero_pd(), c15 = _mm256_setzero_pd();
    for (int p = 0; p < k; ++p) {
        const __m256d a0 = _mm256_loadu_pd(a);
        const __m256d a1 = _mm256_loadu_pd(a + 4);
        __m256d bj;
        bj = _mm256_broadcast_sd(b + 0);
        c00 = _mm256_fmadd_pd(a0, bj, c00);
        c10 = _mm256_fmadd_pd(a1, bj, c10);
        bj = _mm256_broadcast_sd(b + 1);
        c01 = _mm256_fmadd_pd(a0, bj, c01);
        c11 = _mm256_fmadd_pd(a1, bj, c11);
        bj = _mm256_broadcast_sd(b + 2);
        c02 = _mm256_fmadd_pd(a0, bj, c02);
        c12 = _mm256_fmadd_pd(a1, bj, c12);
        bj = _mm256_broadcast_sd(b + 3);
        c03 = _mm256_fmadd_pd(a0, bj, c03);
        c13 = _mm256_fmadd_pd(a1, bj, c13);
        bj = _mm256_broadcast_sd(b + 4);
        c04 = _mm256_fmadd_pd(a0, bj, c04);
        c14 = _mm256_fmadd_pd(a1, bj, c14);
        bj = _mm256_broadcast_sd(b + 5);
        c05 = _mm256_fmadd_pd(a0, bj, c05);
        c15 = _mm256_fmadd_pd(a1, bj, c15);
        a += MR;
        b += NR;
    }
    _mm256_storeu_pd(acc + 0, c00);
    _mm256_storeu_pd(acc + 4, c10);
    _mm256_storeu_pd(acc + 8, c01);
    _mm256_storeu_pd(acc + 12, c11);
    _mm256_storeu_pd(acc + 16, c02);
    _mm256_storeu_pd(acc + 20, c12);
    _mm256_storeu_pd(acc + 24, c03);
    _mm256_storeu_pd(acc + 28, c13);
    _mm256_storeu_pd(acc + 32, c04);
    _mm256_storeu_pd(acc + 36, c14);
    _mm256_storeu_pd(acc + 40, c05);
    _mm256_storeu_pd(acc + 44, c15);
}

}  // namespace ddl::simd
