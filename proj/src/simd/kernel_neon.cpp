#if defined(__aarch64__)
#include "ddl/simd.hpp"

#include <arm_neon.h>

namespace ddl::simd {

void kernel_neon(int k, const double* a, const double* b, double* acc) {
    float64x2_t c[NR][MR / 2];
    for (int j = 0; j < NR; ++j)
        for (int i = 0; i < MR / 2; ++i) c[j][i] = vdupq_n_f64(0.0);
    for (int p = 0; p < k; ++p) {
        float64x2_t av[MR / 2];
        for (int i = 0; i < MR / 2; ++i) av[i] = vld1q_f64(a + 2 * i);
        for (int j = 0; j < NR; ++j) {
            const float64x2_t bj = vdupq_n_f64(b[j]);
            for (int i = 0; i < MR / 2; ++i) c[j][i] = vfmaq_f64(c[j][i], av[i], bj);
        }
        a += MR;
        b += NR;
    }
    for (int j = 0; j < NR; ++j)
        for (int i = 0; i < MR / 2; ++i) vst1q_f64(acc + j * MR + 2 * i, c[j][i]);
}

}  // namespace ddl::simd
#endif
