#include "ddl/simd.hpp"

namespace ddl::simd {

void kernel_scalar(int k, const double* a, const double* b, double* acc) {
    double c[MR * NR] = {};
    for (int p = 0; p < k; ++p) {
        const double* ap = a + p * MR;
        const double* bp = b + p * NR;
        for (int j = 0; j < NR; ++j) {
            const double bj = bp[j];
            for (int i = 0; i < MR; ++i) c[j * MR + i] += ap[i] * bj;
        }
    }
    for (int t = 0; t < MR * NR; ++t) acc[t] = c[t];
}

}  // namespace ddl::simd
