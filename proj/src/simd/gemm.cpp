#include "ddl/simd.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <cstring>
#include <vector>

namespace ddl::simd {

namespace {

constexpr int KC = 256;
constexpr int MC = 96;     // multiple of MR
constexpr int NC = 2046;   // multiple of NR

bool cpu_has_avx2() {
#if defined(__x86_64__)
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

std::atomic<Isa>& current() {
    static std::atomic<Isa> isa{detect_isa()};
    return isa;
}

MicroKernel kernel_for(Isa isa) {
    switch (isa) {
#if defined(__x86_64__)
    case Isa::avx2: return kernel_avx2;
#endif
#if defined(__aarch64__)
    case Isa::neon: return kernel_neon;
#endif
    default: return kernel_scalar;
    }
}

// Rows [0, mc) of a column-major block, MR rows at a time, zero padded.
void pack_a(int mc, int kc, const double* A, int lda, double* out) {
    for (int i0 = 0; i0 < mc; i0 += MR) {
        const int mr = std::min(MR, mc - i0);
        for (int p = 0; p < kc; ++p) {
            const double* col = A + static_cast<long>(p) * lda + i0;
            int i = 0;
            for (; i < mr; ++i) out[i] = col[i];
            for (; i < MR; ++i) out[i] = 0.0;
            out += MR;
        }
    }
}

void pack_b(int kc, int nc, const double* B, int ldb, double* out) {
    for (int j0 = 0; j0 < nc; j0 += NR) {
        const int nr = std::min(NR, nc - j0);
        for (int p = 0; p < kc; ++p) {
            int j = 0;
            for (; j < nr; ++j) out[j] = B[static_cast<long>(j0 + j) * ldb + p];
            for (; j < NR; ++j) out[j] = 0.0;
            out += NR;
        }
    }
}

}  // namespace

std::string_view isa_name(Isa isa) {
    switch (isa) {
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
    default: return "scalar";
    }
}

bool isa_available(Isa isa) {
    switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2: return cpu_has_avx2();
#if defined(__aarch64__)
    case Isa::neon: return true;
#endif
    default: return false;
    }
}

Isa detect_isa() {
    if (const char* env = std::getenv("DDL_SIMD"); env && std::strcmp(env, "scalar") == 0)
        return Isa::scalar;
    if (isa_available(Isa::avx2)) return Isa::avx2;
    if (isa_available(Isa::neon)) return Isa::neon;
    return Isa::scalar;
}

Isa active_isa() { return current().load(); }

bool set_isa(Isa isa) {
    if (!isa_available(isa)) return false;
    current().store(isa);
    return true;
}

void gemm_sub_with(MicroKernel kern, int m, int n, int k, const double* A, int lda,
                   const double* B, int ldb, double* C, int ldc) {
    if (m <= 0 || n <= 0 || k <= 0) return;
    thread_local std::vector<double> abuf, bbuf;
    abuf.resize(static_cast<size_t>(MC + MR) * KC);
    bbuf.resize(static_cast<size_t>(NC + NR) * KC);
    alignas(64) double acc[MR * NR];

    for (int jc = 0; jc < n; jc += NC) {
        const int nc = std::min(NC, n - jc);
        for (int pc = 0; pc < k; pc += KC) {
            const int kc = std::min(KC, k - pc);
            pack_b(kc, nc, B + static_cast<long>(jc) * ldb + pc, ldb, bbuf.data());
            for (int ic = 0; ic < m; ic += MC) {
                const int mc = std::min(MC, m - ic);
                pack_a(mc, kc, A + static_cast<long>(pc) * lda + ic, lda, abuf.data());
                for (int jr = 0; jr < nc; jr += NR) {
                    const int nr = std::min(NR, nc - jr);
                    const double* bp = bbuf.data() + static_cast<long>(jr) * kc;
                    for (int ir = 0; ir < mc; ir += MR) {
                        const int mr = std::min(MR, mc - ir);
                        kern(kc, abuf.data() + static_cast<long>(ir) * kc, bp, acc);
                        double* cblk = C + static_cast<long>(jc + jr) * ldc + ic + ir;
                        for (int j = 0; j < nr; ++j) {
                            double* cj = cblk + static_cast<long>(j) * ldc;
                            const double* aj = acc + j * MR;
                            for (int i = 0; i < mr; ++i) cj[i] -= aj[i];
                        }
                    }
                }
            }
        }
    }
}

void gemm_sub(int m, int n, int k, const double* A, int lda, const double* B, int ldb,
              double* C, int ldc) {
    gemm_sub_with(kernel_for(active_isa()), m, n, k, A, lda, B, ldb, C, ldc);
}

}  // namespace ddl::simd
