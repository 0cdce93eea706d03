#pragma once

#include <string_view>

namespace ddl::simd {

// Register tile shared by every micro-kernel. Packed A panels are MR rows
// interleaved per k, packed B panels NR columns interleaved per k.
inline constexpr int MR = 8;
inline constexpr int NR = 6;

// acc[MR x NR] (column-major, ld = MR) = sum_p a[p*MR + i] * b[p*NR + j]
using MicroKernel = void (*)(int k, const double* a, const double* b, double* acc);

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);

// Best kernel the CPU supports. DDL_SIMD=scalar in the environment pins the
// reference path.
Isa detect_isa();
Isa active_isa();
// Returns false if the requested ISA is not compiled in or not supported.
bool set_isa(Isa isa);
bool isa_available(Isa isa);

void kernel_scalar(int k, const double* a, const double* b, double* acc);
#if defined(__x86_64__)
void kernel_avx2(int k, const double* a, const double* b, double* acc);
#endif
#if defined(__aarch64__)
void kernel_neon(int k, const double* a, const double* b, double* acc);
#endif

// C[m x n] -= A[m x k] * B[k x n]; all column-major.
void gemm_sub(int m, int n, int k, const double* A, int lda, const double* B, int ldb,
              double* C, int ldc);

// Same, with an explicit kernel (used by the equivalence tests).
void gemm_sub_with(MicroKernel kern, int m, int n, int k, const double* A, int lda,
                   const double* B, int ldb, double* C, int ldc);

}  // namespace ddl::simd
