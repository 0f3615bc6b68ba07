#pragma once

// Row-major GEMM on top of the Fortran BLAS interface. Every call runs on the
// calling thread (OpenBLAS threading is disabled at startup), so callers own
// all parallelism and results do not depend on the thread count.

extern "C" {
void sgemm_(const char* transa, const char* transb, const int* m, const int* n, const int* k,
            const float* alpha, const float* a, const int* lda, const float* b, const int* ldb,
            const float* beta, float* c, const int* ldc);
void dgemm_(const char* transa, const char* transb, const int* m, const int* n, const int* k,
            const double* alpha, const double* a, const int* lda, const double* b,
            const int* ldb, const double* beta, double* c, const int* ldc);
}

namespace vseg::nn {

inline void blas_gemm(const char* ta, const char* tb, const int* m, const int* n, const int* k,
                      const float* alpha, const float* a, const int* lda, const float* b,
                      const int* ldb, const float* beta, float* c, const int* ldc) {
    sgemm_(ta, tb, m, n, k, alpha, a, lda, b, ldb, beta, c, ldc);
}
inline void blas_gemm(const char* ta, const char* tb, const int* m, const int* n, const int* k,
                      const double* alpha, const double* a, const int* lda, const double* b,
                      const int* ldb, const double* beta, double* c, const int* ldc) {
    dgemm_(ta, tb, m, n, k, alpha, a, lda, b, ldb, beta, c, ldc);
}

/// C(m x n) = alpha * op(A) * op(B) + beta * C with row-major buffers.
/// lda/ldb/ldc are row strides of the buffers as laid out in memory.
template <typename T>
void gemm_rm(bool trans_a, bool trans_b, int m, int n, int k, T alpha, const T* a, int lda,
             const T* b, int ldb, T beta, T* c, int ldc) {
    // row-major C = op(A) op(B) is column-major C^T = op(B)^T op(A)^T, which
    // BLAS sees with the buffers swapped and the flags unchanged
    const char* ta = trans_a ? "T" : "N";
    const char* tb = trans_b ? "T" : "N";
    blas_gemm(tb, ta, &n, &m, &k, &alpha, b, &ldb, a, &lda, &beta, c, &ldc);
}

}  // namespace vseg::nn
