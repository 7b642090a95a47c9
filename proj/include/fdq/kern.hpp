#pragma once

#include <complex>
#include <cstddef>

namespace fdq::kern {

using cx = std::complex<double>;

// Dense complex kernels used by the numeric lane. One scalar reference
// implementation plus an optional SIMD variant (AVX2+FMA on x86-64, NEON on
// aarch64) selected at runtime; the two are equivalence-tested against each
// other. Matrices are row-major.
struct Kernels {
    const char* name;
    // c = a * b, a is m x k, b is k x n, c is m x n (overwritten)
    void (*gemm)(std::size_t m, std::size_t n, std::size_t k, const cx* a, const cx* b, cx* c);
    // y += alpha * x
    void (*axpy)(std::size_t n, cx alpha, const cx* x, cx* y);
    // x *= alpha
    void (*scal)(std::size_t n, cx alpha, cx* x);
    // sum |x_i|^2
    double (*nrm2sq)(std::size_t n, const cx* x);
    // sum conj(x_i) * y_i
    cx (*dotc)(std::size_t n, const cx* x, const cx* y);
};

const Kernels& scalar_kernels();

// SIMD variant for this build/host, or nullptr when unavailable.
const Kernels* simd_kernels();

// Runtime selection: the SIMD variant when available, unless the FDQ_KERNELS
// environment variable ("scalar" or "simd") overrides the choice.
const Kernels& active_kernels();

}  // namespace fdq::kern
