#include "fdq/kern.hpp"

#include <cstdlib>
#include <cstring>

namespace fdq::kern {

namespace {

void gemm_scalar(std::size_t m, std::size_t n, std::size_t k, const cx* a, const cx* b, cx* c) {
    for (std::size_t i = 0; i < m * n; ++i) c[i] = cx(0.0, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        const cx* arow = a + i * k;
        cx* crow = c + i * n;
        for (std::size_t l = 0; l < k; ++l) {
            cx al = arow[l];
            if (al == cx(0.0, 0.0)) continue;
            const cx* brow = b + l * n;
            for (std::size_t j = 0; j < n; ++j) crow[j] += al * brow[j];
        }
    }
}

void axpy_scalar(std::size_t n, cx alpha, const cx* x, cx* y) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scal_scalar(std::size_t n, cx alpha, cx* x) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

double nrm2sq_scalar(std::size_t n, const cx* x) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return s;
}

cx dotc_scalar(std::size_t n, const cx* x, const cx* y) {
    cx s(0.0, 0.0);
    for (std::size_t i = 0; i < n; ++i) s += std::conj(x[i]) * y[i];
    return s;
}

const Kernels kScalar{"scalar", gemm_scalar, axpy_scalar, scal_scalar, nrm2sq_scalar, dotc_scalar};

const Kernels& select() {
    const char* env = std::getenv("FDQ_KERNELS");
    if (env && std::strcmp(env, "scalar") == 0) return kScalar;
    const Kernels* simd = simd_kernels();
    return simd ? *simd : kScalar;
}

}  // namespace

const Kernels& scalar_kernels() { return kScalar; }

const Kernels& active_kernels() {
    static const Kernels& chosen = select();
    return chosen;
}

}  // namespace fdq::kern
