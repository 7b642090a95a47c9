#include "fdq/kern.hpp"

#if defined(FDQ_BUILD_AVX2) && defined(__x86_64__)

#include <immintrin.h>

namespace fdq::kern {

namespace {

// Two packed complex doubles per vector: [re0, im0, re1, im1].
// Complex multiply-accumulate acc += a * b with a broadcast:
//   re' = a.re*b.re - a.im*b.im,  im' = a.re*b.im + a.im*b.re
// realized as fmaddsub(a.re, b, a.im * swap(b)).
inline __m256d cmul_acc(__m256d acc, __m256d are, __m256d aim, __m256d b) {
    __m256d bswap = _mm256_permute_pd(b, 0x5);
    return _mm256_add_pd(acc, _mm256_fmaddsub_pd(are, b, _mm256_mul_pd(aim, bswap)));
}

void gemm_avx2(std::size_t m, std::size_t n, std::size_t k, const cx* a, const cx* b, cx* c) {
    double* cd = reinterpret_cast<double*>(c);
    for (std::size_t i = 0; i < 2 * m * n; ++i) cd[i] = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const cx* arow = a + i * k;
        double* crow = cd + 2 * i * n;
        for (std::size_t l = 0; l < k; ++l) {
            cx al = arow[l];
            if (al == cx(0.0, 0.0)) continue;
            __m256d are = _mm256_set1_pd(al.real());
            __m256d aim = _mm256_set1_pd(al.imag());
            const double* brow = reinterpret_cast<const double*>(b + l * n);
            std::size_t j = 0;
            for (; j + 2 <= n; j += 2) {
                __m256d vb = _mm256_loadu_pd(brow + 2 * j);
                __m256d vc = _mm256_loadu_pd(crow + 2 * j);
                _mm256_storeu_pd(crow + 2 * j, cmul_acc(vc, are, aim, vb));
            }
            for (; j < n; ++j) {
                cx bj(brow[2 * j], brow[2 * j + 1]);
                cx prod = al * bj;
                crow[2 * j] += prod.real();
                crow[2 * j + 1] += prod.imag();
            }
        }
    }
}

void axpy_avx2(std::size_t n, cx alpha, const cx* x, cx* y) {
    __m256d are = _mm256_set1_pd(alpha.real());
    __m256d aim = _mm256_set1_pd(alpha.imag());
    const double* xd = reinterpret_cast<const double*>(x);
    double* yd = reinterpret_cast<double*>(y);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d vx = _mm256_loadu_pd(xd + 2 * i);
        __m256d vy = _mm256_loadu_pd(yd + 2 * i);
        _mm256_storeu_pd(yd + 2 * i, cmul_acc(vy, are, aim, vx));
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void scal_avx2(std::size_t n, cx alpha, cx* x) {
    __m256d are = _mm256_set1_pd(alpha.real());
    __m256d aim = _mm256_set1_pd(alpha.imag());
    double* xd = reinterpret_cast<double*>(x);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d vx = _mm256_loadu_pd(xd + 2 * i);
        __m256d bswap = _mm256_permute_pd(vx, 0x5);
        _mm256_storeu_pd(xd + 2 * i, _mm256_fmaddsub_pd(are, vx, _mm256_mul_pd(aim, bswap)));
    }
    for (; i < n; ++i) x[i] *= alpha;
}

double nrm2sq_avx2(std::size_t n, const cx* x) {
    const double* xd = reinterpret_cast<const double*>(x);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d vx = _mm256_loadu_pd(xd + 2 * i);
        acc = _mm256_fmadd_pd(vx, vx, acc);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double s = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < n; ++i) s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return s;
}

cx dotc_avx2(std::size_t n, const cx* x, const cx* y) {
    // conj(x)*y: re = x.re*y.re + x.im*y.im, im = x.re*y.im - x.im*y.re.
    const double* xd = reinterpret_cast<const double*>(x);
    const double* yd = reinterpret_cast<const double*>(y);
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d vx = _mm256_loadu_pd(xd + 2 * i);
        __m256d vy = _mm256_loadu_pd(yd + 2 * i);
        __m256d vyswap = _mm256_permute_pd(vy, 0x5);
        acc_re = _mm256_fmadd_pd(vx, vy, acc_re);      // x.re*y.re | x.im*y.im
        acc_im = _mm256_fmadd_pd(vx, vyswap, acc_im);  // x.re*y.im | x.im*y.re
    }
    alignas(32) double re[4], im[4];
    _mm256_store_pd(re, acc_re);
    _mm256_store_pd(im, acc_im);
    cx s(re[0] + re[1] + re[2] + re[3], (im[0] + im[2]) - (im[1] + im[3]));
    for (; i < n; ++i) s += std::conj(x[i]) * y[i];
    return s;
}

const Kernels kAvx2{"avx2", gemm_avx2, axpy_avx2, scal_avx2, nrm2sq_avx2, dotc_avx2};

}  // namespace

const Kernels* simd_kernels() {
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return &kAvx2;
    return nullptr;
}

}  // namespace fdq::kern

#else

namespace fdq::kern {
const Kernels* simd_kernels() { return nullptr; }
}  // namespace fdq::kern

#endif
