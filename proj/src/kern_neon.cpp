#include "fdq/kern.hpp"

#if defined(FDQ_BUILD_NEON) && defined(__aarch64__)

#include <arm_neon.h>

namespace fdq::kern {

namespace {

// One complex double per vector: [re, im].
// acc += a * b with a pre-split into broadcast re/im parts.
inline float64x2_t cmul_acc(float64x2_t acc, float64x2_t are, float64x2_t aim, float64x2_t b) {
    const float64x2_t sign = {-1.0, 1.0};
    float64x2_t bswap = vextq_f64(b, b, 1);
    float64x2_t t = vmulq_f64(vmulq_f64(aim, bswap), sign);
    return vaddq_f64(acc, vfmaq_f64(t, are, b));
}

void gemm_neon(std::size_t m, std::size_t n, std::size_t k, const cx* a, const cx* b, cx* c) {
    double* cd = reinterpret_cast<double*>(c);
    for (std::size_t i = 0; i < 2 * m * n; ++i) cd[i] = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const cx* arow = a + i * k;
        double* crow = cd + 2 * i * n;
        for (std::size_t l = 0; l < k; ++l) {
            cx al = arow[l];
            if (al == cx(0.0, 0.0)) continue;
            float64x2_t are = vdupq_n_f64(al.real());
            float64x2_t aim = vdupq_n_f64(al.imag());
            const double* brow = reinterpret_cast<const double*>(b + l * n);
            for (std::size_t j = 0; j < n; ++j) {
                float64x2_t vb = vld1q_f64(brow + 2 * j);
                float64x2_t vc = vld1q_f64(crow + 2 * j);
                vst1q_f64(crow + 2 * j, cmul_acc(vc, are, aim, vb));
            }
        }
    }
}

void axpy_neon(std::size_t n, cx alpha, const cx* x, cx* y) {
    float64x2_t are = vdupq_n_f64(alpha.real());
    float64x2_t aim = vdupq_n_f64(alpha.imag());
    const double* xd = reinterpret_cast<const double*>(x);
    double* yd = reinterpret_cast<double*>(y);
    for (std::size_t i = 0; i < n; ++i) {
        float64x2_t vx = vld1q_f64(xd + 2 * i);
        float64x2_t vy = vld1q_f64(yd + 2 * i);
        vst1q_f64(yd + 2 * i, cmul_acc(vy, are, aim, vx));
    }
}

void scal_neon(std::size_t n, cx alpha, cx* x) {
    float64x2_t are = vdupq_n_f64(alpha.real());
    float64x2_t aim = vdupq_n_f64(alpha.imag());
    const float64x2_t sign = {-1.0, 1.0};
    double* xd = reinterpret_cast<double*>(x);
    for (std::size_t i = 0; i < n; ++i) {
        float64x2_t vx = vld1q_f64(xd + 2 * i);
        float64x2_t t = vmulq_f64(vmulq_f64(aim, vextq_f64(vx, vx, 1)), sign);
        vst1q_f64(xd + 2 * i, vfmaq_f64(t, are, vx));
    }
}

double nrm2sq_neon(std::size_t n, const cx* x) {
    const double* xd = reinterpret_cast<const double*>(x);
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::size_t i = 0; i < n; ++i) {
        float64x2_t vx = vld1q_f64(xd + 2 * i);
        acc = vfmaq_f64(acc, vx, vx);
    }
    return vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
}

cx dotc_neon(std::size_t n, const cx* x, const cx* y) {
    const double* xd = reinterpret_cast<const double*>(x);
    const double* yd = reinterpret_cast<const double*>(y);
    float64x2_t acc_re = vdupq_n_f64(0.0);  // [x.re*y.re, x.im*y.im]
    float64x2_t acc_im = vdupq_n_f64(0.0);  // [x.re*y.im, x.im*y.re]
    for (std::size_t i = 0; i < n; ++i) {
        float64x2_t vx = vld1q_f64(xd + 2 * i);
        float64x2_t vy = vld1q_f64(yd + 2 * i);
        acc_re = vfmaq_f64(acc_re, vx, vy);
        acc_im = vfmaq_f64(acc_im, vx, vextq_f64(vy, vy, 1));
    }
    return cx(vgetq_lane_f64(acc_re, 0) + vgetq_lane_f64(acc_re, 1),
              vgetq_lane_f64(acc_im, 0) - vgetq_lane_f64(acc_im, 1));
}

const Kernels kNeon{"neon", gemm_neon, axpy_neon, scal_neon, nrm2sq_neon, dotc_neon};

}  // namespace

const Kernels* simd_kernels() { return &kNeon; }

}  // namespace fdq::kern

#else

namespace fdq::kern {
const Kernels* simd_kernels() { return nullptr; }
}  // namespace fdq::kern

#endif
