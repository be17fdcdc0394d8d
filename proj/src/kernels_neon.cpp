#include "hadwalk/kernels.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>

#include <bit>

// NEON (2 x f64 lanes) variants, bit-identical to the scalar backend by the
// same argument as the AVX2 file: fixed accumulation order, XOR sign flips,
// no FMA contraction.

namespace hadwalk::kernels {

namespace {

void signed_dots_neon(const IncrementTable& tab, const double* lambda, double* out) {
    const int count = tab.count;
    for (int m = 0; m < count; ++m) out[m] = 0.0;
    for (int k = 0; k < tab.d; ++k) {
        const float64x2_t lam = vdupq_n_f64(lambda[k]);
        const std::uint64_t* sx = tab.sign_xor.data() + static_cast<std::size_t>(k) * count;
        int m = 0;
        for (; m + 2 <= count; m += 2) {
            const uint64x2_t mask = vld1q_u64(sx + m);
            const float64x2_t signed_lam =
                vreinterpretq_f64_u64(veorq_u64(vreinterpretq_u64_f64(lam), mask));
            vst1q_f64(out + m, vaddq_f64(vld1q_f64(out + m), signed_lam));
        }
        for (; m < count; ++m)
            out[m] += std::bit_cast<double>(std::bit_cast<std::uint64_t>(lambda[k]) ^ sx[m]);
    }
}

void rotate_neon(const IncrementTable& tab, int coord, const double* pre_re, const double* pre_im, double z_re,
                 double z_im, double* out_re, double* out_im) {
    const int count = tab.count;
    const std::uint64_t* sx = tab.sign_xor.data() + static_cast<std::size_t>(coord) * count;
    const float64x2_t zr = vdupq_n_f64(z_re);
    const float64x2_t zi0 = vdupq_n_f64(z_im);
    int m = 0;
    for (; m + 2 <= count; m += 2) {
        const uint64x2_t mask = vld1q_u64(sx + m);
        const float64x2_t zi = vreinterpretq_f64_u64(veorq_u64(vreinterpretq_u64_f64(zi0), mask));
        const float64x2_t pr = vld1q_f64(pre_re + m);
        const float64x2_t pi = vld1q_f64(pre_im + m);
        vst1q_f64(out_re + m, vsubq_f64(vmulq_f64(pr, zr), vmulq_f64(pi, zi)));
        vst1q_f64(out_im + m, vaddq_f64(vmulq_f64(pr, zi), vmulq_f64(pi, zr)));
    }
    for (; m < count; ++m) {
        const double zi = std::bit_cast<double>(std::bit_cast<std::uint64_t>(z_im) ^ sx[m]);
        out_re[m] = pre_re[m] * z_re - pre_im[m] * zi;
        out_im[m] = pre_re[m] * zi + pre_im[m] * z_re;
    }
}

}  // namespace

const Backend* neon_backend() {
    static const Backend b{"neon", &signed_dots_neon, &rotate_neon};
    return &b;
}

}  // namespace hadwalk::kernels

#else

namespace hadwalk::kernels {
const Backend* neon_backend() { return nullptr; }
}  // namespace hadwalk::kernels

#endif
