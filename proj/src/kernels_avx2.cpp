#include "hadwalk/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

#include <bit>

// AVX2 variants of the reference kernels. Lanes map to increments; each lane
// accumulates in the same k-ascending order as the scalar code and sign flips
// use XOR on the sign bit, so results are bit-identical to the scalar backend.
// count = 2^{n-1} is a multiple of 4 for n >= 3; the n = 2 case (count = 2)
// falls through to the tail loop.

namespace hadwalk::kernels {

namespace {

void signed_dots_avx2(const IncrementTable& tab, const double* lambda, double* out) {
    const int count = tab.count;
    const int vec_end = count & ~3;
    for (int m = 0; m < vec_end; m += 4) _mm256_storeu_pd(out + m, _mm256_setzero_pd());
    for (int m = vec_end; m < count; ++m) out[m] = 0.0;
    for (int k = 0; k < tab.d; ++k) {
        const __m256d lam = _mm256_set1_pd(lambda[k]);
        const std::uint64_t* sx = tab.sign_xor.data() + static_cast<std::size_t>(k) * count;
        for (int m = 0; m < vec_end; m += 4) {
            const __m256d mask = _mm256_castsi256_pd(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(sx + m)));
            const __m256d acc = _mm256_loadu_pd(out + m);
            _mm256_storeu_pd(out + m, _mm256_add_pd(acc, _mm256_xor_pd(lam, mask)));
        }
        for (int m = vec_end; m < count; ++m)
            out[m] += std::bit_cast<double>(std::bit_cast<std::uint64_t>(lambda[k]) ^ sx[m]);
    }
}

void rotate_avx2(const IncrementTable& tab, int coord, const double* pre_re, const double* pre_im, double z_re,
                 double z_im, double* out_re, double* out_im) {
    const int count = tab.count;
    const int vec_end = count & ~3;
    const std::uint64_t* sx = tab.sign_xor.data() + static_cast<std::size_t>(coord) * count;
    const __m256d zr = _mm256_set1_pd(z_re);
    const __m256d zi0 = _mm256_set1_pd(z_im);
    for (int m = 0; m < vec_end; m += 4) {
        const __m256d mask = _mm256_castsi256_pd(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(sx + m)));
        const __m256d zi = _mm256_xor_pd(zi0, mask);
        const __m256d pr = _mm256_loadu_pd(pre_re + m);
        const __m256d pi = _mm256_loadu_pd(pre_im + m);
        _mm256_storeu_pd(out_re + m, _mm256_sub_pd(_mm256_mul_pd(pr, zr), _mm256_mul_pd(pi, zi)));
        _mm256_storeu_pd(out_im + m, _mm256_add_pd(_mm256_mul_pd(pr, zi), _mm256_mul_pd(pi, zr)));
    }
    for (int m = vec_end; m < count; ++m) {
        const double zi = std::bit_cast<double>(std::bit_cast<std::uint64_t>(z_im) ^ sx[m]);
        out_re[m] = pre_re[m] * z_re - pre_im[m] * zi;
        out_im[m] = pre_re[m] * zi + pre_im[m] * z_re;
    }
}

}  // namespace

const Backend* avx2_backend() {
    static const Backend b{"avx2", &signed_dots_avx2, &rotate_avx2};
    return &b;
}

}  // namespace hadwalk::kernels

#else

namespace hadwalk::kernels {
const Backend* avx2_backend() { return nullptr; }
}  // namespace hadwalk::kernels

#endif
