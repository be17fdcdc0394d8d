#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "hadwalk/core.hpp"

namespace hadwalk::kernels {

/// Canonical increment set for fixed n, packed for the inner-loop kernels.
///
/// Increment m (0 <= m < 2^{n-1}) is Z(y) for y = (+1, s_1, ..., s_{n-1}),
/// s_k = -1 iff bit k of m is set — the same order enumerate_increments uses.
struct IncrementTable {
    int n = 0;
    int d = 0;
    int count = 0;  // 2^{n-1}

    // Bit k of neg_mask[m] set <=> coordinate k of increment m is -1.
    std::vector<std::uint64_t> neg_mask;

    // Coordinate-major sign-bit masks: sign_xor[k*count + m] is 0x8000000000000000
    // where increment m has -1 at coordinate k, else 0. XOR-ing a double with this
    // flips its sign exactly (no rounding), which keeps every backend bit-identical.
    std::vector<std::uint64_t> sign_xor;

    static IncrementTable make(int n);
};

constexpr int kMaxTableN = 11;  // d = C(n,2) must fit a single mask word

// out[m] = sum_k s_{m,k} * lambda[k]; accumulation runs k ascending per lane.
using SignedDotsFn = void (*)(const IncrementTable&, const double* lambda, double* out);

// Elementwise complex multiply by z or conj(z), conjugating lanes where
// coordinate `coord` of the increment is -1:
//   out[m] = pre[m] * (z_re + i * s_{m,coord} * z_im)
using RotateFn = void (*)(const IncrementTable&, int coord, const double* pre_re, const double* pre_im,
                          double z_re, double z_im, double* out_re, double* out_im);

struct Backend {
    const char* name;
    SignedDotsFn signed_dots;
    RotateFn rotate_by_coord;
};

/// Runtime-selected backend: AVX2 or NEON when the CPU has it, scalar otherwise.
/// The HW_SIMD environment variable ("scalar", "avx2", "neon") forces a choice.
const Backend& active_backend();
const Backend& scalar_backend();
const Backend* backend_by_name(std::string_view name);
std::vector<const Backend*> available_backends();

}  // namespace hadwalk::kernels
