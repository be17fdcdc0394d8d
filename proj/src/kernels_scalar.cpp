#include <bit>
#include <cstring>

#include "hadwalk/kernels.hpp"

// Reference kernels. The SIMD variants must reproduce these bit-for-bit:
// per-lane accumulation order is fixed (k ascending), sign flips are done by
// XOR-ing the IEEE sign bit, and no FMA contraction is allowed in this file
// (see the -ffp-contract=off compile option on the kernels sources).

namespace hadwalk::kernels {

namespace {

inline double flip(double x, std::uint64_t sx) { return std::bit_cast<double>(std::bit_cast<std::uint64_t>(x) ^ sx); }

void signed_dots_scalar(const IncrementTable& tab, const double* lambda, double* out) {
    const int count = tab.count;
    for (int m = 0; m < count; ++m) out[m] = 0.0;
    for (int k = 0; k < tab.d; ++k) {
        const double lam = lambda[k];
        const std::uint64_t* sx = tab.sign_xor.data() + static_cast<std::size_t>(k) * count;
        for (int m = 0; m < count; ++m) out[m] += flip(lam, sx[m]);
    }
}

void rotate_scalar(const IncrementTable& tab, int coord, const double* pre_re, const double* pre_im, double z_re,
                   double z_im, double* out_re, double* out_im) {
    const std::uint64_t* sx = tab.sign_xor.data() + static_cast<std::size_t>(coord) * tab.count;
    for (int m = 0; m < tab.count; ++m) {
        const double zi = flip(z_im, sx[m]);
        out_re[m] = pre_re[m] * z_re - pre_im[m] * zi;
        out_im[m] = pre_re[m] * zi + pre_im[m] * z_re;
    }
}

}  // namespace

const Backend& scalar_backend() {
    static const Backend b{"scalar", &signed_dots_scalar, &rotate_scalar};
    return b;
}

IncrementTable IncrementTable::make(int n) {
    if (n < 2 || n > kMaxTableN) fail(ErrorCode::CapExceeded, "increment table supports 2 <= n <= 11");
    IncrementTable tab;
    tab.n = n;
    tab.d = pair_count(n);
    tab.count = 1 << (n - 1);
    tab.neg_mask.assign(tab.count, 0);
    for (int m = 0; m < tab.count; ++m) {
        // y = (+1, s_1..s_{n-1}); coordinate {i,j} is negative iff s_{i-1} != s_{j-1}
        // (treating y_1's sign bit as 0)
        const std::uint32_t ybits = static_cast<std::uint32_t>(m) << 1;
        std::uint64_t mask = 0;
        int k = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j, ++k)
                if (((ybits >> i) ^ (ybits >> j)) & 1u) mask |= std::uint64_t{1} << k;
        tab.neg_mask[m] = mask;
    }
    tab.sign_xor.assign(static_cast<std::size_t>(tab.d) * tab.count, 0);
    for (int k = 0; k < tab.d; ++k)
        for (int m = 0; m < tab.count; ++m)
            if ((tab.neg_mask[m] >> k) & 1u)
                tab.sign_xor[static_cast<std::size_t>(k) * tab.count + m] = 0x8000000000000000ull;
    return tab;
}

}  // namespace hadwalk::kernels
