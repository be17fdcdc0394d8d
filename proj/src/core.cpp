#include "hadwalk/core.hpp"

namespace hadwalk {

Parameters Parameters::make(int n, long t) {
    if (n < 2) fail(ErrorCode::BadInput, "row count n must be >= 2");
    if (t < 0) fail(ErrorCode::BadInput, "step count t must be >= 0");
    Parameters p;
    p.n = n;
    p.t = t;
    p.d = pair_count(n);
    return p;
}

int flatten_pair(int n, int i, int j) {
    if (!(1 <= i && i < j && j <= n)) fail(ErrorCode::BadInput, "pair indices must satisfy 1 <= i < j <= n");
    // pairs (1,2),(1,3),...,(1,n),(2,3),... : offset of row i is sum of (n-k) for k<i
    return (i - 1) * n - i * (i - 1) / 2 + (j - i - 1);
}

PairIndex unflatten_pair(int n, int flat) {
    if (flat < 0 || flat >= pair_count(n)) fail(ErrorCode::BadInput, "flat pair index out of range");
    int i = 1;
    int rem = flat;
    while (rem >= n - i) {
        rem -= n - i;
        ++i;
    }
    return PairIndex{i, i + 1 + rem, flat};
}

SignVector::SignVector(std::uint32_t bits, int n) : bits_(bits), n_(n) {
    if (n < 1 || n > 32) fail(ErrorCode::BadInput, "SignVector dimension must be in [1,32]");
    if ((bits & ~mask()) != 0) fail(ErrorCode::BadInput, "SignVector has bits above dimension");
}

bool LatticePoint::is_origin() const {
    for (auto c : coords)
        if (c != 0) return false;
    return true;
}

IncrementVector z_map(const SignVector& y) {
    int n = y.dim();
    if (n < 2) fail(ErrorCode::BadInput, "z_map requires dimension >= 2");
    IncrementVector out;
    out.coords.reserve(pair_count(n));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) out.coords.push_back(static_cast<std::int8_t>(y.coord(i) * y.coord(j)));
    return out;
}

std::vector<IncrementVector> enumerate_increments(int n) {
    if (n < 2) fail(ErrorCode::BadInput, "increment enumeration requires n >= 2");
    if (n > kMaxEnumerateN) fail(ErrorCode::CapExceeded, "increment enumeration capped at n <= 24");
    std::vector<IncrementVector> out;
    out.reserve(std::size_t{1} << (n - 1));
    for (std::uint32_t b = 0; b < (1u << (n - 1)); ++b) {
        // y = (+1, tail); tail bit k set => y_{k+2} = -1
        out.push_back(z_map(SignVector(b << 1, n)));
    }
    return out;
}

bool triangle_consistent(const IncrementVector& v, int n) {
    if (v.dim() != pair_count(n)) fail(ErrorCode::DimensionMismatch, "increment dimension != C(n,2)");
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int k = j + 1; k <= n; ++k) {
                int p = v.coords[flatten_pair(n, i, j)] * v.coords[flatten_pair(n, j, k)] *
                        v.coords[flatten_pair(n, i, k)];
                if (p != 1) return false;
            }
    return true;
}

}  // namespace hadwalk
