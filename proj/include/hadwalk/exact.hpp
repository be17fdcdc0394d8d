#pragma once

#include <array>
#include <cstdint>
#include <unordered_map>

#include <gmpxx.h>

#include "hadwalk/core.hpp"

namespace hadwalk::exact {

enum class Method { Dp, ClosedFormN2, ClosedFormN3, BruteForce };

const char* to_string(Method m);

/// Exact count of n x t matrices with +-1 entries and pairwise orthogonal
/// rows, plus the walk's return probability count / 2^{nt} as an exact
/// rational.
struct CountResult {
    Parameters params;
    mpz_class matrix_count;
    mpq_class return_prob;
    Method method = Method::Dp;
};

struct DpOptions {
    int max_n = 6;
    long max_t = 32;
    std::size_t max_states = std::size_t{1} << 26;
};

/// Walk position packed one byte per coordinate (offset +128); d <= 16.
struct PackedState {
    std::array<std::uint64_t, 2> w{0, 0};
    bool operator==(const PackedState&) const = default;
};

struct PackedStateHash {
    std::size_t operator()(const PackedState& s) const {
        std::uint64_t h = s.w[0] * 0x9E3779B97F4A7C15ull;
        h ^= h >> 29;
        h += s.w[1] * 0xBF58476D1CE4E5B9ull;
        h ^= h >> 32;
        return static_cast<std::size_t>(h);
    }
};

PackedState pack_state(const LatticePoint& p);
LatticePoint unpack_state(const PackedState& s, int d);

/// Path-count distribution of the walk over canonical increments after
/// `step` steps; masses sum to 2^{(n-1) step}.
struct WalkDistribution {
    long step = 0;
    std::unordered_map<PackedState, mpz_class, PackedStateHash> mass;

    mpz_class total() const;
    mpz_class origin_mass(int d) const;
};

WalkDistribution walk_distribution(const Parameters& params, long t, const DpOptions& opts = {});

/// Sparse convolution count. The DP runs over the 2^{n-1} canonical
/// increments and multiplies the origin mass by 2^t at the end (each column
/// has two sign-vector preimages).
CountResult count_exact_dp(const Parameters& params, const DpOptions& opts = {});

/// Readings of the two-row closed form. The pair binomial C(t,2) disagrees
/// with the exact DP at t = 8 (C(8,2)/2^8 = 28/256 vs the true 70/256); the
/// central binomial C(t,t/2) is the resolved default. The two coincide at
/// t = 4, which is why only t >= 8 separates them.
enum class N2Form { CentralBinomial, PairBinomial };

CountResult count_closed_form(const Parameters& params, N2Form n2_form = N2Form::CentralBinomial);

/// Ground-truth oracle. Scans all 2^{nt} matrices when nt <= 20; otherwise
/// falls back to a column-multiset search (t <= 8, n <= 5) that weights each
/// non-decreasing column sequence by its multinomial coefficient.
CountResult brute_force_count(const Parameters& params);

}  // namespace hadwalk::exact
