#include "hadwalk/exact.hpp"

#include <bit>
#include <cstring>

namespace hadwalk::exact {

const char* to_string(Method m) {
    switch (m) {
        case Method::Dp: return "dp";
        case Method::ClosedFormN2: return "closed_form_n2";
        case Method::ClosedFormN3: return "closed_form_n3";
        case Method::BruteForce: return "brute_force";
    }
    return "?";
}

PackedState pack_state(const LatticePoint& p) {
    const int d = static_cast<int>(p.coords.size());
    if (d > 16) fail(ErrorCode::CapExceeded, "packed state supports d <= 16");
    PackedState s;
    std::array<std::uint8_t, 16> bytes{};
    for (int k = 0; k < d; ++k) {
        const std::int32_t c = p.coords[k];
        if (c < -127 || c > 127) fail(ErrorCode::CapExceeded, "coordinate out of packable range");
        bytes[k] = static_cast<std::uint8_t>(c + 128);
    }
    std::memcpy(s.w.data(), bytes.data(), 16);
    return s;
}

LatticePoint unpack_state(const PackedState& s, int d) {
    std::array<std::uint8_t, 16> bytes{};
    std::memcpy(bytes.data(), s.w.data(), 16);
    LatticePoint p;
    p.coords.resize(d);
    for (int k = 0; k < d; ++k) p.coords[k] = static_cast<std::int32_t>(bytes[k]) - 128;
    return p;
}

mpz_class WalkDistribution::total() const {
    mpz_class t = 0;
    for (const auto& [_, m] : mass) t += m;
    return t;
}

mpz_class WalkDistribution::origin_mass(int d) const {
    LatticePoint origin;
    origin.coords.assign(d, 0);
    auto it = mass.find(pack_state(origin));
    return it == mass.end() ? mpz_class(0) : it->second;
}

namespace {

void check_dp_caps(const Parameters& params, long t, const DpOptions& opts) {
    if (params.n > opts.max_n) fail(ErrorCode::CapExceeded, "walk DP capped at n <= " + std::to_string(opts.max_n));
    if (t > opts.max_t) fail(ErrorCode::CapExceeded, "walk DP capped at t <= " + std::to_string(opts.max_t));
}

}  // namespace

WalkDistribution walk_distribution(const Parameters& params, long t, const DpOptions& opts) {
    check_dp_caps(params, t, opts);
    const auto incs = enumerate_increments(params.n);
    const int d = params.d;

    WalkDistribution dist;
    LatticePoint origin;
    origin.coords.assign(d, 0);
    dist.mass.emplace(pack_state(origin), mpz_class(1));

    std::array<std::uint8_t, 16> bytes{};
    for (long step = 0; step < t; ++step) {
        std::unordered_map<PackedState, mpz_class, PackedStateHash> next;
        next.reserve(dist.mass.size() * 2);
        for (const auto& [state, count] : dist.mass) {
            std::memcpy(bytes.data(), state.w.data(), 16);
            for (const auto& inc : incs) {
                PackedState ns;
                std::array<std::uint8_t, 16> nb = bytes;
                for (int k = 0; k < d; ++k) nb[k] = static_cast<std::uint8_t>(nb[k] + inc.coords[k]);
                std::memcpy(ns.w.data(), nb.data(), 16);
                next[ns] += count;
            }
            if (next.size() > opts.max_states)
                fail(ErrorCode::MemoryBudgetExceeded, "live DP state count exceeded the configured budget");
        }
        dist.mass = std::move(next);
        dist.step = step + 1;
    }
    return dist;
}

CountResult count_exact_dp(const Parameters& params, const DpOptions& opts) {
    const WalkDistribution dist = walk_distribution(params, params.t, opts);

    CountResult res;
    res.params = params;
    res.method = Method::Dp;
    mpz_class origin = dist.origin_mass(params.d);
    // origin paths use canonical increments (y_1 = +1); each column has two
    // preimages, which restores the 2^t column-negation factor
    mpz_class count = origin << params.t;
    res.matrix_count = count;
    mpz_class denom = 1;
    denom <<= params.n * params.t;
    res.return_prob = mpq_class(count, denom);
    res.return_prob.canonicalize();
    return res;
}

CountResult count_closed_form(const Parameters& params, N2Form n2_form) {
    if (params.n != 2 && params.n != 3) fail(ErrorCode::UnsupportedN, "closed forms exist for n = 2 and n = 3 only");
    const long t = params.t;

    CountResult res;
    res.params = params;
    mpz_class num;

    if (params.n == 2) {
        res.method = Method::ClosedFormN2;
        if (t % 2 != 0) {
            num = 0;
        } else if (n2_form == N2Form::CentralBinomial) {
            mpz_bin_uiui(num.get_mpz_t(), static_cast<unsigned long>(t), static_cast<unsigned long>(t / 2));
        } else {
            if (t % 4 != 0) fail(ErrorCode::UnsupportedT, "pair-binomial reading is stated at multiples of 4 only");
            mpz_bin_uiui(num.get_mpz_t(), static_cast<unsigned long>(t), 2ul);
        }
        // P = num / 2^t, N = P * 2^{2t} = num * 2^t
        res.matrix_count = num << t;
    } else {
        res.method = Method::ClosedFormN3;
        if (t % 4 != 0) {
            res.matrix_count = 0;  // the walk has period 4
        } else {
            // P = t! / ((t/4)!)^4 / 2^{2t}, N = P * 2^{3t}
            mpz_class fact, quarter;
            mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(t));
            mpz_fac_ui(quarter.get_mpz_t(), static_cast<unsigned long>(t / 4));
            mpz_class q4 = quarter * quarter;
            q4 *= q4;
            num = fact / q4;
            res.matrix_count = num << t;
        }
    }

    mpz_class denom = 1;
    denom <<= params.n * params.t;
    res.return_prob = mpq_class(res.matrix_count, denom);
    res.return_prob.canonicalize();
    return res;
}

namespace {

CountResult finish_count(const Parameters& params, mpz_class count) {
    CountResult res;
    res.params = params;
    res.method = Method::BruteForce;
    res.matrix_count = std::move(count);
    mpz_class denom = 1;
    denom <<= params.n * params.t;
    res.return_prob = mpq_class(res.matrix_count, denom);
    res.return_prob.canonicalize();
    return res;
}

// Direct scan over all 2^{nt} sign matrices; rows are t-bit masks and a pair
// of rows is orthogonal iff popcount of their XOR is t/2.
mpz_class row_scan_count(int n, long t) {
    if (t == 0) return 1;
    std::vector<std::uint32_t> rows(n, 0);
    const std::uint32_t row_limit = 1u << t;
    mpz_class count = 0;
    while (true) {
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            for (int j = i + 1; j < n && ok; ++j)
                if (2 * std::popcount(rows[i] ^ rows[j]) != t) ok = false;
        if (ok) ++count;
        int k = n - 1;
        while (k >= 0 && ++rows[k] == row_limit) rows[k--] = 0;
        if (k < 0) break;
    }
    return count;
}

// DFS over non-decreasing column sequences from V_n; each sequence with
// column multiplicities (c_1, ..., c_m) stands for t! / prod c_i! ordered
// matrices. Prunes when some pair sum cannot reach zero in the remaining
// columns.
struct ColumnSearch {
    int n, d;
    long t;
    std::vector<std::array<std::int8_t, 32>> col_incs;  // pairwise products per column type
    mpz_class total = 0;
    std::vector<int> pair_sums;
    mpz_class multinomial;  // running t! / prod(mult!)

    void run() {
        pair_sums.assign(d, 0);
        mpz_fac_ui(multinomial.get_mpz_t(), static_cast<unsigned long>(t));
        descend(0, t);
    }

    void descend(int min_type, long remaining) {
        if (remaining == 0) {
            for (int k = 0; k < d; ++k)
                if (pair_sums[k] != 0) return;
            total += multinomial;
            return;
        }
        for (int k = 0; k < d; ++k)
            if (std::abs(pair_sums[k]) > remaining) return;
        const int types = 1 << n;
        for (int c = min_type; c < types; ++c) {
            // take `take` copies of column type c, largest feasible first is
            // not needed; enumerate every multiplicity
            for (long take = 1; take <= remaining; ++take) {
                for (int k = 0; k < d; ++k) pair_sums[k] += take * col_incs[c][k];
                mpz_class saved = multinomial;
                mpz_class fact;
                mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(take));
                multinomial /= fact;
                descend(c + 1, remaining - take);
                multinomial = saved;
                for (int k = 0; k < d; ++k) pair_sums[k] -= take * col_incs[c][k];
            }
        }
    }
};

mpz_class column_multiset_count(int n, long t) {
    ColumnSearch cs;
    cs.n = n;
    cs.d = pair_count(n);
    cs.t = t;
    cs.col_incs.resize(1 << n);
    for (int c = 0; c < (1 << n); ++c) {
        int k = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j, ++k) {
                const int yi = (c >> i) & 1 ? -1 : 1;
                const int yj = (c >> j) & 1 ? -1 : 1;
                cs.col_incs[c][k] = static_cast<std::int8_t>(yi * yj);
            }
    }
    cs.run();
    return cs.total;
}

}  // namespace

CountResult brute_force_count(const Parameters& params) {
    const long nt = static_cast<long>(params.n) * params.t;
    if (nt <= 20) return finish_count(params, row_scan_count(params.n, params.t));
    if (params.t <= 8 && params.n <= 5) return finish_count(params, column_multiset_count(params.n, params.t));
    fail(ErrorCode::CapExceeded, "brute force needs nt <= 20, or t <= 8 and n <= 5");
}

}  // namespace hadwalk::exact
