#pragma once

#include <cstdint>

#include "hadwalk/core.hpp"

namespace hadwalk::walksim {

struct SimConfig {
    int n = 3;
    long t = 4;
    std::uint64_t chains = 100000;
    std::uint64_t seed = 1;
    std::uint64_t step_budget = 10'000'000'000ull;  // cap on chains * t
};

struct SimResult {
    double estimate = 0.0;
    double std_error = 0.0;
    std::uint64_t hits = 0;
    std::uint64_t chains = 0;
};

/// Runs `chains` independent t-step walks with increments drawn uniformly
/// from the canonical set (sampling y with y_1 = +1 loses nothing since
/// Z(-y) = Z(y)) and reports the fraction that end at the origin with its
/// binomial standard error. Chains are keyed (seed, chain index), so the
/// result is reproducible and independent of threading.
SimResult simulate_return_prob(const SimConfig& cfg);

/// Sample moments of lambda . Z(xi) for xi uniform on V_n against the closed
/// forms: mean 0, second moment ||lambda||^2, third moment
/// 6 sum_{i<j<k} l_ij l_jk l_ik.
struct MomentReport {
    std::uint64_t samples = 0;
    double mean = 0.0, mean_se = 0.0;
    double second = 0.0, second_se = 0.0, second_expected = 0.0;
    double third = 0.0, third_se = 0.0, third_expected = 0.0;
    bool within_5se = false;
};

MomentReport increment_moment_check(int n, const TorusPoint& lambda, std::uint64_t samples, std::uint64_t seed);

}  // namespace hadwalk::walksim
