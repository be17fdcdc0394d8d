#include "hadwalk/walksim.hpp"

#include <cmath>
#include <vector>

#include "hadwalk/charfn.hpp"
#include "hadwalk/kernels.hpp"
#include "hadwalk/mathutil.hpp"
#include "hadwalk/parallel.hpp"
#include "hadwalk/rng.hpp"

namespace hadwalk::walksim {

SimResult simulate_return_prob(const SimConfig& cfg) {
    if (cfg.chains == 0) fail(ErrorCode::BadInput, "need at least one chain");
    if (cfg.t < 0) fail(ErrorCode::BadInput, "step count must be >= 0");
    if (cfg.t > 0 && cfg.chains > cfg.step_budget / static_cast<std::uint64_t>(cfg.t))
        fail(ErrorCode::BudgetExceeded, "chains * t exceeds the step budget");

    const auto table = kernels::IncrementTable::make(cfg.n);
    const int d = table.d;
    const std::uint64_t inc_mask = static_cast<std::uint64_t>(table.count) - 1;

    constexpr std::uint64_t kChunk = 1 << 14;
    std::vector<std::uint64_t> hits((cfg.chains + kChunk - 1) / kChunk, 0);
    parallel_chunks(cfg.chains, kChunk, [&](std::size_t chunk, std::uint64_t begin, std::uint64_t end) {
        std::vector<std::int32_t> pos(d);
        std::uint64_t h = 0;
        for (std::uint64_t c = begin; c < end; ++c) {
            const CounterRng rng(cfg.seed, c);
            std::fill(pos.begin(), pos.end(), 0);
            for (long s = 0; s < cfg.t; ++s) {
                const std::uint64_t m = rng.word(static_cast<std::uint64_t>(s)) & inc_mask;
                const std::uint64_t neg = table.neg_mask[m];
                for (int k = 0; k < d; ++k) pos[k] += ((neg >> k) & 1) ? -1 : 1;
            }
            bool origin = true;
            for (int k = 0; k < d && origin; ++k) origin = pos[k] == 0;
            if (origin) ++h;
        }
        hits[chunk] = h;
    });

    SimResult res;
    res.chains = cfg.chains;
    for (auto h : hits) res.hits += h;
    res.estimate = static_cast<double>(res.hits) / static_cast<double>(cfg.chains);
    res.std_error = std::sqrt(res.estimate * (1.0 - res.estimate) / static_cast<double>(cfg.chains));
    return res;
}

MomentReport increment_moment_check(int n, const TorusPoint& lambda, std::uint64_t samples, std::uint64_t seed) {
    if (samples == 0) fail(ErrorCode::BadInput, "need at least one sample");
    const auto table = kernels::IncrementTable::make(n);
    if (lambda.dim() != table.d) fail(ErrorCode::DimensionMismatch, "lambda dimension != C(n,2)");

    // xi uniform on V_n induces the uniform law on M through the two-to-one
    // map, so drawing a canonical increment index is the same experiment.
    std::vector<double> dots(table.count);
    kernels::active_backend().signed_dots(table, lambda.coords.data(), dots.data());

    const CounterRng rng(seed, /*stream=*/0x303);
    KahanSum s1, s2, s3, s4, s6;
    const std::uint64_t inc_mask = static_cast<std::uint64_t>(table.count) - 1;
    for (std::uint64_t s = 0; s < samples; ++s) {
        const double x = dots[rng.word(s) & inc_mask];
        const double x2 = x * x;
        const double x3 = x2 * x;
        s1.add(x);
        s2.add(x2);
        s3.add(x3);
        s4.add(x2 * x2);
        s6.add(x3 * x3);
    }
    const double inv = 1.0 / static_cast<double>(samples);
    MomentReport rep;
    rep.samples = samples;
    rep.mean = s1.value() * inv;
    rep.second = s2.value() * inv;
    rep.third = s3.value() * inv;
    rep.mean_se = std::sqrt(std::max(0.0, rep.second - rep.mean * rep.mean) * inv);
    const double m4 = s4.value() * inv;
    const double m6 = s6.value() * inv;
    rep.second_se = std::sqrt(std::max(0.0, m4 - rep.second * rep.second) * inv);
    rep.third_se = std::sqrt(std::max(0.0, m6 - rep.third * rep.third) * inv);
    rep.second_expected = charfn::norm_sq(lambda);
    rep.third_expected = 6.0 * charfn::triple_cycle_sum(n, lambda);

    const double eps = 1e-12;  // exact-zero cases have zero standard error
    rep.within_5se = std::abs(rep.mean) <= 5.0 * rep.mean_se + eps &&
                     std::abs(rep.second - rep.second_expected) <= 5.0 * rep.second_se + eps &&
                     std::abs(rep.third - rep.third_expected) <= 5.0 * rep.third_se + eps;
    return rep;
}

}  // namespace hadwalk::walksim
