#include "hadwalk/integral.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "hadwalk/kernels.hpp"
#include "hadwalk/mathutil.hpp"
#include "hadwalk/parallel.hpp"
#include "hadwalk/rng.hpp"
#include "hadwalk/unitset.hpp"

namespace hadwalk::integral {

namespace {
constexpr double kPi = std::numbers::pi;
}

const char* to_string(Method m) {
    switch (m) {
        case Method::ExactGrid: return "exact_grid";
        case Method::MonteCarlo: return "monte_carlo";
        case Method::BoxQuadrature: return "box_quadrature";
    }
    return "?";
}

namespace {

// Walks the d-axis grid with a running prefix of per-increment phase
// products, so each node costs one rotate + reduce and the only
// trigonometry is the shared (2t+1)-entry phase table.
struct GridWorker {
    const kernels::IncrementTable& tab;
    long t;
    int nodes;  // 2t+1 per axis
    std::vector<std::complex<double>> phase;
    // prefix[a] holds, for each increment, the product of phases of axes 0..a
    std::vector<std::vector<double>> pre_re, pre_im;
    std::vector<double> rot_re, rot_im;
    KahanSum acc_re, acc_im;

    GridWorker(const kernels::IncrementTable& table, long steps) : tab(table), t(steps) {
        nodes = static_cast<int>(2 * t + 1);
        phase.resize(nodes);
        for (int g = 0; g < nodes; ++g) {
            const double ang = 2.0 * kPi * g / nodes;
            phase[g] = {std::cos(ang), std::sin(ang)};
        }
        pre_re.assign(tab.d, std::vector<double>(tab.count));
        pre_im.assign(tab.d, std::vector<double>(tab.count));
        rot_re.resize(tab.count);
        rot_im.resize(tab.count);
    }

    void set_axis(int a, int g) {
        const auto& backend = kernels::active_backend();
        const std::complex<double> z = phase[g];
        if (a == 0) {
            std::vector<double> ones(tab.count, 1.0), zeros(tab.count, 0.0);
            backend.rotate_by_coord(tab, 0, ones.data(), zeros.data(), z.real(), z.imag(), pre_re[0].data(),
                                    pre_im[0].data());
        } else {
            backend.rotate_by_coord(tab, a, pre_re[a - 1].data(), pre_im[a - 1].data(), z.real(), z.imag(),
                                    pre_re[a].data(), pre_im[a].data());
        }
    }

    void accumulate_last_axis() {
        const auto& backend = kernels::active_backend();
        const int last = tab.d - 1;
        const double* base_re = tab.d == 1 ? nullptr : pre_re[last - 1].data();
        const double* base_im = tab.d == 1 ? nullptr : pre_im[last - 1].data();
        std::vector<double> ones, zeros;
        if (tab.d == 1) {
            ones.assign(tab.count, 1.0);
            zeros.assign(tab.count, 0.0);
            base_re = ones.data();
            base_im = zeros.data();
        }
        const double inv = 1.0 / tab.count;
        for (int g = 0; g < nodes; ++g) {
            const std::complex<double> z = phase[g];
            backend.rotate_by_coord(tab, last, base_re, base_im, z.real(), z.imag(), rot_re.data(), rot_im.data());
            double sr = 0.0, si = 0.0;
            for (int m = 0; m < tab.count; ++m) {
                sr += rot_re[m];
                si += rot_im[m];
            }
            const std::complex<double> p = cpow_uint({sr * inv, si * inv}, static_cast<std::uint64_t>(t));
            acc_re.add(p.real());
            acc_im.add(p.imag());
        }
    }

    void recurse(int a) {
        if (a == tab.d - 1) {
            accumulate_last_axis();
            return;
        }
        for (int g = 0; g < nodes; ++g) {
            set_axis(a, g);
            recurse(a + 1);
        }
    }
};

}  // namespace

IntegralEstimate inversion_exact_grid(const Parameters& params, long t, const GridOptions& opts) {
    if (t < 0) fail(ErrorCode::BadInput, "step count must be >= 0");
    if (t == 0) return {std::complex<double>{1.0, 0.0}, Method::ExactGrid, 1, 0.0};

    const std::uint64_t nodes_per_axis = static_cast<std::uint64_t>(2 * t + 1);
    unsigned __int128 total = 1;
    for (int k = 0; k < params.d; ++k) {
        total *= nodes_per_axis;
        if (total > opts.node_cap) fail(ErrorCode::NodeCapExceeded, "grid node count exceeds the configured cap");
    }
    const std::uint64_t node_count = static_cast<std::uint64_t>(total);

    const auto table = kernels::IncrementTable::make(params.n);

    // One chunk per outer-axis node: the merge order is fixed by the grid, so
    // the result does not depend on the thread budget.
    const int outer = static_cast<int>(nodes_per_axis);
    std::vector<std::complex<double>> partial(params.d == 1 ? 1 : outer);
    if (params.d == 1) {
        GridWorker w(table, t);
        w.recurse(0);
        partial[0] = {w.acc_re.value(), w.acc_im.value()};
    } else {
        parallel_chunks(outer, 1, [&](std::size_t chunk, std::uint64_t begin, std::uint64_t) {
            GridWorker w(table, t);
            w.set_axis(0, static_cast<int>(begin));
            w.recurse(1);
            partial[chunk] = {w.acc_re.value(), w.acc_im.value()};
        });
    }
    KahanSum re, im;
    for (const auto& p : partial) {
        re.add(p.real());
        im.add(p.imag());
    }
    const double norm = 1.0 / static_cast<double>(node_count);
    return {std::complex<double>{re.value() * norm, im.value() * norm}, Method::ExactGrid, node_count, 0.0};
}

namespace {

struct McPartial {
    KahanSum re, im, re_sq, im_sq;
    std::uint64_t hits = 0;
    double max_psi_sq = 0.0;
};

constexpr std::uint64_t kMcChunk = 1 << 16;

}  // namespace

IntegralEstimate integrate_box_mc(const Parameters& params, long t, const TorusPoint& center, double radius,
                                  std::uint64_t samples, std::uint64_t seed) {
    if (center.dim() != params.d) fail(ErrorCode::DimensionMismatch, "center dimension != C(n,2)");
    if (!(radius > 0.0 && radius <= kPi)) fail(ErrorCode::InvalidRadius, "radius must lie in (0, pi]");
    if (samples == 0) fail(ErrorCode::BadInput, "need at least one sample");

    const auto table = kernels::IncrementTable::make(params.n);
    const CounterRng rng(seed, /*stream=*/0xB0C5);
    const int d = params.d;

    std::vector<McPartial> parts((samples + kMcChunk - 1) / kMcChunk);
    parallel_chunks(samples, kMcChunk, [&](std::size_t chunk, std::uint64_t begin, std::uint64_t end) {
        std::vector<double> lam(d);
        std::vector<double> theta(table.count);
        McPartial& part = parts[chunk];
        for (std::uint64_t s = begin; s < end; ++s) {
            for (int k = 0; k < d; ++k)
                lam[k] = center.coords[k] + rng.uniform(s * d + k, -radius, radius);
            kernels::active_backend().signed_dots(table, lam.data(), theta.data());
            double re = 0.0, im = 0.0;
            for (int m = 0; m < table.count; ++m) {
                re += std::cos(theta[m]);
                im += std::sin(theta[m]);
            }
            const double inv = 1.0 / table.count;
            const auto p = cpow_uint({re * inv, im * inv}, static_cast<std::uint64_t>(t));
            part.re.add(p.real());
            part.im.add(p.imag());
            part.re_sq.add(p.real() * p.real());
            part.im_sq.add(p.imag() * p.imag());
        }
    });

    KahanSum re, im, re_sq, im_sq;
    for (const auto& p : parts) {
        re.add(p.re.value());
        im.add(p.im.value());
        re_sq.add(p.re_sq.value());
        im_sq.add(p.im_sq.value());
    }
    const double inv_n = 1.0 / static_cast<double>(samples);
    const double mean_re = re.value() * inv_n;
    const double mean_im = im.value() * inv_n;
    double volume = 1.0;
    for (int k = 0; k < d; ++k) volume *= 2.0 * radius;
    const double var_re = std::max(0.0, re_sq.value() * inv_n - mean_re * mean_re);
    const double var_im = std::max(0.0, im_sq.value() * inv_n - mean_im * mean_im);
    const double se = volume * std::sqrt((var_re + var_im) * inv_n);

    return {std::complex<double>{mean_re * volume, mean_im * volume}, Method::MonteCarlo, samples, se};
}

ResidualBoundReport residual_bound_check(const Parameters& params, long t, double delta, std::uint64_t samples,
                                         std::uint64_t seed) {
    if (!(delta > 0.0 && delta <= kPi / 4)) fail(ErrorCode::InvalidDelta, "delta must lie in (0, pi/4]");
    if (samples == 0) fail(ErrorCode::BadInput, "need at least one sample");

    const auto table = kernels::IncrementTable::make(params.n);
    const CounterRng rng(seed, /*stream=*/0x5E51);
    const int d = params.d;
    constexpr double half_pi = kPi / 2;

    std::vector<McPartial> parts((samples + kMcChunk - 1) / kMcChunk);
    parallel_chunks(samples, kMcChunk, [&](std::size_t chunk, std::uint64_t begin, std::uint64_t end) {
        std::vector<double> lam(d);
        std::vector<double> theta(table.count);
        unitset::QuarterPhasePoint q;
        q.digits.resize(d);
        McPartial& part = parts[chunk];
        for (std::uint64_t s = begin; s < end; ++s) {
            double max_off = 0.0;
            for (int k = 0; k < d; ++k) {
                lam[k] = rng.uniform(s * d + k, -kPi, kPi);
                const double cell = std::floor(lam[k] / half_pi + 0.5);
                max_off = std::max(max_off, std::abs(lam[k] - cell * half_pi));
                q.digits[k] = static_cast<std::uint8_t>(((static_cast<long>(cell) % 4) + 4) % 4);
            }
            // gamma lies in a primary box iff its quarter cell has a unit
            // center and the offset stays within delta
            const bool primary = max_off <= delta && unitset::psi_quarter_exact(table, q).has_value();
            if (primary) continue;
            ++part.hits;
            kernels::active_backend().signed_dots(table, lam.data(), theta.data());
            double re = 0.0, im = 0.0;
            for (int m = 0; m < table.count; ++m) {
                re += std::cos(theta[m]);
                im += std::sin(theta[m]);
            }
            const double inv = 1.0 / table.count;
            const std::complex<double> psi{re * inv, im * inv};
            part.max_psi_sq = std::max(part.max_psi_sq, std::norm(psi));
            const auto p = cpow_uint(psi, static_cast<std::uint64_t>(t));
            part.re.add(p.real());
            part.im.add(p.imag());
            part.re_sq.add(p.real() * p.real());
            part.im_sq.add(p.imag() * p.imag());
        }
    });

    // (2pi)^{-d} int_{R} psi^t = E[psi^t 1_R] over gamma uniform on B_pi
    KahanSum re, im, re_sq, im_sq;
    std::uint64_t hits = 0;
    double max_psi_sq = 0.0;
    for (const auto& p : parts) {
        re.add(p.re.value());
        im.add(p.im.value());
        re_sq.add(p.re_sq.value());
        im_sq.add(p.im_sq.value());
        hits += p.hits;
        max_psi_sq = std::max(max_psi_sq, p.max_psi_sq);
    }

    ResidualBoundReport rep;
    rep.samples = samples;
    rep.residual_hits = hits;
    rep.max_psi_sq = max_psi_sq;
    const double cd = std::cos(delta);
    rep.pointwise_cap = cd * cd;
    rep.pointwise_holds = max_psi_sq <= rep.pointwise_cap + 1e-12;
    const double inv_n = 1.0 / static_cast<double>(samples);
    const double mean_re = re.value() * inv_n;
    const double mean_im = im.value() * inv_n;
    rep.estimate = std::hypot(mean_re, mean_im);
    const double var_re = std::max(0.0, re_sq.value() * inv_n - mean_re * mean_re);
    const double var_im = std::max(0.0, im_sq.value() * inv_n - mean_im * mean_im);
    rep.std_error = std::sqrt((var_re + var_im) * inv_n);
    rep.bound = std::exp(-(11.0 / 24.0) * static_cast<double>(t) * delta * delta);
    rep.bound_holds = rep.estimate - 3.0 * rep.std_error <= rep.bound;
    return rep;
}

GaussianBoxBounds gaussian_box_integral(int d, double t, double delta) {
    if (d < 1) fail(ErrorCode::BadInput, "dimension must be >= 1");
    if (!(t >= 1.0)) fail(ErrorCode::BadInput, "t must be >= 1");
    if (!(delta > 0.0)) fail(ErrorCode::BadInput, "delta must be > 0");
    GaussianBoxBounds out;
    const double one_dim = std::sqrt(2.0 * kPi / t) * std::erf(delta * std::sqrt(t / 2.0));
    out.value = std::pow(one_dim, d);
    const double scale = std::pow(2.0 * kPi / t, d / 2.0);
    out.lower = scale * std::pow(1.0 - std::exp(-t * delta * delta / 2.0), d / 2.0);
    out.upper = scale * std::pow(1.0 - std::exp(-t * delta * delta), d / 2.0);
    return out;
}

}  // namespace hadwalk::integral
