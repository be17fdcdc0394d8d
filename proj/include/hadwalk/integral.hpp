#pragma once

#include <complex>
#include <cstdint>

#include "hadwalk/core.hpp"

namespace hadwalk::integral {

enum class Method { ExactGrid, MonteCarlo, BoxQuadrature };

const char* to_string(Method m);

struct IntegralEstimate {
    std::complex<double> value;
    Method method = Method::ExactGrid;
    std::uint64_t samples_or_nodes = 0;
    double std_error = 0.0;  // Monte Carlo only
};

struct GridOptions {
    std::uint64_t node_cap = 100'000'000;
};

/// Average of psi(lambda)^t over the tensor grid lambda_k = 2 pi k / (2t+1),
/// k = 0..2t per axis. psi^t is a trigonometric polynomial with per-axis
/// frequencies in [-t, t], so this average IS (2pi)^{-d} I(d,t) — the return
/// probability — exactly, up to roundoff. Returns the normalized value.
IntegralEstimate inversion_exact_grid(const Parameters& params, long t, const GridOptions& opts = {});

/// Monte Carlo estimate of the raw integral of psi^t over the box
/// B_radius(center). Deterministic for a given seed regardless of threads.
IntegralEstimate integrate_box_mc(const Parameters& params, long t, const TorusPoint& center, double radius,
                                  std::uint64_t samples, std::uint64_t seed);

/// Checks |(2pi)^{-d} int_{R_delta} psi^t| against the closed-form envelope
/// e^{-(11/24) t delta^2}, and spot-checks the pointwise cap
/// |psi(gamma)|^2 <= cos^2(delta) on every sampled residual point.
struct ResidualBoundReport {
    double estimate = 0.0;   // |(2pi)^{-d} int_{R_delta} psi^t|, MC
    double std_error = 0.0;  // combined over real and imaginary parts
    double bound = 0.0;      // e^{-(11/24) t delta^2}
    std::uint64_t samples = 0;
    std::uint64_t residual_hits = 0;
    double max_psi_sq = 0.0;     // max |psi|^2 seen on residual samples
    double pointwise_cap = 0.0;  // cos^2(delta)
    bool bound_holds = false;    // estimate - 3 sigma <= bound
    bool pointwise_holds = false;
};

ResidualBoundReport residual_bound_check(const Parameters& params, long t, double delta, std::uint64_t samples,
                                         std::uint64_t seed);

/// J(d,t,delta) = [int_{-delta}^{delta} e^{-t x^2 / 2} dx]^d together with its
/// closed-form sandwich (2pi/t)^{d/2} (1-e^{-t delta^2 / 2})^{d/2} < J <
/// (2pi/t)^{d/2} (1-e^{-t delta^2})^{d/2}.
struct GaussianBoxBounds {
    double lower = 0.0;
    double value = 0.0;
    double upper = 0.0;
    bool inside() const { return lower < value && value < upper; }
};

GaussianBoxBounds gaussian_box_integral(int d, double t, double delta);

}  // namespace hadwalk::integral
