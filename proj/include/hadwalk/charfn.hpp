#pragma once

#include <complex>
#include <vector>

#include "hadwalk/core.hpp"
#include "hadwalk/kernels.hpp"

namespace hadwalk::charfn {

/// Taylor-window report for a point lambda of B_delta: the exact psi value,
/// the Gaussian surrogate of its real part, the cubic surrogate of its
/// imaginary part, and the two remainder terms with their envelopes
///   |eps1| <= (1/12)(n delta)^4 e^{n^2 delta^2 / 2},
///   |eps2| <= (1/12)(n delta)^4.
struct EstimateReport {
    TorusPoint lambda;
    std::complex<double> psi;
    double re_gauss = 0.0;   // e^{-||lambda||^2 / 2}
    double eps1 = 0.0;       // Re(psi)/re_gauss - 1
    double im_cubic = 0.0;   // -sum_{i<j<k} l_{ij} l_{jk} l_{ki}
    double eps2 = 0.0;       // Im(psi) - im_cubic
    double bound_eps1 = 0.0;
    double bound_eps2 = 0.0;
};

/// Evaluator for psi(lambda) = 2^{-(n-1)} sum_{m in M} e^{i lambda . m}
/// and the closed-form envelopes around it. Immutable after construction;
/// safe to share across threads.
class CharFn {
public:
    explicit CharFn(const Parameters& params);

    const Parameters& params() const { return params_; }
    const kernels::IncrementTable& table() const { return table_; }

    /// Scratch for the hot path; reuse one per thread to avoid reallocation.
    struct Workspace {
        std::vector<double> theta;
    };

    std::complex<double> psi(const double* lambda, Workspace& ws) const;
    std::complex<double> psi(const TorusPoint& lambda) const;

    /// 1/2 + 1/2 prod_{i != k} cos(2 lambda_{i,k}); an upper bound for |psi|^2
    /// valid on all of B_pi. k is a 1-based row index.
    double magnitude_bound(const TorusPoint& lambda, int k) const;

    /// Requires lambda in B_delta, 0 < delta < pi/4, n >= 3.
    EstimateReport power_real_bounds(const TorusPoint& lambda, double delta) const;

private:
    void check_dim(const TorusPoint& lambda) const;

    Parameters params_;
    kernels::IncrementTable table_;
};

/// Sum over triples of lambda_{ij} lambda_{jk} lambda_{ik}.
double triple_cycle_sum(int n, const TorusPoint& lambda);

double norm_sq(const TorusPoint& lambda);

}  // namespace hadwalk::charfn
