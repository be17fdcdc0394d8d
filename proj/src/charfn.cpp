#include "hadwalk/charfn.hpp"

#include <cmath>
#include <numbers>

namespace hadwalk::charfn {

CharFn::CharFn(const Parameters& params) : params_(params), table_(kernels::IncrementTable::make(params.n)) {}

void CharFn::check_dim(const TorusPoint& lambda) const {
    if (lambda.dim() != params_.d) fail(ErrorCode::DimensionMismatch, "torus point dimension != C(n,2)");
}

std::complex<double> CharFn::psi(const double* lambda, Workspace& ws) const {
    const int count = table_.count;
    ws.theta.resize(count);
    kernels::active_backend().signed_dots(table_, lambda, ws.theta.data());
    double re = 0.0, im = 0.0;
    for (int m = 0; m < count; ++m) {
        re += std::cos(ws.theta[m]);
        im += std::sin(ws.theta[m]);
    }
    const double inv = 1.0 / count;
    return {re * inv, im * inv};
}

std::complex<double> CharFn::psi(const TorusPoint& lambda) const {
    check_dim(lambda);
    Workspace ws;
    return psi(lambda.coords.data(), ws);
}

double CharFn::magnitude_bound(const TorusPoint& lambda, int k) const {
    check_dim(lambda);
    if (k < 1 || k > params_.n) fail(ErrorCode::BadRowIndex, "row index must be in [1, n]");
    double prod = 1.0;
    for (int i = 1; i <= params_.n; ++i) {
        if (i == k) continue;
        const int flat = i < k ? flatten_pair(params_.n, i, k) : flatten_pair(params_.n, k, i);
        prod *= std::cos(2.0 * lambda.coords[flat]);
    }
    return 0.5 + 0.5 * prod;
}

EstimateReport CharFn::power_real_bounds(const TorusPoint& lambda, double delta) const {
    check_dim(lambda);
    if (!(delta > 0.0 && delta < std::numbers::pi / 4)) fail(ErrorCode::InvalidDelta, "delta must lie in (0, pi/4)");
    if (params_.n < 3) fail(ErrorCode::BadInput, "estimate window requires n >= 3");
    for (double c : lambda.coords)
        if (std::abs(c) > delta) fail(ErrorCode::OutOfRegion, "point lies outside B_delta");

    EstimateReport rep;
    rep.lambda = lambda;
    rep.psi = psi(lambda);
    rep.re_gauss = std::exp(-0.5 * norm_sq(lambda));
    rep.eps1 = rep.psi.real() / rep.re_gauss - 1.0;
    rep.im_cubic = -triple_cycle_sum(params_.n, lambda);
    rep.eps2 = rep.psi.imag() - rep.im_cubic;
    const double nd = params_.n * delta;
    const double nd4_12 = nd * nd * nd * nd / 12.0;
    rep.bound_eps1 = nd4_12 * std::exp(0.5 * nd * nd);
    rep.bound_eps2 = nd4_12;
    return rep;
}

double triple_cycle_sum(int n, const TorusPoint& lambda) {
    double s = 0.0;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int k = j + 1; k <= n; ++k)
                s += lambda.coords[flatten_pair(n, i, j)] * lambda.coords[flatten_pair(n, j, k)] *
                     lambda.coords[flatten_pair(n, i, k)];
    return s;
}

double norm_sq(const TorusPoint& lambda) {
    double s = 0.0;
    for (double c : lambda.coords) s += c * c;
    return s;
}

}  // namespace hadwalk::charfn
