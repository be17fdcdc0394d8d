#include "hadwalk/appendix.hpp"

#include <algorithm>
#include <cmath>

#include "hadwalk/mathutil.hpp"

namespace hadwalk::appendix {

namespace {

double binom_4t_2(long t) {
    const double k = 4.0 * static_cast<double>(t);
    return k * (k - 1.0) / 2.0;
}

void check_power_range(const PowerBoundCase& c) {
    const double mag = std::abs(c.z);
    if (mag == 0.0) fail(ErrorCode::DegenerateCase, "z must be nonzero");
    const double log10_pow = 4.0 * static_cast<double>(c.t) * std::log10(mag);
    if (std::abs(log10_pow) > 200.0)
        fail(ErrorCode::BadInput, "|z|^{4t} outside [1e-200, 1e200]; rejected to keep overflow out of the checks");
}

}  // namespace

double PowerBoundCase::beta() const {
    if (z.real() == 0.0) fail(ErrorCode::DegenerateCase, "beta undefined: Re(z) == 0");
    return z.imag() / z.real();
}

double PowerBoundCase::alpha() const {
    const double b = beta();
    return 1.0 - binom_4t_2(t) * b * b;
}

bool check_identity_part1(const PowerBoundCase& c, double rel_tol) {
    check_power_range(c);
    const double b = c.beta();
    const std::uint64_t power = 4ull * static_cast<std::uint64_t>(c.t);
    const std::complex<double> zp = cpow_uint(c.z, power);
    if (zp.real() == 0.0) fail(ErrorCode::DegenerateCase, "Re(z^{4t}) == 0");

    const double ratio = zp.imag() / zp.real();
    const double lhs_root = zp.real() * std::sqrt(1.0 + ratio * ratio);
    const double lhs = lhs_root * lhs_root;

    const double re_pow = std::pow(c.z.real(), static_cast<double>(power));
    const double rhs_root = std::pow(1.0 + b * b, 2.0 * static_cast<double>(c.t)) * re_pow;
    const double rhs = rhs_root * rhs_root;

    const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
    const bool identity = std::abs(lhs - rhs) <= rel_tol * scale;

    // Re(z^{4t}) <= Re(z)^{4t} (1+beta^2)^{2t}
    const bool upper = zp.real() <= rhs_root * (1.0 + rel_tol) + 1e-300;
    return identity && upper;
}

LowerPartsReport check_lower_parts(const PowerBoundCase& c) {
    check_power_range(c);
    LowerPartsReport rep;
    rep.beta = c.beta();
    rep.alpha = c.alpha();
    if (!(rep.alpha > 0.0)) return rep;  // NOT_APPLICABLE
    rep.applicable = true;

    const std::uint64_t power = 4ull * static_cast<std::uint64_t>(c.t);
    const std::complex<double> zp = cpow_uint(c.z, power);
    rep.re_z4t = zp.real();
    rep.re_positive = zp.real() > 0.0;

    const double b2 = rep.beta * rep.beta;
    const double transfer = std::pow(4.0 * static_cast<double>(c.t) / rep.alpha, 2) * b2;
    constexpr double slack = 1e-9;
    if (rep.re_positive) {
        const double ratio2 = (zp.imag() / zp.real()) * (zp.imag() / zp.real());
        rep.ratio_bound_holds = ratio2 <= transfer * (1.0 + slack) + 1e-300;
    }
    const double re_pow = std::pow(c.z.real(), static_cast<double>(power));
    rep.lower = re_pow * std::pow(1.0 + b2, 2.0 * static_cast<double>(c.t)) / std::sqrt(1.0 + transfer);
    rep.lower_bound_holds = zp.real() >= rep.lower * (1.0 - slack) - 1e-300;
    return rep;
}

bool check_ratio_lemma(std::span<const double> lambdas, std::span<const double> As, std::span<const double> Bs) {
    const std::size_t m = lambdas.size();
    if (m == 0 || As.size() != m || Bs.size() != m) fail(ErrorCode::BadInput, "need equal-length nonempty inputs");
    double num = 0.0, den = 0.0;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t s = 0; s < m; ++s) {
        if (!(lambdas[s] > 0.0)) fail(ErrorCode::BadInput, "weights must be positive");
        if (!(As[s] > 0.0)) fail(ErrorCode::BadInput, "A terms must be positive");
        if (Bs[s] < 0.0) fail(ErrorCode::BadInput, "B terms must be non-negative");
        num += lambdas[s] * Bs[s];
        den += lambdas[s] * As[s];
        const double r = Bs[s] / As[s];
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    const double ratio = num / den;
    constexpr double slack = 1e-12;
    return ratio >= lo - slack * std::max(1.0, std::abs(lo)) && ratio <= hi + slack * std::max(1.0, std::abs(hi));
}

}  // namespace hadwalk::appendix
