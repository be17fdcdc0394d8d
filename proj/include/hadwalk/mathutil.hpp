#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace hadwalk {

/// z^e by repeated squaring.
inline std::complex<double> cpow_uint(std::complex<double> z, std::uint64_t e) {
    std::complex<double> acc{1.0, 0.0};
    while (e) {
        if (e & 1) acc *= z;
        z *= z;
        e >>= 1;
    }
    return acc;
}

/// Compensated (Kahan) accumulator.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

/// log(e^a + e^b) without overflow.
inline double log_add_exp(double a, double b) {
    if (std::isinf(a) && a < 0) return b;
    if (std::isinf(b) && b < 0) return a;
    const double hi = a > b ? a : b;
    const double lo = a > b ? b : a;
    return hi + std::log1p(std::exp(lo - hi));
}

/// log(1 - e^{-x}) for x > 0, accurate for both tiny and large x.
inline double log1m_exp_neg(double x) {
    // for small x, 1 - e^{-x} ~ x; switch at ln 2 per the usual recipe
    return x > 0.6931471805599453 ? std::log1p(-std::exp(-x)) : std::log(-std::expm1(-x));
}

constexpr double kLog2E = 1.4426950408889634;  // log2(e)

}  // namespace hadwalk
