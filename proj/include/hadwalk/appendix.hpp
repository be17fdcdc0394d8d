#pragma once

#include <complex>
#include <cstdint>
#include <span>

#include "hadwalk/core.hpp"

namespace hadwalk::appendix {

/// A (z, t) pair for the power-4t inequalities, with the two derived
/// quantities beta = Im(z)/Re(z) and alpha = 1 - C(4t,2) beta^2 that gate
/// the lower-bound family.
struct PowerBoundCase {
    std::complex<double> z;
    long t = 1;  // the power checked is 4t

    double beta() const;   // DegenerateCase when Re(z) == 0
    double alpha() const;
};

/// Modulus identity behind the upper bound:
///   {Re(z^{4t}) (1 + [Im(z^{4t})/Re(z^{4t})]^2)^{1/2}}^2
///     = {(1 + beta^2)^{2t} Re(z)^{4t}}^2   (both sides are |z|^{8t})
/// plus the derived inequality Re(z^{4t}) <= Re(z)^{4t} (1+beta^2)^{2t}.
/// Throws DegenerateCase when either real part vanishes, BadInput when
/// |z|^{4t} leaves [1e-200, 1e200].
bool check_identity_part1(const PowerBoundCase& c, double rel_tol = 1e-9);

/// The alpha > 0 family: Re(z^{4t}) > 0, the ratio transfer
///   [Im(z^{4t})/Re(z^{4t})]^2 <= [4t/alpha]^2 beta^2,
/// and the lower bound
///   Re(z^{4t}) >= Re(z)^{4t} (1+beta^2)^{2t} (1 + [4t/alpha]^2 beta^2)^{-1/2}.
/// alpha <= 0 is not an error: the report comes back NOT_APPLICABLE.
struct LowerPartsReport {
    bool applicable = false;  // alpha > 0
    double alpha = 0.0;
    double beta = 0.0;
    double re_z4t = 0.0;
    double lower = 0.0;
    bool re_positive = false;
    bool ratio_bound_holds = false;
    bool lower_bound_holds = false;
    bool all_hold() const { return applicable && re_positive && ratio_bound_holds && lower_bound_holds; }
};

LowerPartsReport check_lower_parts(const PowerBoundCase& c);

/// min_s B_s/A_s <= sum lambda_s B_s / sum lambda_s A_s <= max_s B_s/A_s
/// for positive weights lambda and positive A (A > 0 is required here to keep
/// every ratio defined; the statement itself allows A >= 0).
bool check_ratio_lemma(std::span<const double> lambdas, std::span<const double> As, std::span<const double> Bs);

}  // namespace hadwalk::appendix
