#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "hadwalk/core.hpp"

namespace hadwalk::bounds {

/// Closed-form envelopes for the normalized return probability at step count
/// t4 (a positive multiple of 4), window half-width delta with n*delta in
/// (0,1):
///   U = [1+(nd)^6/9]^{t4/2} [1+(nd)^4/12]^{t4} [1-e^{-t4 d^2}]^{d/2}
///   L = [1+(4/9) t4^2 (nd)^6]^{-1/2} [1-(nd)^4/12]^{t4} [1-e^{-t4 d^2/2}]^{d/2}
/// The lower envelope applies only when t4 (n delta)^3 < 1.
double u_bound(int n, long t4, double delta);

struct LowerBound {
    double value = 0.0;
    bool valid = false;  // t4 (n delta)^3 < 1
};
LowerBound l_bound(int n, long t4, double delta);

/// A(n, t4) = 2^{2d-n+1} (2 pi t4)^{-d/2}; the Gaussian-window normalizer for
/// the return probability at t4 steps.
double a_normalizer(int n, long t4);
double a_normalizer_log2(int n, long t4);

/// e^{-(11/24) t4 delta^2}: the residual-region allowance added around the
/// primary term in the sandwich.
double residual_term(long t4, double delta);

/// Asymptotic matrix count 2^{2d-n+n*t4+1} (2 pi t4)^{-d/2} (count form of
/// A). Log2 value is always finite; the linear value may overflow for large
/// t4, so prefer the log form beyond |log2| ~ 500.
double asymptotic_count_log2(int n, long t4);
double asymptotic_count(int n, long t4);

mpz_class branching_cap(int n);  // 2^{C(n+1,2)}

/// Exact-rational step inequality P_n <= 2^{-(n-1)} P_{n-1} at equal step
/// count (chains to P_n <= 2^{-C(n,2)+C(s,2)} P_s).
bool branching_step_holds(int n, const mpq_class& prob_n, const mpq_class& prob_n_minus_1);

struct BoundsReport {
    int n = 0;
    long t4 = 0;
    double delta = 0.0;
    double U = 0.0;
    double L = 0.0;
    double A = 0.0;
    double ratio_R = 0.0;  // P / A when an exact count is present
    bool ratio_available = false;
    double asym_log2 = 0.0;
    mpz_class branching_cap_value;
    bool lower_valid = false;
};

struct SandwichRow {
    double delta = 0.0;
    double lower = 0.0;  // A*L - residual (meaningful when lower_valid)
    double upper = 0.0;  // A*U + residual
    bool lower_valid = false;
    bool holds = false;
};

struct SandwichReport {
    int n = 0;
    long t4 = 0;
    double exact_prob = 0.0;
    std::vector<SandwichRow> rows;
    std::size_t tightest_row = 0;
    bool all_hold = false;
    BoundsReport best;
};

/// Sweeps a geometric 25-point delta grid over [1e-3, min(pi/4, 0.999/n)]
/// and checks A*L - resid <= P <= A*U + resid at every point (lower side only
/// where the gate t4 (n delta)^3 < 1 passes). Slack 1e-12 absorbs roundoff.
SandwichReport sandwich(int n, long t4, const mpq_class& exact_prob, int grid_points = 25);

double log2_of(const mpz_class& v);  // -inf for 0

struct AbundanceReport {
    int n = 0;
    double t_eval = 0.0;
    double rhs_log2_at_t = 0.0;           // log2 of e^{n^4/sqrt t} + t^{d/2} e^{-(11/24) t^{1/4}}
    double stationary_t = 0.0;            // ((48/11) d)^4
    double threshold_t = 0.0;             // first doubling-grid t with RHS < 1 + 1e-3 (0 if none found)
    bool monotone_past_stationary = true; // RHS decreasing on the scanned grid past stationary_t
    bool u1_piece_ok = false;             // u1(n,t,t^{-3/8}) <= t^{d/2} e^{-(11/24) t^{1/4}}
};

/// Abundance envelope R(n,t) <= e^{n^4/sqrt t} + t^{d/2} e^{-(11/24) t^{1/4}};
/// n >= 3, evaluated in log space at t_eval (default: first power of two
/// above n^8).
AbundanceReport abundance_threshold(int n, std::optional<double> t_eval = std::nullopt);

struct ExistenceReport {
    int n = 0;
    double alpha = 0.0, beta = 0.0;
    double log2_t = 0.0, log2_delta = 0.0;
    bool gate_delta = false;      // delta < 1/n
    bool gate_cube = false;       // t (n delta)^3 < 1
    bool gate_positivity = false; // (11/24) d^2 >= (1/12)(nd)^4 + (2/9)(nd)^6 t
    bool evaluable = false;       // all gates pass
    double lhs_ln = 0.0;          // ln L(n,t,delta)
    double rhs_ln = 0.0;          // ln( e^{-n^{-2a}/4} + A^{-1} e^{-(11/24) n^{2+b}} )
    bool inequality_holds = false;
    bool conclusive = false;      // evaluable && inequality_holds
};

/// Evaluates the existence inequality at the scaling t = n^{12+3b+2a},
/// delta = n^{-5-b-a}, entirely in log space (t can exceed 10^40).
/// Never asserts existence when a gate fails: the report is INCONCLUSIVE.
ExistenceReport existence_threshold(int n, double alpha, double beta);

}  // namespace hadwalk::bounds
