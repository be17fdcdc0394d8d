#include "hadwalk/bounds.hpp"

#include <cmath>
#include <numbers>

#include "hadwalk/mathutil.hpp"

namespace hadwalk::bounds {

namespace {

constexpr double kPi = std::numbers::pi;

void check_t4_delta(int n, long t4, double delta) {
    if (t4 <= 0 || t4 % 4 != 0) fail(ErrorCode::BadStepCount, "step count must be a positive multiple of 4");
    if (!(n * delta > 0.0 && n * delta < 1.0)) fail(ErrorCode::BadDelta, "need n*delta in (0,1)");
}

}  // namespace

double u_bound(int n, long t4, double delta) {
    check_t4_delta(n, t4, delta);
    const double nd = n * delta;
    const double nd4 = nd * nd * nd * nd;
    const double nd6 = nd4 * nd * nd;
    const double td2 = static_cast<double>(t4) * delta * delta;
    const double d = pair_count(n);
    return std::pow(1.0 + nd6 / 9.0, t4 / 2.0) * std::pow(1.0 + nd4 / 12.0, static_cast<double>(t4)) *
           std::pow(-std::expm1(-td2), d / 2.0);
}

LowerBound l_bound(int n, long t4, double delta) {
    check_t4_delta(n, t4, delta);
    const double nd = n * delta;
    const double nd3 = nd * nd * nd;
    const double nd4 = nd3 * nd;
    const double nd6 = nd3 * nd3;
    const double td2 = static_cast<double>(t4) * delta * delta;
    const double d = pair_count(n);
    LowerBound lb;
    lb.value = std::pow(1.0 + (4.0 / 9.0) * static_cast<double>(t4) * static_cast<double>(t4) * nd6, -0.5) *
               std::pow(1.0 - nd4 / 12.0, static_cast<double>(t4)) * std::pow(-std::expm1(-td2 / 2.0), d / 2.0);
    lb.valid = static_cast<double>(t4) * nd3 < 1.0;
    return lb;
}

double a_normalizer_log2(int n, long t4) {
    const double d = pair_count(n);
    return (2.0 * d - n + 1.0) - (d / 2.0) * std::log2(2.0 * kPi * static_cast<double>(t4));
}

double a_normalizer(int n, long t4) { return std::exp2(a_normalizer_log2(n, t4)); }

double residual_term(long t4, double delta) {
    return std::exp(-(11.0 / 24.0) * static_cast<double>(t4) * delta * delta);
}

double asymptotic_count_log2(int n, long t4) {
    if (t4 <= 0 || t4 % 4 != 0) fail(ErrorCode::BadStepCount, "step count must be a positive multiple of 4");
    return static_cast<double>(n) * static_cast<double>(t4) + a_normalizer_log2(n, t4);
}

double asymptotic_count(int n, long t4) { return std::exp2(asymptotic_count_log2(n, t4)); }

mpz_class branching_cap(int n) {
    mpz_class cap = 1;
    cap <<= static_cast<unsigned long>(n) * (n + 1) / 2;
    return cap;
}

bool branching_step_holds(int n, const mpq_class& prob_n, const mpq_class& prob_n_minus_1) {
    // exact rational comparison: P_n * 2^{n-1} <= P_{n-1}
    mpq_class lhs = prob_n;
    mpz_class shift = 1;
    shift <<= n - 1;
    lhs *= shift;
    return lhs <= prob_n_minus_1;
}

SandwichReport sandwich(int n, long t4, const mpq_class& exact_prob, int grid_points) {
    if (n < 3) fail(ErrorCode::BadInput, "the window estimates behind the sandwich require n >= 3");
    if (t4 <= 0 || t4 % 4 != 0) fail(ErrorCode::BadStepCount, "step count must be a positive multiple of 4");
    if (grid_points < 2) fail(ErrorCode::BadInput, "need at least two grid points");

    SandwichReport rep;
    rep.n = n;
    rep.t4 = t4;
    rep.exact_prob = exact_prob.get_d();

    const double A = a_normalizer(n, t4);
    const double lo = 1e-3;
    const double hi = std::min(kPi / 4.0, 0.999 / n);
    const double ratio = std::pow(hi / lo, 1.0 / (grid_points - 1));

    constexpr double slack = 1e-12;
    double best_gap = std::numeric_limits<double>::infinity();
    rep.all_hold = true;
    double delta = lo;
    for (int g = 0; g < grid_points; ++g, delta *= ratio) {
        SandwichRow row;
        row.delta = std::min(delta, hi);
        const double U = u_bound(n, t4, row.delta);
        const LowerBound L = l_bound(n, t4, row.delta);
        const double resid = residual_term(t4, row.delta);
        row.upper = A * U + resid;
        row.lower = A * L.value - resid;
        row.lower_valid = L.valid;
        row.holds = rep.exact_prob <= row.upper + slack &&
                    (!row.lower_valid || rep.exact_prob >= row.lower - slack);
        rep.all_hold = rep.all_hold && row.holds;
        const double gap = row.upper - (row.lower_valid ? std::max(row.lower, 0.0) : 0.0);
        if (gap < best_gap) {
            best_gap = gap;
            rep.tightest_row = rep.rows.size();
            rep.best = BoundsReport{n,
                                    t4,
                                    row.delta,
                                    U,
                                    L.value,
                                    A,
                                    rep.exact_prob / A,
                                    true,
                                    asymptotic_count_log2(n, t4),
                                    branching_cap(n),
                                    L.valid};
        }
        rep.rows.push_back(row);
    }
    return rep;
}

double log2_of(const mpz_class& v) {
    if (v == 0) return -std::numeric_limits<double>::infinity();
    signed long exp2v;
    const double mant = mpz_get_d_2exp(&exp2v, v.get_mpz_t());
    return std::log2(std::abs(mant)) + static_cast<double>(exp2v);
}

AbundanceReport abundance_threshold(int n, std::optional<double> t_eval) {
    if (n < 3) fail(ErrorCode::BadInput, "abundance envelope requires n >= 3");
    AbundanceReport rep;
    rep.n = n;
    const double d = pair_count(n);

    auto rhs_ln = [&](double t) {
        const double term1 = std::pow(n, 4) / std::sqrt(t);                       // ln e^{n^4/sqrt t}
        const double term2 = (d / 2.0) * std::log(t) - (11.0 / 24.0) * std::pow(t, 0.25);
        return log_add_exp(term1, term2);
    };

    const double n8 = std::pow(n, 8);
    rep.t_eval = t_eval.value_or(std::exp2(std::ceil(std::log2(n8)) + 1.0));
    if (!t_eval && rep.t_eval <= n8) rep.t_eval *= 2.0;
    rep.rhs_log2_at_t = rhs_ln(rep.t_eval) * kLog2E;
    rep.stationary_t = std::pow((48.0 / 11.0) * d, 4);

    // doubling scan: threshold crossing and monotonicity past the stationary point
    const double target = std::log(1.0 + 1e-3);
    double prev = std::numeric_limits<double>::infinity();
    rep.threshold_t = 0.0;
    for (double t = std::max(2.0, std::exp2(std::ceil(std::log2(std::max(n8, 2.0))))); t <= 1e30; t *= 2.0) {
        const double v = rhs_ln(t);
        if (t > rep.stationary_t && v > prev + 1e-12) rep.monotone_past_stationary = false;
        if (t > rep.stationary_t) prev = v;
        if (rep.threshold_t == 0.0 && v < target) {
            rep.threshold_t = t;
            break;
        }
    }

    // u1(n,t,t^{-3/8}) = A^{-1} e^{-(11/24) t^{1/4}} <= t^{d/2} e^{-(11/24) t^{1/4}}
    // reduces to -log2 A <= (d/2) log2 t, i.e. (d/2) log2(2 pi) <= 2d-n+1,
    // with no t dependence left.
    rep.u1_piece_ok = (d / 2.0) * std::log2(2.0 * kPi) <= (2.0 * d - n + 1.0) + 1e-12;
    return rep;
}

ExistenceReport existence_threshold(int n, double alpha, double beta) {
    if (!(alpha > 0.0) || !(beta > 0.0)) fail(ErrorCode::BadAlphaBeta, "alpha and beta must be positive");
    if (n < 2) fail(ErrorCode::BadInput, "n must be >= 2");

    ExistenceReport rep;
    rep.n = n;
    rep.alpha = alpha;
    rep.beta = beta;

    const double ln_n = std::log(static_cast<double>(n));
    const double d = pair_count(n);
    const double ln_t = (12.0 + 3.0 * beta + 2.0 * alpha) * ln_n;
    const double ln_delta = -(5.0 + beta + alpha) * ln_n;
    rep.log2_t = ln_t * kLog2E;
    rep.log2_delta = ln_delta * kLog2E;

    const double ln_nd = ln_n + ln_delta;          // ln(n delta)
    rep.gate_delta = ln_delta < -ln_n;             // delta < 1/n
    rep.gate_cube = ln_t + 3.0 * ln_nd < 0.0;      // t (n delta)^3 < 1

    // positivity of the leading window term:
    // (11/24) delta^2 >= (1/12)(nd)^4 + (2/9)(nd)^6 t
    const double lhs_pos = std::log(11.0 / 24.0) + 2.0 * ln_delta;
    const double rhs_pos = log_add_exp(std::log(1.0 / 12.0) + 4.0 * ln_nd, std::log(2.0 / 9.0) + 6.0 * ln_nd + ln_t);
    rep.gate_positivity = lhs_pos >= rhs_pos;
    rep.evaluable = rep.gate_delta && rep.gate_cube && rep.gate_positivity;

    // ln L(n,t,delta), piece by piece in log space
    const double t2_nd6 = std::exp(2.0 * ln_t + 6.0 * ln_nd);  // t^2 (nd)^6 = n^{-2 alpha}
    const double t_d2 = std::exp(ln_t + 2.0 * ln_delta);       // t delta^2 = n^{2+beta}
    const double nd4 = std::exp(4.0 * ln_nd);
    rep.lhs_ln = -0.5 * std::log1p((4.0 / 9.0) * t2_nd6) + std::exp(ln_t) * std::log1p(-nd4 / 12.0) +
                 (d / 2.0) * log1m_exp_neg(t_d2 / 2.0);

    const double ln_A = (2.0 * d - n + 1.0) * std::log(2.0) - (d / 2.0) * (std::log(2.0 * kPi) + ln_t);
    const double u1_ln = -ln_A - (11.0 / 24.0) * std::pow(static_cast<double>(n), 2.0 + beta);
    rep.rhs_ln = log_add_exp(-0.25 * std::pow(static_cast<double>(n), -2.0 * alpha), u1_ln);
    rep.inequality_holds = rep.lhs_ln > rep.rhs_ln;
    rep.conclusive = rep.evaluable && rep.inequality_holds;
    return rep;
}

}  // namespace hadwalk::bounds
