// Command-line front end: exact counts, verification suites, sweep tables,
// unit-set dumps, integration, and walk simulation, with JSON/CSV/table
// output. Exit codes: 0 ok, 1 verification failure, 2 resource cap, 64 usage.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hadwalk/appendix.hpp"
#include "hadwalk/bounds.hpp"
#include "hadwalk/charfn.hpp"
#include "hadwalk/exact.hpp"
#include "hadwalk/integral.hpp"
#include "hadwalk/kernels.hpp"
#include "hadwalk/mathutil.hpp"
#include "hadwalk/rng.hpp"
#include "hadwalk/unitset.hpp"
#include "hadwalk/walksim.hpp"

using json = nlohmann::ordered_json;
using namespace hadwalk;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitResourceCap = 2;
constexpr int kExitUsage = 64;

struct Range {
    long lo = 0, hi = 0, step = 1;

    std::vector<long> values() const {
        std::vector<long> out;
        for (long v = lo; v <= hi; v += step) out.push_back(v);
        return out;
    }
};

Range parse_range(const std::string& text) {
    Range r;
    char extra;
    if (std::sscanf(text.c_str(), "%ld:%ld:%ld%c", &r.lo, &r.hi, &r.step, &extra) == 3) {
    } else if (std::sscanf(text.c_str(), "%ld:%ld%c", &r.lo, &r.hi, &extra) == 2) {
    } else if (std::sscanf(text.c_str(), "%ld%c", &r.lo, &extra) == 1) {
        r.hi = r.lo;
    } else {
        throw CLI::ValidationError("range", "expected a, a:b, or a:b:s");
    }
    if (r.step <= 0 || r.hi < r.lo) throw CLI::ValidationError("range", "need lo <= hi and step > 0");
    return r;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

/// Writes atomically: a temp file in the same directory, then rename.
void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    const std::string tmp = out_path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open " + tmp);
        os << text;
    }
    std::filesystem::rename(tmp, out_path);
}

std::string format_count_csv(const exact::CountResult& r, double ms) {
    std::ostringstream os;
    os << "n,t,count,prob_num,prob_den,method,wall_time_ms\n";
    os << r.params.n << ',' << r.params.t << ',' << r.matrix_count.get_str() << ',' << r.return_prob.get_num().get_str()
       << ',' << r.return_prob.get_den().get_str() << ',' << exact::to_string(r.method) << ',' << ms << '\n';
    return os.str();
}

json count_to_json(const exact::CountResult& r, double ms) {
    return json{{"n", r.params.n},
                {"t", r.params.t},
                {"count", r.matrix_count.get_str()},
                {"prob_num", r.return_prob.get_num().get_str()},
                {"prob_den", r.return_prob.get_den().get_str()},
                {"method", exact::to_string(r.method)},
                {"wall_time_ms", ms}};
}

std::string format_count_table(const exact::CountResult& r) {
    std::ostringstream os;
    os << "n = " << r.params.n << ", t = " << r.params.t << '\n'
       << "count  = " << r.matrix_count.get_str() << '\n'
       << "prob   = " << r.return_prob.get_num().get_str() << '/' << r.return_prob.get_den().get_str() << " = "
       << r.return_prob.get_d() << '\n'
       << "method = " << exact::to_string(r.method) << '\n';
    return os.str();
}

exact::CountResult run_count(int n, long t, const std::string& method) {
    const auto params = Parameters::make(n, t);
    if (method == "dp") return exact::count_exact_dp(params);
    if (method == "closed") return exact::count_closed_form(params);
    if (method == "brute") return exact::brute_force_count(params);
    // auto: closed forms when they exist, else the DP
    if (n <= 3) return exact::count_closed_form(params);
    return exact::count_exact_dp(params);
}

// ---------------------------------------------------------------------------
// verify suites

struct Verifier {
    int failures = 0;

    void report(const std::string& name, bool ok, const std::string& detail = "") {
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << name;
        if (!detail.empty()) std::cout << ": " << detail;
        std::cout << '\n';
        if (!ok) ++failures;
    }
};

void verify_lambda(Verifier& v, int n) {
    const auto params = Parameters::make(n, 0);
    const auto set = unitset::enumerate_lambda(params);
    const auto table = kernels::IncrementTable::make(n);

    const std::uint64_t lam_expected = std::uint64_t{1} << (2 * params.d - n + 1);
    v.report("lambda size 2^(2d-n+1)", set.size() == lam_expected,
             std::to_string(set.size()) + " vs " + std::to_string(lam_expected));
    const std::uint64_t even_expected = std::uint64_t{1} << pair_count(n - 1);
    v.report("even quarter-set size 2^C(n-1,2)", set.even_quarter_count() == even_expected);

    const auto counts = unitset::psi_on_lambda_multiset(params);
    const std::uint64_t mult = std::uint64_t{1} << (2 * params.d - n - 1);
    v.report("psi multiset: four roots, each 2^(2d-n-1)",
             counts[0] == mult && counts[1] == mult && counts[2] == mult && counts[3] == mult);

    if (n <= 5) {
        std::uint64_t units = 0;
        bool outside = false;
        unitset::QuarterPhasePoint p;
        p.digits.resize(params.d);
        const std::uint64_t total = std::uint64_t{1} << (2 * params.d);
        for (std::uint64_t code = 0; code < total; ++code) {
            std::uint64_t c = code;
            for (int k = params.d - 1; k >= 0; --k, c >>= 2) p.digits[k] = static_cast<std::uint8_t>(c & 3);
            const bool unit = unitset::psi_quarter_exact(table, p).has_value();
            if (unit) {
                ++units;
                outside = outside || !set.contains(p);
            }
        }
        v.report("exhaustive quarter-phase scan matches the construction", units == set.size() && !outside,
                 std::to_string(units) + " unit points");
    }

    // closure under addition mod 2pi, sampled
    if (n <= 5) {
        const auto pts = set.materialize();
        CounterRng rng(1, 0);
        bool closed = true;
        for (int trial = 0; trial < 3000 && closed; ++trial) {
            const auto& a = pts[rng.word(trial * 2) % pts.size()];
            const auto& b = pts[rng.word(trial * 2 + 1) % pts.size()];
            unitset::QuarterPhasePoint s;
            s.digits.resize(params.d);
            for (int k = 0; k < params.d; ++k) s.digits[k] = static_cast<std::uint8_t>((a.digits[k] + b.digits[k]) & 3);
            closed = set.contains(s);
        }
        v.report("closed under addition mod 2pi (sampled)", closed);
    }

    bool recompose = true;
    CounterRng rng(2, 0);
    const auto& masks = set.even_quarter_masks();
    for (int trial = 0; trial < 500 && recompose; ++trial) {
        const unitset::PairGraph g{n, masks[rng.word(trial) % masks.size()]};
        auto x = unitset::PairGraph::empty(n);
        for (const auto& t : unitset::triangle_decompose(g)) x = x ^ unitset::PairGraph::triangle(n, t[0], t[1], t[2]);
        recompose = x == g;
    }
    v.report("triangle decomposition recomposes even graphs", recompose);
}

void verify_charfn(Verifier& v, int n, double delta, std::uint64_t samples, std::uint64_t seed) {
    const auto params = Parameters::make(n, 0);
    charfn::CharFn cf(params);
    CounterRng rng(seed, 11);
    constexpr double pi = std::numbers::pi;

    bool eps_ok = true, re_lb_ok = true;
    for (std::uint64_t s = 0; s < samples; ++s) {
        TorusPoint lam;
        lam.coords.resize(params.d);
        for (int k = 0; k < params.d; ++k) lam.coords[k] = rng.uniform(s * 64 + k, -delta, delta);
        const auto rep = cf.power_real_bounds(lam, delta);
        eps_ok = eps_ok && std::abs(rep.eps1) <= rep.bound_eps1 && std::abs(rep.eps2) <= rep.bound_eps2;
        re_lb_ok = re_lb_ok && rep.psi.real() >= 1.0 - 0.5 * charfn::norm_sq(lam) - 1e-12;
    }
    v.report("taylor window envelopes eps1/eps2", eps_ok);
    v.report("universal lower bound Re(psi) >= 1 - ||l||^2/2", re_lb_ok);

    bool mag_ok = true, conj_ok = true;
    for (std::uint64_t s = 0; s < samples; ++s) {
        TorusPoint lam;
        lam.coords.resize(params.d);
        for (int k = 0; k < params.d; ++k) lam.coords[k] = rng.uniform((samples + s) * 64 + k, -pi, pi);
        const auto val = cf.psi(lam);
        for (int k = 1; k <= n; ++k) mag_ok = mag_ok && std::norm(val) <= cf.magnitude_bound(lam, k) + 1e-12;
        TorusPoint neg = lam;
        for (auto& c : neg.coords) c = -c;
        conj_ok = conj_ok && std::abs(cf.psi(neg) - std::conj(val)) < 1e-13;
    }
    v.report("row magnitude bound dominates |psi|^2", mag_ok);
    v.report("conjugate symmetry", conj_ok);

    if (n <= 5) {
        const auto set = unitset::enumerate_lambda(params);
        const auto pts = set.materialize();
        bool mult_ok = true;
        for (std::size_t i = 0; i < pts.size() && mult_ok; i += 5) {
            TorusPoint lam = pts[i].torus(), gamma, sum;
            gamma.coords.resize(params.d);
            sum.coords.resize(params.d);
            for (int k = 0; k < params.d; ++k) {
                gamma.coords[k] = rng.uniform(i * 64 + k + 777, -pi, pi);
                sum.coords[k] = lam.coords[k] + gamma.coords[k];
            }
            mult_ok = std::abs(cf.psi(sum) - cf.psi(lam) * cf.psi(gamma)) < 1e-12;
        }
        v.report("multiplicativity at unit points", mult_ok);
    }
}

void verify_sandwich(Verifier& v, int n, long t4) {
    const auto exact = exact::count_exact_dp(Parameters::make(n, t4));
    const auto rep = bounds::sandwich(n, t4, exact.return_prob);
    std::size_t valid_lower = 0;
    for (const auto& row : rep.rows) valid_lower += row.lower_valid;
    v.report("sandwich holds across the delta grid", rep.all_hold,
             std::to_string(rep.rows.size()) + " deltas, " + std::to_string(valid_lower) + " with the lower gate");
}

void verify_grid(Verifier& v, int n, long t) {
    const auto exact = exact::count_exact_dp(Parameters::make(n, t));
    const auto est = integral::inversion_exact_grid(Parameters::make(n, t), t);
    const double p = exact.return_prob.get_d();
    const bool ok = std::abs(est.value.real() - p) <= 1e-10 * p + 1e-12 && std::abs(est.value.imag()) < 1e-12;
    std::ostringstream detail;
    detail << "grid " << est.value.real() << " vs exact " << p;
    v.report("inversion grid equals the exact probability", ok, detail.str());
}

void verify_residual(Verifier& v, int n, long t, double delta, std::uint64_t samples, std::uint64_t seed) {
    const auto rep = integral::residual_bound_check(Parameters::make(n, 0), t, delta, samples, seed);
    std::ostringstream detail;
    detail << "estimate " << rep.estimate << " (se " << rep.std_error << ") vs bound " << rep.bound;
    v.report("residual integral under e^{-(11/24) t delta^2}", rep.bound_holds, detail.str());
    v.report("pointwise |psi|^2 <= cos^2(delta) on residual samples", rep.pointwise_holds);
}

void verify_appendix(Verifier& v, std::uint64_t samples, std::uint64_t seed) {
    CounterRng rng(seed, 21);
    constexpr double pi = std::numbers::pi;
    std::uint64_t done = 0;
    bool id_ok = true;
    for (std::uint64_t trial = 0; done < samples; ++trial) {
        const double mag = std::pow(10.0, rng.uniform(trial * 4, -2.0, 2.0));
        const double ang = rng.uniform(trial * 4 + 1, -pi, pi);
        const long t = 1 + static_cast<long>(rng.word(trial * 4 + 2) % 5);
        const auto z = std::polar(mag, ang);
        if (std::abs(z.real()) <= 1e-6) continue;
        const auto zp = cpow_uint(z, 4ull * t);
        if (std::abs(zp.real()) <= 1e-12 * std::abs(zp)) continue;
        id_ok = id_ok && appendix::check_identity_part1({z, t});
        ++done;
    }
    v.report("power identity and upper bound", id_ok, std::to_string(done) + " cases");

    done = 0;
    bool low_ok = true;
    for (std::uint64_t trial = 0; done < samples; ++trial) {
        const long t = 1 + static_cast<long>(rng.word(trial * 4 + 3) % 5);
        const double mag = std::pow(10.0, rng.uniform(trial * 4, -2.0, 2.0));
        const double ang = std::atan(rng.uniform(trial * 4 + 1, -1.0 / (4.0 * t), 1.0 / (4.0 * t)));
        const appendix::PowerBoundCase c{std::polar(mag, ang), t};
        if (!(c.alpha() > 0)) continue;
        low_ok = low_ok && appendix::check_lower_parts(c).all_hold();
        ++done;
    }
    v.report("lower-bound family (alpha > 0)", low_ok, std::to_string(done) + " cases");

    bool ratio_ok = true;
    for (std::uint64_t trial = 0; trial < samples / 10 + 1; ++trial) {
        const std::size_t m = 1 + rng.word(trial * 64) % 20;
        std::vector<double> l(m), a(m), b(m);
        for (std::size_t s = 0; s < m; ++s) {
            l[s] = rng.uniform(trial * 64 + 3 * s + 1, 1e-3, 10.0);
            a[s] = rng.uniform(trial * 64 + 3 * s + 2, 1e-3, 10.0);
            b[s] = rng.uniform(trial * 64 + 3 * s + 3, 0.0, 10.0);
        }
        ratio_ok = ratio_ok && appendix::check_ratio_lemma(l, a, b);
    }
    v.report("weighted ratio lemma", ratio_ok);
}

void verify_moments(Verifier& v, int n, std::uint64_t samples, std::uint64_t seed) {
    CounterRng rng(seed, 31);
    TorusPoint lam;
    lam.coords.resize(pair_count(n));
    for (int k = 0; k < lam.dim(); ++k) lam.coords[k] = rng.uniform(k, -1.0, 1.0);
    const auto rep = walksim::increment_moment_check(n, lam, samples, seed);
    v.report("increment moments match closed forms within 5 se", rep.within_5se);
}

void verify_branching(Verifier& v, long t4) {
    const auto p2 = exact::count_exact_dp(Parameters::make(2, t4)).return_prob;
    const auto p3 = exact::count_exact_dp(Parameters::make(3, t4)).return_prob;
    const auto p4 = exact::count_exact_dp(Parameters::make(4, t4)).return_prob;
    v.report("branching step 4 -> 3", bounds::branching_step_holds(4, p4, p3));
    v.report("branching step 3 -> 2", bounds::branching_step_holds(3, p3, p2));
    const auto n44 = exact::count_exact_dp(Parameters::make(4, 4)).matrix_count;
    v.report("square cap 2^C(n+1,2) at n = 4", n44 <= bounds::branching_cap(4));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"partial Hadamard matrix walk toolkit"};
    app.set_config("--config", "", "key=value config file; command-line flags win");
    app.require_subcommand(1);

    std::string format = "table";
    std::string out_path;
    bool timings = false;
    app.add_option("--format", format, "output format: json, csv, or table")
        ->check(CLI::IsMember({"json", "csv", "table"}));
    app.add_option("--out", out_path, "write output to this path (atomic temp+rename)");
    app.add_flag("--timings", timings, "fill elapsed-time fields (off keeps repeated runs byte-identical)");

    // count
    auto* cmd_count = app.add_subcommand("count", "exact count of orthogonal-row sign matrices")->fallthrough();
    int count_n = 3;
    long count_t = 4;
    std::string count_method = "auto";
    cmd_count->add_option("--n", count_n, "row count")->required();
    cmd_count->add_option("--t", count_t, "column / step count")->required();
    cmd_count->add_option("--method", count_method, "dp, closed, brute, or auto")
        ->check(CLI::IsMember({"auto", "dp", "closed", "brute"}));

    // verify
    auto* cmd_verify = app.add_subcommand("verify", "run a named verification suite")->fallthrough();
    std::string suite = "all";
    int ver_n = 4;
    long ver_t = 8;
    double ver_delta = 0.1;
    std::uint64_t ver_samples = 2000;
    std::uint64_t ver_seed = 1;
    cmd_verify
        ->add_option("--suite", suite, "lambda, charfn, sandwich, grid, residual, appendix, moments, branching, all")
        ->check(CLI::IsMember(
            {"lambda", "charfn", "sandwich", "grid", "residual", "appendix", "moments", "branching", "all"}));
    cmd_verify->add_option("--n", ver_n, "row count");
    cmd_verify->add_option("--t", ver_t, "step count");
    cmd_verify->add_option("--delta", ver_delta, "window half-width");
    cmd_verify->add_option("--samples", ver_samples, "randomized-check sample count");
    cmd_verify->add_option("--seed", ver_seed, "seed");

    // table
    auto* cmd_table = app.add_subcommand("table", "sweep (n, t) and emit exact counts with bounds")->fallthrough();
    std::string table_n = "3", table_t = "4:16:4";
    cmd_table->add_option("--n", table_n, "n or range a:b[:s]");
    cmd_table->add_option("--t", table_t, "t or range a:b[:s]");

    // lambda dump
    auto* cmd_lambda = app.add_subcommand("lambda", "dump the unit-modulus set")->fallthrough();
    int lam_n = 3;
    cmd_lambda->add_option("--n", lam_n, "row count (<= 5)")->required();

    // integrate
    auto* cmd_integrate = app.add_subcommand("integrate", "inversion integral: exact grid, box MC, residual MC")->fallthrough();
    int int_n = 3;
    long int_t = 4;
    std::string int_mode = "grid";
    double int_radius = 0.5, int_delta = 0.5;
    std::uint64_t int_samples = 100000, int_seed = 1;
    cmd_integrate->add_option("--n", int_n)->required();
    cmd_integrate->add_option("--t", int_t)->required();
    cmd_integrate->add_option("--mode", int_mode, "grid, box, or residual")
        ->check(CLI::IsMember({"grid", "box", "residual"}));
    cmd_integrate->add_option("--radius", int_radius, "box half-width (box mode)");
    cmd_integrate->add_option("--delta", int_delta, "excluded-window half-width (residual mode)");
    cmd_integrate->add_option("--samples", int_samples);
    cmd_integrate->add_option("--seed", int_seed);

    // simulate
    auto* cmd_sim = app.add_subcommand("simulate", "Monte Carlo walk return-probability estimate")->fallthrough();
    walksim::SimConfig sim_cfg;
    cmd_sim->add_option("--n", sim_cfg.n)->required();
    cmd_sim->add_option("--t", sim_cfg.t)->required();
    cmd_sim->add_option("--chains", sim_cfg.chains);
    cmd_sim->add_option("--seed", sim_cfg.seed);

    // bounds
    auto* cmd_bounds = app.add_subcommand("bounds", "closed-form envelopes and thresholds")->fallthrough();
    std::string bounds_mode = "sandwich";
    int b_n = 3;
    long b_t4 = 8;
    double b_alpha = 0.1, b_beta = 0.1;
    cmd_bounds->add_option("--mode", bounds_mode, "sandwich, abundance, or existence")
        ->check(CLI::IsMember({"sandwich", "abundance", "existence"}));
    cmd_bounds->add_option("--n", b_n);
    cmd_bounds->add_option("--t4", b_t4, "step count (multiple of 4)");
    cmd_bounds->add_option("--alpha", b_alpha);
    cmd_bounds->add_option("--beta", b_beta);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    const auto start = std::chrono::steady_clock::now();
    auto clock_ms = [&] { return timings ? elapsed_ms(start) : 0.0; };
    try {
        if (*cmd_count) {
            const auto r = run_count(count_n, count_t, count_method);
            const double ms = clock_ms();
            if (format == "json")
                emit(count_to_json(r, ms).dump(2) + "\n", out_path);
            else if (format == "csv")
                emit(format_count_csv(r, ms), out_path);
            else
                emit(format_count_table(r), out_path);
            return kExitOk;
        }

        if (*cmd_verify) {
            Verifier v;
            if (suite == "lambda" || suite == "all") verify_lambda(v, std::min(ver_n, 6));
            if (suite == "charfn" || suite == "all")
                verify_charfn(v, std::min(ver_n, 5), std::min(ver_delta, 0.15), std::min<std::uint64_t>(ver_samples, 5000),
                              ver_seed);
            if (suite == "sandwich" || suite == "all") verify_sandwich(v, std::min(ver_n, 4), ver_t % 4 ? 8 : ver_t);
            if (suite == "grid" || suite == "all") verify_grid(v, std::min(ver_n, 3), std::min(ver_t, 12L));
            if (suite == "residual" || suite == "all")
                verify_residual(v, std::min(ver_n, 4), ver_t, 0.6, std::max<std::uint64_t>(ver_samples, 50000),
                                ver_seed);
            if (suite == "appendix" || suite == "all") verify_appendix(v, ver_samples, ver_seed);
            if (suite == "moments" || suite == "all")
                verify_moments(v, std::min(ver_n, 8), std::max<std::uint64_t>(ver_samples, 100000), ver_seed);
            if (suite == "branching" || suite == "all") verify_branching(v, ver_t % 4 ? 8 : ver_t);
            std::cout << (v.failures == 0 ? "all checks passed\n" : std::to_string(v.failures) + " check(s) failed\n");
            return v.failures == 0 ? kExitOk : kExitVerifyFailed;
        }

        if (*cmd_table) {
            const auto ns = parse_range(table_n).values();
            const auto ts = parse_range(table_t).values();
            json rows = json::array();
            std::ostringstream csv;
            csv << "n,t,delta,L,exactR,U,asym_log2,exact_log2,branching_log2\n";
            for (long n : ns)
                for (long t : ts) {
                    json row{{"n", n}, {"t", t}};
                    csv << n << ',' << t << ',';
                    try {
                        const auto r = run_count(static_cast<int>(n), t, "auto");
                        const double exact_log2 = bounds::log2_of(r.matrix_count);
                        row["count"] = r.matrix_count.get_str();
                        row["exact_log2"] = exact_log2;
                        const double branching_log2 = static_cast<double>(n) * (n + 1) / 2.0;
                        row["branching_log2"] = branching_log2;
                        if (t % 4 == 0 && t > 0 && n >= 3) {
                            const auto sw = bounds::sandwich(static_cast<int>(n), t, r.return_prob);
                            const auto& best = sw.best;
                            row["delta"] = best.delta;
                            row["L"] = best.L;
                            row["exactR"] = best.ratio_R;
                            row["U"] = best.U;
                            row["asym_log2"] = best.asym_log2;
                            csv << best.delta << ',' << best.L << ',' << best.ratio_R << ',' << best.U << ','
                                << best.asym_log2 << ',' << exact_log2 << ',' << branching_log2 << '\n';
                        } else {
                            csv << ",,,,," << exact_log2 << ',' << branching_log2 << '\n';
                        }
                    } catch (const Error& e) {
                        row["error"] = e.what();
                        csv << ",,,,,," << "warn\n";
                        std::cerr << "warning: n=" << n << " t=" << t << ": " << e.what() << '\n';
                    }
                    rows.push_back(row);
                }
            emit(format == "json" ? rows.dump(2) + "\n" : csv.str(), out_path);
            return kExitOk;
        }

        if (*cmd_lambda) {
            emit(unitset::dump_lambda(Parameters::make(lam_n, 0)), out_path);
            return kExitOk;
        }

        if (*cmd_integrate) {
            const auto params = Parameters::make(int_n, int_t);
            integral::IntegralEstimate est;
            json rec{{"n", int_n}, {"t", int_t}};
            if (int_mode == "grid") {
                est = integral::inversion_exact_grid(params, int_t);
                rec["method"] = "exact_grid";
                rec["nodes_or_samples"] = est.samples_or_nodes;
            } else if (int_mode == "box") {
                est = integral::integrate_box_mc(params, int_t, TorusPoint::zero(params.d), int_radius, int_samples,
                                                 int_seed);
                rec["method"] = "monte_carlo_box";
                rec["radius"] = int_radius;
                rec["nodes_or_samples"] = est.samples_or_nodes;
                rec["std_error"] = est.std_error;
                rec["seed"] = int_seed;
            } else {
                const auto rep = integral::residual_bound_check(params, int_t, int_delta, int_samples, int_seed);
                rec["method"] = "monte_carlo_residual";
                rec["delta"] = int_delta;
                rec["value"] = rep.estimate;
                rec["std_error"] = rep.std_error;
                rec["bound"] = rep.bound;
                rec["bound_holds"] = rep.bound_holds;
                rec["nodes_or_samples"] = rep.samples;
                rec["seed"] = int_seed;
                rec["elapsed_ms"] = clock_ms();
                emit(rec.dump(2) + "\n", out_path);
                return kExitOk;
            }
            rec["value_re"] = est.value.real();
            rec["value_im"] = est.value.imag();
            rec["elapsed_ms"] = clock_ms();
            emit(rec.dump(2) + "\n", out_path);
            return kExitOk;
        }

        if (*cmd_sim) {
            const auto res = walksim::simulate_return_prob(sim_cfg);
            json rec{{"n", sim_cfg.n},
                     {"t", sim_cfg.t},
                     {"chains", sim_cfg.chains},
                     {"hits", res.hits},
                     {"estimate", res.estimate},
                     {"stderr", res.std_error},
                     {"seed", sim_cfg.seed},
                     {"elapsed_ms", clock_ms()}};
            emit(rec.dump(2) + "\n", out_path);
            return kExitOk;
        }

        if (*cmd_bounds) {
            json rec;
            if (bounds_mode == "sandwich") {
                const auto exact = exact::count_exact_dp(Parameters::make(b_n, b_t4));
                const auto sw = bounds::sandwich(b_n, b_t4, exact.return_prob);
                const auto& best = sw.best;
                rec = json{{"n", b_n},
                           {"t4", b_t4},
                           {"all_hold", sw.all_hold},
                           {"delta", best.delta},
                           {"L", best.L},
                           {"U", best.U},
                           {"A", best.A},
                           {"exactR", best.ratio_R},
                           {"asym_log2", best.asym_log2},
                           {"branching_cap_log2", bounds::log2_of(best.branching_cap_value)},
                           {"lower_valid", best.lower_valid}};
            } else if (bounds_mode == "abundance") {
                const auto rep = bounds::abundance_threshold(b_n);
                rec = json{{"n", rep.n},
                           {"t_eval", rep.t_eval},
                           {"rhs_log2_at_t", rep.rhs_log2_at_t},
                           {"stationary_t", rep.stationary_t},
                           {"threshold_t", rep.threshold_t},
                           {"monotone_past_stationary", rep.monotone_past_stationary},
                           {"u1_piece_ok", rep.u1_piece_ok}};
            } else {
                const auto rep = bounds::existence_threshold(b_n, b_alpha, b_beta);
                rec = json{{"n", rep.n},
                           {"alpha", rep.alpha},
                           {"beta", rep.beta},
                           {"log2_t", rep.log2_t},
                           {"log2_delta", rep.log2_delta},
                           {"gate_delta", rep.gate_delta},
                           {"gate_cube", rep.gate_cube},
                           {"gate_positivity", rep.gate_positivity},
                           {"evaluable", rep.evaluable},
                           {"lhs_ln", rep.lhs_ln},
                           {"rhs_ln", rep.rhs_ln},
                           {"inequality_holds", rep.inequality_holds},
                           {"verdict", rep.conclusive ? "holds" : "INCONCLUSIVE"}};
            }
            emit(rec.dump(2) + "\n", out_path);
            return kExitOk;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        switch (e.code()) {
            case ErrorCode::CapExceeded:
            case ErrorCode::MemoryBudgetExceeded:
            case ErrorCode::NodeCapExceeded:
            case ErrorCode::BudgetExceeded:
                return kExitResourceCap;
            default:
                return kExitUsage;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
