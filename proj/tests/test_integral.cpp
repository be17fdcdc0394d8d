#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hadwalk/charfn.hpp"
#include "hadwalk/exact.hpp"
#include "hadwalk/integral.hpp"
#include "hadwalk/mathutil.hpp"

using namespace hadwalk;
using namespace hadwalk::integral;

namespace {

constexpr double kPi = std::numbers::pi;

double exact_prob(int n, long t) { return exact::count_exact_dp(Parameters::make(n, t)).return_prob.get_d(); }

// Simpson quadrature for int_{-delta}^{delta} e^{-t x^2/2} dx
double gauss_1d_simpson(double t, double delta, int panels = 4000) {
    auto f = [&](double x) { return std::exp(-0.5 * t * x * x); };
    const double h = 2 * delta / panels;
    double s = f(-delta) + f(delta);
    for (int i = 1; i < panels; ++i) s += f(-delta + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

}  // namespace

TEST_CASE("exact grid reproduces the pinned values") {
    const auto p3 = Parameters::make(3, 0);
    CHECK(inversion_exact_grid(p3, 0).value.real() == doctest::Approx(1.0));  // psi^0 = 1

    const auto g34 = inversion_exact_grid(p3, 4);
    CHECK(g34.method == Method::ExactGrid);
    CHECK(g34.samples_or_nodes == 9 * 9 * 9);
    CHECK(g34.value.real() == doctest::Approx(0.09375).epsilon(1e-12));

    CHECK(inversion_exact_grid(Parameters::make(2, 0), 2).value.real() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(inversion_exact_grid(p3, 5).value.real()) < 1e-12);
}

TEST_CASE("exact grid equals the exact rationals for n <= 3, t <= 12") {
    for (int n = 2; n <= 3; ++n)
        for (long t = 0; t <= 12; ++t) {
            const auto est = inversion_exact_grid(Parameters::make(n, t), t);
            const double p = exact_prob(n, t);
            CHECK(std::abs(est.value.imag()) < 1e-12);
            CHECK(std::abs(est.value.real() - p) <= 1e-10 * p + 1e-12);
        }
}

TEST_CASE("exact grid at (4,4)") {
    const auto est = inversion_exact_grid(Parameters::make(4, 4), 4);
    CHECK(std::abs(est.value.real() - 768.0 / 65536.0) < 1e-12);
}

TEST_CASE("grid results are reproducible and independent of the worker count") {
    const auto a = inversion_exact_grid(Parameters::make(3, 8), 8);
    const auto b = inversion_exact_grid(Parameters::make(3, 8), 8);
    CHECK(a.value == b.value);
}

TEST_CASE("node cap") {
    GridOptions opts;
    opts.node_cap = 100;
    CHECK_THROWS_AS((void)inversion_exact_grid(Parameters::make(3, 4), 4, opts), Error);
}

TEST_CASE("box MC: radius -> 0 recovers volume times psi(center)^t") {
    const auto p = Parameters::make(3, 0);
    charfn::CharFn cf(p);
    TorusPoint center{std::vector<double>{0.4, -0.2, 0.1}};
    const long t = 6;
    const double r = 1e-5;
    const auto est = integrate_box_mc(p, t, center, r, 20000, 42);
    const double vol = std::pow(2 * r, 3);
    const auto expect = vol * cpow_uint(cf.psi(center), t);
    CHECK(std::abs(est.value - expect) < 1e-3 * vol);
}

TEST_CASE("box MC is deterministic per seed") {
    const auto p = Parameters::make(3, 0);
    const auto a = integrate_box_mc(p, 8, TorusPoint::zero(3), 0.5, 100000, 7);
    const auto b = integrate_box_mc(p, 8, TorusPoint::zero(3), 0.5, 100000, 7);
    CHECK(a.value == b.value);
    CHECK(a.std_error == b.std_error);
    const auto c = integrate_box_mc(p, 8, TorusPoint::zero(3), 0.5, 100000, 8);
    CHECK(a.value != c.value);
}

TEST_CASE("box MC around a unit point factors through psi(center)^t under a shared seed") {
    const auto p = Parameters::make(3, 0);
    charfn::CharFn cf(p);
    TorusPoint lam{std::vector<double>{kPi / 2, kPi / 2, kPi / 2}};  // psi = -i
    const long t = 7;
    const std::uint64_t seed = 99;
    const auto at_lam = integrate_box_mc(p, t, lam, 0.3, 50000, seed);
    const auto at_zero = integrate_box_mc(p, t, TorusPoint::zero(3), 0.3, 50000, seed);
    const auto factor = cpow_uint(cf.psi(lam), t);
    CHECK(std::abs(at_lam.value - factor * at_zero.value) < 1e-10);
}

TEST_CASE("primary/residual split reassembles the full integral (n=3, t=8, delta=0.5)") {
    const auto p = Parameters::make(3, 0);
    const double delta = 0.5;
    const long t = 8;
    const double exact = exact_prob(3, t);

    const auto box = integrate_box_mc(p, t, TorusPoint::zero(3), delta, 400000, 1234);
    const double mult = std::exp2(2 * p.d - p.n + 1);  // 16 unit boxes
    const double inv2pi_d = std::pow(2 * kPi, -p.d);
    const double primary = mult * inv2pi_d * box.value.real();
    const double primary_se = mult * inv2pi_d * box.std_error;

    const auto resid = residual_bound_check(p, t, delta, 400000, 4321);
    CHECK(std::abs(std::abs(exact - primary) - resid.estimate) <= 3.0 * (primary_se + resid.std_error));
}

TEST_CASE("for t not divisible by 4 the residual alone carries the integral") {
    const auto p = Parameters::make(3, 0);
    const auto resid = residual_bound_check(p, 6, 0.5, 200000, 5);
    // P_3^6(0,0) = 0, so the residual magnitude is pure noise around zero
    CHECK(resid.estimate <= 4.0 * resid.std_error);
}

TEST_CASE("residual envelope and pointwise cap hold at (3,8,0.6)") {
    const auto rep = residual_bound_check(Parameters::make(3, 0), 8, 0.6, 200000, 31337);
    CHECK(rep.bound == doctest::Approx(std::exp(-(11.0 / 24.0) * 8 * 0.36)));
    CHECK(rep.bound_holds);
    CHECK(rep.pointwise_holds);
    CHECK(rep.residual_hits > 0);
}

TEST_CASE("odd-class boxes obey |psi|^2 <= 1/2 at delta = pi/4") {
    // at delta = pi/4 the punctured shells vanish, so every residual sample
    // sits in a full (odd) box
    const auto rep = residual_bound_check(Parameters::make(3, 0), 4, kPi / 4, 100000, 9);
    CHECK(rep.max_psi_sq <= 0.5 + 1e-9);
    CHECK(rep.pointwise_cap == doctest::Approx(0.5));
}

TEST_CASE("residual rejects bad deltas; box rejects bad radii") {
    CHECK_THROWS_AS((void)residual_bound_check(Parameters::make(3, 0), 8, 0.9, 100, 1), Error);
    CHECK_THROWS_AS((void)residual_bound_check(Parameters::make(3, 0), 8, 0.0, 100, 1), Error);
    CHECK_THROWS_AS((void)integrate_box_mc(Parameters::make(3, 0), 8, TorusPoint::zero(3), 0.0, 100, 1), Error);
    CHECK_THROWS_AS((void)integrate_box_mc(Parameters::make(3, 0), 8, TorusPoint::zero(3), 4.0, 100, 1), Error);
}

TEST_CASE("gaussian box integral: value, sandwich, and a quadrature oracle") {
    SUBCASE("d=1, t=1, delta=1: erf closed form inside the sandwich") {
        const auto g = gaussian_box_integral(1, 1.0, 1.0);
        CHECK(g.value == doctest::Approx(1.7112487837842973).epsilon(1e-12));
        CHECK(g.value == doctest::Approx(gauss_1d_simpson(1.0, 1.0)).epsilon(1e-9));
        CHECK(g.inside());
    }
    SUBCASE("d=3, t=16, delta=0.5") {
        const auto g = gaussian_box_integral(3, 16.0, 0.5);
        CHECK(g.inside());
        const double q = gauss_1d_simpson(16.0, 0.5);
        CHECK(g.value == doctest::Approx(q * q * q).epsilon(1e-9));
    }
    SUBCASE("large delta limit") {
        const auto g = gaussian_box_integral(2, 4.0, 50.0);
        CHECK(g.value == doctest::Approx(2 * kPi / 4.0).epsilon(1e-12));
    }
    SUBCASE("sandwich across a parameter sweep") {
        for (int d : {1, 2, 5})
            for (double t : {1.0, 4.0, 16.0})
                for (double delta : {0.1, 0.5, 1.0, 2.0}) CHECK(gaussian_box_integral(d, t, delta).inside());
    }
}
