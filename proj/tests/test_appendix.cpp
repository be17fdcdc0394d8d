#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "hadwalk/appendix.hpp"
#include "hadwalk/mathutil.hpp"
#include "hadwalk/rng.hpp"

using namespace hadwalk;
using namespace hadwalk::appendix;

namespace {

constexpr double kPi = std::numbers::pi;

// polar-form oracle for z^{4t}, independent of the repeated-squaring route
std::complex<double> pow_polar(std::complex<double> z, long t) {
    const double r = std::pow(std::abs(z), 4.0 * t);
    const double a = std::arg(z) * 4.0 * t;
    return {r * std::cos(a), r * std::sin(a)};
}

}  // namespace

TEST_CASE("identity on simple cases") {
    CHECK(check_identity_part1({std::complex<double>{1, 0}, 1}));
    CHECK(check_identity_part1({std::polar(1.0, kPi / 16), 1}));
    CHECK(check_identity_part1({std::complex<double>{2, 0.1}, 2}));
}

TEST_CASE("degenerate and out-of-range cases are rejected") {
    CHECK_THROWS_AS((void)check_identity_part1({std::complex<double>{0, 1}, 1}), Error);
    CHECK_THROWS_AS((void)check_identity_part1({std::complex<double>{1e11, 0}, 5}), Error);
    const PowerBoundCase imaginary_case{std::complex<double>{0, 2}, 1};
    CHECK_THROWS_AS((void)imaginary_case.beta(), Error);
}

TEST_CASE("repeated squaring agrees with the polar oracle") {
    CounterRng rng(2718, 0);
    for (int trial = 0; trial < 1000; ++trial) {
        const double mag = std::pow(10.0, rng.uniform(trial * 4, -2.0, 2.0));
        const double ang = rng.uniform(trial * 4 + 1, -kPi, kPi);
        const long t = 1 + static_cast<long>(rng.word(trial * 4 + 2) % 5);
        const auto z = std::polar(mag, ang);
        const auto a = cpow_uint(z, 4ull * t);
        const auto b = pow_polar(z, t);
        CHECK(std::abs(a - b) <= 1e-9 * std::abs(b) + 1e-300);
    }
}

TEST_CASE("identity part survives a large random sweep") {
    CounterRng rng(112233, 1);
    int done = 0;
    for (std::uint64_t trial = 0; done < 100000; ++trial) {
        const double mag = std::pow(10.0, rng.uniform(trial * 4, -2.0, 2.0));
        const double ang = rng.uniform(trial * 4 + 1, -kPi, kPi);
        const long t = 1 + static_cast<long>(rng.word(trial * 4 + 2) % 5);
        const auto z = std::polar(mag, ang);
        if (std::abs(z.real()) <= 1e-6) continue;
        const PowerBoundCase c{z, t};
        const auto zp = cpow_uint(z, 4ull * t);
        if (std::abs(zp.real()) <= 1e-12 * std::abs(zp)) continue;  // ill-conditioned ratio, skip
        CHECK(check_identity_part1(c));
        ++done;
    }
}

TEST_CASE("lower parts on pinned cases") {
    SUBCASE("real positive z: everything trivially holds") {
        const auto rep = check_lower_parts({std::complex<double>{1.7, 0.0}, 3});
        CHECK(rep.applicable);
        CHECK(rep.all_hold());
        CHECK(rep.beta == 0.0);
    }
    SUBCASE("t=1, z = 1 + 0.05i") {
        const auto rep = check_lower_parts({std::complex<double>{1.0, 0.05}, 1});
        CHECK(rep.alpha == doctest::Approx(1.0 - 6.0 * 0.0025));
        CHECK(rep.applicable);
        CHECK(rep.all_hold());
    }
    SUBCASE("alpha <= 0 reports not-applicable instead of failing") {
        const auto rep = check_lower_parts({std::complex<double>{1.0, 0.9}, 2});
        CHECK_FALSE(rep.applicable);
        CHECK_FALSE(rep.all_hold());
    }
}

TEST_CASE("randomized sweep of the alpha > 0 family") {
    CounterRng rng(445566, 2);
    int done = 0;
    for (std::uint64_t trial = 0; done < 100000; ++trial) {
        const long t = 1 + static_cast<long>(rng.word(trial * 4 + 3) % 5);
        const double mag = std::pow(10.0, rng.uniform(trial * 4, -2.0, 2.0));
        // keep beta well inside the alpha > 0 region: |beta| < 1/(4t)
        const double beta_cap = 1.0 / (4.0 * t);
        const double ang = std::atan(rng.uniform(trial * 4 + 1, -beta_cap, beta_cap));
        const auto z = std::polar(mag, ang);
        const PowerBoundCase c{z, t};
        if (!(c.alpha() > 0)) continue;
        const auto rep = check_lower_parts(c);
        REQUIRE(rep.applicable);
        CHECK(rep.re_positive);
        CHECK(rep.ratio_bound_holds);
        CHECK(rep.lower_bound_holds);
        // sandwich consistency: lower <= Re(z^{4t}) <= upper
        const double upper = std::pow(c.z.real(), 4.0 * t) * std::pow(1.0 + c.beta() * c.beta(), 2.0 * t);
        CHECK(rep.lower <= rep.re_z4t * (1 + 1e-9) + 1e-300);
        CHECK(rep.re_z4t <= upper * (1 + 1e-9) + 1e-300);
        ++done;
    }
}

TEST_CASE("ratio lemma") {
    SUBCASE("all equal") {
        const double l[] = {2.0, 3.0}, a[] = {1.5, 2.5}, b[] = {1.5, 2.5};
        CHECK(check_ratio_lemma(l, a, b));
    }
    SUBCASE("pinned example: ratio 5/3 inside [1,2]") {
        const double l[] = {1.0, 1.0}, a[] = {1.0, 2.0}, b[] = {1.0, 4.0};
        CHECK(check_ratio_lemma(l, a, b));
    }
    SUBCASE("randomized") {
        CounterRng rng(778899, 3);
        for (std::uint64_t trial = 0; trial < 10000; ++trial) {
            const std::size_t m = 1 + rng.word(trial * 64) % 20;
            std::vector<double> l(m), a(m), b(m);
            for (std::size_t s = 0; s < m; ++s) {
                l[s] = rng.uniform(trial * 64 + 3 * s + 1, 1e-3, 10.0);
                a[s] = rng.uniform(trial * 64 + 3 * s + 2, 1e-3, 10.0);
                b[s] = rng.uniform(trial * 64 + 3 * s + 3, 0.0, 10.0);
            }
            CHECK(check_ratio_lemma(l, a, b));
        }
    }
    SUBCASE("input validation") {
        const double l[] = {1.0}, a[] = {0.0}, b[] = {1.0};
        CHECK_THROWS_AS((void)check_ratio_lemma(l, a, b), Error);
        const double l2[] = {-1.0}, a2[] = {1.0};
        CHECK_THROWS_AS((void)check_ratio_lemma(l2, a2, b), Error);
        CHECK_THROWS_AS((void)check_ratio_lemma({}, {}, {}), Error);
    }
}
