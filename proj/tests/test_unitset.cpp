#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "hadwalk/charfn.hpp"
#include "hadwalk/rng.hpp"
#include "hadwalk/unitset.hpp"

using namespace hadwalk;
using namespace hadwalk::unitset;

namespace {

constexpr double kPi = std::numbers::pi;

QuarterPhasePoint from_code(int d, std::uint64_t code) {
    QuarterPhasePoint p;
    p.digits.resize(d);
    for (int k = d - 1; k >= 0; --k, code >>= 2) p.digits[k] = static_cast<std::uint8_t>(code & 3);
    return p;
}

std::uint64_t count_even_degree_graphs_brute(int n) {
    const int d = pair_count(n);
    std::uint64_t count = 0;
    for (std::uint64_t edges = 0; edges < (std::uint64_t{1} << d); ++edges)
        if (PairGraph{n, edges}.even_degree()) ++count;
    return count;
}

}  // namespace

TEST_CASE("classify") {
    CHECK(classify(QuarterPhasePoint{{0, 0, 0}}, 3) == ParityClass::InLambda1);
    CHECK(classify(QuarterPhasePoint{{1, 1, 1}}, 3) == ParityClass::InLambda2Even);
    CHECK(classify(QuarterPhasePoint{{1, 0, 0}}, 3) == ParityClass::InLambda2Odd);
    CHECK(classify(QuarterPhasePoint{{2, 0, 2}}, 3) == ParityClass::InLambda1);
    CHECK(classify(QuarterPhasePoint{{3, 0, 0}}, 3) == ParityClass::Composite);
    CHECK(classify(QuarterPhasePoint{{1, 2, 0}}, 3) == ParityClass::Composite);
    CHECK_THROWS_AS((void)classify(QuarterPhasePoint{{0, 0}}, 3), Error);
}

TEST_CASE("digit coordinates") {
    QuarterPhasePoint p{{0, 1, 2, 3, 0, 0}};
    CHECK(p.coord(0) == 0.0);
    CHECK(p.coord(1) == doctest::Approx(kPi / 2));
    CHECK(p.coord(2) == doctest::Approx(kPi));
    CHECK(p.coord(3) == doctest::Approx(-kPi / 2));
    CHECK(p.base4_string() == "012300");
}

TEST_CASE("lambda sizes follow the closed forms") {
    for (int n = 3; n <= 8; ++n) {
        const auto params = Parameters::make(n, 0);
        const auto set = enumerate_lambda(params);
        CHECK(set.even_quarter_count() == (std::uint64_t{1} << pair_count(n - 1)));
        CHECK(set.size() == (std::uint64_t{1} << (2 * params.d - n + 1)));
    }
    CHECK_THROWS_AS((void)enumerate_lambda(Parameters::make(9, 0)), Error);
}

TEST_CASE("even quarter masks really are the even-degree graphs (n <= 6 exhaustive)") {
    for (int n = 3; n <= 6; ++n) {
        const auto set = enumerate_lambda(Parameters::make(n, 0));
        CHECK(set.even_quarter_count() == count_even_degree_graphs_brute(n));
        for (std::uint64_t mask : set.even_quarter_masks()) CHECK(PairGraph{n, mask}.even_degree());
    }
}

TEST_CASE("exhaustive quarter-phase scan: unit modulus happens exactly on the constructed set (n <= 5)") {
    for (int n : {3, 4, 5}) {
        const auto params = Parameters::make(n, 0);
        const auto table = kernels::IncrementTable::make(n);
        const auto set = enumerate_lambda(params);
        charfn::CharFn cf(params);
        std::uint64_t units = 0;
        const std::uint64_t total = std::uint64_t{1} << (2 * params.d);
        for (std::uint64_t code = 0; code < total; ++code) {
            const auto p = from_code(params.d, code);
            const auto exact = psi_quarter_exact(table, p);
            CHECK(exact.has_value() == set.contains(p));
            if (exact) {
                ++units;
                // the exact route and the floating route agree
                if (n <= 4 || code % 17 == 0) {
                    const auto v = cf.psi(p.torus());
                    CHECK(std::abs(v - quarter_root(*exact)) < 1e-12);
                }
            }
        }
        CHECK(units == set.size());
    }
}

TEST_CASE("psi multiset on Lambda: four roots, equal multiplicity") {
    for (int n = 3; n <= 6; ++n) {
        const auto params = Parameters::make(n, 0);
        const auto counts = psi_on_lambda_multiset(params);
        const std::uint64_t expected = std::uint64_t{1} << (2 * params.d - n - 1);
        for (int k = 0; k < 4; ++k) CHECK(counts[k] == expected);
    }
    // direct enumeration cross-check for n <= 5
    for (int n : {3, 4, 5}) {
        const auto params = Parameters::make(n, 0);
        const auto table = kernels::IncrementTable::make(n);
        std::array<std::uint64_t, 4> direct{};
        enumerate_lambda(params).for_each([&](const QuarterPhasePoint& p) {
            auto k = psi_quarter_exact(table, p);
            REQUIRE(k.has_value());
            ++direct[*k & 3];
        });
        CHECK(direct == psi_on_lambda_multiset(params));
    }
}

TEST_CASE("all-zero point sits in the +1 bucket") {
    const auto table = kernels::IncrementTable::make(3);
    const auto k = psi_quarter_exact(table, QuarterPhasePoint{{0, 0, 0}});
    REQUIRE(k.has_value());
    CHECK(*k == 0);
}

TEST_CASE("Lambda is closed under addition mod 2pi") {
    for (int n : {3, 4, 5}) {
        const auto params = Parameters::make(n, 0);
        const auto set = enumerate_lambda(params);
        const auto pts = set.materialize();
        CounterRng rng(n, 77);
        for (int trial = 0; trial < 2000; ++trial) {
            const auto& a = pts[rng.word(trial * 2) % pts.size()];
            const auto& b = pts[rng.word(trial * 2 + 1) % pts.size()];
            QuarterPhasePoint sum;
            sum.digits.resize(params.d);
            for (int k = 0; k < params.d; ++k) sum.digits[k] = static_cast<std::uint8_t>((a.digits[k] + b.digits[k]) & 3);
            CHECK(set.contains(sum));
        }
    }
}

TEST_CASE("unique half/quarter decomposition, with the quarter part even") {
    const auto params = Parameters::make(4, 0);
    const auto set = enumerate_lambda(params);
    set.for_each([&](const QuarterPhasePoint& p) {
        const auto [half, quarter] = decompose(p);
        CHECK(compose(params.n, half, quarter) == p);
        CHECK(PairGraph{params.n, quarter}.even_degree());
    });
    // and points whose quarter part has odd degree are never unit modulus
    const auto table = kernels::IncrementTable::make(4);
    CounterRng rng(4242, 0);
    for (int trial = 0; trial < 2000; ++trial) {
        const auto p = from_code(params.d, rng.word(trial));
        const auto [half, quarter] = decompose(p);
        if (!PairGraph{params.n, quarter}.even_degree()) CHECK(!psi_quarter_exact(table, p).has_value());
    }
}

TEST_CASE("triangle graph phase: every increment lands on -pi/2") {
    for (int n = 3; n <= 6; ++n) {
        const auto table = kernels::IncrementTable::make(n);
        const int d = pair_count(n);
        for (int a = 1; a <= n; ++a)
            for (int b = a + 1; b <= n; ++b)
                for (int c = b + 1; c <= n; ++c) {
                    QuarterPhasePoint p;
                    p.digits.assign(d, 0);
                    p.digits[flatten_pair(n, a, b)] = 1;
                    p.digits[flatten_pair(n, a, c)] = 1;
                    p.digits[flatten_pair(n, b, c)] = 1;
                    const auto k = psi_quarter_exact(table, p);
                    REQUIRE(k.has_value());
                    CHECK(*k == 3);  // i^3 = -i = e^{-i pi/2}
                }
    }
}

TEST_CASE("triangle decomposition") {
    SUBCASE("empty graph") { CHECK(triangle_decompose(PairGraph::empty(5)).empty()); }
    SUBCASE("single triangle") {
        const auto tris = triangle_decompose(PairGraph::triangle(5, 1, 2, 3));
        REQUIRE(tris.size() == 1);
        CHECK(tris[0] == std::array<int, 3>{1, 2, 3});
    }
    SUBCASE("odd degree rejected") {
        CHECK_THROWS_AS((void)triangle_decompose(PairGraph::from_edge_list(4, {{1, 2}})), Error);
    }
    SUBCASE("4-cycle: deterministic greedy, XOR verified") {
        const auto g = PairGraph::from_edge_list(5, {{1, 2}, {2, 3}, {3, 4}, {1, 4}});
        const auto tris = triangle_decompose(g);
        REQUIRE(tris.size() == 2);
        // smallest vertex of degree >= 2 is 1; its two smallest neighbors are 2 and 4
        CHECK(tris[0] == std::array<int, 3>{1, 2, 4});
        CHECK(tris[1] == std::array<int, 3>{2, 3, 4});
        PairGraph x = PairGraph::empty(5);
        for (const auto& t : tris) x = x ^ PairGraph::triangle(5, t[0], t[1], t[2]);
        CHECK(x == g);
    }
    SUBCASE("random even graphs recompose (n = 4..8)") {
        for (int n = 4; n <= 8; ++n) {
            const auto set = enumerate_lambda(Parameters::make(n, 0));
            const auto& masks = set.even_quarter_masks();
            CounterRng rng(n, 911);
            for (int trial = 0; trial < 1000; ++trial) {
                const PairGraph g{n, masks[rng.word(trial) % masks.size()]};
                PairGraph x = PairGraph::empty(n);
                for (const auto& t : triangle_decompose(g)) x = x ^ PairGraph::triangle(n, t[0], t[1], t[2]);
                CHECK(x == g);
            }
        }
    }
}

TEST_CASE("residual decomposition: counts and membership vs brute boxes (n = 3)") {
    const auto params = Parameters::make(3, 0);
    const double delta = 0.3;
    const auto rd = residual_region_decomposition(params, delta);
    CHECK(rd.punctured_count == 16);
    CHECK(rd.full_count == 48);
    CHECK(rd.punctured_count + rd.full_count == 64);
    CHECK(rd.punctured_centers.size() == 16);
    CHECK(rd.full_centers.size() == 48);

    const auto lambda_pts = enumerate_lambda(params).materialize();
    CounterRng rng(606, 3);
    int primaries = 0;
    for (int trial = 0; trial < 100000; ++trial) {
        TorusPoint g;
        g.coords.resize(3);
        for (int k = 0; k < 3; ++k) g.coords[k] = rng.uniform(static_cast<std::uint64_t>(trial) * 8 + k, -kPi, kPi);
        // brute membership: inside some B_delta(lambda) box, distances wrapped mod 2pi
        bool inside_any = false;
        for (const auto& lp : lambda_pts) {
            bool inside = true;
            for (int k = 0; k < 3 && inside; ++k) {
                double diff = std::abs(g.coords[k] - lp.coord(k));
                diff = std::min(diff, 2 * kPi - diff);
                inside = diff <= delta;
            }
            inside_any = inside_any || inside;
        }
        const auto cls = rd.classify(g);
        CHECK((cls.piece == RegionDecomposition::Piece::PrimaryBox) == inside_any);
        if (inside_any) ++primaries;
        if (cls.piece != RegionDecomposition::Piece::PrimaryBox) {
            // shell centers are unit points, full-box centers are not
            const auto table = kernels::IncrementTable::make(3);
            const bool unit = psi_quarter_exact(table, cls.center).has_value();
            CHECK((cls.piece == RegionDecomposition::Piece::PuncturedShell) == unit);
        }
    }
    CHECK(primaries > 0);

    CHECK_THROWS_AS((void)residual_region_decomposition(params, 0.0), Error);
    CHECK_THROWS_AS((void)residual_region_decomposition(params, kPi / 4), Error);
}

TEST_CASE("every box center is a quarter-phase point by construction") {
    const auto rd = residual_region_decomposition(Parameters::make(3, 0), 0.2);
    std::set<std::string> seen;
    for (const auto& c : rd.punctured_centers) seen.insert(c.base4_string());
    for (const auto& c : rd.full_centers) seen.insert(c.base4_string());
    CHECK(seen.size() == 64);  // all 4^3 centers, each exactly once
}

TEST_CASE("lambda dump is stable and exact") {
    const auto text = dump_lambda(Parameters::make(3, 0));
    std::istringstream is(text);
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(is, line)) lines.push_back(line);
    REQUIRE(lines.size() == 16);
    CHECK(lines[0] == "000 lambda1 +1");
    CHECK(lines[1] == "002 lambda1 -1");
    CHECK(lines[4] == "111 lambda2-even -i");
    // sorted by digits
    for (std::size_t i = 1; i < lines.size(); ++i) CHECK(lines[i - 1].substr(0, 3) < lines[i].substr(0, 3));
}
