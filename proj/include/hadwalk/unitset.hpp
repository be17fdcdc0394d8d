#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hadwalk/core.hpp"
#include "hadwalk/kernels.hpp"

namespace hadwalk::unitset {

/// A torus point whose coordinates are quarter turns.
/// Digit values: 0 -> 0, 1 -> pi/2, 2 -> pi, 3 -> -pi/2.
struct QuarterPhasePoint {
    std::vector<std::uint8_t> digits;

    int dim() const { return static_cast<int>(digits.size()); }
    double coord(int k) const;
    TorusPoint torus() const;
    std::string base4_string() const;

    auto operator<=>(const QuarterPhasePoint&) const = default;
};

enum class ParityClass {
    InLambda1,      // digits in {0,2}
    InLambda2Even,  // digits in {0,1}, quarter-turn edge graph has all degrees even
    InLambda2Odd,   // digits in {0,1}, some vertex degree odd
    Composite,      // anything else
};

const char* to_string(ParityClass c);

ParityClass classify(const QuarterPhasePoint& point, int n);

/// Split digits coordinate-wise as v = 2a + b with a, b in {0,1}: the unique
/// half-turn + quarter-turn decomposition. Returns (half_bits, quarter_bits)
/// over flat pair indices.
std::pair<std::uint64_t, std::uint64_t> decompose(const QuarterPhasePoint& point);
QuarterPhasePoint compose(int n, std::uint64_t half_bits, std::uint64_t quarter_bits);

/// Graph on vertices {1..n} with one optional edge per unordered pair,
/// packed as a d-bit mask in flat pair order. Supports exactly what the
/// quarter-phase analysis needs: degrees, XOR, triangles.
struct PairGraph {
    int n = 0;
    std::uint64_t edges = 0;

    static PairGraph empty(int n);
    static PairGraph triangle(int n, int a, int b, int c);
    static PairGraph from_edge_list(int n, const std::vector<std::pair<int, int>>& list);

    bool has_edge(int i, int j) const;
    int degree(int v) const;
    bool even_degree() const;
    int edge_count() const;
    PairGraph operator^(const PairGraph& o) const;
    bool operator==(const PairGraph&) const = default;
};

/// Decomposes an even-degree graph into triangles whose XOR reproduces it.
/// Greedy and deterministic: at each step take the smallest vertex of degree
/// >= 2 together with its two smallest neighbors. Throws NotEvenDegree when
/// some vertex degree is odd.
std::vector<std::array<int, 3>> triangle_decompose(const PairGraph& g);

/// Exact phase test: if every increment m gives the same lambda . m (mod 2pi)
/// — equivalently |psi(point)| == 1 — returns k with psi(point) = i^k.
/// Pure integer arithmetic; no floating point involved.
std::optional<int> psi_quarter_exact(const kernels::IncrementTable& table, const QuarterPhasePoint& point);

inline std::complex<double> quarter_root(int k) {
    constexpr std::array<std::complex<double>, 4> roots{
        std::complex<double>{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return roots[k & 3];
}

/// The set of unit-modulus points, represented through its generating
/// factorization: every member is (half-turn point) + (even quarter point).
/// |Lambda| = 2^{2d-n+1}; full iteration is only offered for n <= 6 and
/// materialization for n <= 5, but size/membership work up to the n <= 8 cap.
class LambdaSet {
public:
    const Parameters& params() const { return params_; }
    const std::vector<std::uint64_t>& even_quarter_masks() const { return even_quarter_masks_; }
    std::uint64_t size() const;
    std::uint64_t even_quarter_count() const { return even_quarter_masks_.size(); }

    bool contains(const QuarterPhasePoint& point) const;

    template <class F>
    void for_each(F&& fn) const {
        require_iterable();
        const std::uint64_t half_limit = std::uint64_t{1} << params_.d;
        for (std::uint64_t q : even_quarter_masks_)
            for (std::uint64_t h = 0; h < half_limit; ++h) fn(compose(params_.n, h, q));
    }

    std::vector<QuarterPhasePoint> materialize() const;  // sorted by digits; n <= 5

private:
    friend LambdaSet enumerate_lambda(const Parameters&);
    void require_iterable() const;

    Parameters params_;
    kernels::IncrementTable table_;
    std::vector<std::uint64_t> even_quarter_masks_;  // quarter-turn edge masks with even-degree graphs
};

LambdaSet enumerate_lambda(const Parameters& params);  // CapExceeded for n > 8

/// Multiplicities of the four fourth roots of unity among {psi(l) : l in Lambda},
/// indexed by k of i^k. Each entry must equal 2^{2d-n-1}.
std::array<std::uint64_t, 4> psi_on_lambda_multiset(const Parameters& params);

/// The complement of the union of delta-boxes around unit points, cut along
/// the quarter-turn tiling of B_pi: shells around unit centers plus full
/// boxes around the rest. Box counts total 4^d.
struct RegionDecomposition {
    enum class Piece { PrimaryBox, PuncturedShell, FullBox };
    struct Classified {
        Piece piece;
        QuarterPhasePoint center;
    };

    Parameters params;
    double delta = 0.0;
    std::uint64_t punctured_count = 0;  // = |Lambda|
    std::uint64_t full_count = 0;       // = 4^d - |Lambda|

    // Materialized centers, lexicographic by digits; only for n <= 5.
    std::vector<QuarterPhasePoint> punctured_centers;
    std::vector<QuarterPhasePoint> full_centers;

    /// Assigns gamma in B_pi to exactly one piece. The quarter-turn cells are
    /// half-open on the upper side so the assignment is a true partition.
    Classified classify(const TorusPoint& gamma) const;

    bool in_residual(const TorusPoint& gamma) const { return classify(gamma).piece != Piece::PrimaryBox; }
};

RegionDecomposition residual_region_decomposition(const Parameters& params, double delta);

/// Nearest quarter-phase center of gamma with the half-open cell convention;
/// offsets land in [-pi/4, pi/4).
QuarterPhasePoint nearest_quarter_point(const TorusPoint& gamma);

/// One line per Lambda point: digits as base-4 string, classification tag,
/// exact psi value; lexicographic digit order. n <= 5.
std::string dump_lambda(const Parameters& params);

}  // namespace hadwalk::unitset
