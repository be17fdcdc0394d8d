#include "hadwalk/unitset.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace hadwalk::unitset {

namespace {
constexpr double kHalfPi = std::numbers::pi / 2;
}

double QuarterPhasePoint::coord(int k) const {
    static constexpr double values[4] = {0.0, kHalfPi, std::numbers::pi, -kHalfPi};
    return values[digits[k] & 3];
}

TorusPoint QuarterPhasePoint::torus() const {
    TorusPoint p;
    p.coords.resize(digits.size());
    for (int k = 0; k < dim(); ++k) p.coords[k] = coord(k);
    return p;
}

std::string QuarterPhasePoint::base4_string() const {
    std::string s;
    s.reserve(digits.size());
    for (auto d : digits) s.push_back(static_cast<char>('0' + (d & 3)));
    return s;
}

const char* to_string(ParityClass c) {
    switch (c) {
        case ParityClass::InLambda1: return "lambda1";
        case ParityClass::InLambda2Even: return "lambda2-even";
        case ParityClass::InLambda2Odd: return "lambda2-odd";
        case ParityClass::Composite: return "composite";
    }
    return "?";
}

ParityClass classify(const QuarterPhasePoint& point, int n) {
    if (point.dim() != pair_count(n)) fail(ErrorCode::DimensionMismatch, "digit count != C(n,2)");
    bool half_only = true, quarter_only = true;
    for (auto d : point.digits) {
        if (d != 0 && d != 2) half_only = false;
        if (d != 0 && d != 1) quarter_only = false;
    }
    if (half_only) return ParityClass::InLambda1;
    if (!quarter_only) return ParityClass::Composite;
    PairGraph g{n, 0};
    for (int k = 0; k < point.dim(); ++k)
        if (point.digits[k] == 1) g.edges |= std::uint64_t{1} << k;
    return g.even_degree() ? ParityClass::InLambda2Even : ParityClass::InLambda2Odd;
}

std::pair<std::uint64_t, std::uint64_t> decompose(const QuarterPhasePoint& point) {
    std::uint64_t half = 0, quarter = 0;
    for (int k = 0; k < point.dim(); ++k) {
        if (point.digits[k] & 2) half |= std::uint64_t{1} << k;
        if (point.digits[k] & 1) quarter |= std::uint64_t{1} << k;
    }
    return {half, quarter};
}

QuarterPhasePoint compose(int n, std::uint64_t half_bits, std::uint64_t quarter_bits) {
    const int d = pair_count(n);
    QuarterPhasePoint p;
    p.digits.resize(d);
    for (int k = 0; k < d; ++k)
        p.digits[k] = static_cast<std::uint8_t>((((half_bits >> k) & 1) << 1) | ((quarter_bits >> k) & 1));
    return p;
}

PairGraph PairGraph::empty(int n) { return PairGraph{n, 0}; }

PairGraph PairGraph::triangle(int n, int a, int b, int c) {
    if (a == b || b == c || a == c) fail(ErrorCode::BadInput, "triangle needs three distinct vertices");
    int v[3] = {a, b, c};
    std::sort(v, v + 3);
    if (v[0] < 1 || v[2] > n) fail(ErrorCode::BadInput, "triangle vertex out of range");
    PairGraph g{n, 0};
    g.edges = (std::uint64_t{1} << flatten_pair(n, v[0], v[1])) | (std::uint64_t{1} << flatten_pair(n, v[0], v[2])) |
              (std::uint64_t{1} << flatten_pair(n, v[1], v[2]));
    return g;
}

PairGraph PairGraph::from_edge_list(int n, const std::vector<std::pair<int, int>>& list) {
    PairGraph g{n, 0};
    for (auto [i, j] : list) {
        if (i > j) std::swap(i, j);
        g.edges |= std::uint64_t{1} << flatten_pair(n, i, j);
    }
    return g;
}

bool PairGraph::has_edge(int i, int j) const {
    if (i > j) std::swap(i, j);
    return (edges >> flatten_pair(n, i, j)) & 1;
}

int PairGraph::degree(int v) const {
    int deg = 0;
    for (int u = 1; u <= n; ++u)
        if (u != v && has_edge(std::min(u, v), std::max(u, v))) ++deg;
    return deg;
}

bool PairGraph::even_degree() const {
    for (int v = 1; v <= n; ++v)
        if (degree(v) & 1) return false;
    return true;
}

int PairGraph::edge_count() const { return std::popcount(edges); }

PairGraph PairGraph::operator^(const PairGraph& o) const { return PairGraph{n, edges ^ o.edges}; }

std::vector<std::array<int, 3>> triangle_decompose(const PairGraph& g) {
    for (int v = 1; v <= g.n; ++v)
        if (g.degree(v) & 1) fail(ErrorCode::NotEvenDegree, "vertex of odd degree");

    // Every vertex of a nonempty even-degree graph that touches an edge has
    // degree >= 2, and XOR-ing off a triangle keeps all degrees even while
    // dropping the edge count, so this terminates.
    std::set<std::array<int, 3>> triples;
    PairGraph work = g;
    while (work.edges != 0) {
        int a = 0;
        for (int v = 1; v <= work.n; ++v)
            if (work.degree(v) >= 2) {
                a = v;
                break;
            }
        int nb[2], found = 0;
        for (int u = 1; u <= work.n && found < 2; ++u)
            if (u != a && work.has_edge(std::min(a, u), std::max(a, u))) nb[found++] = u;
        std::array<int, 3> tri{a, nb[0], nb[1]};
        std::sort(tri.begin(), tri.end());
        if (auto it = triples.find(tri); it != triples.end())
            triples.erase(it);  // repeated triangles cancel under XOR
        else
            triples.insert(tri);
        work = work ^ PairGraph::triangle(work.n, tri[0], tri[1], tri[2]);
    }
    return {triples.begin(), triples.end()};
}

std::optional<int> psi_quarter_exact(const kernels::IncrementTable& table, const QuarterPhasePoint& point) {
    if (point.dim() != table.d) fail(ErrorCode::DimensionMismatch, "digit count != table dimension");
    // lambda . m in units of pi/2 is sum_k v_k s_k = sum_k v_k - 2 * sum_{k: s_k=-1} v_k
    // with v_k = digit (mod 4 phase). Split digits into bit planes and use
    // popcounts against each increment's negative-coordinate mask.
    auto [hi, lo] = decompose(point);
    int total = 0;
    for (int k = 0; k < point.dim(); ++k) total += point.digits[k];
    int first = -1;
    for (int m = 0; m < table.count; ++m) {
        const std::uint64_t neg = table.neg_mask[m];
        const int sub = 2 * std::popcount(hi & neg) + std::popcount(lo & neg);
        const int k = ((total - 2 * sub) % 4 + 4) % 4;
        if (m == 0)
            first = k;
        else if (k != first)
            return std::nullopt;
    }
    return first;
}

std::uint64_t LambdaSet::size() const {
    return even_quarter_masks_.size() << params_.d;  // 2^d half-turn choices per even quarter point
}

bool LambdaSet::contains(const QuarterPhasePoint& point) const {
    return psi_quarter_exact(table_, point).has_value();
}

void LambdaSet::require_iterable() const {
    if (params_.n > 6) fail(ErrorCode::CapExceeded, "full Lambda iteration capped at n <= 6");
}

std::vector<QuarterPhasePoint> LambdaSet::materialize() const {
    if (params_.n > 5) fail(ErrorCode::CapExceeded, "Lambda materialization capped at n <= 5");
    std::vector<QuarterPhasePoint> out;
    out.reserve(size());
    for_each([&](QuarterPhasePoint p) { out.push_back(std::move(p)); });
    std::sort(out.begin(), out.end());
    return out;
}

LambdaSet enumerate_lambda(const Parameters& params) {
    if (params.n > 8) fail(ErrorCode::CapExceeded, "Lambda enumeration capped at n <= 8");
    LambdaSet set;
    set.params_ = params;
    set.table_ = kernels::IncrementTable::make(params.n);

    // Even-degree graphs on {1..n}: free choice of the edges within {2..n};
    // the edges at vertex 1 are forced by parity, and vertex 1 ends up even
    // by handshake. Gives all 2^{C(n-1,2)} of them, each exactly once.
    const int n = params.n;
    const int inner_pairs = pair_count(n - 1);
    set.even_quarter_masks_.reserve(std::uint64_t{1} << inner_pairs);
    for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << inner_pairs); ++sub) {
        std::uint64_t edges = 0;
        int kk = 0;
        std::array<int, 33> deg{};
        for (int i = 2; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j, ++kk)
                if ((sub >> kk) & 1) {
                    edges |= std::uint64_t{1} << flatten_pair(n, i, j);
                    ++deg[i];
                    ++deg[j];
                }
        for (int j = 2; j <= n; ++j)
            if (deg[j] & 1) edges |= std::uint64_t{1} << flatten_pair(n, 1, j);
        set.even_quarter_masks_.push_back(edges);
    }
    std::sort(set.even_quarter_masks_.begin(), set.even_quarter_masks_.end());
    return set;
}

std::array<std::uint64_t, 4> psi_on_lambda_multiset(const Parameters& params) {
    const LambdaSet set = enumerate_lambda(params);
    const auto table = kernels::IncrementTable::make(params.n);

    // psi(half + quarter) = psi(half) psi(quarter) with psi(half) = (-1)^{edge
    // parity}; of the 2^d half-turn points, half are even and half odd. So each
    // even quarter point q scatters 2^{d-1} points onto psi(q) and 2^{d-1} onto
    // -psi(q).
    std::array<std::uint64_t, 4> counts{};
    const std::uint64_t half_each = std::uint64_t{1} << (params.d - 1);
    for (std::uint64_t q : set.even_quarter_masks()) {
        auto k = psi_quarter_exact(table, compose(params.n, 0, q));
        if (!k) fail(ErrorCode::BadInput, "even quarter point failed the exact phase test");
        counts[*k & 3] += half_each;
        counts[(*k + 2) & 3] += half_each;
    }
    return counts;
}

QuarterPhasePoint nearest_quarter_point(const TorusPoint& gamma) {
    QuarterPhasePoint q;
    q.digits.resize(gamma.dim());
    for (int k = 0; k < gamma.dim(); ++k) {
        // cell index with offsets in [-pi/4, pi/4)
        const long idx = static_cast<long>(std::floor(gamma.coords[k] / kHalfPi + 0.5));
        q.digits[k] = static_cast<std::uint8_t>(((idx % 4) + 4) % 4);
    }
    return q;
}

RegionDecomposition::Classified RegionDecomposition::classify(const TorusPoint& gamma) const {
    if (gamma.dim() != params.d) fail(ErrorCode::DimensionMismatch, "point dimension != C(n,2)");
    QuarterPhasePoint center = nearest_quarter_point(gamma);
    const auto table = kernels::IncrementTable::make(params.n);
    const bool unit_center = psi_quarter_exact(table, center).has_value();
    if (!unit_center) return {Piece::FullBox, std::move(center)};
    double max_off = 0.0;
    for (int k = 0; k < gamma.dim(); ++k) {
        double off = gamma.coords[k] - std::floor(gamma.coords[k] / kHalfPi + 0.5) * kHalfPi;
        max_off = std::max(max_off, std::abs(off));
    }
    return {max_off <= delta ? Piece::PrimaryBox : Piece::PuncturedShell, std::move(center)};
}

RegionDecomposition residual_region_decomposition(const Parameters& params, double delta) {
    if (!(delta > 0.0 && delta < std::numbers::pi / 4)) fail(ErrorCode::InvalidDelta, "delta must lie in (0, pi/4)");
    RegionDecomposition rd;
    rd.params = params;
    rd.delta = delta;
    const LambdaSet set = enumerate_lambda(params);
    rd.punctured_count = set.size();
    rd.full_count = (std::uint64_t{1} << (2 * params.d)) - rd.punctured_count;
    if (params.n <= 5) {
        rd.punctured_centers = set.materialize();
        const auto table = kernels::IncrementTable::make(params.n);
        QuarterPhasePoint p;
        p.digits.resize(params.d);
        const std::uint64_t total = std::uint64_t{1} << (2 * params.d);
        rd.full_centers.reserve(rd.full_count);
        for (std::uint64_t code = 0; code < total; ++code) {
            std::uint64_t c = code;
            for (int k = params.d - 1; k >= 0; --k, c >>= 2) p.digits[k] = static_cast<std::uint8_t>(c & 3);
            if (!psi_quarter_exact(table, p)) rd.full_centers.push_back(p);
        }
    }
    return rd;
}

std::string dump_lambda(const Parameters& params) {
    if (params.n > 5) fail(ErrorCode::CapExceeded, "Lambda dump capped at n <= 5");
    const auto table = kernels::IncrementTable::make(params.n);
    const auto points = enumerate_lambda(params).materialize();
    static constexpr const char* psi_names[4] = {"+1", "+i", "-1", "-i"};
    std::ostringstream os;
    for (const auto& p : points) {
        const auto k = psi_quarter_exact(table, p);
        os << p.base4_string() << ' ' << to_string(classify(p, params.n)) << ' ' << psi_names[*k & 3] << '\n';
    }
    return os.str();
}

}  // namespace hadwalk::unitset
