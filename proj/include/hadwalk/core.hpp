#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hadwalk {

enum class ErrorCode {
    CapExceeded,
    MemoryBudgetExceeded,
    DimensionMismatch,
    OutOfRegion,
    InvalidDelta,
    BadRowIndex,
    NodeCapExceeded,
    InvalidRadius,
    BadStepCount,
    BadDelta,
    NoExactCount,
    UnsupportedN,
    UnsupportedT,
    NotEvenDegree,
    BudgetExceeded,
    BadAlphaBeta,
    BadInput,
    DegenerateCase,
    AlphaNotPositive,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

/// Walk parameters: n rows, t steps (columns), d = C(n,2) pair coordinates.
struct Parameters {
    int n = 2;
    long t = 0;
    int d = 1;

    static Parameters make(int n, long t);
};

inline int pair_count(int n) { return n * (n - 1) / 2; }

/// Unordered pair {i,j}, 1 <= i < j <= n, with its flat coordinate index.
/// The flat index is lexicographic on (i,j) and fixed project-wide:
/// {1,2} -> 0, {1,3} -> 1, ..., {n-1,n} -> d-1.
struct PairIndex {
    int i = 1;
    int j = 2;
    int flat = 0;
};

int flatten_pair(int n, int i, int j);
PairIndex unflatten_pair(int n, int flat);

/// A vector in V_n = {-1,+1}^n. Bit k set means coordinate k+1 equals -1.
class SignVector {
public:
    SignVector(std::uint32_t bits, int n);

    int dim() const { return n_; }
    std::uint32_t bits() const { return bits_; }
    int coord(int k) const { return (bits_ >> k) & 1u ? -1 : +1; }  // k is 0-based
    SignVector negated() const { return SignVector(~bits_ & mask(), n_); }

    bool operator==(const SignVector&) const = default;

private:
    std::uint32_t mask() const { return n_ == 32 ? ~0u : (1u << n_) - 1u; }
    std::uint32_t bits_;
    int n_;
};

/// One walk increment Z(y) in {-1,+1}^d: all pairwise products y_i*y_j.
struct IncrementVector {
    std::vector<std::int8_t> coords;

    int dim() const { return static_cast<int>(coords.size()); }
    bool operator==(const IncrementVector&) const = default;
};

/// A walk position in Z^d.
struct LatticePoint {
    std::vector<std::int32_t> coords;

    bool is_origin() const;
    bool operator==(const LatticePoint&) const = default;
};

/// A point of the torus [-pi,pi]^d, coordinates indexed by PairIndex order.
struct TorusPoint {
    std::vector<double> coords;

    int dim() const { return static_cast<int>(coords.size()); }
    static TorusPoint zero(int d) { return TorusPoint{std::vector<double>(d, 0.0)}; }
};

IncrementVector z_map(const SignVector& y);

/// All 2^{n-1} distinct increments, enumerated with the canonical choice
/// y_1 = +1 (Z(-y) = Z(y), so this hits every element of M exactly once).
/// The increment at index b corresponds to y = (+1, s_1, ..., s_{n-1}) with
/// s_k = -1 iff bit k of b is set.
std::vector<IncrementVector> enumerate_increments(int n);

constexpr int kMaxEnumerateN = 24;

/// True iff coords_{i,j}*coords_{j,k}*coords_{i,k} == +1 for every triple.
bool triangle_consistent(const IncrementVector& v, int n);

}  // namespace hadwalk
