#pragma once

#include <complex>
#include <span>
#include <vector>

#include "ccmkdv/errors.hpp"

namespace ccmkdv {

using Cx = std::complex<double>;

/// Even-order skew-symmetric complex matrix; only the strict upper triangle
/// is stored, so a(j,i) = -a(i,j) and a(i,i) = 0 hold by construction.
class SkewMatrix {
public:
    /// Zero matrix of the given order. Odd order is a construction error.
    explicit SkewMatrix(int order);

    /// Builds from the strict upper triangle in row-major order
    /// (a01, a02, ..., a0n-1, a12, ...).
    static SkewMatrix from_upper(int order, std::span<const Cx> upper);

    int order() const { return order_; }

    /// Full-matrix read access (0-based).
    Cx at(int i, int j) const;

    /// Writes the (i,j) entry, i < j.
    void set(int i, int j, Cx value);

    /// Dense copy with both triangles filled in.
    std::vector<Cx> dense() const;

private:
    int upper_index(int i, int j) const { return i * order_ - i * (i + 1) / 2 + (j - i - 1); }

    int order_{0};
    std::vector<Cx> upper_;
};

/// Pfaffian via recursive expansion along the first row. Trusted reference
/// at small order; cost grows as (order-1)!!.
Cx pfaffian_expand(const SkewMatrix& m, int max_order = 12);

/// Pfaffian via skew-symmetric tridiagonalization with partial pivoting
/// (largest-magnitude pivot in the active column, ties to the lowest index).
/// O(order^3); the production path.
Cx pfaffian_ltl(const SkewMatrix& m);

namespace detail {
/// Elimination core on a dense matrix, destructive. Extended precision:
/// the structured matrices behind tau evaluation cancel across matchings,
/// so callers that assemble entries in long double keep that accuracy.
std::complex<long double> pfaffian_eliminate(std::vector<std::complex<long double>>& dense,
                                             int order);
}  // namespace detail

}  // namespace ccmkdv
