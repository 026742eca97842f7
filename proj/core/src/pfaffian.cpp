#include "ccmkdv/pfaffian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ccmkdv {

SkewMatrix::SkewMatrix(int order) : order_(order) {
    if (order < 0 || order % 2 != 0) {
        throw InvalidConfigError("skew matrix order must be even and non-negative, got " +
                                 std::to_string(order));
    }
    upper_.assign(static_cast<size_t>(order) * (order - 1) / 2, Cx{0.0, 0.0});
}

SkewMatrix SkewMatrix::from_upper(int order, std::span<const Cx> upper) {
    SkewMatrix m(order);
    if (upper.size() != m.upper_.size()) {
        throw InvalidConfigError("upper triangle size mismatch: expected " +
                                 std::to_string(m.upper_.size()) + ", got " +
                                 std::to_string(upper.size()));
    }
    std::copy(upper.begin(), upper.end(), m.upper_.begin());
    return m;
}

Cx SkewMatrix::at(int i, int j) const {
    if (i == j) return {0.0, 0.0};
    if (i < j) return upper_[upper_index(i, j)];
    return -upper_[upper_index(j, i)];
}

void SkewMatrix::set(int i, int j, Cx value) {
    if (i >= j) throw InvalidConfigError("set requires i < j");
    upper_[upper_index(i, j)] = value;
}

std::vector<Cx> SkewMatrix::dense() const {
    std::vector<Cx> d(static_cast<size_t>(order_) * order_, Cx{0.0, 0.0});
    for (int i = 0; i < order_; ++i)
        for (int j = 0; j < order_; ++j) d[static_cast<size_t>(i) * order_ + j] = at(i, j);
    return d;
}

namespace {

// Expansion along the row of active[0]; `active` lists the surviving indices.
Cx expand_rec(const SkewMatrix& m, std::vector<int>& active) {
    const size_t n = active.size();
    if (n == 0) return {1.0, 0.0};
    Cx sum{0.0, 0.0};
    const int first = active[0];
    double sign = 1.0;
    for (size_t pos = 1; pos < n; ++pos) {
        const int partner = active[pos];
        const Cx a = m.at(first, partner);
        if (a != Cx{0.0, 0.0}) {
            std::vector<int> rest;
            rest.reserve(n - 2);
            for (size_t q = 1; q < n; ++q)
                if (q != pos) rest.push_back(active[q]);
            sum += sign * a * expand_rec(m, rest);
        }
        sign = -sign;
    }
    return sum;
}

}  // namespace

Cx pfaffian_expand(const SkewMatrix& m, int max_order) {
    if (m.order() > max_order) {
        throw SizeLimitError("pfaffian expansion limited to order " + std::to_string(max_order) +
                             ", got " + std::to_string(m.order()));
    }
    std::vector<int> active(m.order());
    for (int i = 0; i < m.order(); ++i) active[i] = i;
    return expand_rec(m, active);
}

namespace detail {

std::complex<long double> pfaffian_eliminate(std::vector<std::complex<long double>>& a,
                                             int n) {
    using Lx = std::complex<long double>;
    auto e = [&](int i, int j) -> Lx& { return a[static_cast<size_t>(i) * n + j]; };

    long double sign = 1.0L;
    Lx pf{1.0L, 0.0L};
    for (int k = 0; k + 1 < n; k += 2) {
        // pivot: largest |a(k,j)| for j > k
        int piv = k + 1;
        long double best = std::abs(e(k, k + 1));
        for (int j = k + 2; j < n; ++j) {
            const long double mag = std::abs(e(k, j));
            if (mag > best) {
                best = mag;
                piv = j;
            }
        }
        if (best == 0.0L) return {0.0L, 0.0L};
        if (piv != k + 1) {
            for (int i = 0; i < n; ++i) std::swap(e(i, k + 1), e(i, piv));
            for (int i = 0; i < n; ++i) std::swap(e(k + 1, i), e(piv, i));
            sign = -sign;
        }
        const Lx pivot = e(k, k + 1);
        pf *= pivot;
        for (int j = k + 2; j < n; ++j) {
            const Lx mu = e(k, j) / pivot;
            if (mu == Lx{0.0L, 0.0L}) continue;
            for (int i = k + 1; i < n; ++i) e(i, j) -= mu * e(i, k + 1);
            for (int i = k + 1; i < n; ++i) e(j, i) -= mu * e(k + 1, i);
        }
    }
    return pf * sign;
}

}  // namespace detail

Cx pfaffian_ltl(const SkewMatrix& m) {
    const int n = m.order();
    if (n < 2) {
        throw InvalidConfigError("pfaffian_ltl requires order >= 2, got " + std::to_string(n));
    }
    std::vector<std::complex<long double>> a(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[static_cast<size_t>(i) * n + j] = m.at(i, j);
    const std::complex<long double> pf = detail::pfaffian_eliminate(a, n);
    const Cx out{static_cast<double>(pf.real()), static_cast<double>(pf.imag())};
    if (!std::isfinite(out.real()) || !std::isfinite(out.imag())) {
        throw NonFiniteError("pfaffian elimination produced a non-finite value");
    }
    return out;
}

}  // namespace ccmkdv
