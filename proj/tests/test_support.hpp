#pragma once

#include <complex>
#include <random>
#include <vector>

#include "ccmkdv/config.hpp"
#include "ccmkdv/pfaffian.hpp"
#include "ccmkdv/reduction.hpp"
#include "ccmkdv/report.hpp"

namespace testsupport {

using ccmkdv::Cx;

inline std::mt19937_64 rng(uint64_t seed) { return std::mt19937_64{seed}; }

inline Cx random_unit_complex(std::mt19937_64& gen) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    return {u(gen), u(gen)};
}

inline ccmkdv::SkewMatrix random_skew(int order, std::mt19937_64& gen) {
    ccmkdv::SkewMatrix m(order);
    for (int i = 0; i < order; ++i)
        for (int j = i + 1; j < order; ++j) m.set(i, j, random_unit_complex(gen));
    return m;
}

/// Independent determinant oracle: plain LU with partial pivoting. Kept free
/// of any Pfaffian code so Pf(A)^2 = det(A) is a genuine cross-check.
inline Cx lu_det(std::vector<Cx> a, int n) {
    Cx det{1.0, 0.0};
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(a[static_cast<size_t>(k) * n + k]);
        for (int i = k + 1; i < n; ++i) {
            const double mag = std::abs(a[static_cast<size_t>(i) * n + k]);
            if (mag > best) {
                best = mag;
                piv = i;
            }
        }
        if (best == 0.0) return {0.0, 0.0};
        if (piv != k) {
            for (int j = 0; j < n; ++j)
                std::swap(a[static_cast<size_t>(k) * n + j], a[static_cast<size_t>(piv) * n + j]);
            det = -det;
        }
        const Cx pivot = a[static_cast<size_t>(k) * n + k];
        det *= pivot;
        for (int i = k + 1; i < n; ++i) {
            const Cx mu = a[static_cast<size_t>(i) * n + k] / pivot;
            for (int j = k; j < n; ++j)
                a[static_cast<size_t>(i) * n + j] -= mu * a[static_cast<size_t>(k) * n + j];
        }
    }
    return det;
}

inline std::vector<ccmkdv::GridPoint> random_points(int count, double x_lo, double x_hi,
                                                    double t_lo, double t_hi, uint64_t seed) {
    auto gen = rng(seed);
    std::uniform_real_distribution<double> ux(x_lo, x_hi), ut(t_lo, t_hi);
    std::vector<ccmkdv::GridPoint> pts(count);
    for (auto& p : pts) p = {ux(gen), ut(gen)};
    return pts;
}

/// Solved-parameter fixture: spectral parameters on the constraint curve at
/// the given Im values. Construction re-checks every residual at the strict
/// tolerance, so the fixture cannot silently drift off the curve.
inline ccmkdv::SolitonConfig solved_config(std::array<double, 2> rho, std::array<double, 2> alpha,
                                           const std::vector<double>& ims,
                                           ccmkdv::ConjSign sign = ccmkdv::ConjSign::plus,
                                           double c = 1.0) {
    std::vector<Cx> ps;
    const double sc = std::sqrt(c);
    for (double im : ims) {
        const double re =
            ccmkdv::solve_re(im, {sc * rho[0], sc * rho[1]}, alpha, {0.05, 3.5});
        ps.push_back(Cx{re, im});
    }
    return ccmkdv::SolitonConfig(rho, alpha, ps, {}, c, ccmkdv::ReductionCheck::strict, sign);
}

inline ccmkdv::SolitonConfig fig1_config(ccmkdv::ConjSign sign = ccmkdv::ConjSign::plus) {
    return ccmkdv::SolitonConfig({1.0, 1.0}, {2.0, 1.0}, {Cx{0.88, 1.0}}, {}, 1.0,
                                 ccmkdv::ReductionCheck::paper_rounded, sign);
}

inline ccmkdv::SolitonConfig fig2_config(ccmkdv::ConjSign sign = ccmkdv::ConjSign::plus) {
    return ccmkdv::SolitonConfig({2.0, 1.0}, {2.3, 1.5}, {Cx{1.53, 1.0}, Cx{1.49, 2.0}}, {}, 1.0,
                                 ccmkdv::ReductionCheck::paper_rounded, sign);
}

/// Golden-section argmin of |u_comp| over [lo, hi] at fixed t.
template <typename Eval>
double dip_argmin(const Eval& eval, int comp, double lo, double hi, double t) {
    auto f = [&](double x) {
        const auto s = eval(x, t);
        return comp == 0 ? std::abs(s.u1) : std::abs(s.u2);
    };
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > 1e-12) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace testsupport
