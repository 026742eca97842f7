#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ccmkdv/config.hpp"
#include "ccmkdv/expsum.hpp"
#include "ccmkdv/report.hpp"

namespace ccmkdv {

/// Pfaffian tau function over an arbitrary 2N-point parameter list, with
/// entries
///   (i,j) = c_ij + (p_i - p_j)/(p_i + p_j) * (d,i)(d,j),
///   (d,i) = prod_nu ((p_i + a_nu)/(p_i - a_nu))^{k_nu} * exp(p_i x + p_i^3 t + xi0_i).
/// c_ij defaults to the antidiagonal delta_{2N+1-i,j}. The reduced
/// (conjugate-paired) family sets a_nu = -i*alpha_nu.
struct GeneralTau {
    std::vector<Cx> p;
    std::vector<Cx> xi0;
    Cx a1{0.0, 0.0};
    Cx a2{0.0, 0.0};
    /// Strict upper triangle of the constant part, row-major; empty means the
    /// antidiagonal delta.
    std::vector<Cx> cij_upper;

    static GeneralTau from_config(const SolitonConfig& config);

    Cx constant_part(int i, int j) const;  // 0-based, i < j

    /// Exact expansion into an exponential sum (perfect-matching expansion;
    /// bounded at N <= max_n pairs).
    ExpSum expsum(TauIndex index, int max_n = 5) const;

    /// Numeric evaluation: fills a skew matrix at (x, t) and takes its
    /// Pfaffian, with per-index exponent balancing. Scales to any N.
    Cx eval_pfaffian(TauIndex index, double x, double t) const;

    /// Pfaffian evaluation as mantissa * exp(log_scale). The scale depends
    /// only on (p, x, t), so ratios of tau values at the same point cancel it.
    struct ScaledValue {
        Cx mantissa;
        double log_scale;
    };
    ScaledValue eval_pfaffian_scaled(TauIndex index, double x, double t) const;
};

/// Pfaffian entry of the reduced family, 1-based indices i < j over the
/// generated 2N-element list. Returns the constant part (1 on the
/// antidiagonal, else 0) and the single-exponential part with slopes
/// kx = p_i + p_j, kt = p_i^3 + p_j^3.
struct TauEntry {
    Cx constant;
    ExpTerm exp_part;
};
TauEntry entry(const SolitonConfig& config, TauIndex index, int i, int j);

/// Exact exponential-sum expansion of tau_{k1,k2}; N <= max_n (default 5).
ExpSum tau_expsum(const SolitonConfig& config, TauIndex index, int max_n = 5);

enum class TauBackend { expsum, pfaffian };

/// Evaluates tau_{k1,k2} at moving-frame coordinates (x, t).
Cx tau_eval(const SolitonConfig& config, TauIndex index, double x, double t,
            TauBackend backend = TauBackend::expsum);

/// Tau value and all partials d^a_x d^b_t (a <= 3, b <= 1), exact up to
/// rounding via term-by-term differentiation of the exponential sum.
Jet tau_jet(const SolitonConfig& config, TauIndex index, double x, double t);

/// Max over points of |conj(tau_{k1,k2}) - tau_{-k1,-k2}| / max(1, |tau|).
ResidualReport verify_conjugacy(const SolitonConfig& config, TauIndex index,
                                std::span<const GridPoint> points);

}  // namespace ccmkdv
