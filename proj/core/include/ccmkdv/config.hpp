#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "ccmkdv/errors.hpp"

namespace ccmkdv {

using Cx = std::complex<double>;

/// Discrete flow indices of a tau function. |k1|, |k2| <= 1 in all shipped
/// use; arbitrary integers are accepted.
struct TauIndex {
    int k1{0};
    int k2{0};
};

enum class ReductionCheck {
    strict,         // |residual| <= 1e-8 per spectral parameter
    paper_rounded,  // <= 2e-2, for two-decimal figure parameters
    unchecked,      // construction-time check skipped (negative controls)
};

/// Sign of the i*pi/2 offset in the generated conjugate phase constants.
/// `plus` reproduces the published expansion coefficients (-Im p / Re p);
/// `minus` flips them, which keeps f zero-free when Re(p)*Im(p) > 0.
enum class ConjSign { plus, minus };

/// Full parameter set of a dark-dark soliton family: backgrounds rho, carrier
/// wavenumbers alpha, nonlinearity coefficient c, and N spectral parameters p
/// with phase constants xi0. The conjugate half of the index range
/// (p_{2N+1-i} = conj(p_i), xi0_{2N+1-i} = conj(xi0_i) + sign * i*pi/2) is
/// generated, never stored.
///
/// Immutable after construction; all evaluations over it are pure.
class SolitonConfig {
public:
    SolitonConfig(std::array<double, 2> rho, std::array<double, 2> alpha, std::vector<Cx> p,
                  std::vector<Cx> xi0 = {}, double c = 1.0,
                  ReductionCheck check = ReductionCheck::strict, ConjSign sign = ConjSign::plus,
                  double reduction_tol_override = 0.0);

    int n() const { return static_cast<int>(p_.size()); }
    const std::array<double, 2>& rho() const { return rho_; }
    const std::array<double, 2>& alpha() const { return alpha_; }
    double c() const { return c_; }
    const std::vector<Cx>& p() const { return p_; }
    const std::vector<Cx>& xi0() const { return xi0_; }
    ConjSign conj_sign() const { return sign_; }
    ReductionCheck check_policy() const { return check_; }

    /// Amplitudes after normalizing the nonlinearity coefficient to 1
    /// (rho_eff = sqrt(c) * rho); the constraint and bilinear identities run
    /// on these.
    std::array<double, 2> rho_eff() const;

    /// Moving-frame speed 3*c*(rho1^2 + rho2^2).
    double frame_shift() const;

    /// Carrier frequency alpha^3 + 3*c*alpha*(rho1^2 + rho2^2) of component nu.
    double omega(int nu) const;

    /// Generated 2N-element parameter lists (conjugate half included).
    const std::vector<Cx>& full_p() const { return full_p_; }
    const std::vector<Cx>& full_xi0() const { return full_xi0_; }

    /// Constraint residual recorded for each stored p at construction.
    const std::vector<double>& reduction_residuals() const { return reduction_residuals_; }
    double max_reduction_residual() const;

    const std::vector<std::string>& warnings() const { return warnings_; }

private:
    std::array<double, 2> rho_;
    std::array<double, 2> alpha_;
    double c_{1.0};
    std::vector<Cx> p_;
    std::vector<Cx> xi0_;
    ReductionCheck check_{ReductionCheck::strict};
    ConjSign sign_{ConjSign::plus};
    std::vector<Cx> full_p_;
    std::vector<Cx> full_xi0_;
    std::vector<double> reduction_residuals_;
    std::vector<std::string> warnings_;
};

}  // namespace ccmkdv
