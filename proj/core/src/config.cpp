#include "ccmkdv/config.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "ccmkdv/reduction.hpp"

namespace ccmkdv {

SolitonConfig::SolitonConfig(std::array<double, 2> rho, std::array<double, 2> alpha,
                             std::vector<Cx> p, std::vector<Cx> xi0, double c,
                             ReductionCheck check, ConjSign sign, double reduction_tol_override)
    : rho_(rho), alpha_(alpha), c_(c), p_(std::move(p)), xi0_(std::move(xi0)), check_(check),
      sign_(sign) {
    if (c_ <= 0.0) throw InvalidConfigError("nonlinearity coefficient c must be positive");
    if (rho_[0] < 0.0 || rho_[1] < 0.0) throw InvalidConfigError("amplitudes rho must be >= 0");
    if (rho_[0] == 0.0 && rho_[1] == 0.0) {
        throw InvalidConfigError("at least one background amplitude must be positive");
    }
    if (xi0_.empty()) xi0_.assign(p_.size(), Cx{0.0, 0.0});
    if (xi0_.size() != p_.size()) {
        throw InvalidConfigError("xi0 list size must match p list size");
    }

    if (alpha_[0] == alpha_[1] && rho_[0] > 0.0 && rho_[1] > 0.0) {
        warnings_.push_back(
            "alpha1 == alpha2 with both amplitudes positive: the two constraint terms coincide");
    }

    const int n = static_cast<int>(p_.size());
    for (int i = 0; i < n; ++i) {
        if (std::abs(p_[i].real()) <= 1e-12 * (1.0 + std::abs(p_[i]))) {
            std::ostringstream os;
            os << "spectral parameter p[" << i << "] has (near) zero real part";
            throw InvalidConfigError(os.str());
        }
    }

    // conjugate half: p_{2N+1-i} = conj(p_i), xi0_{2N+1-i} = conj(xi0_i) +/- i*pi/2
    const double s = (sign_ == ConjSign::plus) ? 1.0 : -1.0;
    full_p_ = p_;
    full_xi0_ = xi0_;
    full_p_.resize(2 * static_cast<size_t>(n));
    full_xi0_.resize(2 * static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        full_p_[2 * n - 1 - i] = std::conj(p_[i]);
        full_xi0_[2 * n - 1 - i] = std::conj(xi0_[i]) + Cx{0.0, s * std::numbers::pi / 2.0};
    }

    // no vanishing entry denominators anywhere in the generated list
    for (int a = 0; a < 2 * n; ++a) {
        for (int b = a + 1; b < 2 * n; ++b) {
            const double scale = std::abs(full_p_[a]) + std::abs(full_p_[b]);
            if (std::abs(full_p_[a] + full_p_[b]) <= 1e-12 * (1.0 + scale)) {
                std::ostringstream os;
                os << "p[" << a << "] + p[" << b << "] vanishes in the generated parameter list";
                throw InvalidConfigError(os.str());
            }
        }
    }

    const auto re = rho_eff();
    double tol = (check_ == ReductionCheck::strict) ? 1e-8 : 2e-2;
    if (reduction_tol_override > 0.0) tol = reduction_tol_override;
    reduction_residuals_.reserve(p_.size());
    for (int i = 0; i < n; ++i) {
        const double r = reduction_residual(p_[i], re, alpha_);
        reduction_residuals_.push_back(r);
        if (check_ != ReductionCheck::unchecked && std::abs(r) > tol) {
            std::ostringstream os;
            os << "p[" << i << "] = (" << p_[i].real() << ", " << p_[i].imag()
               << ") violates the reduction condition: residual " << r << " exceeds " << tol;
            throw InvalidConfigError(os.str());
        }
    }
    if (check_ == ReductionCheck::paper_rounded) {
        std::ostringstream os;
        os << "paper-rounded parameters accepted; max |reduction residual| = "
           << max_reduction_residual();
        warnings_.push_back(os.str());
    }

    // negative expansion coefficient => f has real zeros; closed forms then
    // take a complex log branch
    for (int i = 0; i < n; ++i) {
        const double ceff = -s * p_[i].imag() / p_[i].real();
        if (ceff < 0.0 && p_[i].imag() != 0.0) {
            std::ostringstream os;
            os << "soliton " << (i + 1)
               << " has a negative exponential coefficient: f has real zeros and tanh phase "
                  "constants use the principal complex log branch";
            warnings_.push_back(os.str());
            break;
        }
    }
}

std::array<double, 2> SolitonConfig::rho_eff() const {
    const double sc = std::sqrt(c_);
    return {sc * rho_[0], sc * rho_[1]};
}

double SolitonConfig::frame_shift() const {
    return 3.0 * c_ * (rho_[0] * rho_[0] + rho_[1] * rho_[1]);
}

double SolitonConfig::omega(int nu) const {
    const double a = alpha_[nu];
    return a * a * a + 3.0 * c_ * a * (rho_[0] * rho_[0] + rho_[1] * rho_[1]);
}

double SolitonConfig::max_reduction_residual() const {
    double m = 0.0;
    for (double r : reduction_residuals_) m = std::max(m, std::abs(r));
    return m;
}

}  // namespace ccmkdv
