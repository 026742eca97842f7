#pragma once

#include <utility>

#include "ccmkdv/config.hpp"
#include "ccmkdv/expsum.hpp"
#include "ccmkdv/tau.hpp"

namespace ccmkdv {

/// Physical field values at a lab-frame point.
struct FieldSample {
    double x{0.0};
    double t{0.0};
    Cx u1;
    Cx u2;
};

/// Two-soliton coupling data: per-soliton depth factors C_j, phase-jump
/// factors A_j (component 1) and B_j (component 2), and the interaction
/// coefficient M.
struct InteractionConstants {
    double C1{0.0}, C2{0.0};
    Cx A1, A2, B1, B2;
    double M{0.0};
};

/// Tanh phase constants of the four asymptotic soliton states; chi for
/// soliton 1, gamma for soliton 2. chi2 = chi1 * M and gamma1 = gamma2 * M.
struct PhaseShifts {
    Cx chi1, chi2, gamma1, gamma2;
};

/// Caches the lab-frame exponential sums of one configuration for repeated
/// grid evaluation. Pure and immutable; safe to share across threads.
/// Requires N <= 5 (exponential-sum backend).
class FieldEvaluator {
public:
    static constexpr double kSingularTol = 1e-6;

    explicit FieldEvaluator(const SolitonConfig& config);

    /// u_nu = rho_nu (g_nu / f) exp(i theta_nu). Throws NearSingularError
    /// when |f| < 1e-6 * (largest term of f) at the point.
    FieldSample operator()(double x, double t) const;

    /// Lab-frame jets (orders <= 3 in x, <= 1 in t) of u1 and u2.
    std::pair<Jet, Jet> jets(double x, double t) const;

    /// f at the moving-frame point behind (x, t); real-valued up to rounding.
    Cx f_value(double x, double t) const;

    /// |f| relative to the largest term of f at the point (the singularity
    /// margin the near-singular check uses).
    double f_margin(double x, double t) const;

    const SolitonConfig& config() const { return config_; }

private:
    SolitonConfig config_;
    ExpSum f_lab_, g1_lab_, g2_lab_;
};

/// General Pfaffian path for the fields; uses the exponential-sum evaluator
/// for N <= 5 and the scaled numeric Pfaffian beyond.
FieldSample fields(const SolitonConfig& config, double x, double t);

/// One-soliton tanh closed form (N = 1). The tanh phase constant is the
/// principal log of the exponential coefficient of f; tanh is i*pi-periodic,
/// so the branch choice cannot change the value.
FieldSample one_soliton_closed(const SolitonConfig& config, double x, double t);

/// Two-soliton four-exponential closed form (N = 2).
FieldSample two_soliton_closed(const SolitonConfig& config, double x, double t);

InteractionConstants interaction_constants(const SolitonConfig& config);

PhaseShifts phase_shifts(const SolitonConfig& config);

enum class Epoch { before, after };

/// Asymptotic one-soliton state of the two-soliton field for the requested
/// soliton (1 or 2) and epoch. Which of the two tanh states (bare or
/// M-dressed, with the other soliton's phase-jump prefactor) applies is
/// decided from the soliton velocities, so the returned form is the actual
/// t -> -/+ infinity limit along the tracked soliton.
FieldSample asymptotic_field(const SolitonConfig& config, int soliton, Epoch epoch, double x,
                             double t);

/// Moving-frame dip velocity -Re(p^3)/Re(p) of soliton j (1-based).
double soliton_velocity_frame(const SolitonConfig& config, int soliton);

/// Lab-frame dip velocity (adds the frame shift).
double soliton_velocity_lab(const SolitonConfig& config, int soliton);

/// Lab-frame dip position of the asymptotic state at time t.
double asymptotic_dip_position(const SolitonConfig& config, int soliton, Epoch epoch, double t);

/// Smallest |t| at which, across a window of `window` units of Re(xi_j)
/// around either soliton, the other soliton's exponential is suppressed
/// below `eps`. N = 2, distinct velocities required.
double collision_time(const SolitonConfig& config, double eps = 1e-9, double window = 4.0);

/// sup |fields - asymptotic_field| over both components across the window
/// around the tracked soliton at t = -T (before) or +T (after). Points where
/// |f| falls below 5% of its largest term are excluded: near a zero of f both
/// forms blow up and their difference is dominated by the pole location, not
/// the asymptotics. Regular (zero-free) configurations exclude nothing.
double asymptotic_agreement(const SolitonConfig& config, int soliton, Epoch epoch, double T,
                            double window = 4.0, int npoints = 301);

}  // namespace ccmkdv
