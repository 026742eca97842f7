#include "ccmkdv/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ccmkdv {

namespace {

// Exponential coefficient of soliton j in f: sign * i * (p - p*)/(p + p*),
// real-valued (-s * Im(p)/Re(p)).
Cx exp_coefficient(const SolitonConfig& config, int j) {
    const Cx p = config.p()[j];
    const double s = (config.conj_sign() == ConjSign::plus) ? 1.0 : -1.0;
    return s * Cx{0.0, 1.0} * (p - std::conj(p)) / (p + std::conj(p));
}

Cx jump_factor(Cx p, double alpha) {
    const Cx ia{0.0, alpha};
    return ((p - ia) * (std::conj(p) - ia)) / ((p + ia) * (std::conj(p) + ia));
}

// 0.5 * log of the tanh phase constant; the coefficient 0 limit is tanh -> -1.
Cx half_log_phase(Cx chi) { return 0.5 * std::log(chi); }

Cx theta_phase(const SolitonConfig& config, int nu, double x, double t) {
    return std::exp(Cx{0.0, config.alpha()[nu] * x - config.omega(nu) * t});
}

void require_n(const SolitonConfig& config, int n, const char* what) {
    if (config.n() != n) {
        std::ostringstream os;
        os << what << " requires N = " << n << ", got N = " << config.n();
        throw InvalidConfigError(os.str());
    }
}

}  // namespace

FieldEvaluator::FieldEvaluator(const SolitonConfig& config) : config_(config) {
    const double gamma = config.frame_shift();
    f_lab_ = tau_expsum(config, {0, 0}).with_frame_shift(gamma);
    g1_lab_ = tau_expsum(config, {1, 0}).with_frame_shift(gamma);
    g2_lab_ = tau_expsum(config, {0, 1}).with_frame_shift(gamma);
}

FieldSample FieldEvaluator::operator()(double x, double t) const {
    // one joint shift keeps the g/f ratios overflow-free
    const double m =
        std::max({f_lab_.max_exponent(x, t), g1_lab_.max_exponent(x, t),
                  g2_lab_.max_exponent(x, t)});
    const Cx f = f_lab_.eval_shifted(x, t, m);
    const double fscale = f_lab_.max_term_magnitude(x, t, m);
    if (std::abs(f) < kSingularTol * fscale) {
        std::ostringstream os;
        os << "f is near-singular at (x, t) = (" << x << ", " << t << "): |f|/scale = "
           << std::abs(f) / fscale;
        throw NearSingularError(os.str());
    }
    const Cx g1 = g1_lab_.eval_shifted(x, t, m);
    const Cx g2 = g2_lab_.eval_shifted(x, t, m);
    FieldSample out;
    out.x = x;
    out.t = t;
    out.u1 = config_.rho()[0] * (g1 / f) * theta_phase(config_, 0, x, t);
    out.u2 = config_.rho()[1] * (g2 / f) * theta_phase(config_, 1, x, t);
    return out;
}

std::pair<Jet, Jet> FieldEvaluator::jets(double x, double t) const {
    const double m =
        std::max({f_lab_.max_exponent(x, t), g1_lab_.max_exponent(x, t),
                  g2_lab_.max_exponent(x, t)});
    const Jet jf = f_lab_.jet_shifted(x, t, m);
    const double fscale = f_lab_.max_term_magnitude(x, t, m);
    if (std::abs(jf.value()) < kSingularTol * fscale) {
        std::ostringstream os;
        os << "f is near-singular at (x, t) = (" << x << ", " << t << ")";
        throw NearSingularError(os.str());
    }
    const Jet rf = jf.reciprocal();
    const Jet jg1 = g1_lab_.jet_shifted(x, t, m);
    const Jet jg2 = g2_lab_.jet_shifted(x, t, m);
    // carrier exp(i theta_nu) as an exponential jet with lab slopes
    const auto phase_jet = [&](int nu) {
        const Cx kx{0.0, config_.alpha()[nu]};
        const Cx kt{0.0, -config_.omega(nu)};
        return Jet::exponential({1.0, 0.0}, kx, kt, std::exp(kx * x + kt * t));
    };
    Jet u1 = jg1 * rf * phase_jet(0) * Cx{config_.rho()[0], 0.0};
    Jet u2 = jg2 * rf * phase_jet(1) * Cx{config_.rho()[1], 0.0};
    return {u1, u2};
}

Cx FieldEvaluator::f_value(double x, double t) const { return f_lab_.eval(x, t); }

double FieldEvaluator::f_margin(double x, double t) const {
    const double m = f_lab_.max_exponent(x, t);
    const double scale = f_lab_.max_term_magnitude(x, t, m);
    if (scale == 0.0) return 0.0;
    return std::abs(f_lab_.eval_shifted(x, t, m)) / scale;
}

FieldSample fields(const SolitonConfig& config, double x, double t) {
    if (config.n() <= 5) return FieldEvaluator(config)(x, t);

    // Pfaffian path: the per-index scale depends only on (p, x~, t), so the
    // mantissa ratio is the exact g/f.
    const GeneralTau tau = GeneralTau::from_config(config);
    const double xt = x - config.frame_shift() * t;
    const auto f = tau.eval_pfaffian_scaled({0, 0}, xt, t);
    const auto g1 = tau.eval_pfaffian_scaled({1, 0}, xt, t);
    const auto g2 = tau.eval_pfaffian_scaled({0, 1}, xt, t);
    if (std::abs(f.mantissa) < FieldEvaluator::kSingularTol) {
        throw NearSingularError("f is near-singular at the requested point");
    }
    FieldSample out;
    out.x = x;
    out.t = t;
    out.u1 = config.rho()[0] * (g1.mantissa / f.mantissa) * theta_phase(config, 0, x, t);
    out.u2 = config.rho()[1] * (g2.mantissa / f.mantissa) * theta_phase(config, 1, x, t);
    return out;
}

FieldSample one_soliton_closed(const SolitonConfig& config, double x, double t) {
    require_n(config, 1, "one_soliton_closed");
    const Cx p = config.p()[0];
    const Cx ceff = exp_coefficient(config, 0);
    const Cx a1 = jump_factor(p, config.alpha()[0]);
    const Cx b1 = jump_factor(p, config.alpha()[1]);
    const double xt = x - config.frame_shift() * t;
    const double rexi =
        p.real() * xt + (p * p * p).real() * t + config.xi0()[0].real();

    Cx w;
    if (std::abs(ceff) == 0.0) {
        w = {-1.0, 0.0};  // coefficient-zero limit: flat background
    } else {
        w = std::tanh(rexi + half_log_phase(ceff));
    }
    FieldSample out;
    out.x = x;
    out.t = t;
    out.u1 = config.rho()[0] * theta_phase(config, 0, x, t) *
             (0.5 * (1.0 + a1) - 0.5 * (1.0 - a1) * w);
    out.u2 = config.rho()[1] * theta_phase(config, 1, x, t) *
             (0.5 * (1.0 + b1) - 0.5 * (1.0 - b1) * w);
    return out;
}

FieldSample two_soliton_closed(const SolitonConfig& config, double x, double t) {
    require_n(config, 2, "two_soliton_closed");
    const InteractionConstants ic = interaction_constants(config);
    const double xt = x - config.frame_shift() * t;
    const Cx p1 = config.p()[0], p2 = config.p()[1];
    const double x1 =
        2.0 * (p1.real() * xt + (p1 * p1 * p1).real() * t + config.xi0()[0].real());
    const double x2 =
        2.0 * (p2.real() * xt + (p2 * p2 * p2).real() * t + config.xi0()[1].real());

    const double m = std::max({0.0, x1, x2, x1 + x2});
    const double e0 = std::exp(-m), e1 = std::exp(x1 - m), e2 = std::exp(x2 - m),
                 e12 = std::exp(x1 + x2 - m);
    const Cx f = e0 + ic.C1 * e1 + ic.C2 * e2 + ic.C1 * ic.C2 * ic.M * e12;
    const double fscale =
        std::max({e0, std::abs(ic.C1) * e1, std::abs(ic.C2) * e2,
                  std::abs(ic.C1 * ic.C2 * ic.M) * e12});
    if (std::abs(f) < FieldEvaluator::kSingularTol * fscale) {
        std::ostringstream os;
        os << "f is near-singular at (x, t) = (" << x << ", " << t << ")";
        throw NearSingularError(os.str());
    }
    const Cx g1 = e0 + ic.C1 * ic.A1 * e1 + ic.C2 * ic.A2 * e2 +
                  ic.C1 * ic.C2 * ic.A1 * ic.A2 * ic.M * e12;
    const Cx g2 = e0 + ic.C1 * ic.B1 * e1 + ic.C2 * ic.B2 * e2 +
                  ic.C1 * ic.C2 * ic.B1 * ic.B2 * ic.M * e12;
    FieldSample out;
    out.x = x;
    out.t = t;
    out.u1 = config.rho()[0] * (g1 / f) * theta_phase(config, 0, x, t);
    out.u2 = config.rho()[1] * (g2 / f) * theta_phase(config, 1, x, t);
    return out;
}

InteractionConstants interaction_constants(const SolitonConfig& config) {
    require_n(config, 2, "interaction_constants");
    const Cx p1 = config.p()[0], p2 = config.p()[1];
    const double scale = std::abs(p1) + std::abs(p2);
    for (const Cx d : {p1 - p2, p1 + p2, p1 - std::conj(p2), p1 + std::conj(p2)}) {
        if (std::abs(d) <= 1e-12 * (1.0 + scale)) {
            throw InvalidConfigError(
                "coincident spectral parameters: p1 = ±p2 or p1 = ±conj(p2)");
        }
    }
    InteractionConstants ic;
    ic.C1 = exp_coefficient(config, 0).real();
    ic.C2 = exp_coefficient(config, 1).real();
    ic.A1 = jump_factor(p1, config.alpha()[0]);
    ic.A2 = jump_factor(p2, config.alpha()[0]);
    ic.B1 = jump_factor(p1, config.alpha()[1]);
    ic.B2 = jump_factor(p2, config.alpha()[1]);
    const Cx m = ((p1 - p2) * (std::conj(p1) - std::conj(p2)) * (p1 - std::conj(p2)) *
                  (std::conj(p1) - p2)) /
                 ((p1 + p2) * (std::conj(p1) + std::conj(p2)) * (p1 + std::conj(p2)) *
                  (std::conj(p1) + p2));
    if (std::abs(m.imag()) > 1e-12 * (1.0 + std::abs(m)) || m.real() <= 0.0) {
        throw InvalidConfigError("interaction coefficient M must be real positive");
    }
    ic.M = m.real();
    return ic;
}

PhaseShifts phase_shifts(const SolitonConfig& config) {
    const InteractionConstants ic = interaction_constants(config);
    PhaseShifts ps;
    ps.chi1 = ic.C1;
    ps.chi2 = ic.C1 * ic.M;
    ps.gamma2 = ic.C2;
    ps.gamma1 = ic.C2 * ic.M;
    return ps;
}

double soliton_velocity_frame(const SolitonConfig& config, int soliton) {
    if (soliton < 1 || soliton > config.n()) {
        throw InvalidConfigError("soliton index out of range");
    }
    const Cx p = config.p()[soliton - 1];
    return -(p * p * p).real() / p.real();
}

double soliton_velocity_lab(const SolitonConfig& config, int soliton) {
    return soliton_velocity_frame(config, soliton) + config.frame_shift();
}

namespace {

// The t -> ±infinity state of the tracked soliton is "bare" when the other
// soliton's exponent goes to -infinity there, "M-dressed" when it grows.
struct AsymState {
    Cx chi;       // tanh phase constant
    Cx pre1, pre2;  // background prefactors per component
};

AsymState asym_state(const SolitonConfig& config, int soliton, Epoch epoch) {
    const InteractionConstants ic = interaction_constants(config);
    const double v1 = soliton_velocity_frame(config, 1);
    const double v2 = soliton_velocity_frame(config, 2);
    if (std::abs(v1 - v2) <= 1e-12 * (1.0 + std::abs(v1) + std::abs(v2))) {
        throw InvalidConfigError("soliton velocities coincide; no collision asymptotics");
    }
    const double vj = (soliton == 1) ? v1 : v2;
    const double vo = (soliton == 1) ? v2 : v1;
    const Cx po = (soliton == 1) ? config.p()[1] : config.p()[0];
    const double tdir = (epoch == Epoch::before) ? -1.0 : 1.0;
    const double other_growth = po.real() * (vj - vo) * tdir;

    const Cx cj = (soliton == 1) ? Cx{ic.C1, 0.0} : Cx{ic.C2, 0.0};
    AsymState st;
    if (other_growth < 0.0) {
        st.chi = cj;
        st.pre1 = {1.0, 0.0};
        st.pre2 = {1.0, 0.0};
    } else {
        st.chi = cj * ic.M;
        st.pre1 = (soliton == 1) ? ic.A2 : ic.A1;
        st.pre2 = (soliton == 1) ? ic.B2 : ic.B1;
    }
    return st;
}

}  // namespace

FieldSample asymptotic_field(const SolitonConfig& config, int soliton, Epoch epoch, double x,
                             double t) {
    require_n(config, 2, "asymptotic_field");
    if (soliton != 1 && soliton != 2) throw InvalidConfigError("soliton must be 1 or 2");
    const AsymState st = asym_state(config, soliton, epoch);
    const InteractionConstants ic = interaction_constants(config);
    const Cx aj = (soliton == 1) ? ic.A1 : ic.A2;
    const Cx bj = (soliton == 1) ? ic.B1 : ic.B2;
    const Cx p = config.p()[soliton - 1];
    const double xt = x - config.frame_shift() * t;
    const double rexi =
        p.real() * xt + (p * p * p).real() * t + config.xi0()[soliton - 1].real();
    const Cx w = std::tanh(rexi + half_log_phase(st.chi));
    FieldSample out;
    out.x = x;
    out.t = t;
    out.u1 = config.rho()[0] * st.pre1 * theta_phase(config, 0, x, t) *
             (0.5 * (1.0 + aj) - 0.5 * (1.0 - aj) * w);
    out.u2 = config.rho()[1] * st.pre2 * theta_phase(config, 1, x, t) *
             (0.5 * (1.0 + bj) - 0.5 * (1.0 - bj) * w);
    return out;
}

double asymptotic_dip_position(const SolitonConfig& config, int soliton, Epoch epoch, double t) {
    const AsymState st = asym_state(config, soliton, epoch);
    const Cx p = config.p()[soliton - 1];
    const double xt_dip = (-0.5 * std::log(std::abs(st.chi)) - (p * p * p).real() * t -
                           config.xi0()[soliton - 1].real()) /
                          p.real();
    return xt_dip + config.frame_shift() * t;
}

double collision_time(const SolitonConfig& config, double eps, double window) {
    require_n(config, 2, "collision_time");
    const double v1 = soliton_velocity_frame(config, 1);
    const double v2 = soliton_velocity_frame(config, 2);
    const double dv = std::abs(v1 - v2);
    if (dv <= 1e-12) throw InvalidConfigError("soliton velocities coincide");
    const double target = -0.5 * std::log(eps);
    double tmax = 0.0;
    for (int j = 0; j < 2; ++j) {
        const double rej = config.p()[j].real();
        const double reo = config.p()[1 - j].real();
        tmax = std::max(tmax, (target + reo * window / rej) / (reo * dv));
    }
    return tmax;
}

double asymptotic_agreement(const SolitonConfig& config, int soliton, Epoch epoch, double T,
                            double window, int npoints) {
    const double t = (epoch == Epoch::before) ? -T : T;
    const double rej = config.p()[soliton - 1].real();
    const double center = asymptotic_dip_position(config, soliton, epoch, t);
    const FieldEvaluator eval(config);
    double sup = 0.0;
    for (int i = 0; i < npoints; ++i) {
        const double x = center + window / rej * (2.0 * i / (npoints - 1) - 1.0);
        if (eval.f_margin(x, t) < 0.05) continue;  // pole neighborhood
        const FieldSample full = eval(x, t);
        const FieldSample asym = asymptotic_field(config, soliton, epoch, x, t);
        sup = std::max({sup, std::abs(full.u1 - asym.u1), std::abs(full.u2 - asym.u2)});
    }
    return sup;
}

}  // namespace ccmkdv
