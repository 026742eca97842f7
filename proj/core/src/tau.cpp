#include "ccmkdv/tau.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "ccmkdv/pfaffian.hpp"

namespace ccmkdv {

namespace {

// The expansion and the numeric backend both assemble in extended precision:
// the signed matching products cancel by many digits for clustered spectral
// parameters, and the surviving small coefficients must stay accurate
// relative to themselves.
using Lx = std::complex<long double>;

Lx int_pow(Lx z, int k) {
    if (k < 0) return Lx{1.0L, 0.0L} / int_pow(z, -k);
    Lx r{1.0L, 0.0L};
    for (int i = 0; i < k; ++i) r *= z;
    return r;
}

// ((p + a)/(p - a))^k with pole detection on both branches.
Lx shift_factor(Lx p, Lx a, int k) {
    if (k == 0) return {1.0L, 0.0L};
    const Lx num = p + a, den = p - a;
    if ((k > 0 && std::abs(den) == 0.0L) || (k < 0 && std::abs(num) == 0.0L)) {
        throw PoleError("spectral parameter coincides with a discrete shift pole (p = ±a)");
    }
    return int_pow(num / den, k);
}

struct EntryTable {
    int n2;                      // 2N
    std::vector<Lx> constant;    // n2*n2, antisym
    std::vector<Lx> expcoeff;    // n2*n2, antisym: coefficient of e^{xi_i + xi_j}
    Lx cst(int i, int j) const { return constant[static_cast<size_t>(i) * n2 + j]; }
    Lx wgt(int i, int j) const { return expcoeff[static_cast<size_t>(i) * n2 + j]; }
};

EntryTable build_entries(const GeneralTau& tau, TauIndex k) {
    const int n2 = static_cast<int>(tau.p.size());
    EntryTable tab;
    tab.n2 = n2;
    tab.constant.assign(static_cast<size_t>(n2) * n2, Lx{0.0L, 0.0L});
    tab.expcoeff.assign(static_cast<size_t>(n2) * n2, Lx{0.0L, 0.0L});

    std::vector<Lx> d(n2);
    for (int i = 0; i < n2; ++i) {
        d[i] = shift_factor(Lx{tau.p[i]}, Lx{tau.a1}, k.k1) *
               shift_factor(Lx{tau.p[i]}, Lx{tau.a2}, k.k2) * std::exp(Lx{tau.xi0[i]});
    }
    for (int i = 0; i < n2; ++i) {
        for (int j = i + 1; j < n2; ++j) {
            const Lx pi{tau.p[i]}, pj{tau.p[j]};
            const Lx denom = pi + pj;
            if (std::abs(denom) == 0.0L) {
                std::ostringstream os;
                os << "entry (" << i + 1 << "," << j + 1 << ") has p_i + p_j = 0";
                throw PoleError(os.str());
            }
            const Lx w = (pi - pj) / denom * d[i] * d[j];
            const Lx c{tau.constant_part(i, j)};
            tab.constant[static_cast<size_t>(i) * n2 + j] = c;
            tab.constant[static_cast<size_t>(j) * n2 + i] = -c;
            tab.expcoeff[static_cast<size_t>(i) * n2 + j] = w;
            tab.expcoeff[static_cast<size_t>(j) * n2 + i] = -w;
        }
    }
    return tab;
}

// Perfect-matching expansion accumulated per exponent subset (bitmask keys
// merge exactly; slope merging happens once at the end).
void expand_rec(const EntryTable& tab, std::vector<int>& active, Lx coeff, unsigned mask,
                std::map<unsigned, Lx>& acc) {
    if (active.empty()) {
        acc[mask] += coeff;
        return;
    }
    const int first = active[0];
    long double sign = 1.0L;
    for (size_t pos = 1; pos < active.size(); ++pos) {
        const int partner = active[pos];
        std::vector<int> rest;
        rest.reserve(active.size() - 2);
        for (size_t q = 1; q < active.size(); ++q)
            if (q != pos) rest.push_back(active[q]);
        const Lx c = tab.cst(first, partner);
        if (c != Lx{0.0L, 0.0L}) expand_rec(tab, rest, coeff * sign * c, mask, acc);
        const Lx w = tab.wgt(first, partner);
        if (w != Lx{0.0L, 0.0L}) {
            expand_rec(tab, rest, coeff * sign * w,
                       mask | (1u << first) | (1u << partner), acc);
        }
        sign = -sign;
    }
}

}  // namespace

GeneralTau GeneralTau::from_config(const SolitonConfig& config) {
    GeneralTau tau;
    tau.p = config.full_p();
    tau.xi0 = config.full_xi0();
    tau.a1 = Cx{0.0, -config.alpha()[0]};
    tau.a2 = Cx{0.0, -config.alpha()[1]};
    return tau;
}

Cx GeneralTau::constant_part(int i, int j) const {
    const int n2 = static_cast<int>(p.size());
    if (cij_upper.empty()) {
        return (j == n2 - 1 - i) ? Cx{1.0, 0.0} : Cx{0.0, 0.0};
    }
    const size_t idx = static_cast<size_t>(i) * n2 - static_cast<size_t>(i) * (i + 1) / 2 +
                       (j - i - 1);
    return cij_upper[idx];
}

ExpSum GeneralTau::expsum(TauIndex index, int max_n) const {
    const int n2 = static_cast<int>(p.size());
    if (n2 % 2 != 0) throw InvalidConfigError("tau parameter list must have even length");
    if (n2 / 2 > max_n) {
        throw SizeLimitError("exponential-sum expansion limited to " + std::to_string(max_n) +
                             " solitons, got " + std::to_string(n2 / 2));
    }
    if (n2 == 0) return ExpSum::constant({1.0, 0.0});

    const EntryTable tab = build_entries(*this, index);
    std::vector<int> active(n2);
    for (int i = 0; i < n2; ++i) active[i] = i;
    std::map<unsigned, Lx> acc;
    expand_rec(tab, active, Lx{1.0L, 0.0L}, 0u, acc);

    ExpSum out;
    for (const auto& [mask, coeff] : acc) {
        Cx kx{0.0, 0.0}, kt{0.0, 0.0};
        for (int i = 0; i < n2; ++i) {
            if (mask >> i & 1u) {
                kx += p[i];
                kt += p[i] * p[i] * p[i];
            }
        }
        out.add_term(Cx{static_cast<double>(coeff.real()), static_cast<double>(coeff.imag())},
                     kx, kt);
    }
    return out.merge();
}

GeneralTau::ScaledValue GeneralTau::eval_pfaffian_scaled(TauIndex index, double x,
                                                         double t) const {
    const int n2 = static_cast<int>(p.size());
    if (n2 == 0) return {{1.0, 0.0}, 0.0};
    const EntryTable tab = build_entries(*this, index);

    // Balance Pf(D A D) = prod(d_i) Pf(A): pull exp(max(Re xi_i, 0)) out of
    // each index so matrix entries stay bounded.
    std::vector<Lx> s(n2);
    std::vector<long double> m(n2);
    long double total_shift = 0.0L;
    for (int i = 0; i < n2; ++i) {
        const Lx xi = Lx{p[i]} * (long double)x + Lx{p[i]} * Lx{p[i]} * Lx{p[i]} * (long double)t;
        m[i] = std::max(xi.real(), 0.0L);
        s[i] = std::exp(xi - m[i]);
        total_shift += m[i];
    }
    std::vector<Lx> a(static_cast<size_t>(n2) * n2, Lx{0.0L, 0.0L});
    for (int i = 0; i < n2; ++i) {
        for (int j = i + 1; j < n2; ++j) {
            const Lx val = tab.cst(i, j) * std::exp(-m[i] - m[j]) + tab.wgt(i, j) * s[i] * s[j];
            a[static_cast<size_t>(i) * n2 + j] = val;
            a[static_cast<size_t>(j) * n2 + i] = -val;
        }
    }
    const Lx pf = detail::pfaffian_eliminate(a, n2);
    return {Cx{static_cast<double>(pf.real()), static_cast<double>(pf.imag())},
            static_cast<double>(total_shift)};
}

Cx GeneralTau::eval_pfaffian(TauIndex index, double x, double t) const {
    const auto [pf, shift] = eval_pfaffian_scaled(index, x, t);
    if (shift > 700.0) {
        const double logmag = shift + std::log(std::max(std::abs(pf), 1e-300));
        if (logmag > 709.0) {
            throw OverflowError("tau value exceeds double range after exponent balancing");
        }
    }
    return pf * std::exp(shift);
}

TauEntry entry(const SolitonConfig& config, TauIndex index, int i, int j) {
    const int n2 = 2 * config.n();
    if (i < 1 || j <= i || j > n2) {
        throw InvalidConfigError("entry indices must satisfy 1 <= i < j <= 2N");
    }
    const GeneralTau tau = GeneralTau::from_config(config);
    const int a = i - 1, b = j - 1;
    const Cx denom = tau.p[a] + tau.p[b];
    if (std::abs(denom) == 0.0) throw PoleError("entry has p_i + p_j = 0");
    const Lx w = (Lx{tau.p[a]} - Lx{tau.p[b]}) / Lx{denom} *
                 shift_factor(Lx{tau.p[a]}, Lx{tau.a1}, index.k1) *
                 shift_factor(Lx{tau.p[b]}, Lx{tau.a1}, index.k1) *
                 shift_factor(Lx{tau.p[a]}, Lx{tau.a2}, index.k2) *
                 shift_factor(Lx{tau.p[b]}, Lx{tau.a2}, index.k2) *
                 std::exp(Lx{tau.xi0[a]} + Lx{tau.xi0[b]});
    TauEntry e;
    e.constant = tau.constant_part(a, b);
    e.exp_part = {Cx{static_cast<double>(w.real()), static_cast<double>(w.imag())},
                  tau.p[a] + tau.p[b],
                  tau.p[a] * tau.p[a] * tau.p[a] + tau.p[b] * tau.p[b] * tau.p[b]};
    return e;
}

ExpSum tau_expsum(const SolitonConfig& config, TauIndex index, int max_n) {
    return GeneralTau::from_config(config).expsum(index, max_n);
}

Cx tau_eval(const SolitonConfig& config, TauIndex index, double x, double t, TauBackend backend) {
    if (!std::isfinite(x) || !std::isfinite(t)) {
        throw InvalidConfigError("tau evaluation requires finite coordinates");
    }
    const GeneralTau tau = GeneralTau::from_config(config);
    if (backend == TauBackend::expsum) return tau.expsum(index).eval(x, t);
    return tau.eval_pfaffian(index, x, t);
}

Jet tau_jet(const SolitonConfig& config, TauIndex index, double x, double t) {
    return tau_expsum(config, index).jet(x, t);
}

ResidualReport verify_conjugacy(const SolitonConfig& config, TauIndex index,
                                std::span<const GridPoint> points) {
    if (points.empty()) throw InvalidConfigError("verify_conjugacy requires points");
    ResidualReport rep;
    rep.equation = "conjugacy";
    const bool small = config.n() <= 5;
    const GeneralTau tau = GeneralTau::from_config(config);
    ExpSum fwd, bwd;
    if (small) {
        fwd = tau.expsum(index);
        bwd = tau.expsum({-index.k1, -index.k2});
    }
    for (const auto& pt : points) {
        const Cx a = small ? fwd.eval(pt.x, pt.t) : tau.eval_pfaffian(index, pt.x, pt.t);
        const Cx b = small ? bwd.eval(pt.x, pt.t)
                           : tau.eval_pfaffian({-index.k1, -index.k2}, pt.x, pt.t);
        const double resid = std::abs(std::conj(a) - b) / std::max(1.0, std::abs(a));
        ++rep.points_evaluated;
        if (resid > rep.max_abs) {
            rep.max_abs = resid;
            rep.worst = pt;
        }
    }
    rep.normalization = 1.0;  // residual is already relative
    return rep;
}

}  // namespace ccmkdv
