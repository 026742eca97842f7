#include "ccmkdv/expsum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ccmkdv/errors.hpp"

namespace ccmkdv {

namespace {

bool slope_close(Cx a, Cx b) {
    return std::abs(a.real() - b.real()) <= ExpSum::kSlopeTol &&
           std::abs(a.imag() - b.imag()) <= ExpSum::kSlopeTol;
}

Cx int_pow(Cx z, int k) {
    Cx r{1.0, 0.0};
    for (int i = 0; i < k; ++i) r *= z;
    return r;
}

}  // namespace

ExpSum ExpSum::constant(Cx value) {
    ExpSum s;
    s.add_term(value, {0.0, 0.0}, {0.0, 0.0});
    return s;
}

ExpSum ExpSum::single(Cx coeff, Cx kx, Cx kt) {
    ExpSum s;
    s.add_term(coeff, kx, kt);
    return s;
}

void ExpSum::append(const ExpSum& other) {
    terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
}

ExpSum& ExpSum::merge() {
    if (terms_.empty()) return *this;
    std::sort(terms_.begin(), terms_.end(), [](const ExpTerm& a, const ExpTerm& b) {
        if (a.kx.real() != b.kx.real()) return a.kx.real() < b.kx.real();
        if (a.kx.imag() != b.kx.imag()) return a.kx.imag() < b.kx.imag();
        if (a.kt.real() != b.kt.real()) return a.kt.real() < b.kt.real();
        return a.kt.imag() < b.kt.imag();
    });
    std::vector<ExpTerm> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        if (!out.empty() && slope_close(out.back().kx, t.kx) && slope_close(out.back().kt, t.kt)) {
            out.back().coeff += t.coeff;
        } else {
            out.push_back(t);
        }
    }
    double maxc = 0.0;
    for (const auto& t : out) maxc = std::max(maxc, std::abs(t.coeff));
    std::erase_if(out, [maxc](const ExpTerm& t) { return std::abs(t.coeff) < kDropTol * maxc; });
    terms_ = std::move(out);
    return *this;
}

double ExpSum::max_exponent(double x, double t) const {
    double m = 0.0;
    bool first = true;
    for (const auto& term : terms_) {
        const double e = term.kx.real() * x + term.kt.real() * t;
        if (first || e > m) m = e;
        first = false;
    }
    return first ? 0.0 : m;
}

Cx ExpSum::eval(double x, double t) const {
    const double m = max_exponent(x, t);
    const Cx scaled = eval_shifted(x, t, m);
    // result = scaled * exp(m); overflow only if the function itself is huge
    if (m > 700.0) {
        const double logmag = m + std::log(std::max(std::abs(scaled), 1e-300));
        if (logmag > 709.0) {
            throw OverflowError("exponential sum magnitude exceeds double range (log ~ " +
                                std::to_string(logmag) + ")");
        }
    }
    return scaled * std::exp(m);
}

Cx ExpSum::eval_shifted(double x, double t, double shift) const {
    Cx sum{0.0, 0.0};
    for (const auto& term : terms_) {
        sum += term.coeff * std::exp(term.kx * x + term.kt * t - shift);
    }
    return sum;
}

double ExpSum::max_term_magnitude(double x, double t, double shift) const {
    double m = 0.0;
    for (const auto& term : terms_) {
        const double e = term.kx.real() * x + term.kt.real() * t - shift;
        m = std::max(m, std::abs(term.coeff) * std::exp(e));
    }
    return m;
}

Jet ExpSum::jet(double x, double t) const {
    const double m = max_exponent(x, t);
    Jet j = jet_shifted(x, t, m);
    if (m > 700.0) {
        const double logmag = m + std::log(std::max(std::abs(j.value()), 1e-300));
        if (logmag > 709.0) {
            throw OverflowError("exponential sum jet exceeds double range");
        }
    }
    return j * std::exp(Cx{m, 0.0});
}

Jet ExpSum::jet_shifted(double x, double t, double shift) const {
    Jet j;
    for (const auto& term : terms_) {
        const Cx e = std::exp(term.kx * x + term.kt * t - shift);
        j += Jet::exponential(term.coeff, term.kx, term.kt, e);
    }
    return j;
}

ExpSum ExpSum::derivative(int dx_order, int dt_order) const {
    ExpSum out;
    out.terms_.reserve(terms_.size());
    for (const auto& term : terms_) {
        out.add_term(term.coeff * int_pow(term.kx, dx_order) * int_pow(term.kt, dt_order),
                     term.kx, term.kt);
    }
    return out;
}

ExpSum ExpSum::conjugated() const {
    ExpSum out;
    out.terms_.reserve(terms_.size());
    for (const auto& term : terms_) {
        out.add_term(std::conj(term.coeff), std::conj(term.kx), std::conj(term.kt));
    }
    return out;
}

ExpSum ExpSum::scaled(Cx factor) const {
    ExpSum out;
    out.terms_.reserve(terms_.size());
    for (const auto& term : terms_) out.add_term(factor * term.coeff, term.kx, term.kt);
    return out;
}

ExpSum ExpSum::with_frame_shift(double gamma) const {
    ExpSum out;
    out.terms_.reserve(terms_.size());
    for (const auto& term : terms_) {
        out.add_term(term.coeff, term.kx, term.kt - gamma * term.kx);
    }
    return out;
}

ExpSum operator+(const ExpSum& a, const ExpSum& b) {
    ExpSum out = a;
    out.append(b);
    return out.merge();
}

ExpSum operator-(const ExpSum& a, const ExpSum& b) {
    ExpSum out = a;
    out.append(b.scaled({-1.0, 0.0}));
    return out.merge();
}

}  // namespace ccmkdv
