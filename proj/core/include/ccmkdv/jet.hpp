#pragma once

#include <array>
#include <complex>

#include "ccmkdv/errors.hpp"

namespace ccmkdv {

using Cx = std::complex<double>;

/// Truncated bivariate Taylor value: derivative values d^a_x d^b_t F for
/// a <= 3, b <= 1. Arithmetic follows the Leibniz/Taylor rules with
/// consistent truncation, so jets propagate exact derivatives through
/// products, quotients, and exponentials.
class Jet {
public:
    static constexpr int kXOrder = 3;
    static constexpr int kTOrder = 1;

    Jet() { d_.fill(Cx{0.0, 0.0}); }

    static Jet constant(Cx value) {
        Jet j;
        j.at(0, 0) = value;
        return j;
    }

    /// Jet of coeff * exp(kx*x + kt*t) at the point where the exponential
    /// has value `expval` (caller supplies exp(kx*x + kt*t), possibly scaled).
    static Jet exponential(Cx coeff, Cx kx, Cx kt, Cx expval);

    Cx& at(int a, int b) { return d_[static_cast<size_t>(a) * (kTOrder + 1) + b]; }
    Cx at(int a, int b) const { return d_[static_cast<size_t>(a) * (kTOrder + 1) + b]; }

    Cx value() const { return at(0, 0); }

    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator*=(Cx s);
    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(Jet a, Cx s) { return a *= s; }
    friend Jet operator*(Cx s, Jet a) { return a *= s; }

    /// Truncated Leibniz product.
    Jet operator*(const Jet& o) const;

    /// 1/this; throws PoleError when the value is zero.
    Jet reciprocal() const;

    /// exp(this), truncated Taylor composition.
    static Jet exp_of(const Jet& j);

    /// Jet of the complex conjugate function (valid for real x, t).
    Jet conjugated() const;

private:
    std::array<Cx, (kXOrder + 1) * (kTOrder + 1)> d_;
};

}  // namespace ccmkdv
