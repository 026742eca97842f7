#include "ccmkdv/jet.hpp"

namespace ccmkdv {

namespace {
constexpr double kBinom[4][4] = {
    {1, 0, 0, 0},
    {1, 1, 0, 0},
    {1, 2, 1, 0},
    {1, 3, 3, 1},
};
}

Jet Jet::exponential(Cx coeff, Cx kx, Cx kt, Cx expval) {
    Jet j;
    Cx xpow{1.0, 0.0};
    for (int a = 0; a <= kXOrder; ++a) {
        Cx v = coeff * xpow * expval;
        j.at(a, 0) = v;
        j.at(a, 1) = v * kt;
        xpow *= kx;
    }
    return j;
}

Jet& Jet::operator+=(const Jet& o) {
    for (size_t i = 0; i < d_.size(); ++i) d_[i] += o.d_[i];
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    for (size_t i = 0; i < d_.size(); ++i) d_[i] -= o.d_[i];
    return *this;
}

Jet& Jet::operator*=(Cx s) {
    for (auto& v : d_) v *= s;
    return *this;
}

Jet Jet::operator*(const Jet& o) const {
    Jet out;
    for (int a = 0; a <= kXOrder; ++a) {
        for (int b = 0; b <= kTOrder; ++b) {
            Cx acc{0.0, 0.0};
            for (int i = 0; i <= a; ++i)
                for (int j = 0; j <= b; ++j)
                    acc += kBinom[a][i] * kBinom[b][j] * at(i, j) * o.at(a - i, b - j);
            out.at(a, b) = acc;
        }
    }
    return out;
}

Jet Jet::reciprocal() const {
    const Cx v = at(0, 0);
    if (v == Cx{0.0, 0.0}) throw PoleError("jet reciprocal of zero value");
    Jet r;
    r.at(0, 0) = 1.0 / v;
    // solve (this * r)[a,b] = delta_{(a,b),(0,0)} in increasing total order
    for (int total = 1; total <= kXOrder + kTOrder; ++total) {
        for (int a = 0; a <= kXOrder; ++a) {
            const int b = total - a;
            if (b < 0 || b > kTOrder) continue;
            Cx acc{0.0, 0.0};
            for (int i = 0; i <= a; ++i)
                for (int j = 0; j <= b; ++j) {
                    if (i == 0 && j == 0) continue;
                    acc += kBinom[a][i] * kBinom[b][j] * at(i, j) * r.at(a - i, b - j);
                }
            r.at(a, b) = -acc / v;
        }
    }
    return r;
}

Jet Jet::exp_of(const Jet& j) {
    // exp(v + D) = exp(v) * sum_k D^k / k!, D nilpotent beyond total order 4
    const Cx v = j.at(0, 0);
    Jet delta = j;
    delta.at(0, 0) = Cx{0.0, 0.0};
    Jet sum = Jet::constant(Cx{1.0, 0.0});
    Jet power = Jet::constant(Cx{1.0, 0.0});
    double fact = 1.0;
    for (int k = 1; k <= kXOrder + kTOrder; ++k) {
        power = power * delta;
        fact *= k;
        sum += power * Cx{1.0 / fact, 0.0};
    }
    return sum * std::exp(v);
}

Jet Jet::conjugated() const {
    Jet out;
    for (int a = 0; a <= kXOrder; ++a)
        for (int b = 0; b <= kTOrder; ++b) out.at(a, b) = std::conj(at(a, b));
    return out;
}

}  // namespace ccmkdv
