#pragma once

#include <complex>
#include <vector>

#include "ccmkdv/jet.hpp"

namespace ccmkdv {

struct ExpTerm {
    Cx coeff;
    Cx kx;
    Cx kt;
};

/// Finite sum of complex exponentials coeff * exp(kx*x + kt*t), closed under
/// differentiation, products, and Hirota bilinear operators.
///
/// Canonical form (after merge()): terms sorted by slopes, terms with equal
/// (kx, kt) up to absolute tolerance 1e-12 combined, coefficients below
/// 1e-14 * max|coeff| dropped.
class ExpSum {
public:
    static constexpr double kSlopeTol = 1e-12;
    static constexpr double kDropTol = 1e-14;

    ExpSum() = default;

    static ExpSum constant(Cx value);
    static ExpSum single(Cx coeff, Cx kx, Cx kt);

    void add_term(Cx coeff, Cx kx, Cx kt) { terms_.push_back({coeff, kx, kt}); }
    void append(const ExpSum& other);

    /// Canonicalizes in place; returns *this.
    ExpSum& merge();

    const std::vector<ExpTerm>& terms() const { return terms_; }
    size_t size() const { return terms_.size(); }

    /// Largest real exponent kx*x + kt*t over terms; 0 for the empty sum.
    double max_exponent(double x, double t) const;

    /// Plain evaluation; exponents are centered internally and the result is
    /// rescaled, so only a genuinely huge result overflows (OverflowError).
    Cx eval(double x, double t) const;

    /// Evaluation scaled by exp(-shift); callers evaluating ratios pass one
    /// joint shift to numerator and denominator.
    Cx eval_shifted(double x, double t, double shift) const;

    /// Largest single-term magnitude |coeff| * exp(Re exponent) at the point,
    /// scaled by exp(-shift). Used as residual normalization.
    double max_term_magnitude(double x, double t, double shift = 0.0) const;

    /// Derivative values d^a_x d^b_t up to (3,1), exact by term-by-term
    /// differentiation. Centered like eval.
    Jet jet(double x, double t) const;
    Jet jet_shifted(double x, double t, double shift) const;

    ExpSum derivative(int dx_order, int dt_order) const;
    ExpSum conjugated() const;
    ExpSum scaled(Cx factor) const;

    /// Rewrites exponents for the substitution x -> x - gamma*t (moving frame
    /// to lab frame): kt becomes kt - gamma*kx.
    ExpSum with_frame_shift(double gamma) const;

    friend ExpSum operator+(const ExpSum& a, const ExpSum& b);
    friend ExpSum operator-(const ExpSum& a, const ExpSum& b);

private:
    std::vector<ExpTerm> terms_;
};

}  // namespace ccmkdv
