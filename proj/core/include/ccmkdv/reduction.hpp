#pragma once

#include <array>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "ccmkdv/errors.hpp"

namespace ccmkdv {

using Cx = std::complex<double>;

/// One admissible spectral parameter together with its constraint residual.
struct ConstraintPoint {
    Cx p;
    double residual{0.0};
};

/// Left side minus one of the algebraic constraint an admissible spectral
/// parameter must satisfy:
///   sum_nu 2 alpha_nu^2 rho_nu^2 / |p^2 + alpha_nu^2|^2 - 1.
/// Each term is real by construction. Throws PoleError at p^2 = -alpha_nu^2
/// when rho_nu != 0.
double reduction_residual(Cx p, std::array<double, 2> rho, std::array<double, 2> alpha);

struct SolveOptions {
    double tol{1e-12};
    int max_iter{200};
};

/// Solves reduction_residual(re + i*im_p) = 0 for re inside the bracket,
/// bisection refined by Newton on the real function. Returns the smallest
/// root when the bracket contains several. Throws NoSignChangeError
/// (reporting both endpoint residuals) or NonConvergenceError.
double solve_re(double im_p, std::array<double, 2> rho, std::array<double, 2> alpha,
                std::pair<double, double> bracket, SolveOptions opts = {});

struct FamilyScan {
    struct Failure {
        int index{0};
        double im{0.0};
        std::string message;
    };
    std::vector<ConstraintPoint> points;  // ordered by sample index
    std::vector<Failure> failures;
};

/// Samples the admissible curve at n values of Im(p) in [im_lo, im_hi].
/// Per-sample failures are recorded, not thrown.
FamilyScan family_scan(std::array<double, 2> rho, std::array<double, 2> alpha, double im_lo,
                       double im_hi, int n, std::pair<double, double> bracket,
                       SolveOptions opts = {});

}  // namespace ccmkdv
