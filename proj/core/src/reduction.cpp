#include "ccmkdv/reduction.hpp"

#include <cmath>
#include <sstream>

namespace ccmkdv {

double reduction_residual(Cx p, std::array<double, 2> rho, std::array<double, 2> alpha) {
    const Cx p2 = p * p;
    double sum = 0.0;
    for (int nu = 0; nu < 2; ++nu) {
        if (rho[nu] == 0.0) continue;
        const double a2 = alpha[nu] * alpha[nu];
        const double denom = std::norm(p2 + a2);
        if (denom < 1e-300) {
            std::ostringstream os;
            os << "reduction condition pole: p^2 = -alpha_" << (nu + 1) << "^2 at p = ("
               << p.real() << ", " << p.imag() << ")";
            throw PoleError(os.str());
        }
        sum += 2.0 * a2 * rho[nu] * rho[nu] / denom;
    }
    return sum - 1.0;
}

double solve_re(double im_p, std::array<double, 2> rho, std::array<double, 2> alpha,
                std::pair<double, double> bracket, SolveOptions opts) {
    auto f = [&](double re) { return reduction_residual(Cx{re, im_p}, rho, alpha); };

    double lo = bracket.first, hi = bracket.second;
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;

    // Locate the leftmost sign change: the residual can have two roots in
    // Re(p) at fixed Im(p), so scan before bisecting.
    if (flo * fhi > 0.0) {
        const int scan = 256;
        bool found = false;
        double prev = lo, fprev = flo;
        for (int i = 1; i <= scan; ++i) {
            const double xx = lo + (hi - lo) * i / scan;
            const double fx = f(xx);
            if (fprev * fx <= 0.0) {
                hi = xx;
                fhi = fx;
                lo = prev;
                flo = fprev;
                found = true;
                break;
            }
            prev = xx;
            fprev = fx;
        }
        if (!found) {
            std::ostringstream os;
            os << "no sign change of the reduction residual over bracket [" << bracket.first
               << ", " << bracket.second << "] at Im(p) = " << im_p << ": residual(" << bracket.first
               << ") = " << flo << ", residual(" << bracket.second << ") = " << fhi;
            throw NoSignChangeError(os.str());
        }
    } else {
        // Even with a sign change over the full bracket, prefer the smallest
        // root: scan for the first sub-interval with a change.
        const int scan = 256;
        double prev = lo, fprev = flo;
        for (int i = 1; i <= scan; ++i) {
            const double xx = lo + (hi - lo) * i / scan;
            const double fx = f(xx);
            if (fprev * fx <= 0.0) {
                lo = prev;
                flo = fprev;
                hi = xx;
                fhi = fx;
                break;
            }
            prev = xx;
            fprev = fx;
        }
    }

    double mid = 0.5 * (lo + hi);
    for (int iter = 0; iter < opts.max_iter; ++iter) {
        mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (std::abs(fm) < opts.tol) break;
        if (flo * fm <= 0.0) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }

    // Newton polish with a central-difference slope.
    double root = mid;
    for (int iter = 0; iter < 16; ++iter) {
        const double fr = f(root);
        if (std::abs(fr) < opts.tol) return root;
        const double h = std::max(1e-7, 1e-7 * std::abs(root));
        const double slope = (f(root + h) - f(root - h)) / (2.0 * h);
        if (slope == 0.0) break;
        const double next = root - fr / slope;
        if (next <= bracket.first || next >= bracket.second) break;
        root = next;
    }
    if (std::abs(f(root)) < opts.tol) return root;

    std::ostringstream os;
    os << "reduction solve did not converge after " << opts.max_iter
       << " iterations; residual = " << f(root);
    throw NonConvergenceError(os.str());
}

FamilyScan family_scan(std::array<double, 2> rho, std::array<double, 2> alpha, double im_lo,
                       double im_hi, int n, std::pair<double, double> bracket, SolveOptions opts) {
    if (n < 2) throw InvalidConfigError("family_scan requires n >= 2");
    FamilyScan result;
    for (int i = 0; i < n; ++i) {
        const double im = im_lo + (im_hi - im_lo) * i / (n - 1);
        try {
            const double re = solve_re(im, rho, alpha, bracket, opts);
            const Cx p{re, im};
            result.points.push_back({p, reduction_residual(p, rho, alpha)});
        } catch (const Error& e) {
            result.failures.push_back({i, im, e.what()});
        }
    }
    return result;
}

}  // namespace ccmkdv
