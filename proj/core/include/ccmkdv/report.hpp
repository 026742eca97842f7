#pragma once

#include <string>
#include <vector>

namespace ccmkdv {

struct GridPoint {
    double x{0.0};
    double t{0.0};
};

/// Normalized residual summary for one verified identity over a point set.
/// normalization is the magnitude of the equation's largest single term, so
/// relative() stays meaningful under exponential tails. The worst point
/// maximizes the pointwise ratio |residual| / largest-term; max_abs and
/// normalization are recorded there.
struct ResidualReport {
    std::string equation;
    int points_evaluated{0};
    int points_skipped{0};
    double max_abs{0.0};
    double normalization{0.0};
    GridPoint worst;
    std::string note;

    double relative() const {
        return normalization > 0.0 ? max_abs / normalization : max_abs;
    }
};

}  // namespace ccmkdv
