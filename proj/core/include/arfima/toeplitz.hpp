#pragma once

#include <span>

#include "arfima/process.hpp"
#include "arfima/types.hpp"

namespace arfima {

/// Output of the multi-right-hand-side Levinson sweep on Toeplitz(gamma).
/// quad(i, k) = v_i' G^{-1} v_k for the supplied columns. When a prediction
/// variance drops below 1e-12 * gamma(0) the matrix is numerically
/// positive semidefinite (the overdifferencing failure mode); psd_failure
/// is set and the numbers must not be used.
struct ToeplitzStats {
    double log_det = 0.0;
    Matrix quad;
    Vector prediction_variances;
    bool psd_failure = false;
};

/// One O(n^2) pass of the Durbin recursion processing every column at once.
/// gamma must cover lags 0..n-1 where n is the common column length.
ToeplitzStats toeplitz_quadratics(std::span<const double> gamma,
                                  const std::vector<std::span<const double>>& columns);

}  // namespace arfima
