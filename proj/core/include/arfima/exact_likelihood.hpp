#pragma once

#include <optional>
#include <span>

#include "arfima/toeplitz.hpp"
#include "arfima/types.hpp"

namespace arfima {

/// One exact-likelihood evaluation of the differenced data under the
/// stationary constrained model, with the mean coefficients and sigma2
/// either profiled analytically or held fixed.
struct ProfileEval {
    double loglik = 0.0;
    Vector mean_coeffs;
    double sigma2 = 0.0;
    Vector prediction_variances;
    bool psd_flag = false;  // numerically positive-semidefinite covariance
};

struct ExactEvalOptions {
    bool profile = true;
    std::optional<double> fixed_sigma2;  // used when profile is false
    Vector fixed_mean;                   // used when profile is false; may be empty
};

/// Gaussian log-likelihood of x_diff ~ N(D beta, sigma2 * G1(d', phi,
/// theta~)), G1 the unit-innovation-variance Toeplitz covariance, computed
/// through one Levinson sweep. Profiling sets beta by GLS and sigma2 to the
/// residual quadratic form over n'.
ProfileEval exact_loglik(std::span<const double> x_diff, const Matrix& design_diff, double d_prime,
                         std::span<const double> phi, std::span<const double> theta_free, int j,
                         const ExactEvalOptions& options = {});

/// Columns of the differenced design that survive differencing and are
/// linearly independent; returns the reduced matrix and kept indices.
std::pair<Matrix, std::vector<int>> prune_design(const Matrix& design_diff);

}  // namespace arfima
