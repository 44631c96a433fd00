#pragma once

#include <span>

#include "arfima/estimation.hpp"

namespace arfima {

struct IntervalEstimate {
    double d_hat = 0.0;
    double se = 0.0;
    double level = 0.95;
    double lower = 0.0;
    double upper = 0.0;
    double hessian = 0.0;  // second derivative of the profile log-likelihood
    double step = 1e-3;    // central-difference step actually used
};

/// Central second difference [l(d+h) - 2 l(d) + l(d-h)] / h^2 of the
/// profile log-likelihood in d, holding the winning interval fixed.
/// Throws BoundaryTooClose when d_hat sits within 2h of an interval edge.
double profile_hessian_d(std::span<const double> y, const MeanSpec& mean_spec, Order order,
                         double d_bar, Objective objective, double d_hat, double h = 1e-3,
                         const FitOptions& options = {});

/// d_hat +- z * SE with SE = 1 / sqrt(-Hessian); shrinks the step when the
/// estimate is too close to an interval edge for the default h.
IntervalEstimate confidence_interval(std::span<const double> y, const MeanSpec& mean_spec,
                                     Order order, double d_bar, Objective objective,
                                     const FitResult& fit, double level = 0.95, double h = 1e-3,
                                     const FitOptions& options = {});

struct MeanReversionDecision {
    double threshold = 1.0;
    double alpha = 0.05;
    double d_hat = 0.0;
    double upper_bound = 0.0;  // upper end of the (1 - 2 alpha) interval
    bool reject = false;       // H0: d >= threshold rejected
};

/// One-sided level-alpha test of H0: d >= threshold, rejecting when the
/// upper bound of the (1 - 2 alpha) two-sided interval stays below it.
MeanReversionDecision test_mean_reversion(std::span<const double> y, const MeanSpec& mean_spec,
                                          Order order, double d_bar, Objective objective,
                                          const FitResult& fit, double threshold = 1.0,
                                          double alpha = 0.05, const FitOptions& options = {});

double normal_quantile(double prob);       // Phi^{-1}(prob)
double normal_upper_quantile(double tail); // Phi^{-1}(1 - tail), exact for tiny tails

}  // namespace arfima
