#pragma once

#include <functional>
#include <optional>
#include <span>

#include "arfima/estimation.hpp"
#include "arfima/uncertainty.hpp"

namespace arfima {

struct NonPositiveCurvature : Error {
    using Error::Error;
};

struct AdaptiveConfig {
    double delta = 0.01;      // finite-difference step for the boundary slope
    double epsilon = 0.5;     // 0.5 is BND; smaller is BFR(epsilon)
    double d_bar_start = 0.5;
    double d_bar_max = 5.5;   // safety cap; the paper's loop has no bound
    Objective objective = Objective::exact();
    FitOptions fit_options;
};

struct AdaptiveStep {
    double d_bar = 0.0;
    double slope = 0.0;
    bool escalated_by_slope = false;
    bool fitted = false;
    double d_hat = 0.0;
    double percentile = 0.0;
    bool escalated_by_percentile = false;
};

struct AdaptiveTrace {
    std::vector<AdaptiveStep> steps;
    std::optional<FitResult> final_fit;
    double d_bar_final = 0.0;
    bool cap_reached = false;
};

/// [l(d_bar - delta) - l(d_bar - 2 delta)] / delta on the profile objective;
/// positive means the likelihood is still rising at the boundary.
double boundary_slope(std::span<const double> y, const MeanSpec& mean_spec, Order order,
                      double d_bar, Objective objective, double delta,
                      const FitOptions& options = {});

/// Same difference quotient on an arbitrary profile function.
double boundary_slope_of(const std::function<double(double)>& profile, double d_bar, double delta);

/// d_hat + z_{1-epsilon} / sqrt(curvature * (n - m - p - q)), curvature the
/// magnitude of the per-observation profile curvature at d_hat. Throws
/// NonPositiveCurvature when no percentile can be formed.
double bfr_percentile(double d_hat, double curvature, int n, int m, int p, int q, double epsilon);

/// The stepwise escalation procedure: escalate d_bar by 1 while the
/// boundary slope is positive, then fit and escalate further while the
/// (1-epsilon) percentile of d_hat reaches d_bar; stop otherwise.
AdaptiveTrace adaptive_fit(std::span<const double> y, const MeanSpec& mean_spec, Order order,
                           const AdaptiveConfig& config);

}  // namespace arfima
