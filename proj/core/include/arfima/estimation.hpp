#pragma once

#include <optional>
#include <span>
#include <string>

#include "arfima/approx_likelihood.hpp"
#include "arfima/exact_likelihood.hpp"
#include "arfima/types.hpp"

namespace arfima {

struct Order {
    int p = 0;
    int q = 0;
};

/// Differencing/search geometry for an upper bound d_bar: difference the
/// data m = ceil(d_bar - 0.5) times and search the k + 1 = m + 3 stationary
/// intervals [-0.5 + m - j, 0.5 + m - j) for j = 0..k, whose union is
/// [-2.5, m + 0.5).
struct BoundPlan {
    double d_bar = 0.5;
    int m = 0;
    int k = 2;

    struct Interval {
        int j = 0;
        double lo = -0.5;
        double hi = 0.5;
    };
    std::vector<Interval> intervals;

    /// Index of the interval containing d; boundary values belong to the
    /// lower-j (closed-left) interval. Returns -1 outside the union.
    int interval_for(double d) const;
};

BoundPlan plan_bounds(double d_bar);

struct IntervalFit {
    int j = 0;
    bool valid = false;
    bool psd_failed = false;
    double d = 0.0;
    Vector phi;
    Vector theta;
    double sigma2 = 0.0;
    Vector mean_coeffs;
    double loglik = 0.0;
};

struct FitResult {
    std::vector<IntervalFit> per_j;
    int j_star = -1;
    double d_hat = 0.0;
    Vector phi_hat;
    Vector theta_hat;
    double sigma2_hat = 0.0;
    Vector mean_hat;
    std::vector<int> kept_design_columns;
    double loglik = 0.0;
    Objective objective;
    BoundPlan plan;
    std::vector<std::string> warnings;

    const IntervalFit& winner() const { return per_j.at(static_cast<std::size_t>(j_star)); }
};

struct FitOptions {
    double boundary_guard = 1e-4;  // eta below each open right endpoint
    double d_tol = 1e-6;
    int presweep = 17;
    int inner_max_evals = 2000;
    bool multistart = true;  // 5 deterministic inner starts
};

/// Internal interval fit: maximize the objective over d in interval j of
/// the plan (and over the free ARMA parameters through the partial
/// autocorrelation reparameterization), mean and sigma2 profiled.
IntervalFit fit_interval(std::span<const double> x_diff, const Matrix& design_diff,
                         const std::optional<Periodogram>& pgram, int j, const BoundPlan& plan,
                         Order order, Objective objective, const FitOptions& options = {});

/// The full fixed-bound procedure: difference, fit every interval, take the
/// argmax. Intervals invalidated by the numerical-PSD failure are skipped
/// and recorded in warnings. Throws AllIntervalsFailed when nothing fits.
FitResult fit_bounded(std::span<const double> y, const MeanSpec& mean_spec, Order order,
                      double d_bar, Objective objective, const FitOptions& options = {});

/// Conditional-sum-of-squares fit on the raw data over d in
/// [d_lo, d_bar - eta]; the competitor baseline with no differencing and no
/// interval structure.
FitResult fit_css(std::span<const double> y, const MeanSpec& mean_spec, Order order, double d_bar,
                  const FitOptions& options = {}, double d_lo = -2.5);

struct ProfilePoint {
    double d = 0.0;
    double loglik = 0.0;  // NaN when the point failed to evaluate
    bool valid = false;
};

/// Profile log-likelihood over a d grid, maximizing the free ARMA
/// parameters per point; the curve the CLI emits for plotting.
std::vector<ProfilePoint> profile_curve(std::span<const double> y, const MeanSpec& mean_spec,
                                        Order order, double d_bar, Objective objective,
                                        std::span<const double> d_grid,
                                        const FitOptions& options = {});

/// Objective value with free ARMA parameters maximized, at one d, using the
/// interval (and constrained MA) that contains it. The building block for
/// profile curves, boundary slopes, and curvature.
double profile_value(std::span<const double> y, const MeanSpec& mean_spec, Order order,
                     double d_bar, Objective objective, double d, const FitOptions& options = {});

}  // namespace arfima
