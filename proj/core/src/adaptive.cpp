#include "arfima/adaptive.hpp"

#include <cmath>
#include <limits>

namespace arfima {

double boundary_slope_of(const std::function<double(double)>& profile, double d_bar, double delta) {
    if (!(delta > 0.0)) throw Error("boundary_slope: delta must be positive");
    return (profile(d_bar - delta) - profile(d_bar - 2.0 * delta)) / delta;
}

double boundary_slope(std::span<const double> y, const MeanSpec& mean_spec, Order order,
                      double d_bar, Objective objective, double delta, const FitOptions& options) {
    return boundary_slope_of(
        [&](double d) { return profile_value(y, mean_spec, order, d_bar, objective, d, options); },
        d_bar, delta);
}

double bfr_percentile(double d_hat, double curvature, int n, int m, int p, int q, double epsilon) {
    if (!(epsilon > 0.0 && epsilon <= 0.5)) throw Error("bfr_percentile: epsilon must be in (0, 0.5]");
    if (!(curvature > 0.0) || !std::isfinite(curvature)) {
        throw NonPositiveCurvature("bfr_percentile: nonpositive profile curvature");
    }
    const double z = (epsilon == 0.5) ? 0.0 : normal_upper_quantile(epsilon);
    const double denom = curvature * static_cast<double>(n - m - p - q);
    if (!(denom > 0.0)) throw NonPositiveCurvature("bfr_percentile: nonpositive scaling");
    return d_hat + z / std::sqrt(denom);
}

AdaptiveTrace adaptive_fit(std::span<const double> y, const MeanSpec& mean_spec, Order order,
                           const AdaptiveConfig& config) {
    if (!(config.delta > 0.0 && config.delta <= 0.05)) {
        throw Error("adaptive_fit: delta must be in (0, 0.05]");
    }
    if (!(config.epsilon > 0.0 && config.epsilon <= 0.5)) {
        throw Error("adaptive_fit: epsilon must be in (0, 0.5]");
    }
    if (!(config.d_bar_start >= 0.5)) throw InvalidBound("adaptive_fit: d_bar_start below 0.5");

    AdaptiveTrace trace;
    const int n = static_cast<int>(y.size());
    double d_bar = config.d_bar_start;
    while (true) {
        if (d_bar > config.d_bar_max) {
            trace.cap_reached = true;
            d_bar = config.d_bar_max;
            AdaptiveStep step;
            step.d_bar = d_bar;
            trace.steps.push_back(step);
            trace.final_fit =
                fit_bounded(y, mean_spec, order, d_bar, config.objective, config.fit_options);
            trace.d_bar_final = d_bar;
            return trace;
        }
        AdaptiveStep step;
        step.d_bar = d_bar;
        step.slope = boundary_slope(y, mean_spec, order, d_bar, config.objective, config.delta,
                                    config.fit_options);
        if (step.slope > 0.0) {
            step.escalated_by_slope = true;
            trace.steps.push_back(step);
            d_bar += 1.0;
            continue;
        }

        const FitResult fit =
            fit_bounded(y, mean_spec, order, d_bar, config.objective, config.fit_options);
        step.fitted = true;
        step.d_hat = fit.d_hat;
        const int m = fit.plan.m;

        bool escalate = false;
        if (config.epsilon == 0.5) {
            // BND: z = 0, the percentile is d_hat itself
            step.percentile = fit.d_hat;
            escalate = step.percentile >= d_bar;
        } else {
            try {
                const double hess = profile_hessian_d(y, mean_spec, order, d_bar, config.objective,
                                                      fit.d_hat, 1e-3, config.fit_options);
                const double n_prime = static_cast<double>(n - m);
                const double curvature = -hess / n_prime;  // per-observation scale
                step.percentile =
                    bfr_percentile(fit.d_hat, curvature, n, m, order.p, order.q, config.epsilon);
                escalate = step.percentile >= d_bar;
            } catch (const NonPositiveCurvature&) {
                escalate = true;
                step.percentile = std::numeric_limits<double>::infinity();
            } catch (const BoundaryTooClose&) {
                escalate = true;
                step.percentile = std::numeric_limits<double>::infinity();
            }
        }
        // the stopping fit must also have an interior argmax
        if (fit.d_hat >= d_bar - 2.0 * config.fit_options.boundary_guard) escalate = true;

        step.escalated_by_percentile = escalate;
        trace.steps.push_back(step);
        if (!escalate) {
            trace.final_fit = fit;
            trace.d_bar_final = d_bar;
            return trace;
        }
        d_bar += 1.0;
    }
}

}  // namespace arfima
