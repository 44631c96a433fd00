#include "arfima/uncertainty.hpp"

#include <gsl/gsl_cdf.h>
#include <gsl/gsl_errno.h>

#include <cmath>

namespace arfima {

namespace {
const bool kGslHandlerOff = [] {
    gsl_set_error_handler_off();
    return true;
}();
}  // namespace

double normal_quantile(double prob) { return gsl_cdf_ugaussian_Pinv(prob); }

double normal_upper_quantile(double tail) { return gsl_cdf_ugaussian_Qinv(tail); }

double profile_hessian_d(std::span<const double> y, const MeanSpec& mean_spec, Order order,
                         double d_bar, Objective objective, double d_hat, double h,
                         const FitOptions& options) {
    if (!(h > 0.0)) throw Error("profile_hessian_d: step must be positive");
    if (objective.kind != Objective::Kind::Css) {
        const BoundPlan plan = plan_bounds(d_bar);
        const int j = plan.interval_for(d_hat);
        if (j < 0) throw InvalidBound("profile_hessian_d: estimate outside the searchable range");
        const auto& iv = plan.intervals[static_cast<std::size_t>(j)];
        // d_hat +- h must stay inside the same interval (same constrained MA)
        if (d_hat - iv.lo < 2.0 * h || iv.hi - d_hat < 2.0 * h) {
            throw BoundaryTooClose("profile_hessian_d: estimate within 2h of an interval edge");
        }
    }
    const double f0 = profile_value(y, mean_spec, order, d_bar, objective, d_hat, options);
    const double fp = profile_value(y, mean_spec, order, d_bar, objective, d_hat + h, options);
    const double fm = profile_value(y, mean_spec, order, d_bar, objective, d_hat - h, options);
    return (fp - 2.0 * f0 + fm) / (h * h);
}

IntervalEstimate confidence_interval(std::span<const double> y, const MeanSpec& mean_spec,
                                     Order order, double d_bar, Objective objective,
                                     const FitResult& fit, double level, double h,
                                     const FitOptions& options) {
    if (!(level > 0.0 && level < 1.0)) throw Error("confidence_interval: level must be in (0,1)");
    IntervalEstimate out;
    out.d_hat = fit.d_hat;
    out.level = level;

    double step = h;
    double hess = 0.0;
    bool have = false;
    for (int attempt = 0; attempt < 4 && !have; ++attempt) {
        try {
            hess = profile_hessian_d(y, mean_spec, order, d_bar, objective, fit.d_hat, step, options);
            have = true;
        } catch (const BoundaryTooClose&) {
            step *= 0.25;
        }
    }
    if (!have) throw BoundaryTooClose("confidence_interval: estimate pinned against an interval edge");
    if (!(hess < 0.0)) {
        throw Error("confidence_interval: profile log-likelihood is not locally concave");
    }
    out.hessian = hess;
    out.step = step;
    out.se = 1.0 / std::sqrt(-hess);
    const double z = normal_quantile(0.5 * (1.0 + level));
    out.lower = fit.d_hat - z * out.se;
    out.upper = fit.d_hat + z * out.se;
    return out;
}

MeanReversionDecision test_mean_reversion(std::span<const double> y, const MeanSpec& mean_spec,
                                          Order order, double d_bar, Objective objective,
                                          const FitResult& fit, double threshold, double alpha,
                                          const FitOptions& options) {
    if (!(alpha > 0.0 && alpha < 0.5)) throw Error("test_mean_reversion: alpha must be in (0,0.5)");
    const IntervalEstimate ci =
        confidence_interval(y, mean_spec, order, d_bar, objective, fit, 1.0 - 2.0 * alpha, 1e-3, options);
    MeanReversionDecision out;
    out.threshold = threshold;
    out.alpha = alpha;
    out.d_hat = fit.d_hat;
    out.upper_bound = ci.upper;
    out.reject = ci.upper < threshold;
    return out;
}

}  // namespace arfima
