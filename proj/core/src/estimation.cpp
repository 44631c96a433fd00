#include "arfima/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "arfima/optim.hpp"

namespace arfima {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kUClamp = 5.0;  // tanh(5) keeps pacf inside +-0.9999

struct Prepared {
    Vector x;
    Matrix design;
    std::vector<int> kept;
    std::optional<Periodogram> pgram;
};

Matrix difference_design(const Matrix& design, int m) {
    Matrix out = design;
    for (int pass = 0; pass < m; ++pass) {
        Matrix next(out.rows() - 1, out.cols());
        for (Eigen::Index t = 0; t + 1 < out.rows(); ++t) next.row(t) = out.row(t + 1) - out.row(t);
        out = std::move(next);
    }
    return out;
}

Prepared prepare(std::span<const double> y, const MeanSpec& mean_spec, int m, Objective objective) {
    Prepared prep;
    prep.x = integer_diff(y, m);
    auto [pruned, kept] = prune_design(difference_design(mean_spec.design(y.size()), m));
    prep.design = std::move(pruned);
    prep.kept = std::move(kept);
    if (objective.kind == Objective::Kind::Whittle) prep.pgram = periodogram(prep.x);
    return prep;
}

struct EvalDetail {
    double loglik = -kInf;
    double sigma2 = 0.0;
    Vector mean_coeffs;
    bool psd = false;
};

EvalDetail eval_objective(const Prepared& prep, Objective objective, double d_prime,
                          std::span<const double> phi, std::span<const double> theta, int j) {
    EvalDetail out;
    try {
        switch (objective.kind) {
            case Objective::Kind::Exact: {
                const ProfileEval ev = exact_loglik(prep.x, prep.design, d_prime, phi, theta, j);
                out.loglik = ev.loglik;
                out.sigma2 = ev.sigma2;
                out.mean_coeffs = ev.mean_coeffs;
                out.psd = ev.psd_flag;
                break;
            }
            case Objective::Kind::Whittle: {
                const WhittleEval ev = whittle_loglik(*prep.pgram, d_prime, phi, theta, j);
                out.loglik = ev.loglik;
                out.sigma2 = ev.sigma2;
                break;
            }
            case Objective::Kind::Scss: {
                const CssEval ev = scss_loglik(prep.x, prep.design, d_prime, phi, theta, j);
                out.loglik = ev.loglik;
                out.sigma2 = ev.sigma2;
                out.mean_coeffs = ev.mean_coeffs;
                break;
            }
            case Objective::Kind::Css: {
                const CssEval ev = css_loglik(prep.x, prep.design, d_prime, phi, theta);
                out.loglik = ev.loglik;
                out.sigma2 = ev.sigma2;
                out.mean_coeffs = ev.mean_coeffs;
                break;
            }
        }
    } catch (const ZeroVariance&) {
        throw;
    } catch (const Error&) {
        out.loglik = -kInf;
    }
    if (std::isnan(out.loglik)) out.loglik = -kInf;
    return out;
}

std::vector<Vector> inner_starts(int dim, bool multistart) {
    std::vector<Vector> starts;
    starts.emplace_back(Vector(static_cast<std::size_t>(dim), 0.0));
    if (!multistart || dim == 0) return starts;
    const double corner = std::atanh(0.5);
    Vector plus(static_cast<std::size_t>(dim), corner);
    Vector minus(static_cast<std::size_t>(dim), -corner);
    Vector alt_pm(static_cast<std::size_t>(dim));
    Vector alt_mp(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) {
        alt_pm[static_cast<std::size_t>(i)] = (i % 2 == 0) ? corner : -corner;
        alt_mp[static_cast<std::size_t>(i)] = (i % 2 == 0) ? -corner : corner;
    }
    starts.push_back(std::move(plus));
    starts.push_back(std::move(minus));
    starts.push_back(std::move(alt_pm));
    starts.push_back(std::move(alt_mp));
    return starts;
}

void split_params(std::span<const double> u, Order order, Vector& phi, Vector& theta) {
    Vector pacf_ar(static_cast<std::size_t>(order.p));
    Vector pacf_ma(static_cast<std::size_t>(order.q));
    for (int i = 0; i < order.p; ++i) {
        pacf_ar[static_cast<std::size_t>(i)] = std::tanh(std::clamp(u[static_cast<std::size_t>(i)], -kUClamp, kUClamp));
    }
    for (int i = 0; i < order.q; ++i) {
        pacf_ma[static_cast<std::size_t>(i)] =
            std::tanh(std::clamp(u[static_cast<std::size_t>(order.p + i)], -kUClamp, kUClamp));
    }
    phi = pacf_to_ar(pacf_ar);
    theta = pacf_to_ma(pacf_ma);
}

struct InnerResult {
    double loglik = -kInf;
    Vector u;       // transformed coordinates of the maximizer
    Vector phi;
    Vector theta;
};

/// Maximize the objective over the free ARMA parameters at fixed d'.
InnerResult maximize_inner(const Prepared& prep, Objective objective, double d_prime, Order order,
                           int j, const FitOptions& options, const Vector* warm) {
    const int dim = order.p + order.q;
    InnerResult best;
    if (dim == 0) {
        const EvalDetail ev = eval_objective(prep, objective, d_prime, {}, {}, j);
        best.loglik = ev.loglik;
        return best;
    }
    const auto neg = [&](std::span<const double> u) {
        Vector phi;
        Vector theta;
        split_params(u, order, phi, theta);
        return -eval_objective(prep, objective, d_prime, phi, theta, j).loglik;
    };
    std::vector<Vector> starts = inner_starts(dim, options.multistart);
    if (warm && !warm->empty()) starts.push_back(*warm);
    for (auto& start : starts) {
        const SimplexResult r = nelder_mead(neg, start, 0.25, 1e-9, options.inner_max_evals);
        if (-r.value > best.loglik) {
            best.loglik = -r.value;
            best.u = r.x;
        }
    }
    if (!best.u.empty()) split_params(best.u, order, best.phi, best.theta);
    return best;
}

IntervalFit fit_interval_impl(const Prepared& prep, int j, const BoundPlan& plan, Order order,
                              Objective objective, const FitOptions& options) {
    const auto& iv = plan.intervals.at(static_cast<std::size_t>(j));
    IntervalFit out;
    out.j = j;

    Vector warm;
    bool saw_psd = false;
    const auto profile_at = [&](double d) {
        const double d_prime = d - plan.m + j;
        const InnerResult inner = maximize_inner(prep, objective, d_prime, order, j, options,
                                                 warm.empty() ? nullptr : &warm);
        if (!inner.u.empty() && std::isfinite(inner.loglik)) warm = inner.u;
        if (objective.kind == Objective::Kind::Exact && !std::isfinite(inner.loglik)) {
            // distinguish the numerical-PSD failure from plain misfits
            const EvalDetail probe = eval_objective(prep, objective, d_prime, inner.phi, inner.theta, j);
            saw_psd = saw_psd || probe.psd;
        }
        return -inner.loglik;
    };

    try {
        const ScalarMinResult r = minimize_scalar(profile_at, iv.lo, iv.hi - options.boundary_guard,
                                                  options.d_tol, options.presweep);
        if (!std::isfinite(r.value)) {
            out.valid = false;
            out.psd_failed = saw_psd;
            return out;
        }
        out.d = r.x;
        const double d_prime = r.x - plan.m + j;
        const InnerResult inner =
            maximize_inner(prep, objective, d_prime, order, j, options, warm.empty() ? nullptr : &warm);
        const EvalDetail ev = eval_objective(prep, objective, d_prime, inner.phi, inner.theta, j);
        out.loglik = ev.loglik;
        out.sigma2 = ev.sigma2;
        out.mean_coeffs = ev.mean_coeffs;
        out.phi = inner.phi;
        out.theta = inner.theta;
        out.psd_failed = ev.psd;
        out.valid = std::isfinite(ev.loglik);
    } catch (const ZeroVariance&) {
        throw;
    } catch (const Error&) {
        out.valid = false;
    }
    return out;
}

}  // namespace

int BoundPlan::interval_for(double d) const {
    const int j = static_cast<int>(std::ceil(static_cast<double>(m) - d - 0.5));
    if (j < 0 || j > k) return -1;
    return j;
}

BoundPlan plan_bounds(double d_bar) {
    if (!(d_bar >= 0.5)) throw InvalidBound("plan_bounds: d_bar must be at least 0.5");
    BoundPlan plan;
    plan.d_bar = d_bar;
    plan.m = static_cast<int>(std::ceil(d_bar - 0.5));
    plan.k = plan.m + 2;
    plan.intervals.reserve(static_cast<std::size_t>(plan.k) + 1);
    for (int j = 0; j <= plan.k; ++j) {
        BoundPlan::Interval iv;
        iv.j = j;
        iv.lo = -0.5 + plan.m - j;
        iv.hi = 0.5 + plan.m - j;
        plan.intervals.push_back(iv);
    }
    return plan;
}

IntervalFit fit_interval(std::span<const double> x_diff, const Matrix& design_diff,
                         const std::optional<Periodogram>& pgram, int j, const BoundPlan& plan,
                         Order order, Objective objective, const FitOptions& options) {
    Prepared prep;
    prep.x.assign(x_diff.begin(), x_diff.end());
    auto [pruned, kept] = prune_design(design_diff);
    prep.design = std::move(pruned);
    prep.kept = std::move(kept);
    prep.pgram = pgram;
    if (objective.kind == Objective::Kind::Whittle && !prep.pgram) prep.pgram = periodogram(prep.x);
    return fit_interval_impl(prep, j, plan, order, objective, options);
}

FitResult fit_bounded(std::span<const double> y, const MeanSpec& mean_spec, Order order,
                      double d_bar, Objective objective, const FitOptions& options) {
    if (objective.kind == Objective::Kind::Css) return fit_css(y, mean_spec, order, d_bar, options);
    const BoundPlan plan = plan_bounds(d_bar);
    const int mean_dim = mean_spec.dimension(y.size());
    if (static_cast<int>(y.size()) <= plan.m + order.p + order.q + mean_dim + 5) {
        throw InsufficientData("fit_bounded: series too short for the requested model");
    }
    const Prepared prep = prepare(y, mean_spec, plan.m, objective);

    FitResult result;
    result.objective = objective;
    result.plan = plan;
    result.kept_design_columns = prep.kept;
    double best = -kInf;
    for (int j = 0; j <= plan.k; ++j) {
        IntervalFit fit = fit_interval_impl(prep, j, plan, order, objective, options);
        if (fit.psd_failed) {
            result.warnings.push_back("interval j=" + std::to_string(j) +
                                      " skipped: covariance numerically positive semidefinite");
        }
        if (fit.valid && fit.loglik > best) {
            best = fit.loglik;
            result.j_star = j;
        }
        result.per_j.push_back(std::move(fit));
    }
    if (result.j_star < 0) throw AllIntervalsFailed("fit_bounded: no interval produced a valid fit");
    const IntervalFit& win = result.winner();
    result.d_hat = win.d;
    result.phi_hat = win.phi;
    result.theta_hat = win.theta;
    result.sigma2_hat = win.sigma2;
    result.mean_hat = win.mean_coeffs;
    result.loglik = win.loglik;
    return result;
}

FitResult fit_css(std::span<const double> y, const MeanSpec& mean_spec, Order order, double d_bar,
                  const FitOptions& options, double d_lo) {
    Prepared prep;
    prep.x.assign(y.begin(), y.end());
    auto [pruned, kept] = prune_design(mean_spec.design(y.size()));
    prep.design = std::move(pruned);
    prep.kept = std::move(kept);

    BoundPlan plan;  // trivial geometry: no differencing, one search range
    plan.d_bar = d_bar;
    plan.m = 0;
    plan.k = 0;
    plan.intervals = {{0, d_lo, d_bar}};

    const Objective objective = Objective::css();
    IntervalFit fit = fit_interval_impl(prep, 0, plan, order, objective, options);
    if (!fit.valid) throw AllIntervalsFailed("fit_css: optimization failed");

    FitResult result;
    result.objective = objective;
    result.plan = plan;
    result.kept_design_columns = prep.kept;
    result.j_star = 0;
    result.per_j.push_back(std::move(fit));
    const IntervalFit& win = result.winner();
    result.d_hat = win.d;
    result.phi_hat = win.phi;
    result.theta_hat = win.theta;
    result.sigma2_hat = win.sigma2;
    result.mean_hat = win.mean_coeffs;
    result.loglik = win.loglik;
    return result;
}

double profile_value(std::span<const double> y, const MeanSpec& mean_spec, Order order,
                     double d_bar, Objective objective, double d, const FitOptions& options) {
    if (objective.kind == Objective::Kind::Css) {
        Prepared prep;
        prep.x.assign(y.begin(), y.end());
        auto [pruned, kept] = prune_design(mean_spec.design(y.size()));
        prep.design = std::move(pruned);
        prep.kept = std::move(kept);
        const InnerResult inner = maximize_inner(prep, objective, d, order, 0, options, nullptr);
        return inner.loglik;
    }
    const BoundPlan plan = plan_bounds(d_bar);
    const int j = plan.interval_for(d);
    if (j < 0) throw InvalidBound("profile_value: d outside the searchable range");
    const Prepared prep = prepare(y, mean_spec, plan.m, objective);
    const InnerResult inner =
        maximize_inner(prep, objective, d - plan.m + j, order, j, options, nullptr);
    return inner.loglik;
}

std::vector<ProfilePoint> profile_curve(std::span<const double> y, const MeanSpec& mean_spec,
                                        Order order, double d_bar, Objective objective,
                                        std::span<const double> d_grid, const FitOptions& options) {
    std::vector<ProfilePoint> out;
    out.reserve(d_grid.size());
    for (double d : d_grid) {
        ProfilePoint pt;
        pt.d = d;
        try {
            pt.loglik = profile_value(y, mean_spec, order, d_bar, objective, d, options);
            pt.valid = std::isfinite(pt.loglik);
            if (!pt.valid) pt.loglik = std::numeric_limits<double>::quiet_NaN();
        } catch (const Error&) {
            pt.loglik = std::numeric_limits<double>::quiet_NaN();
            pt.valid = false;
        }
        out.push_back(pt);
    }
    return out;
}

}  // namespace arfima
