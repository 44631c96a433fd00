#include <doctest.h>

#include <cmath>

#include "arfima/process.hpp"
#include "arfima/uncertainty.hpp"

using namespace arfima;

TEST_CASE("central second difference is exact on a quadratic") {
    // l(d) = -50 (d - 0.3)^2 has second derivative -100 everywhere; feed a
    // synthetic profile through a quadratic data-free surrogate by testing
    // the formula directly
    const auto second_diff = [](const std::function<double(double)>& f, double x, double h) {
        return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
    };
    const auto profile = [](double d) { return -50.0 * (d - 0.3) * (d - 0.3); };
    CHECK(second_diff(profile, 0.3, 1e-3) == doctest::Approx(-100.0).epsilon(1e-6));
}

TEST_CASE("interval estimate on simulated data behaves like a CI") {
    ArfimaParams truth;
    truth.d = 0.2;
    const Vector y = simulate_arfima(truth, 500, 808, 0);
    const auto fit = fit_bounded(y, MeanSpec::constant(), Order{0, 0}, 0.5, Objective::exact());
    const auto ci =
        confidence_interval(y, MeanSpec::constant(), Order{0, 0}, 0.5, Objective::exact(), fit);
    CHECK(ci.lower < fit.d_hat);
    CHECK(fit.d_hat < ci.upper);
    // symmetric by construction
    CHECK(fit.d_hat - ci.lower == doctest::Approx(ci.upper - fit.d_hat).epsilon(1e-10));
    // width pins to 2 z se
    const double z = normal_quantile(0.975);
    CHECK(ci.upper - ci.lower == doctest::Approx(2.0 * z * ci.se).epsilon(1e-10));
    // the asymptotic scale sqrt(6/pi^2/n) is about 0.035 at n = 500
    CHECK(ci.se > 0.02);
    CHECK(ci.se < 0.06);

    const auto ci90 =
        confidence_interval(y, MeanSpec::constant(), Order{0, 0}, 0.5, Objective::exact(), fit, 0.90);
    CHECK(ci90.lower > ci.lower);
    CHECK(ci90.upper < ci.upper);
}

TEST_CASE("hessian step halving is stable") {
    ArfimaParams truth;
    truth.d = 0.25;
    const Vector y = simulate_arfima(truth, 400, 909, 0);
    const auto fit = fit_bounded(y, MeanSpec::constant(), Order{0, 0}, 0.5, Objective::exact());
    const double h1 = profile_hessian_d(y, MeanSpec::constant(), Order{0, 0}, 0.5,
                                        Objective::exact(), fit.d_hat, 1e-3);
    const double h2 = profile_hessian_d(y, MeanSpec::constant(), Order{0, 0}, 0.5,
                                        Objective::exact(), fit.d_hat, 5e-4);
    const double se1 = 1.0 / std::sqrt(-h1);
    const double se2 = 1.0 / std::sqrt(-h2);
    CHECK(std::abs(se1 - se2) / se1 < 0.02);
}

TEST_CASE("boundary proximity raises the dedicated error") {
    ArfimaParams truth;
    truth.d = 0.2;
    const Vector y = simulate_arfima(truth, 200, 303, 0);
    CHECK_THROWS_AS((void)profile_hessian_d(y, MeanSpec::constant(), Order{0, 0}, 0.5,
                                            Objective::exact(), 0.4999, 1e-3),
                    BoundaryTooClose);
}

TEST_CASE("mean reversion test rule") {
    // d_hat = 0.8, SE = 0.05: upper 90% bound 0.882 < 1 rejects;
    // d_hat = 0.95, SE = 0.1: upper bound 1.114 fails to reject.
    ArfimaParams truth;
    truth.d = 0.4;
    const Vector y = simulate_arfima(truth, 400, 404, 0);
    const auto fit = fit_bounded(y, MeanSpec::constant(), Order{0, 0}, 1.5, Objective::exact());
    const auto decision = test_mean_reversion(y, MeanSpec::constant(), Order{0, 0}, 1.5,
                                              Objective::exact(), fit, 1.0, 0.05);
    const auto ci90 =
        confidence_interval(y, MeanSpec::constant(), Order{0, 0}, 1.5, Objective::exact(), fit, 0.90);
    CHECK(decision.upper_bound == doctest::Approx(ci90.upper).epsilon(1e-12));
    CHECK(decision.reject == (ci90.upper < 1.0));
    // closed-form arithmetic of the rule itself
    const double z90 = normal_quantile(0.95);
    CHECK(0.8 + z90 * 0.05 < 1.0);
    CHECK(0.95 + z90 * 0.1 > 1.0);
}
