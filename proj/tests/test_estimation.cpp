#include <doctest.h>

#include <cmath>
#include <fstream>

#include "arfima/estimation.hpp"
#include "arfima/io.hpp"
#include "arfima/process.hpp"

using namespace arfima;

namespace {

TimeSeries load_series(const std::string& name) {
    return read_csv_series_file(std::string(ARFIMA_TEST_DATA_DIR) + "/" + name);
}

}  // namespace

TEST_CASE("plan_bounds geometry") {
    const auto plan = plan_bounds(2.5);
    CHECK(plan.m == 2);
    CHECK(plan.k == 4);
    REQUIRE(plan.intervals.size() == 5);
    CHECK(plan.intervals.front().lo == doctest::Approx(1.5));
    CHECK(plan.intervals.front().hi == doctest::Approx(2.5));
    CHECK(plan.intervals.back().lo == doctest::Approx(-2.5));
    CHECK(plan.intervals.back().hi == doctest::Approx(-1.5));

    const auto p05 = plan_bounds(0.5);
    CHECK(p05.m == 0);
    CHECK(p05.k == 2);
    CHECK(p05.intervals[0].lo == doctest::Approx(-0.5));
    CHECK(p05.intervals[2].lo == doctest::Approx(-2.5));

    CHECK(plan_bounds(1.5).m == 1);
    CHECK(plan_bounds(1.5).k == 3);
    CHECK_THROWS_AS((void)plan_bounds(0.4), InvalidBound);
}

TEST_CASE("interval_for assigns boundaries to the lower-j interval") {
    const auto plan = plan_bounds(2.5);
    CHECK(plan.interval_for(2.0) == 0);
    CHECK(plan.interval_for(1.5) == 0);   // boundary belongs to lower j
    CHECK(plan.interval_for(1.49) == 1);
    CHECK(plan.interval_for(-2.5) == 4);
    CHECK(plan.interval_for(-2.6) == -1);
    CHECK(plan.interval_for(2.6) == -1);
}

TEST_CASE("simulated short-memory series is recovered in interval 0") {
    ArfimaParams truth;
    truth.d = 0.2;
    const Vector y = simulate_arfima(truth, 500, 101, 0);
    const auto fit = fit_bounded(y, MeanSpec::constant(), Order{0, 0}, 0.5, Objective::exact());
    CHECK(fit.j_star == 0);
    CHECK(fit.d_hat == doctest::Approx(0.2).epsilon(0.5));
    // optimality: nudging d away from the maximizer lowers the profile
    const auto& win = fit.winner();
    for (double nudge : {1e-2, -1e-2}) {
        const double moved = profile_value(y, MeanSpec::constant(), Order{0, 0}, 0.5,
                                           Objective::exact(), win.d + nudge);
        CHECK(moved <= win.loglik + 1e-9);
    }
    // interval-selection consistency
    const auto& iv = fit.plan.intervals[static_cast<std::size_t>(fit.j_star)];
    CHECK(fit.d_hat >= iv.lo);
    CHECK(fit.d_hat < iv.hi);
}

TEST_CASE("constrained interval carries the unit-root MA coefficients") {
    ArfimaParams truth;
    truth.d = 0.0;
    const Vector y = simulate_arfima(truth, 300, 55, 3);
    const auto plan = plan_bounds(0.5);
    Vector x(y);
    const auto fit = fit_interval(x, Matrix(static_cast<Eigen::Index>(x.size()), 0), std::nullopt,
                                  2, plan, Order{0, 0}, Objective::exact());
    // interval j=2 evaluates ARFIMA(0, d+2, 2) with MA (1-B)^2 = (-2, 1)
    CHECK(fit.valid);
    CHECK(fit.d >= -2.5);
    CHECK(fit.d < -1.5);
}

TEST_CASE("exact fit of Series A at d_bar = 1.5 reproduces the published point") {
    const TimeSeries series = load_series("series_a.csv");
    REQUIRE(series.size() == 197);
    const auto fit =
        fit_bounded(series.values, MeanSpec::constant(), Order{0, 0}, 1.5, Objective::exact());
    CHECK(fit.d_hat == doctest::Approx(0.427).epsilon(0.012));
    CHECK(fit.plan.m == 1);
}

TEST_CASE("profile curve is finite and smooth on a well-posed problem") {
    ArfimaParams truth;
    truth.d = 0.45;
    const Vector y = simulate_arfima(truth, 400, 77, 1);
    Vector grid;
    for (double d = -0.3; d <= 1.3; d += 0.05) grid.push_back(d);
    const auto curve = profile_curve(y, MeanSpec::constant(), Order{0, 0}, 1.5,
                                     Objective::exact(), grid);
    REQUIRE(curve.size() == grid.size());
    for (const auto& pt : curve) CHECK(pt.valid);
    // no discontinuity where the interval (and constrained MA) switches:
    // the value at d = 0.5 matches the limit from below
    const double at_boundary =
        profile_value(y, MeanSpec::constant(), Order{0, 0}, 1.5, Objective::exact(), 0.5);
    const double just_below =
        profile_value(y, MeanSpec::constant(), Order{0, 0}, 1.5, Objective::exact(), 0.5 - 1e-6);
    CHECK(std::abs(at_boundary - just_below) <= 1e-3 * (1.0 + std::abs(at_boundary)));
}

TEST_CASE("grid points outside the searchable range are marked missing") {
    ArfimaParams truth;
    truth.d = 0.1;
    const Vector y = simulate_arfima(truth, 120, 5, 0);
    const Vector grid = {-3.0, 0.0};
    const auto curve = profile_curve(y, MeanSpec::constant(), Order{0, 0}, 0.5,
                                     Objective::exact(), grid);
    CHECK_FALSE(curve[0].valid);
    CHECK(std::isnan(curve[0].loglik));
    CHECK(curve[1].valid);
}

TEST_CASE("trend invariance with a degree-one polynomial mean") {
    ArfimaParams truth;
    truth.d = 0.3;
    const Vector y = simulate_arfima(truth, 300, 42, 7);
    Vector shifted(y);
    for (std::size_t t = 0; t < shifted.size(); ++t) {
        shifted[t] += 5.0 + 0.02 * static_cast<double>(t + 1);
    }
    const MeanSpec mean = MeanSpec::polynomial(1);
    const Order order{0, 0};
    const auto a = fit_bounded(y, mean, order, 1.5, Objective::exact());
    const auto b = fit_bounded(shifted, mean, order, 1.5, Objective::exact());
    CHECK(a.d_hat == doctest::Approx(b.d_hat).epsilon(1e-8));
    CHECK(a.sigma2_hat == doctest::Approx(b.sigma2_hat).epsilon(1e-8));
    CHECK(a.loglik == doctest::Approx(b.loglik).epsilon(1e-10));
}

TEST_CASE("winner loglik is reproducible from scratch") {
    ArfimaParams truth;
    truth.d = 0.7;
    const Vector y = simulate_arfima(truth, 250, 31, 2);
    const auto fit = fit_bounded(y, MeanSpec::constant(), Order{0, 0}, 1.5, Objective::exact());
    const double again = profile_value(y, MeanSpec::constant(), Order{0, 0}, 1.5,
                                       Objective::exact(), fit.d_hat);
    CHECK(again == doctest::Approx(fit.loglik).epsilon(1e-9));
}

TEST_CASE("css fit runs without the interval machinery") {
    ArfimaParams truth;
    truth.d = 0.3;
    const Vector y = simulate_arfima(truth, 300, 9, 4);
    const auto fit = fit_css(y, MeanSpec::constant(), Order{0, 0}, 1.5);
    CHECK(fit.per_j.size() == 1);
    CHECK(fit.objective.kind == Objective::Kind::Css);
    CHECK(std::isfinite(fit.loglik));
    CHECK(fit.d_hat > -2.5);
    CHECK(fit.d_hat < 1.5);
}

TEST_CASE("too-short input fails loudly") {
    const Vector y = {1.0, 2.0, 1.5, 2.5, 1.0, 2.0};
    CHECK_THROWS_AS(
        (void)fit_bounded(y, MeanSpec::constant(), Order{0, 0}, 2.5, Objective::exact()),
        InsufficientData);
}
