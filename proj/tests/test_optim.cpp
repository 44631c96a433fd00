#include <doctest.h>

#include <cmath>
#include <random>

#include "arfima/optim.hpp"
#include "arfima/process.hpp"

using namespace arfima;

TEST_CASE("bounded scalar minimizer finds a smooth minimum") {
    const auto f = [](double x) { return (x - 0.3) * (x - 0.3) + 1.0; };
    const auto r = minimize_scalar(f, -1.0, 1.0, 1e-8);
    CHECK(r.x == doctest::Approx(0.3).epsilon(1e-5));
    CHECK(r.value == doctest::Approx(1.0));
}

TEST_CASE("scalar minimizer respects the bounds") {
    const auto f = [](double x) { return -x; };  // minimum at the right edge
    const auto r = minimize_scalar(f, 0.0, 2.0, 1e-8);
    CHECK(r.x == doctest::Approx(2.0).epsilon(1e-5));
}

TEST_CASE("presweep escapes a local dip") {
    const auto f = [](double x) {
        return std::min((x + 1.5) * (x + 1.5) + 0.2, (x - 1.5) * (x - 1.5));
    };
    const auto r = minimize_scalar(f, -2.5, 2.5, 1e-8, 21);
    CHECK(r.x == doctest::Approx(1.5).epsilon(1e-4));
}

TEST_CASE("nelder-mead on the rosenbrock bowl") {
    const auto f = [](std::span<const double> v) {
        const double a = 1.0 - v[0];
        const double b = v[1] - v[0] * v[0];
        return a * a + 100.0 * b * b;
    };
    const auto r = nelder_mead(f, {-1.0, 1.0}, 0.5, 1e-12, 8000);
    CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(r.x[1] == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("pacf transform lands in the stationary region and inverts") {
    std::mt19937 gen(17);
    std::uniform_real_distribution<double> pac(-0.95, 0.95);
    for (int trial = 0; trial < 40; ++trial) {
        Vector r(static_cast<std::size_t>(1 + trial % 4));
        for (auto& v : r) v = pac(gen);
        const Vector phi = pacf_to_ar(r);
        CHECK(ar_is_stationary(phi));
        const Vector back = ar_to_pacf(phi);
        for (std::size_t i = 0; i < r.size(); ++i) {
            CHECK(back[i] == doctest::Approx(r[i]).epsilon(1e-9));
        }
        const Vector theta = pacf_to_ma(r);
        CHECK(ma_is_invertible(theta));
    }
}

TEST_CASE("pacf identity for AR(1)") {
    const Vector phi = pacf_to_ar(Vector{0.6});
    CHECK(phi[0] == doctest::Approx(0.6));
    const Vector theta = pacf_to_ma(Vector{0.5});
    CHECK(theta[0] == doctest::Approx(-0.5));
    CHECK(ma_is_invertible(theta));
}
