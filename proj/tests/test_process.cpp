#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "arfima/optim.hpp"
#include "arfima/process.hpp"

using namespace arfima;

namespace {
constexpr double kPi = std::numbers::pi;

StationaryModel random_model(std::mt19937& gen, double d_lo = -0.49, double d_hi = 0.49) {
    std::uniform_real_distribution<double> dd(d_lo, d_hi);
    std::uniform_int_distribution<int> order(0, 2);
    std::uniform_real_distribution<double> pac(-0.85, 0.85);
    StationaryModel model;
    model.d_prime = dd(gen);
    const int p = order(gen);
    const int q = order(gen);
    Vector pacf_ar(static_cast<std::size_t>(p));
    Vector pacf_ma(static_cast<std::size_t>(q));
    for (auto& v : pacf_ar) v = pac(gen);
    for (auto& v : pacf_ma) v = pac(gen);
    model.phi = pacf_to_ar(pacf_ar);
    model.theta_free = pacf_to_ma(pacf_ma);
    model.j = 0;
    model.sigma2 = 1.0;
    return model;
}

}  // namespace

TEST_CASE("spectral density closed values") {
    StationaryModel white{0.0, {}, {}, 0, 1.0};
    CHECK(spectral_density_at(white, kPi / 2.0) == doctest::Approx(1.0 / (2.0 * kPi)));

    StationaryModel overdiff{0.0, {}, {}, 1, 1.0};
    CHECK(spectral_density_at(overdiff, kPi) == doctest::Approx(4.0 / (2.0 * kPi)));

    StationaryModel lm{0.25, {}, {}, 0, 1.0};
    CHECK(spectral_density_at(lm, kPi) ==
          doctest::Approx(std::pow(2.0, -0.5) / (2.0 * kPi)).epsilon(1e-10));
}

TEST_CASE("spectral density error paths") {
    StationaryModel bad{0.6, {}, {}, 0, 1.0};
    const Vector freqs = {0.5};
    CHECK_THROWS_AS((void)spectral_density(bad, freqs), NonStationary);

    StationaryModel pole{0.2, {}, {}, 0, 1.0};
    CHECK_THROWS_AS((void)spectral_density_at(pole, 0.0), PoleAtZero);
}

TEST_CASE("autocovariance closed values") {
    StationaryModel white{0.0, {}, {}, 0, 1.0};
    const auto g0 = autocovariance(white, 2);
    CHECK(g0(0) == doctest::Approx(1.0));
    CHECK(g0(1) == doctest::Approx(0.0));
    CHECK(g0(2) == doctest::Approx(0.0));

    StationaryModel ma1{0.0, {}, {0.5}, 0, 1.0};
    const auto g1 = autocovariance(ma1, 2);
    CHECK(g1(0) == doctest::Approx(1.25));
    CHECK(g1(1) == doctest::Approx(0.5));
    CHECK(g1(2) == doctest::Approx(0.0));

    // gamma(0) = Gamma(0.5) / Gamma(0.75)^2 and rho(1) = d / (1 - d)
    StationaryModel fn{0.25, {}, {}, 0, 1.0};
    const auto g2 = autocovariance(fn, 1);
    CHECK(g2(0) == doctest::Approx(1.1803405990160762).epsilon(1e-10));
    CHECK(g2(1) / g2(0) == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("quadrature route reproduces the d=0.25 oracle value") {
    StationaryModel fn{0.25, {}, {}, 0, 1.0};
    const auto g = autocovariance_quadrature(fn, 1, 1e-10);
    CHECK(g(0) == doctest::Approx(1.1803405990160762).epsilon(1e-8));
    CHECK(g(1) / g(0) == doctest::Approx(1.0 / 3.0).epsilon(1e-8));
}

TEST_CASE("closed form matches quadrature over random stationary draws") {
    std::mt19937 gen(20240817);
    int p_cases = 0;
    for (int trial = 0; trial < 30; ++trial) {
        const StationaryModel model = random_model(gen);
        if (!model.phi.empty()) ++p_cases;
        const auto closed = autocovariance(model, 20);
        const auto quad = autocovariance_quadrature(model, 20, 1e-10);
        for (std::size_t h = 0; h <= 20; ++h) {
            const double scale = std::max(std::abs(quad(0)), std::abs(quad(h)));
            CHECK(std::abs(closed(h) - quad(h)) <= 1e-6 * scale);
        }
    }
    CHECK(p_cases > 5);  // the draw actually exercises the Sowell path
}

TEST_CASE("closed form handles the constrained unit-root MA factor") {
    std::mt19937 gen(99);
    for (int trial = 0; trial < 8; ++trial) {
        StationaryModel model = random_model(gen, -0.49, 0.45);
        model.j = 1 + (trial % 2);
        const auto closed = autocovariance(model, 12);
        const auto quad = autocovariance_quadrature(model, 12, 1e-10);
        for (std::size_t h = 0; h <= 12; ++h) {
            const double scale = std::max(std::abs(quad(0)), std::abs(quad(h)));
            CHECK(std::abs(closed(h) - quad(h)) <= 1e-6 * scale);
        }
    }
}

TEST_CASE("Parseval: gamma(0) equals the spectral integral") {
    std::mt19937 gen(4242);
    for (int trial = 0; trial < 5; ++trial) {
        const StationaryModel model = random_model(gen);
        const auto closed = autocovariance(model, 0);
        const auto quad = autocovariance_quadrature(model, 0, 1e-10);
        CHECK(closed(0) == doctest::Approx(quad(0)).epsilon(1e-6));
    }
}

TEST_CASE("ACF continuity across the stationarity boundary") {
    // gamma(h; d' = -0.5, theta~(j)) equals gamma(h; d' = 0.5 - eps,
    // theta~(j+1)) in the limit; evaluated at eps = 1e-6.
    std::mt19937 gen(77);
    std::uniform_real_distribution<double> pac(-0.6, 0.6);
    for (int trial = 0; trial < 6; ++trial) {
        Vector pacf_ar = {pac(gen)};
        Vector pacf_ma = {pac(gen)};
        const Vector phi = pacf_to_ar(pacf_ar);
        const Vector theta = pacf_to_ma(pacf_ma);
        for (int j = 0; j <= 1; ++j) {
            StationaryModel low{-0.5, phi, theta, j, 1.0};
            StationaryModel high{0.5 - 1e-6, phi, theta, j + 1, 1.0};
            const auto g_low = autocovariance(low, 10);
            const auto g_high = autocovariance(high, 10);
            for (std::size_t h = 0; h <= 10; ++h) {
                CHECK(std::abs(g_low(h) - g_high(h)) <= 1e-4 * g_low(0));
            }
        }
    }
}

TEST_CASE("white-noise simulation returns the raw normal draws") {
    ArfimaParams params;
    params.d = 0.0;
    params.sigma2 = 1.0;
    params.mean_spec = MeanSpec::none();
    const Vector x = simulate_stationary(params, 3, 123, 9);
    NormalStream stream(123, 9);
    for (int i = 0; i < 3; ++i) CHECK(x[static_cast<std::size_t>(i)] == doctest::Approx(stream.next()));
}

TEST_CASE("simulation determinism and stream separation") {
    ArfimaParams params;
    params.d = 0.3;
    const Vector a = simulate_arfima(params, 50, 7, 1);
    const Vector b = simulate_arfima(params, 50, 7, 1);
    const Vector c = simulate_arfima(params, 50, 7, 2);
    CHECK(a == b);
    CHECK(a != c);
}

TEST_CASE("sample variance of a long-memory sample is near gamma(0)") {
    ArfimaParams params;
    params.d = 0.3;
    const std::size_t n = 4000;
    const Vector x = simulate_arfima(params, n, 2024, 0);
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double v : x) var += (v - mean) * (v - mean);
    var /= static_cast<double>(n);
    StationaryModel model{0.3, {}, {}, 0, 1.0};
    const double g0 = autocovariance(model, 0)(0);
    // d = 0.3 long memory makes the variance of the sample variance heavy;
    // a generous 3-sigma-style band still catches sign/scale errors
    CHECK(var == doctest::Approx(g0).epsilon(0.35));
}

TEST_CASE("lag-1 sample autocorrelation near d/(1-d)") {
    ArfimaParams params;
    params.d = 0.25;
    const std::size_t n = 2000;
    const Vector x = simulate_arfima(params, n, 99, 0);
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);
    double c0 = 0.0;
    double c1 = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        c0 += (x[t] - mean) * (x[t] - mean);
        if (t + 1 < n) c1 += (x[t] - mean) * (x[t + 1] - mean);
    }
    const double r1 = c1 / c0;
    CHECK(r1 == doctest::Approx(1.0 / 3.0).epsilon(0.15));
}

TEST_CASE("cumulative-sum construction for non-stationary d") {
    ArfimaParams params;
    params.d = 1.0;
    const Vector y = simulate_arfima(params, 5, 55, 0);
    NormalStream stream(55, 0);
    Vector z(5);
    for (auto& v : z) v = stream.next();
    CHECK(y[0] == doctest::Approx(z[0]));
    for (std::size_t t = 1; t < 5; ++t) {
        CHECK(y[t] - y[t - 1] == doctest::Approx(z[t]).epsilon(1e-12));
    }

    ArfimaParams deep;
    deep.d = 2.2;
    const Vector w = simulate_arfima(deep, 100, 8, 0);
    // two differences recover a stationary d = 0.2 draw
    ArfimaParams flat;
    flat.d = 0.2;
    const Vector base = simulate_stationary(flat, 100, 8, 0);
    Vector twice = w;
    for (int pass = 0; pass < 2; ++pass) {
        Vector next(twice.size() - 1);
        for (std::size_t t = 0; t + 1 < twice.size(); ++t) next[t] = twice[t + 1] - twice[t];
        twice = std::move(next);
    }
    for (std::size_t t = 0; t < twice.size(); ++t) {
        CHECK(twice[t] == doctest::Approx(base[t + 2]).epsilon(1e-9));
    }
}

TEST_CASE("simulation covariance matches Toeplitz(gamma) at small n") {
    // the spec's 200k-replication exactness check lives in the acceptance
    // suite; here a 30k-replication smoke version guards the recursion
    ArfimaParams params;
    params.d = 0.35;
    params.theta = {0.4};
    const std::size_t n = 6;
    const int reps = 30000;
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, n);
    for (int r = 0; r < reps; ++r) {
        const Vector x = simulate_stationary(params, n, 31415, static_cast<std::uint64_t>(r));
        Eigen::Map<const Eigen::VectorXd> v(x.data(), static_cast<Eigen::Index>(n));
        acc += v * v.transpose();
    }
    acc /= static_cast<double>(reps);
    StationaryModel model{0.35, {}, {0.4}, 0, 1.0};
    const auto g = autocovariance(model, n - 1);
    // MC SE of a covariance entry is about sqrt(g(0)^2 + g(h)^2) / sqrt(R)
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            const double target = g(static_cast<std::size_t>(
                std::abs(static_cast<int>(r) - static_cast<int>(c))));
            const double se =
                std::sqrt(g(0) * g(0) + target * target) / std::sqrt(static_cast<double>(reps));
            CHECK(std::abs(acc(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) - target) <=
                  4.0 * se);
        }
    }
}
