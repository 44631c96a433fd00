#include <doctest.h>

#include <Eigen/Cholesky>
#include <cmath>
#include <numbers>
#include <random>

#include "arfima/exact_likelihood.hpp"
#include "arfima/optim.hpp"
#include "arfima/process.hpp"

using namespace arfima;

namespace {

constexpr double kLog2Pi = 1.8378770664093454835606594728112352797;

/// Dense full-covariance Gaussian log-density with GLS-profiled mean and
/// analytically profiled sigma2; the oracle the Levinson path must match.
double dense_profile_loglik(const Vector& x, const Matrix& design, const StationaryModel& model) {
    const auto n = static_cast<Eigen::Index>(x.size());
    const auto acov = autocovariance(model, x.size() - 1);
    Eigen::MatrixXd cov(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
            cov(r, c) = acov.gamma[static_cast<std::size_t>(std::abs(r - c))];
        }
    }
    const Eigen::LLT<Eigen::MatrixXd> llt(cov);
    REQUIRE(llt.info() == Eigen::Success);
    double log_det = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) log_det += 2.0 * std::log(llt.matrixL()(i, i));
    Eigen::Map<const Eigen::VectorXd> xv(x.data(), n);
    Eigen::VectorXd resid = xv;
    if (design.cols() > 0) {
        const Eigen::MatrixXd ri_d = llt.solve(design);
        const Eigen::MatrixXd gram = design.transpose() * ri_d;
        const Eigen::VectorXd rhs = ri_d.transpose() * xv;
        const Eigen::VectorXd beta = gram.ldlt().solve(rhs);
        resid -= design * beta;
    }
    const double q = resid.dot(llt.solve(resid));
    const double nn = static_cast<double>(n);
    const double sigma2 = q / nn;
    return -0.5 * nn * kLog2Pi - 0.5 * log_det - 0.5 * nn * std::log(sigma2) - 0.5 * nn;
}

}  // namespace

TEST_CASE("single standard-normal point") {
    const Vector x = {0.0};
    ExactEvalOptions opt;
    opt.profile = false;
    opt.fixed_sigma2 = 1.0;
    const auto ev = exact_loglik(x, Matrix(1, 0), 0.0, {}, {}, 0, opt);
    CHECK(ev.loglik == doctest::Approx(-0.5 * kLog2Pi).epsilon(1e-12));
}

TEST_CASE("two unit observations under fixed white noise") {
    const Vector x = {1.0, 1.0};
    ExactEvalOptions opt;
    opt.profile = false;
    opt.fixed_sigma2 = 1.0;
    const auto ev = exact_loglik(x, Matrix(2, 0), 0.0, {}, {}, 0, opt);
    CHECK(ev.loglik == doctest::Approx(-kLog2Pi - 1.0).epsilon(1e-12));
}

TEST_CASE("profiled evaluation matches the dense oracle with a mean design") {
    std::mt19937 gen(314);
    std::normal_distribution<double> normal;
    const std::size_t n = 40;
    StationaryModel model{0.2, {0.5}, {0.3}, 0, 1.0};
    Vector x(n);
    for (auto& v : x) v = normal(gen);
    Matrix design(static_cast<Eigen::Index>(n), 2);
    for (std::size_t t = 0; t < n; ++t) {
        design(static_cast<Eigen::Index>(t), 0) = 1.0;
        design(static_cast<Eigen::Index>(t), 1) = static_cast<double>(t + 1) / static_cast<double>(n);
    }
    const auto ev = exact_loglik(x, design, 0.2, model.phi, model.theta_free, 0);
    const double oracle = dense_profile_loglik(x, design, model);
    CHECK(ev.loglik == doctest::Approx(oracle).epsilon(1e-9));
}

TEST_CASE("levinson path equals dense oracle over random draws") {
    std::mt19937 gen(2718);
    std::uniform_real_distribution<double> dd(-0.49, 0.49);
    std::uniform_int_distribution<int> order(0, 2);
    std::uniform_real_distribution<double> pac(-0.8, 0.8);
    std::uniform_int_distribution<int> nn(16, 64);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 50; ++trial) {
        StationaryModel model;
        model.d_prime = dd(gen);
        Vector pa(static_cast<std::size_t>(order(gen)));
        Vector pm(static_cast<std::size_t>(order(gen)));
        for (auto& v : pa) v = pac(gen);
        for (auto& v : pm) v = pac(gen);
        model.phi = pacf_to_ar(pa);
        model.theta_free = pacf_to_ma(pm);
        const std::size_t n = static_cast<std::size_t>(nn(gen));
        Vector x(n);
        for (auto& v : x) v = normal(gen);
        const auto ev = exact_loglik(x, Matrix(static_cast<Eigen::Index>(n), 0), model.d_prime,
                                     model.phi, model.theta_free, 0);
        const double oracle = dense_profile_loglik(x, Matrix(static_cast<Eigen::Index>(n), 0), model);
        CHECK(std::abs(ev.loglik - oracle) <= 1e-8);
    }
}

TEST_CASE("profiled mean is a maximum") {
    std::mt19937 gen(11);
    std::normal_distribution<double> normal;
    const std::size_t n = 60;
    Vector x(n);
    for (std::size_t t = 0; t < n; ++t) x[t] = 2.5 + normal(gen);
    const Matrix design = Matrix::Ones(static_cast<Eigen::Index>(n), 1);
    const auto base = exact_loglik(x, design, 0.1, {}, {}, 0);
    REQUIRE(base.mean_coeffs.size() == 1);
    for (double bump : {1e-4, -1e-4}) {
        ExactEvalOptions opt;
        opt.profile = false;
        opt.fixed_sigma2 = base.sigma2;
        opt.fixed_mean = {base.mean_coeffs[0] + bump};
        const auto perturbed = exact_loglik(x, design, 0.1, {}, {}, 0, opt);
        CHECK(perturbed.loglik <= base.loglik + 1e-12);
    }
}

TEST_CASE("analytic sigma2 profile matches scalar search") {
    std::mt19937 gen(21);
    std::normal_distribution<double> normal;
    const std::size_t n = 50;
    Vector x(n);
    for (auto& v : x) v = 0.7 * normal(gen);
    const auto base = exact_loglik(x, Matrix(static_cast<Eigen::Index>(n), 0), 0.15, {}, {}, 0);
    double best = -1e300;
    double best_s2 = 0.0;
    for (double s2 = 0.05; s2 < 3.0; s2 *= 1.0005) {
        ExactEvalOptions opt;
        opt.profile = false;
        opt.fixed_sigma2 = s2;
        const auto ev = exact_loglik(x, Matrix(static_cast<Eigen::Index>(n), 0), 0.15, {}, {}, 0, opt);
        if (ev.loglik > best) {
            best = ev.loglik;
            best_s2 = s2;
        }
    }
    CHECK(base.sigma2 == doctest::Approx(best_s2).epsilon(1e-3));
    CHECK(base.loglik == doctest::Approx(best).epsilon(1e-8));
}

TEST_CASE("design pruning drops differenced-away and collinear columns") {
    const std::size_t n = 20;
    Matrix design(static_cast<Eigen::Index>(n), 3);
    for (std::size_t t = 0; t < n; ++t) {
        design(static_cast<Eigen::Index>(t), 0) = 0.0;  // constant after differencing
        design(static_cast<Eigen::Index>(t), 1) = static_cast<double>(t);
        design(static_cast<Eigen::Index>(t), 2) = 2.0 * static_cast<double>(t);  // collinear
    }
    const auto [pruned, kept] = prune_design(design);
    CHECK(pruned.cols() == 1);
    REQUIRE(kept.size() == 1);
    CHECK(kept[0] == 1);
}

TEST_CASE("constant input reports zero variance") {
    const Vector x(30, 4.2);
    const Matrix design = Matrix::Ones(30, 1);
    CHECK_THROWS_AS((void)exact_loglik(x, design, 0.0, {}, {}, 0), ZeroVariance);
}
