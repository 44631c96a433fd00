#include "arfima/exact_likelihood.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace arfima {

namespace {
constexpr double kLog2Pi = 1.8378770664093454835606594728112352797;
}

std::pair<Matrix, std::vector<int>> prune_design(const Matrix& design_diff) {
    const Eigen::Index n = design_diff.rows();
    const Eigen::Index k = design_diff.cols();
    // Sequential Gram-Schmidt sweep: earlier columns win, zeroed-out and
    // collinear ones are dropped with a deterministic outcome.
    std::vector<int> kept;
    std::vector<Eigen::VectorXd> basis;
    for (Eigen::Index c = 0; c < k; ++c) {
        Eigen::VectorXd col = design_diff.col(c);
        const double original = col.norm();
        if (original <= 1e-10) continue;
        for (const auto& b : basis) col -= b.dot(col) * b;
        if (col.norm() <= 1e-8 * original) continue;
        basis.push_back(col.normalized());
        kept.push_back(static_cast<int>(c));
    }
    Matrix reduced(n, static_cast<Eigen::Index>(kept.size()));
    for (std::size_t i = 0; i < kept.size(); ++i) {
        reduced.col(static_cast<Eigen::Index>(i)) = design_diff.col(kept[i]);
    }
    return {reduced, kept};
}

ProfileEval exact_loglik(std::span<const double> x_diff, const Matrix& design_diff, double d_prime,
                         std::span<const double> phi, std::span<const double> theta_free, int j,
                         const ExactEvalOptions& options) {
    const std::size_t n = x_diff.size();
    if (n == 0) throw InsufficientData("exact_loglik: empty series");
    if (design_diff.rows() != 0 && design_diff.rows() != static_cast<Eigen::Index>(n)) {
        throw Error("exact_loglik: design length mismatch");
    }
    const Eigen::Index k = design_diff.cols();

    StationaryModel model{d_prime, Vector(phi.begin(), phi.end()),
                          Vector(theta_free.begin(), theta_free.end()), j, 1.0};
    const Autocovariance acov = autocovariance(model, n - 1);

    std::vector<std::span<const double>> columns;
    columns.emplace_back(x_diff);
    std::vector<Vector> design_cols(static_cast<std::size_t>(k));
    for (Eigen::Index c = 0; c < k; ++c) {
        auto& col = design_cols[static_cast<std::size_t>(c)];
        col.resize(n);
        for (std::size_t t = 0; t < n; ++t) col[t] = design_diff(static_cast<Eigen::Index>(t), c);
        columns.emplace_back(col);
    }

    const ToeplitzStats stats = toeplitz_quadratics(acov.gamma, columns);
    ProfileEval out;
    out.prediction_variances = stats.prediction_variances;
    if (stats.psd_failure) {
        out.psd_flag = true;
        out.loglik = -std::numeric_limits<double>::infinity();
        return out;
    }

    const double s_xx = stats.quad(0, 0);
    double q_form = s_xx;
    Vector beta;
    if (k > 0) {
        const Matrix s_dd = stats.quad.bottomRightCorner(k, k);
        const Eigen::VectorXd s_dx = stats.quad.col(0).tail(k);
        if (options.profile) {
            const Eigen::VectorXd b = s_dd.ldlt().solve(s_dx);
            q_form = s_xx - 2.0 * b.dot(s_dx) + b.dot(s_dd * b);
            beta.assign(b.data(), b.data() + b.size());
        } else if (!options.fixed_mean.empty()) {
            if (static_cast<Eigen::Index>(options.fixed_mean.size()) != k) {
                throw Error("exact_loglik: fixed mean dimension mismatch");
            }
            Eigen::Map<const Eigen::VectorXd> b(options.fixed_mean.data(), k);
            q_form = s_xx - 2.0 * b.dot(s_dx) + b.dot(s_dd * b);
            beta = options.fixed_mean;
        }
    }
    if (options.profile) {
        // an essentially perfect fit means the input carries no noise at
        // the assumed model (constant series, exact collinearity)
        if (q_form <= 1e-10 * std::max(1e-300, s_xx)) {
            throw ZeroVariance("exact_loglik: residual quadratic form vanished (constant input?)");
        }
        if (!(q_form > 0.0) || !std::isfinite(q_form)) {
            out.psd_flag = true;
            out.loglik = -std::numeric_limits<double>::infinity();
            return out;
        }
    } else if (!std::isfinite(q_form) || q_form < 0.0) {
        out.psd_flag = true;
        out.loglik = -std::numeric_limits<double>::infinity();
        return out;
    }

    const double nn = static_cast<double>(n);
    if (options.profile) {
        out.sigma2 = q_form / nn;
        out.loglik = -0.5 * nn * kLog2Pi - 0.5 * stats.log_det - 0.5 * nn * std::log(out.sigma2) - 0.5 * nn;
    } else {
        const double sigma2 = options.fixed_sigma2.value_or(1.0);
        if (!(sigma2 > 0.0)) throw Error("exact_loglik: sigma2 must be positive");
        out.sigma2 = sigma2;
        out.loglik = -0.5 * nn * kLog2Pi - 0.5 * (stats.log_det + nn * std::log(sigma2)) -
                     0.5 * q_form / sigma2;
    }
    out.mean_coeffs = std::move(beta);
    return out;
}

}  // namespace arfima
