#include "arfima/toeplitz.hpp"

#include <cmath>

namespace arfima {

ToeplitzStats toeplitz_quadratics(std::span<const double> gamma,
                                  const std::vector<std::span<const double>>& columns) {
    const std::size_t ncols = columns.size();
    std::size_t n = 0;
    for (const auto& c : columns) n = std::max(n, c.size());
    for (const auto& c : columns) {
        if (c.size() != n) throw Error("toeplitz_quadratics: columns must share one length");
    }
    if (n == 0) throw Error("toeplitz_quadratics: empty columns");
    if (gamma.size() < n) throw Error("toeplitz_quadratics: need gamma(0..n-1)");

    ToeplitzStats out;
    out.quad = Matrix::Zero(static_cast<Eigen::Index>(ncols), static_cast<Eigen::Index>(ncols));
    out.prediction_variances.resize(n);

    // G = L D L' with unit lower-triangular L given by the one-step
    // prediction coefficients; eps(c) = L^{-1} c accumulates per column.
    const double floor = 1e-12 * gamma[0];
    double v = gamma[0];
    out.prediction_variances[0] = v;
    if (v <= floor || !(v > 0.0)) {
        out.psd_failure = true;
        return out;
    }
    out.log_det = std::log(v);

    std::vector<double> eps(ncols);
    for (std::size_t c = 0; c < ncols; ++c) eps[c] = columns[c][0];
    for (std::size_t c = 0; c < ncols; ++c) {
        for (std::size_t c2 = 0; c2 <= c; ++c2) {
            out.quad(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(c2)) += eps[c] * eps[c2] / v;
        }
    }

    Vector a;       // prediction coefficients a_{t,1..t}
    Vector a_prev;
    a.reserve(n);
    a_prev.reserve(n);
    for (std::size_t t = 1; t < n; ++t) {
        double num = gamma[t];
        for (std::size_t jj = 1; jj < t; ++jj) num -= a[jj - 1] * gamma[t - jj];
        const double kappa = num / v;
        a_prev = a;
        a.resize(t);
        a[t - 1] = kappa;
        for (std::size_t jj = 0; jj + 1 < t; ++jj) a[jj] = a_prev[jj] - kappa * a_prev[t - 2 - jj];
        v *= (1.0 - kappa * kappa);
        out.prediction_variances[t] = v;
        if (v <= floor || !std::isfinite(v)) {
            out.psd_failure = true;
            return out;
        }
        out.log_det += std::log(v);
        for (std::size_t c = 0; c < ncols; ++c) {
            double pred = 0.0;
            const auto& col = columns[c];
            for (std::size_t jj = 1; jj <= t; ++jj) pred += a[jj - 1] * col[t - jj];
            eps[c] = col[t] - pred;
        }
        for (std::size_t c = 0; c < ncols; ++c) {
            for (std::size_t c2 = 0; c2 <= c; ++c2) {
                out.quad(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(c2)) +=
                    eps[c] * eps[c2] / v;
            }
        }
    }
    for (std::size_t c = 0; c < ncols; ++c) {
        for (std::size_t c2 = c + 1; c2 < ncols; ++c2) {
            out.quad(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(c2)) =
                out.quad(static_cast<Eigen::Index>(c2), static_cast<Eigen::Index>(c));
        }
    }
    return out;
}

}  // namespace arfima
