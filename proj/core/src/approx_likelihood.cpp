#include "arfima/approx_likelihood.hpp"

#include <gsl/gsl_fft_real.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "arfima/exact_likelihood.hpp"

namespace arfima {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kDirectDftLimit = 256;

Vector dft_moduli_sq_direct(std::span<const double> x, std::size_t nfreq) {
    const std::size_t n = x.size();
    Vector out(nfreq);
    for (std::size_t jj = 1; jj <= nfreq; ++jj) {
        const double nu = 2.0 * kPi * static_cast<double>(jj) / static_cast<double>(n);
        double re = 0.0;
        double im = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            const double phase = nu * static_cast<double>(t + 1);
            re += x[t] * std::cos(phase);
            im -= x[t] * std::sin(phase);
        }
        out[jj - 1] = re * re + im * im;
    }
    return out;
}

Vector dft_moduli_sq_fft(std::span<const double> x, std::size_t nfreq) {
    const std::size_t n = x.size();
    Vector data(x.begin(), x.end());
    gsl_fft_real_wavetable* wt = gsl_fft_real_wavetable_alloc(n);
    gsl_fft_real_workspace* ws = gsl_fft_real_workspace_alloc(n);
    gsl_fft_real_transform(data.data(), 1, n, wt, ws);
    gsl_fft_real_wavetable_free(wt);
    gsl_fft_real_workspace_free(ws);
    // half-complex layout: data[0] = DC, then (re, im) pairs, and a lone
    // real Nyquist term for even n.
    Vector out(nfreq);
    for (std::size_t jj = 1; jj <= nfreq; ++jj) {
        const double re = data[2 * jj - 1];
        const double im = (2 * jj < n) ? data[2 * jj] : 0.0;
        out[jj - 1] = re * re + im * im;
    }
    return out;
}

/// ARMA innovations with zero initial conditions:
/// e_t = w_t - sum phi_l w_{t-l} - sum theta_l e_{t-l}.
Vector arma_innovations(std::span<const double> w, std::span<const double> phi,
                        std::span<const double> theta) {
    const std::size_t n = w.size();
    Vector e(n);
    for (std::size_t t = 0; t < n; ++t) {
        double acc = w[t];
        for (std::size_t l = 1; l <= phi.size() && l <= t; ++l) acc -= phi[l - 1] * w[t - l];
        for (std::size_t l = 1; l <= theta.size() && l <= t; ++l) acc -= theta[l - 1] * e[t - l];
        e[t] = acc;
    }
    return e;
}

CssEval filtered_css(std::span<const double> x, const Matrix& design, double d_frac,
                     std::span<const double> phi, std::span<const double> theta_ma) {
    const std::size_t n = x.size();
    if (n == 0) throw InsufficientData("css: empty series");

    const auto filter = [&](std::span<const double> v) {
        const Vector w = apply_truncated_frac_diff(v, d_frac);
        return arma_innovations(w, phi, theta_ma);
    };

    const Vector e_x = filter(x);
    CssEval out;
    Vector resid = e_x;
    auto [pruned, kept] = prune_design(design);
    out.kept_design_columns = kept;
    const Eigen::Index k = pruned.cols();
    if (k > 0) {
        Matrix e_d(static_cast<Eigen::Index>(n), k);
        Vector col(n);
        for (Eigen::Index c = 0; c < k; ++c) {
            for (std::size_t t = 0; t < n; ++t) col[t] = pruned(static_cast<Eigen::Index>(t), c);
            const Vector f = filter(col);
            for (std::size_t t = 0; t < n; ++t) e_d(static_cast<Eigen::Index>(t), c) = f[t];
        }
        Eigen::Map<const Eigen::VectorXd> ex(e_x.data(), static_cast<Eigen::Index>(n));
        const Eigen::VectorXd beta = e_d.colPivHouseholderQr().solve(ex);
        const Eigen::VectorXd r = ex - e_d * beta;
        resid.assign(r.data(), r.data() + r.size());
        out.mean_coeffs.assign(beta.data(), beta.data() + beta.size());
    }
    double ss = 0.0;
    for (double v : resid) ss += v * v;
    const double nn = static_cast<double>(n);
    out.sigma2 = ss / nn;
    if (!(out.sigma2 > 0.0) || !std::isfinite(out.sigma2)) {
        throw ZeroVariance("css: residual variance vanished");
    }
    out.loglik = -0.5 * nn * (std::log(2.0 * kPi * out.sigma2) + 1.0);
    return out;
}

}  // namespace

Periodogram periodogram(std::span<const double> x) {
    const std::size_t n = x.size();
    if (n < 4) throw InsufficientData("periodogram: need at least 4 observations");
    const std::size_t nfreq = n / 2;
    Periodogram out;
    out.n = n;
    out.freqs.resize(nfreq);
    for (std::size_t jj = 1; jj <= nfreq; ++jj) {
        out.freqs[jj - 1] = 2.0 * kPi * static_cast<double>(jj) / static_cast<double>(n);
    }
    Vector mod2 = (n < kDirectDftLimit) ? dft_moduli_sq_direct(x, nfreq) : dft_moduli_sq_fft(x, nfreq);
    out.ordinates.resize(nfreq);
    const double scale = 1.0 / (2.0 * kPi * static_cast<double>(n));
    for (std::size_t i = 0; i < nfreq; ++i) out.ordinates[i] = mod2[i] * scale;
    return out;
}

WhittleEval whittle_loglik(const Periodogram& pgram, double d_prime, std::span<const double> phi,
                           std::span<const double> theta_free, int j) {
    StationaryModel model{d_prime, Vector(phi.begin(), phi.end()),
                          Vector(theta_free.begin(), theta_free.end()), j, 1.0};
    const Vector g = spectral_density(model, pgram.freqs);
    const std::size_t m = g.size();
    double mean_ratio = 0.0;
    double sum_log_g = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        mean_ratio += pgram.ordinates[i] / g[i];
        sum_log_g += std::log(g[i]);
    }
    mean_ratio /= static_cast<double>(m);
    WhittleEval out;
    out.sigma2 = mean_ratio;
    if (!(out.sigma2 > 0.0) || !std::isfinite(out.sigma2)) {
        throw ZeroVariance("whittle: profiled innovation variance vanished");
    }
    out.loglik = -sum_log_g - static_cast<double>(m) * (std::log(out.sigma2) + 1.0);
    return out;
}

WhittleEval whittle_loglik(std::span<const double> x_diff, double d_prime,
                           std::span<const double> phi, std::span<const double> theta_free, int j) {
    return whittle_loglik(periodogram(x_diff), d_prime, phi, theta_free, j);
}

CssEval scss_loglik(std::span<const double> x_diff, const Matrix& design_diff, double d_prime,
                    std::span<const double> phi, std::span<const double> theta_free, int j) {
    const MaPolynomial theta = constrained_ma(MaPolynomial{Vector(theta_free.begin(), theta_free.end())}, j);
    return filtered_css(x_diff, design_diff, d_prime, phi, theta.coeffs);
}

CssEval css_loglik(std::span<const double> y, const Matrix& design, double d,
                   std::span<const double> phi, std::span<const double> theta) {
    return filtered_css(y, design, d, phi, theta);
}

}  // namespace arfima
