#pragma once

#include <span>

#include "arfima/process.hpp"
#include "arfima/types.hpp"

namespace arfima {

/// Periodogram at the nonzero Fourier frequencies nu_j = 2 pi j / n,
/// j = 1..floor(n/2) (the Nyquist ordinate is kept for even n so the
/// both-signs sum satisfies Parseval). The zero frequency is excluded,
/// which makes every Whittle quantity invariant to constant shifts.
struct Periodogram {
    Vector freqs;
    Vector ordinates;
    std::size_t n = 0;  // length of the originating series
};

Periodogram periodogram(std::span<const double> x);

struct WhittleEval {
    double loglik = 0.0;
    double sigma2 = 0.0;
};

/// Discrete Whittle objective -sum_j [log f(nu_j) + I(nu_j) / f(nu_j)]
/// with sigma2 profiled analytically; larger is better.
WhittleEval whittle_loglik(const Periodogram& pgram, double d_prime, std::span<const double> phi,
                           std::span<const double> theta_free, int j);

WhittleEval whittle_loglik(std::span<const double> x_diff, double d_prime,
                           std::span<const double> phi, std::span<const double> theta_free, int j);

struct CssEval {
    double loglik = 0.0;
    double sigma2 = 0.0;
    Vector mean_coeffs;
    std::vector<int> kept_design_columns;
};

/// Stationary conditional sum of squares: applies (1-B)^{d'}_+ to the
/// mean-adjusted differenced data, then scores ARMA(p, j+q) innovations
/// with the constrained moving average, zero initial conditions. Mean
/// coefficients are profiled by least squares on the filtered design and
/// sigma2 as the mean squared residual.
CssEval scss_loglik(std::span<const double> x_diff, const Matrix& design_diff, double d_prime,
                    std::span<const double> phi, std::span<const double> theta_free, int j);

/// Plain conditional sum of squares on the undifferenced data: truncated
/// fractional difference of order d followed by free ARMA(p, q) filtering.
/// No stationarity restriction on d.
CssEval css_loglik(std::span<const double> y, const Matrix& design, double d,
                   std::span<const double> phi, std::span<const double> theta);

}  // namespace arfima
