#pragma once

#include <cstdint>
#include <span>

#include "arfima/fractional.hpp"
#include "arfima/rng.hpp"
#include "arfima/types.hpp"

namespace arfima {

/// gamma(0..max_lag) of a stationary process, in squared data units.
struct Autocovariance {
    Vector gamma;

    double operator()(std::size_t h) const { return gamma[h]; }
    std::size_t max_lag() const { return gamma.empty() ? 0 : gamma.size() - 1; }
};

/// Stationary model for the differenced data: ARFIMA(p, d_prime, j + q)
/// with moving average (1-B)^j theta(B). d_prime is the memory parameter
/// of the stationary representation itself.
struct StationaryModel {
    double d_prime = 0.0;
    Vector phi;        // free AR coefficients
    Vector theta_free; // free MA coefficients
    int j = 0;         // unit-root MA multiplicity
    double sigma2 = 1.0;

    MaPolynomial constrained_theta() const {
        return constrained_ma(MaPolynomial{theta_free}, j);
    }
};

/// True when all roots of 1 - sum phi_l z^l are outside the unit circle
/// with modulus margin `margin`.
bool ar_is_stationary(std::span<const double> phi, double margin = 1e-8);

/// True when all roots of 1 + sum theta_l z^l are outside the unit circle.
bool ma_is_invertible(std::span<const double> theta, double margin = 1e-8);

/// f(nu) = sigma2 |theta~(e^{-i nu})|^2 / (2 pi |phi(e^{-i nu})|^2)
///         * |1 - e^{-i nu}|^{-2 d'}
/// evaluated pointwise. Throws NonStationary when d' >= 0.5 and PoleAtZero
/// when nu = 0 is requested with d' > 0.
Vector spectral_density(const StationaryModel& model, std::span<const double> freqs);

double spectral_density_at(const StationaryModel& model, double freq);

/// Autocovariance gamma(0..max_lag). Closed form: exact ARMA recursion at
/// d' = 0, fractional-noise gamma-ratio recursion convolved with the MA
/// autocovariances for p = 0, and Sowell's partial-fraction/hypergeometric
/// expansion for p > 0 with distinct AR roots. Falls back to adaptive
/// quadrature of the spectral density near repeated roots and in the
/// small-|d'| region where the closed form loses precision.
Autocovariance autocovariance(const StationaryModel& model, std::size_t max_lag);

/// Independent quadrature route: gamma(h) = 2 int_0^pi f(nu) cos(h nu) dnu
/// via adaptive integration with singular-endpoint extrapolation.
Autocovariance autocovariance_quadrature(const StationaryModel& model, std::size_t max_lag,
                                         double epsrel = 1e-10);

/// Exact Gaussian sample of length n with covariance Toeplitz(gamma(0..n-1)),
/// generated sequentially by the innovations form of the Levinson recursion.
Vector simulate_stationary_from(const Autocovariance& acov, std::size_t n, NormalStream& stream);

/// Stationary ARFIMA(p, d, q) sample; requires -0.5 < d < 0.5. The mean from
/// params.mean_spec is added afterward.
Vector simulate_stationary(const ArfimaParams& params, std::size_t n, std::uint64_t seed,
                           std::uint64_t stream = 0);

/// Possibly non-stationary sample: for d >= 0.5 the stationary
/// ARFIMA(p, d - r, q) series is simulated and cumulatively summed r times,
/// r the smallest integer with d - r < 0.5; the mean is added last.
Vector simulate_arfima(const ArfimaParams& params, std::size_t n, std::uint64_t seed,
                       std::uint64_t stream = 0);

}  // namespace arfima
