#pragma once

#include <functional>
#include <span>

#include "arfima/types.hpp"

namespace arfima {

struct ScalarMinResult {
    double x = 0.0;
    double value = 0.0;
    int evaluations = 0;
};

/// Bounded golden-section/parabolic-interpolation minimizer (Brent). The
/// objective may return +inf; a coarse presweep of `presweep` points picks
/// the bracket so one-sided surfaces and local dips do not trap the search.
ScalarMinResult minimize_scalar(const std::function<double(double)>& f, double lo, double hi,
                                double xtol = 1e-6, int presweep = 17);

struct SimplexResult {
    Vector x;
    double value = 0.0;
    int evaluations = 0;
};

/// Derivative-free Nelder-Mead with standard coefficients; converges when
/// the simplex value spread falls below ftol or the step budget runs out.
SimplexResult nelder_mead(const std::function<double(std::span<const double>)>& f, Vector start,
                          double step = 0.25, double ftol = 1e-9, int max_evals = 4000);

/// Map partial autocorrelations in (-1, 1) to AR coefficients of a
/// stationary polynomial 1 - sum phi_l z^l (Durbin-Levinson map).
Vector pacf_to_ar(std::span<const double> pacf);

/// Inverse map; values are clamped slightly inside (-1, 1).
Vector ar_to_pacf(std::span<const double> phi);

/// MA coefficients of an invertible 1 + sum theta_l z^l from partial
/// autocorrelations: theta = -pacf_to_ar(r).
Vector pacf_to_ma(std::span<const double> pacf);

Vector ma_to_pacf(std::span<const double> theta);

}  // namespace arfima
