#pragma once

#include <span>
#include <vector>

#include "arfima/types.hpp"

namespace arfima {

/// Weights of the fractional differencing operator (1-B)^d truncated to
/// `length` terms, pi_l = (-1)^l C(d, l), so that (1-B)^d x_t =
/// sum_l pi_l x_{t-l} with pi_0 = 1.
struct FracDiffCoeffs {
    double d = 0.0;
    Vector coeffs;

    std::size_t length() const { return coeffs.size(); }
};

FracDiffCoeffs frac_diff_coeffs(double d, std::size_t length);

/// Length-preserving truncated operator (1-B)^d_+: element t is
/// sum_{l=0}^{t-1} pi_l x_{t-l}.
Vector apply_truncated_frac_diff(std::span<const double> x, double d);

/// Exact m-fold integer difference; output has length n - m.
/// Throws InsufficientData when the series is too short.
Vector integer_diff(std::span<const double> x, int m);

/// Moving average polynomial theta(B) = 1 + sum_{l=1}^{Q} theta_l B^l.
/// The implicit leading 1 is not stored.
struct MaPolynomial {
    Vector coeffs;

    int order() const { return static_cast<int>(coeffs.size()); }

    /// Full coefficient sequence (1, theta_1, ..., theta_Q).
    Vector full() const;
};

/// Coefficients of (1-B)^j theta(B); exact integer-weight convolution.
MaPolynomial constrained_ma(const MaPolynomial& theta, int j);

/// Plain polynomial product of full coefficient sequences.
Vector convolve(std::span<const double> a, std::span<const double> b);

}  // namespace arfima
