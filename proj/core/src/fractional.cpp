#include "arfima/fractional.hpp"

#include <cmath>

namespace arfima {

FracDiffCoeffs frac_diff_coeffs(double d, std::size_t length) {
    FracDiffCoeffs out;
    out.d = d;
    out.coeffs.resize(length);
    if (length == 0) return out;
    out.coeffs[0] = 1.0;
    // pi_l = pi_{l-1} * (l - 1 - d) / l; terminates exactly at zero for
    // nonnegative integer d, so no special casing is needed.
    for (std::size_t l = 1; l < length; ++l) {
        out.coeffs[l] = out.coeffs[l - 1] * ((static_cast<double>(l) - 1.0 - d) / static_cast<double>(l));
    }
    return out;
}

Vector apply_truncated_frac_diff(std::span<const double> x, double d) {
    const std::size_t n = x.size();
    const auto pi = frac_diff_coeffs(d, n).coeffs;
    Vector out(n, 0.0);
    for (std::size_t t = 0; t < n; ++t) {
        double acc = 0.0;
        for (std::size_t l = 0; l <= t; ++l) acc += pi[l] * x[t - l];
        out[t] = acc;
    }
    return out;
}

Vector integer_diff(std::span<const double> x, int m) {
    if (m < 0) throw Error("integer_diff: negative order");
    if (x.size() <= static_cast<std::size_t>(m)) {
        throw InsufficientData("integer_diff: series length must exceed the differencing order");
    }
    Vector cur(x.begin(), x.end());
    for (int pass = 0; pass < m; ++pass) {
        Vector next(cur.size() - 1);
        for (std::size_t t = 0; t + 1 < cur.size(); ++t) next[t] = cur[t + 1] - cur[t];
        cur = std::move(next);
    }
    return cur;
}

Vector MaPolynomial::full() const {
    Vector f(coeffs.size() + 1);
    f[0] = 1.0;
    std::copy(coeffs.begin(), coeffs.end(), f.begin() + 1);
    return f;
}

Vector convolve(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) return {};
    Vector out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

MaPolynomial constrained_ma(const MaPolynomial& theta, int j) {
    if (j < 0) throw Error("constrained_ma: negative unit-root multiplicity");
    Vector acc = theta.full();
    const Vector unit_root = {1.0, -1.0};
    for (int pass = 0; pass < j; ++pass) acc = convolve(acc, unit_root);
    MaPolynomial out;
    out.coeffs.assign(acc.begin() + 1, acc.end());
    return out;
}

}  // namespace arfima
