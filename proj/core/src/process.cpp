#include "arfima/process.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>
#include <gsl/gsl_poly.h>
#include <gsl/gsl_sf_gamma.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>

namespace arfima {

namespace {

using Complex = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// Closed form is unreliable within this band around d' = 0 when p > 0;
// d' = 0 itself has an exact ARMA route.
constexpr double kSmallDBand = 1e-3;
// AR roots closer than this (or nearer to the unit circle) send the
// evaluation to the quadrature route.
constexpr double kRootSeparation = 1e-4;
constexpr double kRootModulusCap = 1.0 - 2e-4;

void disable_gsl_aborts() {
    static std::once_flag flag;
    std::call_once(flag, [] { gsl_set_error_handler_off(); });
}

// GSL must never abort the process from inside a fit loop.
const bool kGslHandlerOff = [] {
    gsl_set_error_handler_off();
    return true;
}();

Vector trimmed(std::span<const double> v) {
    Vector out(v.begin(), v.end());
    while (!out.empty() && std::abs(out.back()) < 1e-14) out.pop_back();
    return out;
}

/// Roots of 1 + sum_{l} coeffs[l] z^{l+1}; empty input yields no roots.
std::vector<Complex> poly_roots_unit_leading(std::span<const double> coeffs) {
    const Vector c = trimmed(coeffs);
    const std::size_t deg = c.size();
    if (deg == 0) return {};
    if (deg == 1) return {Complex(-1.0 / c[0], 0.0)};
    Vector a(deg + 1);
    a[0] = 1.0;
    for (std::size_t l = 0; l < deg; ++l) a[l + 1] = c[l];
    std::vector<double> z(2 * deg);
    gsl_poly_complex_workspace* w = gsl_poly_complex_workspace_alloc(deg + 1);
    const int status = gsl_poly_complex_solve(a.data(), deg + 1, w, z.data());
    gsl_poly_complex_workspace_free(w);
    if (status != GSL_SUCCESS) throw Error("polynomial root solve failed");
    std::vector<Complex> roots(deg);
    for (std::size_t i = 0; i < deg; ++i) roots[i] = Complex(z[2 * i], z[2 * i + 1]);
    return roots;
}

/// Inverse roots rho_i of phi(z) = 1 - sum phi_l z^l = prod (1 - rho_i z),
/// for the trimmed (effective) order.
std::vector<Complex> ar_inverse_roots(std::span<const double> phi) {
    Vector neg(phi.begin(), phi.end());
    for (auto& v : neg) v = -v;
    auto roots = poly_roots_unit_leading(neg);
    for (auto& r : roots) r = 1.0 / r;
    return roots;
}

double polynomial_modulus_sq(std::span<const double> full_coeffs, double freq) {
    Complex acc(0.0, 0.0);
    for (std::size_t l = 0; l < full_coeffs.size(); ++l) {
        acc += full_coeffs[l] * std::polar(1.0, -freq * static_cast<double>(l));
    }
    return std::norm(acc);
}

/// Fractional-noise autocovariance at unit innovation variance for
/// h = 0..max_h, via the gamma-ratio forward recursion. Exact at d = 0.
Vector fi_autocov(double d, std::size_t max_h) {
    Vector g(max_h + 1);
    g[0] = std::exp(gsl_sf_lngamma(1.0 - 2.0 * d) - 2.0 * gsl_sf_lngamma(1.0 - d));
    for (std::size_t h = 0; h < max_h; ++h) {
        g[h + 1] = g[h] * (static_cast<double>(h) + d) / (static_cast<double>(h) + 1.0 - d);
    }
    return g;
}

/// MA autocovariance weights psi_l = sum_s t_s t_{s+|l|} for l = -Q..Q,
/// from the full coefficient sequence t_0..t_Q.
Vector ma_psi(const Vector& full) {
    const int q = static_cast<int>(full.size()) - 1;
    Vector psi(2 * q + 1, 0.0);
    for (int l = -q; l <= q; ++l) {
        double acc = 0.0;
        for (int s = std::abs(l); s <= q; ++s) acc += full[s] * full[s - std::abs(l)];
        psi[l + q] = acc;
    }
    return psi;
}

/// Deviations of the fractional-noise autocorrelation from one,
/// E(u) = rho_FI(u) - 1, to full relative precision of the difference.
/// Valid for 0 < d < 0.5 where every recursion ratio is positive.
Vector fi_corr_deviation(double d, std::size_t max_u) {
    Vector e(max_u + 1, 0.0);
    double log_rho = 0.0;
    for (std::size_t u = 1; u <= max_u; ++u) {
        log_rho += std::log1p(-(1.0 - 2.0 * d) / (static_cast<double>(u) - d));
        e[u] = std::expm1(log_rho);
    }
    return e;
}

/// Autocovariance near the top stationarity edge when the constrained MA
/// carries a unit root: the standard routes cancel a diverging
/// Gamma(1-2d) scale down to an O(1) result and lose most digits. With
/// sum psi = 0 the scale factors out exactly:
///   p = 0: gamma(s) = A sum_l psi_l E(|s-l|)
///   p = 1: gamma(s) = A / (1 - rho^2) sum_c rho^{|c|} W(s+c),
///          W(v) = sum_l psi_l E(|v-l|)
/// with A = Gamma(1-2d) / Gamma(1-d)^2 and E from fi_corr_deviation.
Vector edge_autocov_centered(double d, const Vector& phi, const Vector& theta_full,
                             std::size_t max_lag) {
    const int q = static_cast<int>(theta_full.size()) - 1;
    const Vector psi = ma_psi(theta_full);
    const double a_scale = std::exp(gsl_sf_lngamma(1.0 - 2.0 * d) - 2.0 * gsl_sf_lngamma(1.0 - d));
    Vector gamma(max_lag + 1, 0.0);
    if (phi.empty()) {
        const Vector e = fi_corr_deviation(d, max_lag + static_cast<std::size_t>(q));
        for (std::size_t s = 0; s <= max_lag; ++s) {
            double acc = 0.0;
            for (int l = -q; l <= q; ++l) {
                acc += psi[static_cast<std::size_t>(l + q)] *
                       e[static_cast<std::size_t>(std::abs(static_cast<int>(s) - l))];
            }
            gamma[s] = a_scale * acc;
        }
        return gamma;
    }
    const double rho = phi[0];
    const std::size_t c_max = static_cast<std::size_t>(std::clamp(
        std::log(1e-18) / std::log(std::min(0.999999, std::abs(rho))), 64.0, 2.0e6));
    const std::size_t reach_w = max_lag + c_max;
    const Vector e = fi_corr_deviation(d, reach_w + static_cast<std::size_t>(q));
    const auto w_at = [&](std::size_t v) {
        double acc = 0.0;
        for (int l = -q; l <= q; ++l) {
            acc += psi[static_cast<std::size_t>(l + q)] *
                   e[static_cast<std::size_t>(std::abs(static_cast<int>(v) - l))];
        }
        return acc;
    };
    Vector w_cache(reach_w + 1);
    for (std::size_t v = 0; v <= reach_w; ++v) w_cache[v] = w_at(v);
    const double prefactor = a_scale / (1.0 - rho * rho);
    for (std::size_t s = 0; s <= max_lag; ++s) {
        double acc = w_cache[s];
        double rho_pow = 1.0;
        for (std::size_t c = 1; c <= c_max; ++c) {
            rho_pow *= rho;
            const std::size_t up = s + c;
            const std::size_t down = (s >= c) ? s - c : c - s;
            acc += rho_pow * (w_cache[up] + w_cache[down]);
        }
        gamma[s] = prefactor * acc;
    }
    return gamma;
}

struct Hyp2F1Result {
    Complex value;
    bool converged = false;
};

/// Gauss series for F(a, 1; c; z), |z| < 1, real a and c.
Hyp2F1Result hyp2f1_b1_series(double a, double c, Complex z, std::size_t max_terms) {
    Complex term(1.0, 0.0);
    Complex sum(1.0, 0.0);
    for (std::size_t k = 0; k < max_terms; ++k) {
        term *= (a + static_cast<double>(k)) / (c + static_cast<double>(k)) * z;
        sum += term;
        if (std::abs(term) < 1e-16 * std::abs(sum)) return {sum, true};
    }
    return {sum, false};
}

double lngamma_sgn(double x, double& sign) {
    gsl_sf_result lg;
    double sgn = 1.0;
    if (gsl_sf_lngamma_sgn_e(x, &lg, &sgn) != GSL_SUCCESS) {
        sign = 0.0;
        return 0.0;
    }
    sign = sgn;
    return lg.val;
}

/// F(a, 1; c; z) near z = 1 by the 1-z connection formula. Requires
/// c - a - 1 (= -2d here) away from integers; the second branch collapses
/// because F(alpha, beta; alpha; w) = (1-w)^{-beta}.
Hyp2F1Result hyp2f1_b1_near_one(double a, double c, Complex z, std::size_t max_terms) {
    const double s = c - a - 1.0;
    double sg1, sg2, sg3, sg4, sg5;
    const double lg_c = lngamma_sgn(c, sg1);
    const double lg_s = lngamma_sgn(s, sg2);
    const double lg_ca = lngamma_sgn(c - a, sg3);
    const double lg_c1 = lngamma_sgn(c - 1.0, sg4);
    const double lg_a = lngamma_sgn(a, sg5);
    if (sg1 == 0.0 || sg2 == 0.0 || sg3 == 0.0 || sg4 == 0.0 || sg5 == 0.0) {
        return {Complex(0.0, 0.0), false};
    }
    const Complex w = 1.0 - z;
    // First branch: series in (1 - z) with parameters (a, 1; a + 2 - c).
    Complex term(1.0, 0.0);
    Complex sum1(1.0, 0.0);
    bool ok = false;
    for (std::size_t k = 0; k < max_terms; ++k) {
        term *= (a + static_cast<double>(k)) / (a + 2.0 - c + static_cast<double>(k)) * w;
        sum1 += term;
        if (std::abs(term) < 1e-16 * std::abs(sum1)) {
            ok = true;
            break;
        }
    }
    if (!ok) return {Complex(0.0, 0.0), false};
    const double coef1 = sg1 * sg2 * sg3 * sg4 * std::exp(lg_c + lg_s - lg_ca - lg_c1);
    double sg_as;
    const double lg_as = lngamma_sgn(a + 1.0 - c, sg_as);
    if (sg_as == 0.0) return {Complex(0.0, 0.0), false};
    const double coef2 = sg1 * sg_as * sg5 * std::exp(lg_c + lg_as - lg_a);
    const Complex branch2 = coef2 * std::exp(s * std::log(w)) * std::exp((1.0 - c) * std::log(z));
    return {coef1 * sum1 + branch2, true};
}

Hyp2F1Result hyp2f1_b1(double a, double c, Complex z) {
    if (std::abs(z) <= 0.8) return hyp2f1_b1_series(a, c, z, 500);
    const double s = c - a - 1.0;
    const bool degenerate = std::abs(s - std::round(s)) < 0.02;
    if (!degenerate && std::abs(1.0 - z) <= 0.5) return hyp2f1_b1_near_one(a, c, z, 2000);
    return hyp2f1_b1_series(a, c, z, 200000);
}

struct SowellResult {
    Vector gamma;
    bool ok = false;
};

/// Sowell's closed form for p >= 1 distinct AR roots:
///   gamma(s) = sum_l sum_i psi_l zeta_i C(d, p + l - s, rho_i)
/// with C folded as gamma_fi(h) (rho^{2p} G(h) + rho^{2p-1} + G(-h)) and
/// G(h) = (F(d + h, 1; 1 - d + h; rho) - 1) / rho computed by backward
/// recursion from a single direct evaluation at the largest argument.
SowellResult sowell_autocov(double d, const std::vector<Complex>& rho, const Vector& theta_full,
                            std::size_t max_lag) {
    const int p = static_cast<int>(rho.size());
    const int q = static_cast<int>(theta_full.size()) - 1;
    // C(d, h, rho) is consumed at h = p + l - s together with G(-h), so G
    // and the fractional-noise weights must cover the symmetric range.
    const int reach = std::max({p + q, static_cast<int>(max_lag) + q - p, 1});

    std::vector<Complex> zeta(rho.size());
    for (int i = 0; i < p; ++i) {
        Complex denom(1.0, 0.0);
        for (int k = 0; k < p; ++k) denom *= (1.0 - rho[k] * rho[i]);
        for (int k = 0; k < p; ++k) {
            if (k != i) denom *= (rho[i] - rho[k]);
        }
        if (std::abs(denom) < 1e-290) return {{}, false};
        zeta[i] = 1.0 / denom;
    }

    const Vector gfi = fi_autocov(d, static_cast<std::size_t>(reach));
    const auto gfi_at = [&](int h) { return gfi[static_cast<std::size_t>(std::abs(h))]; };

    // G_i(h) for h in [-reach, reach], seeded by one direct series at the
    // top and filled by the stable backward contiguous recursion.
    const int span = 2 * reach + 1;
    std::vector<std::vector<Complex>> G(rho.size());
    for (int i = 0; i < p; ++i) {
        G[i].assign(static_cast<std::size_t>(span), Complex(0.0, 0.0));
        const double a_top = d + static_cast<double>(reach);
        const double c_top = 1.0 - d + static_cast<double>(reach);
        const auto f = hyp2f1_b1(a_top, c_top, rho[i]);
        if (!f.converged) return {{}, false};
        G[i][static_cast<std::size_t>(2 * reach)] = (f.value - 1.0) / rho[i];
        for (int h = reach; h > -reach; --h) {
            const Complex g_h = G[i][static_cast<std::size_t>(h + reach)];
            G[i][static_cast<std::size_t>(h - 1 + reach)] =
                (d + static_cast<double>(h) - 1.0) / (static_cast<double>(h) - d) * (1.0 + rho[i] * g_h);
        }
    }

    std::vector<Complex> rho2p(rho.size());
    std::vector<Complex> rho2p1(rho.size());
    for (int i = 0; i < p; ++i) {
        rho2p[i] = std::pow(rho[i], 2 * p);
        rho2p1[i] = std::pow(rho[i], 2 * p - 1);
    }

    const Vector psi = ma_psi(theta_full);
    Vector gamma(max_lag + 1, 0.0);
    for (std::size_t s = 0; s <= max_lag; ++s) {
        Complex acc(0.0, 0.0);
        for (int l = -q; l <= q; ++l) {
            const int h = p + l - static_cast<int>(s);
            const double w = psi[static_cast<std::size_t>(l + q)];
            if (w == 0.0) continue;
            for (int i = 0; i < p; ++i) {
                const Complex g_pos = G[i][static_cast<std::size_t>(h + reach)];
                const Complex g_neg = G[i][static_cast<std::size_t>(-h + reach)];
                acc += w * zeta[i] * gfi_at(h) * (rho2p[i] * g_pos + rho2p1[i] + g_neg);
            }
        }
        gamma[s] = acc.real();
    }
    return {std::move(gamma), true};
}

/// Exact ARMA(p, q) autocovariance at d = 0 via the psi-weight linear
/// system and forward recursion.
Vector arma_autocov(const Vector& phi, const Vector& theta_full, std::size_t max_lag) {
    const int p = static_cast<int>(phi.size());
    const int q = static_cast<int>(theta_full.size()) - 1;
    std::vector<double> psi(static_cast<std::size_t>(q) + 1, 0.0);
    psi[0] = 1.0;
    for (int k = 1; k <= q; ++k) {
        double acc = theta_full[static_cast<std::size_t>(k)];
        for (int i = 1; i <= std::min(k, p); ++i) acc += phi[static_cast<std::size_t>(i - 1)] * psi[static_cast<std::size_t>(k - i)];
        psi[static_cast<std::size_t>(k)] = acc;
    }
    const auto rhs = [&](int k) {
        double acc = 0.0;
        for (int jj = k; jj <= q; ++jj) acc += theta_full[static_cast<std::size_t>(jj)] * psi[static_cast<std::size_t>(jj - k)];
        return acc;
    };
    const std::size_t need = std::max<std::size_t>(max_lag, static_cast<std::size_t>(std::max(p, q)));
    Vector gamma(need + 1, 0.0);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(p + 1, p + 1);
    Eigen::VectorXd b(p + 1);
    for (int k = 0; k <= p; ++k) {
        a(k, k) += 1.0;
        for (int i = 1; i <= p; ++i) a(k, std::abs(k - i)) -= phi[static_cast<std::size_t>(i - 1)];
        b(k) = rhs(k);
    }
    const Eigen::VectorXd head = a.partialPivLu().solve(b);
    for (int k = 0; k <= p; ++k) gamma[static_cast<std::size_t>(k)] = head(k);
    for (std::size_t k = static_cast<std::size_t>(p) + 1; k <= need; ++k) {
        double acc = (static_cast<int>(k) <= q) ? rhs(static_cast<int>(k)) : 0.0;
        for (int i = 1; i <= p; ++i) acc += phi[static_cast<std::size_t>(i - 1)] * gamma[k - static_cast<std::size_t>(i)];
        gamma[k] = acc;
    }
    gamma.resize(max_lag + 1);
    return gamma;
}

struct SpectrumIntegrand {
    const StationaryModel* model;
    double lag;
};

double spectrum_cos(double nu, void* params) {
    const auto* s = static_cast<SpectrumIntegrand*>(params);
    return 2.0 * spectral_density_at(*s->model, nu) * std::cos(s->lag * nu);
}

void validate_stationary(const StationaryModel& model) {
    if (!(model.d_prime < 0.5)) {
        throw NonStationary("memory parameter of the stationary representation must be < 0.5");
    }
    if (!(model.d_prime > -1.0)) {
        throw NonStationary("memory parameter of the stationary representation must exceed -1");
    }
    if (!ar_is_stationary(model.phi)) {
        throw NonStationary("autoregressive polynomial has roots inside or on the unit circle");
    }
}

}  // namespace

bool ar_is_stationary(std::span<const double> phi, double margin) {
    if (trimmed(phi).empty()) return true;
    for (const auto& rho : ar_inverse_roots(phi)) {
        if (std::abs(rho) >= 1.0 / (1.0 + margin)) return false;
    }
    return true;
}

bool ma_is_invertible(std::span<const double> theta, double margin) {
    const Vector t = trimmed(theta);
    if (t.empty()) return true;
    for (const auto& root : poly_roots_unit_leading(t)) {
        if (std::abs(root) <= 1.0 + margin) return false;
    }
    return true;
}

double spectral_density_at(const StationaryModel& model, double freq) {
    if (freq == 0.0 && model.d_prime > 0.0) {
        throw PoleAtZero("spectral density has a pole at frequency zero when d' > 0");
    }
    const Vector theta_full = model.constrained_theta().full();
    Vector phi_full(model.phi.size() + 1);
    phi_full[0] = 1.0;
    for (std::size_t l = 0; l < model.phi.size(); ++l) phi_full[l + 1] = -model.phi[l];

    const double ma = polynomial_modulus_sq(theta_full, freq);
    const double ar = polynomial_modulus_sq(phi_full, freq);
    const double gain = 2.0 * std::abs(std::sin(0.5 * freq));
    double frac;
    if (gain == 0.0) {
        frac = (model.d_prime == 0.0) ? 1.0 : 0.0;  // d' < 0 limit; pole case handled above
    } else {
        frac = std::pow(gain, -2.0 * model.d_prime);
    }
    return model.sigma2 / (2.0 * kPi) * ma / ar * frac;
}

Vector spectral_density(const StationaryModel& model, std::span<const double> freqs) {
    validate_stationary(model);
    Vector out(freqs.size());
    for (std::size_t i = 0; i < freqs.size(); ++i) out[i] = spectral_density_at(model, freqs[i]);
    return out;
}

Autocovariance autocovariance_quadrature(const StationaryModel& model, std::size_t max_lag,
                                         double epsrel) {
    validate_stationary(model);
    disable_gsl_aborts();
    constexpr std::size_t kWorkspaceSize = 5000;
    gsl_integration_workspace* w = gsl_integration_workspace_alloc(kWorkspaceSize);
    Vector gamma(max_lag + 1, 0.0);
    double scale = 0.0;
    for (std::size_t h = 0; h <= max_lag; ++h) {
        SpectrumIntegrand s{&model, static_cast<double>(h)};
        gsl_function f{&spectrum_cos, &s};
        double value = 0.0;
        double abserr = 0.0;
        const double epsabs = (h == 0) ? 0.0 : epsrel * scale;
        int status =
            gsl_integration_qags(&f, 0.0, kPi, epsabs, epsrel, kWorkspaceSize, w, &value, &abserr);
        if (status != GSL_SUCCESS) {
            // near-zero ordinates cannot meet a pure relative target; the
            // absolute error against the gamma(0) scale is what matters
            const double floor = std::max({1e-8 * scale, 1e-7 * std::abs(value), epsabs});
            if (abserr > floor || h == 0) {
                status = gsl_integration_qags(&f, 0.0, kPi, std::max(epsabs, 1e-9 * scale), 1e-8,
                                              kWorkspaceSize, w, &value, &abserr);
                if (status != GSL_SUCCESS && abserr > floor) {
                    gsl_integration_workspace_free(w);
                    throw Error("autocovariance quadrature failed at lag " + std::to_string(h));
                }
            }
        }
        gamma[h] = value;
        if (h == 0) scale = std::abs(value);
    }
    gsl_integration_workspace_free(w);
    return Autocovariance{std::move(gamma)};
}

Autocovariance autocovariance(const StationaryModel& model, std::size_t max_lag) {
    validate_stationary(model);
    const Vector phi = trimmed(model.phi);
    const Vector theta_full = model.constrained_theta().full();
    const int q = static_cast<int>(theta_full.size()) - 1;
    const double d = model.d_prime;

    // Within reach of the top stationarity edge, a unit MA root makes the
    // standard summation cancel a diverging scale; switch to the centered
    // expansion (p <= 1) or quadrature.
    const bool top_edge = model.j >= 1 && d >= 0.4;
    if (top_edge) {
        const bool small_ar = phi.size() <= 1 && (phi.empty() || std::abs(phi[0]) <= kRootModulusCap);
        Vector gamma = small_ar ? edge_autocov_centered(d, phi, theta_full, max_lag)
                                : autocovariance_quadrature(model, max_lag).gamma;
        if (!small_ar) return Autocovariance{std::move(gamma)};  // already scaled
        for (auto& g : gamma) g *= model.sigma2;
        return Autocovariance{std::move(gamma)};
    }

    Vector gamma;
    if (phi.empty()) {
        // Pure fractional noise filtered by the MA polynomial.
        const Vector gfi = fi_autocov(d, max_lag + static_cast<std::size_t>(q));
        const Vector psi = ma_psi(theta_full);
        gamma.assign(max_lag + 1, 0.0);
        for (std::size_t h = 0; h <= max_lag; ++h) {
            double acc = 0.0;
            for (int l = -q; l <= q; ++l) {
                acc += psi[static_cast<std::size_t>(l + q)] *
                       gfi[static_cast<std::size_t>(std::abs(static_cast<int>(h) - l))];
            }
            gamma[h] = acc;
        }
    } else if (d == 0.0) {
        gamma = arma_autocov(phi, theta_full, max_lag);
    } else if (std::abs(d) < kSmallDBand) {
        return autocovariance_quadrature(model, max_lag);
    } else {
        const auto rho = ar_inverse_roots(phi);
        bool closed_form_ok = true;
        for (std::size_t i = 0; i < rho.size() && closed_form_ok; ++i) {
            if (std::abs(rho[i]) > kRootModulusCap) closed_form_ok = false;
            for (std::size_t k = i + 1; k < rho.size(); ++k) {
                if (std::abs(rho[i] - rho[k]) < kRootSeparation) closed_form_ok = false;
            }
        }
        if (closed_form_ok) {
            const auto res = sowell_autocov(d, rho, theta_full, max_lag);
            if (res.ok) {
                gamma = res.gamma;
            } else {
                closed_form_ok = false;
            }
        }
        if (!closed_form_ok) return autocovariance_quadrature(model, max_lag);
    }
    for (auto& g : gamma) g *= model.sigma2;
    return Autocovariance{std::move(gamma)};
}

Vector simulate_stationary_from(const Autocovariance& acov, std::size_t n, NormalStream& stream) {
    if (n == 0) return {};
    if (acov.gamma.size() < n) throw Error("simulate: need gamma(0..n-1)");
    const Vector& g = acov.gamma;
    Vector x(n);
    Vector a;       // current prediction coefficients a_{t,1..t}
    Vector a_prev;  // scratch
    double v = g[0];
    if (v <= 0.0) throw NonStationary("nonpositive variance");
    x[0] = std::sqrt(v) * stream.next();
    a.reserve(n);
    a_prev.reserve(n);
    for (std::size_t t = 1; t < n; ++t) {
        // reflection coefficient for order t
        double num = g[t];
        for (std::size_t jj = 1; jj < t; ++jj) num -= a[jj - 1] * g[t - jj];
        const double kappa = num / v;
        a_prev = a;
        a.resize(t);
        a[t - 1] = kappa;
        for (std::size_t jj = 0; jj + 1 < t; ++jj) a[jj] = a_prev[jj] - kappa * a_prev[t - 2 - jj];
        v *= (1.0 - kappa * kappa);
        if (v <= 0.0) throw NonStationary("prediction variance collapsed during simulation");
        double mean = 0.0;
        for (std::size_t jj = 1; jj <= t; ++jj) mean += a[jj - 1] * x[t - jj];
        x[t] = mean + std::sqrt(v) * stream.next();
    }
    return x;
}

Vector simulate_stationary(const ArfimaParams& params, std::size_t n, std::uint64_t seed,
                           std::uint64_t stream_id) {
    if (!(params.d > -1.0 && params.d < 0.5)) {
        throw NonStationary("simulate_stationary requires -1 < d < 0.5");
    }
    if (params.sigma2 <= 0.0) throw Error("simulate: sigma2 must be positive");
    StationaryModel model{params.d, params.phi, params.theta, 0, params.sigma2};
    const auto acov = autocovariance(model, n == 0 ? 0 : n - 1);
    NormalStream stream(seed, stream_id);
    Vector x = simulate_stationary_from(acov, n, stream);
    const Vector mu = params.mean_spec.mean_values(n);
    for (std::size_t t = 0; t < n; ++t) x[t] += mu[t];
    return x;
}

Vector simulate_arfima(const ArfimaParams& params, std::size_t n, std::uint64_t seed,
                       std::uint64_t stream_id) {
    int r = 0;
    while (params.d - r >= 0.5) ++r;
    ArfimaParams stationary = params;
    stationary.d = params.d - r;
    stationary.mean_spec = MeanSpec::none();
    Vector x = simulate_stationary(stationary, n, seed, stream_id);
    for (int pass = 0; pass < r; ++pass) {
        for (std::size_t t = 1; t < x.size(); ++t) x[t] += x[t - 1];
    }
    const Vector mu = params.mean_spec.mean_values(n);
    for (std::size_t t = 0; t < n; ++t) x[t] += mu[t];
    return x;
}

}  // namespace arfima
