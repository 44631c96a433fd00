#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace arfima {

using Vector = std::vector<double>;
using Matrix = Eigen::MatrixXd;

/// A univariate series with an optional time index and a source tag for
/// result provenance. Numeric routines operate on the raw values.
struct TimeSeries {
    Vector values;
    Vector time;         // empty means implicit 1..n
    std::string source;  // e.g. file path or "simulated(d=0.4,seed=7)"

    std::size_t size() const { return values.size(); }
};

/// Deterministic mean structure mu_t of the observation model.
struct MeanSpec {
    enum class Kind { None, Constant, Polynomial, Regressors };

    Kind kind = Kind::Constant;
    int degree = 0;     // Polynomial only
    Matrix regressors;  // Regressors only, one row per observation
    Vector coeffs;      // optional; used when simulating or evaluating mu_t

    static MeanSpec none() { return {Kind::None, 0, {}, {}}; }
    static MeanSpec constant(double mu = 0.0) {
        return {Kind::Constant, 0, {}, {mu}};
    }
    static MeanSpec polynomial(int degree, Vector coeffs = {}) {
        return {Kind::Polynomial, degree, {}, std::move(coeffs)};
    }
    static MeanSpec with_regressors(Matrix x, Vector coeffs = {}) {
        return {Kind::Regressors, 0, std::move(x), std::move(coeffs)};
    }

    /// Design matrix for a series of length n (before any differencing).
    /// Polynomial columns are (t/n)^k for k = 0..degree, t = 1..n; the
    /// scaling keeps GLS well conditioned at the lengths used here.
    Matrix design(std::size_t n) const;

    int dimension(std::size_t n) const;

    /// mu_t for t = 1..n; zero when no coefficients are set.
    Vector mean_values(std::size_t n) const;
};

/// Full parameterization of the observation model: phi(B) (1-B)^d (y - mu)
/// = theta(B) z, z ~ N(0, sigma2), with phi(z) = 1 - sum phi_l z^l and
/// theta(z) = 1 + sum theta_l z^l.
struct ArfimaParams {
    double d = 0.0;
    Vector phi;
    Vector theta;
    double sigma2 = 1.0;
    MeanSpec mean_spec = MeanSpec::none();
};

/// Which objective function drives the fit.
struct Objective {
    enum class Kind { Exact, Whittle, Scss, Css };
    Kind kind = Kind::Exact;

    static Objective exact() { return {Kind::Exact}; }
    static Objective whittle() { return {Kind::Whittle}; }
    static Objective scss() { return {Kind::Scss}; }
    static Objective css() { return {Kind::Css}; }

    std::string name() const;
};

Objective objective_from_name(const std::string& name);

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InsufficientData : Error {
    using Error::Error;
};
struct NonStationary : Error {
    using Error::Error;
};
struct PoleAtZero : Error {
    using Error::Error;
};
struct InvalidBound : Error {
    using Error::Error;
};
struct OptimFailed : Error {
    using Error::Error;
};
struct AllIntervalsFailed : Error {
    using Error::Error;
};
struct BoundaryTooClose : Error {
    using Error::Error;
};
struct ZeroVariance : Error {
    using Error::Error;
};

}  // namespace arfima
