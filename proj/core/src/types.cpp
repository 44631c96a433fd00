#include "arfima/types.hpp"

namespace arfima {

Matrix MeanSpec::design(std::size_t n) const {
    const auto nn = static_cast<Eigen::Index>(n);
    switch (kind) {
        case Kind::None:
            return Matrix(nn, 0);
        case Kind::Constant:
            return Matrix::Ones(nn, 1);
        case Kind::Polynomial: {
            Matrix x(nn, degree + 1);
            for (Eigen::Index t = 0; t < nn; ++t) {
                const double u = static_cast<double>(t + 1) / static_cast<double>(n);
                double power = 1.0;
                for (int k = 0; k <= degree; ++k) {
                    x(t, k) = power;
                    power *= u;
                }
            }
            return x;
        }
        case Kind::Regressors:
            if (regressors.rows() != nn) {
                throw Error("MeanSpec: design row count does not match series length");
            }
            return regressors;
    }
    return Matrix(nn, 0);
}

int MeanSpec::dimension(std::size_t n) const {
    switch (kind) {
        case Kind::None: return 0;
        case Kind::Constant: return 1;
        case Kind::Polynomial: return degree + 1;
        case Kind::Regressors: return static_cast<int>(regressors.cols());
    }
    (void)n;
    return 0;
}

Vector MeanSpec::mean_values(std::size_t n) const {
    Vector mu(n, 0.0);
    if (coeffs.empty() || kind == Kind::None) return mu;
    const Matrix x = design(n);
    if (static_cast<int>(coeffs.size()) != x.cols()) {
        throw Error("MeanSpec: coefficient count does not match design dimension");
    }
    for (std::size_t t = 0; t < n; ++t) {
        double acc = 0.0;
        for (Eigen::Index k = 0; k < x.cols(); ++k) {
            acc += x(static_cast<Eigen::Index>(t), k) * coeffs[static_cast<std::size_t>(k)];
        }
        mu[t] = acc;
    }
    return mu;
}

std::string Objective::name() const {
    switch (kind) {
        case Kind::Exact: return "exact";
        case Kind::Whittle: return "whittle";
        case Kind::Scss: return "scss";
        case Kind::Css: return "css";
    }
    return "exact";
}

Objective objective_from_name(const std::string& name) {
    if (name == "exact") return Objective::exact();
    if (name == "whittle") return Objective::whittle();
    if (name == "scss") return Objective::scss();
    if (name == "css") return Objective::css();
    throw Error("unknown objective: " + name);
}

}  // namespace arfima
