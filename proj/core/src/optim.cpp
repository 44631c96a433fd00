#include "arfima/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace arfima {

namespace {
constexpr double kGolden = 0.3819660112501051;  // 2 - golden ratio
}

ScalarMinResult minimize_scalar(const std::function<double(double)>& f, double lo, double hi,
                                double xtol, int presweep) {
    if (!(hi > lo)) throw Error("minimize_scalar: empty interval");
    int evals = 0;
    const auto eval = [&](double x) {
        ++evals;
        const double v = f(x);
        return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
    };

    // coarse sweep, then Brent inside the bracketing pair around the best
    double best_x = lo;
    double best_v = eval(lo);
    const int np = std::max(presweep, 3);
    for (int i = 1; i < np; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(np - 1);
        const double v = eval(x);
        if (v < best_v) {
            best_v = v;
            best_x = x;
        }
    }
    const double grid = (hi - lo) / static_cast<double>(np - 1);
    double a = std::max(lo, best_x - grid);
    double b = std::min(hi, best_x + grid);

    double x = best_x;
    double w = best_x;
    double v = best_x;
    double fx = best_v;
    double fw = best_v;
    double fv = best_v;
    double d = 0.0;
    double e = 0.0;
    for (int iter = 0; iter < 200; ++iter) {
        const double m = 0.5 * (a + b);
        const double tol = xtol + 1e-12 * std::abs(x);
        if (std::abs(x - m) <= 2.0 * tol - 0.5 * (b - a)) break;
        double p = 0.0;
        double q = 0.0;
        double r = 0.0;
        bool use_golden = true;
        if (std::abs(e) > tol) {
            r = (x - w) * (fx - fv);
            q = (x - v) * (fx - fw);
            p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if (q > 0.0) p = -p;
            q = std::abs(q);
            const double e_tmp = e;
            e = d;
            if (std::abs(p) < std::abs(0.5 * q * e_tmp) && p > q * (a - x) && p < q * (b - x)) {
                d = p / q;
                const double u = x + d;
                if (u - a < 2.0 * tol || b - u < 2.0 * tol) d = (x < m) ? tol : -tol;
                use_golden = false;
            }
        }
        if (use_golden) {
            e = (x < m) ? b - x : a - x;
            d = kGolden * e;
        }
        const double u = (std::abs(d) >= tol) ? x + d : x + ((d > 0.0) ? tol : -tol);
        const double fu = eval(u);
        if (fu <= fx) {
            if (u < x) {
                b = x;
            } else {
                a = x;
            }
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if (u < x) {
                a = u;
            } else {
                b = u;
            }
            if (fu <= fw || w == x) {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if (fu <= fv || v == x || v == w) {
                v = u;
                fv = fu;
            }
        }
    }
    return {x, fx, evals};
}

SimplexResult nelder_mead(const std::function<double(std::span<const double>)>& f, Vector start,
                          double step, double ftol, int max_evals) {
    const std::size_t dim = start.size();
    int evals = 0;
    const auto eval = [&](const Vector& x) {
        ++evals;
        const double v = f(x);
        return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
    };
    if (dim == 0) {
        const double v = eval(start);
        return {std::move(start), v, evals};
    }

    std::vector<Vector> pts(dim + 1, start);
    Vector vals(dim + 1);
    for (std::size_t i = 1; i <= dim; ++i) pts[i][i - 1] += step;
    for (std::size_t i = 0; i <= dim; ++i) vals[i] = eval(pts[i]);

    std::vector<std::size_t> order(dim + 1);
    const auto sort_simplex = [&] {
        for (std::size_t i = 0; i <= dim; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    };

    Vector centroid(dim), xr(dim), xe(dim), xc(dim);
    while (evals < max_evals) {
        sort_simplex();
        const std::size_t best = order[0];
        const std::size_t worst = order[dim];
        const std::size_t second_worst = order[dim - 1];
        if (std::abs(vals[worst] - vals[best]) <= ftol * (std::abs(vals[best]) + ftol)) break;

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == worst) continue;
            for (std::size_t k = 0; k < dim; ++k) centroid[k] += pts[i][k];
        }
        for (std::size_t k = 0; k < dim; ++k) centroid[k] /= static_cast<double>(dim);

        for (std::size_t k = 0; k < dim; ++k) xr[k] = centroid[k] + (centroid[k] - pts[worst][k]);
        const double fr = eval(xr);
        if (fr < vals[best]) {
            for (std::size_t k = 0; k < dim; ++k) xe[k] = centroid[k] + 2.0 * (centroid[k] - pts[worst][k]);
            const double fe = eval(xe);
            if (fe < fr) {
                pts[worst] = xe;
                vals[worst] = fe;
            } else {
                pts[worst] = xr;
                vals[worst] = fr;
            }
        } else if (fr < vals[second_worst]) {
            pts[worst] = xr;
            vals[worst] = fr;
        } else {
            const bool outside = fr < vals[worst];
            if (outside) {
                for (std::size_t k = 0; k < dim; ++k) xc[k] = centroid[k] + 0.5 * (xr[k] - centroid[k]);
            } else {
                for (std::size_t k = 0; k < dim; ++k) xc[k] = centroid[k] + 0.5 * (pts[worst][k] - centroid[k]);
            }
            const double fc = eval(xc);
            if (fc < std::min(fr, vals[worst])) {
                pts[worst] = xc;
                vals[worst] = fc;
            } else {
                // shrink toward the best point
                for (std::size_t i = 0; i <= dim; ++i) {
                    if (i == order[0]) continue;
                    for (std::size_t k = 0; k < dim; ++k) {
                        pts[i][k] = pts[order[0]][k] + 0.5 * (pts[i][k] - pts[order[0]][k]);
                    }
                    vals[i] = eval(pts[i]);
                }
            }
        }
    }
    sort_simplex();
    return {pts[order[0]], vals[order[0]], evals};
}

Vector pacf_to_ar(std::span<const double> pacf) {
    const std::size_t p = pacf.size();
    Vector phi(pacf.begin(), pacf.end());
    Vector work(phi);
    for (std::size_t k = 1; k < p; ++k) {
        for (std::size_t i = 0; i < k; ++i) work[i] = phi[i] - pacf[k] * phi[k - 1 - i];
        std::copy(work.begin(), work.begin() + static_cast<std::ptrdiff_t>(k), phi.begin());
        phi[k] = pacf[k];
    }
    return phi;
}

Vector ar_to_pacf(std::span<const double> phi) {
    const std::size_t p = phi.size();
    Vector a(phi.begin(), phi.end());
    Vector pacf(p, 0.0);
    Vector work(p, 0.0);
    for (std::size_t k = p; k-- > 0;) {
        const double r = a[k];
        pacf[k] = std::clamp(r, -1.0 + 1e-12, 1.0 - 1e-12);
        const double denom = 1.0 - r * r;
        if (k == 0) break;
        for (std::size_t i = 0; i < k; ++i) work[i] = (a[i] + r * a[k - 1 - i]) / denom;
        std::copy(work.begin(), work.begin() + static_cast<std::ptrdiff_t>(k), a.begin());
    }
    return pacf;
}

Vector pacf_to_ma(std::span<const double> pacf) {
    Vector theta = pacf_to_ar(pacf);
    for (auto& v : theta) v = -v;
    return theta;
}

Vector ma_to_pacf(std::span<const double> theta) {
    Vector neg(theta.begin(), theta.end());
    for (auto& v : neg) v = -v;
    return ar_to_pacf(neg);
}

}  // namespace arfima
