#pragma once

// The a posteriori contraction gate shared by every proof stage: given
// rigorous bounds Y >= ||A F(x_bar)|| and Z >= sup ||I - A DF|| over the
// R-ball, any radius r with Y/(1-Z) <= r <= R certifies a unique zero in
// B(x_bar, r). Also the plain floating-point Newton iteration used to
// produce the approximate zeros.

#include <Eigen/Dense>
#include <utility>

#include "smproof/interval.hpp"

namespace smproof {

struct ExistenceResult {
    double r_inf = std::numeric_limits<double>::infinity();
    double r_sup = 0.0; // = R
    bool success = false;
    Interval Y;
    Interval Z;
    double R = 0.0; // may be +inf
};

/// success iff sup(Z) < 1 and the rounded-up quotient sup(Y/(1-Z)) fits
/// under R. The quotient is computed in interval arithmetic since it is the
/// certified radius. Failure is a value, not an error.
ExistenceResult interval_of_existence(const Interval& Y, const Interval& Z, double R);

struct NewtonOptions {
    double tol = 1e-14;
    int max_iter = 20;
};

/// Undamped Newton; success iff the 1-norm residual drops below tol.
/// An optional projector constrains iterates (e.g. clamping coordinates).
template <class Vec, class F, class DF, class Proj>
std::pair<Vec, bool> newton(F&& f, DF&& df, Vec x, const NewtonOptions& opt, Proj&& project) {
    for (int it = 0; it <= opt.max_iter; ++it) {
        Vec r = f(x);
        if (r.template lpNorm<1>() <= opt.tol) return {x, true};
        if (it == opt.max_iter) break;
        auto j = df(x);
        Eigen::PartialPivLU<std::remove_cvref_t<decltype(j)>> lu(j);
        double dmax = 0.0, dmin = std::numeric_limits<double>::infinity();
        for (int i = 0; i < j.rows(); ++i) {
            double d = std::abs(lu.matrixLU()(i, i));
            dmax = std::max(dmax, d);
            dmin = std::min(dmin, d);
        }
        if (!(dmin > 0.0) || dmin < 1e-300 * dmax) return {x, false}; // singular
        x -= lu.solve(r);
        project(x);
    }
    return {x, false};
}

template <class Vec, class F, class DF>
std::pair<Vec, bool> newton(F&& f, DF&& df, Vec x, const NewtonOptions& opt = {}) {
    return newton(std::forward<F>(f), std::forward<DF>(df), std::move(x), opt,
                  [](Vec&) {});
}

} // namespace smproof
