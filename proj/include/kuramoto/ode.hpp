/**
 * Embedded adaptive Runge-Kutta integrator of order 5(4) (Dormand-Prince
 * coefficients, FSAL). Generic over the right-hand side; the flow module
 * instantiates it with the ambient, quotient, auxiliary and homotopy fields.
 */

#ifndef KURAMOTO_ODE_HPP
#define KURAMOTO_ODE_HPP

#include <functional>
#include <vector>

#include "torus.hpp"

namespace kuramoto {

struct IntegratorOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    double initial_step = 1e-3;
    double max_step = 0.5;
    double min_step = 1e-14;
    long max_steps = 5'000'000;
};

enum class OdeStatus { ok, step_failure, stopped, max_steps };

struct OdeSolution {
    std::vector<double> t;
    std::vector<Vec> y;
    OdeStatus status = OdeStatus::ok;
    long accepted_steps = 0;
};

namespace dopri {
// Butcher tableau of DOPRI5(4).
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                        b6 = 11.0 / 84;
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
} // namespace dopri

/**
 * Integrates y' = f(y) from t = 0 to t = t_end (t_end > 0). The observer is
 * called after every accepted step with (t, y); returning false stops the
 * run with status `stopped`. Samples are recorded at every accepted step.
 */
template <class Field, class Observer>
OdeSolution rk45_integrate(Field&& f, Vec y0, double t_end, const IntegratorOptions& opts,
                           Observer&& observer) {
    using namespace dopri;
    OdeSolution sol;
    const Eigen::Index n = y0.size();
    double t = 0.0;
    Vec y = std::move(y0);
    Vec k1 = f(y), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);
    Vec ytmp(n), ynew(n), yerr(n);

    sol.t.push_back(t);
    sol.y.push_back(y);

    double h = std::min(opts.initial_step, t_end);
    for (long step = 0; step < opts.max_steps; ++step) {
        if (t >= t_end) {
            sol.status = OdeStatus::ok;
            return sol;
        }
        h = std::min(h, t_end - t);

        ytmp = y + h * (a21 * k1);
        k2 = f(ytmp);
        ytmp = y + h * (a31 * k1 + a32 * k2);
        k3 = f(ytmp);
        ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
        k4 = f(ytmp);
        ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        k5 = f(ytmp);
        ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        k6 = f(ytmp);
        ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        k7 = f(ynew);
        yerr = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        double err = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            double sc = opts.abs_tol + opts.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            double q = yerr[i] / sc;
            err += q * q;
        }
        err = std::sqrt(err / static_cast<double>(n));

        if (err <= 1.0) {
            t += h;
            y.swap(ynew);
            k1.swap(k7); // FSAL
            sol.t.push_back(t);
            sol.y.push_back(y);
            ++sol.accepted_steps;
            if (!observer(t, y)) {
                sol.status = OdeStatus::stopped;
                return sol;
            }
        }
        double factor = (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
        h *= std::clamp(factor, 0.2, 5.0);
        h = std::min(h, opts.max_step);
        if (h < opts.min_step) {
            sol.status = OdeStatus::step_failure;
            return sol;
        }
    }
    sol.status = OdeStatus::max_steps;
    return sol;
}

template <class Field>
OdeSolution rk45_integrate(Field&& f, Vec y0, double t_end, const IntegratorOptions& opts) {
    return rk45_integrate(std::forward<Field>(f), std::move(y0), t_end, opts,
                          [](double, const Vec&) { return true; });
}

} // namespace kuramoto

#endif
