/**
 * Angle and torus utilities shared by the whole library: normalization to
 * [0, 2pi), signed wrapping to (-pi, pi], circular distances, and the
 * diagonal-invariant distance on the m-torus.
 */

#ifndef KURAMOTO_TORUS_HPP
#define KURAMOTO_TORUS_HPP

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <vector>

namespace kuramoto {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr double pi = std::numbers::pi;

/// Default tolerance for angular predicates (radians).
inline constexpr double default_angle_tol = 1e-9;

/// Reduce an angle to [0, 2pi). Idempotent.
inline double normalize_angle(double a) {
    double r = std::fmod(a, two_pi);
    if (r < 0.0) r += two_pi;
    // fmod of a slightly negative number may round up to exactly 2pi
    if (r >= two_pi) r -= two_pi;
    return r;
}

/// Signed representative in (-pi, pi].
inline double wrap_pi(double a) {
    double r = std::fmod(a, two_pi);
    if (r > pi) r -= two_pi;
    if (r <= -pi) r += two_pi;
    return r;
}

inline Vec normalize_angles(Vec v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = normalize_angle(v[i]);
    return v;
}

/// Distance between two angles on the circle.
inline double circle_dist(double a, double b) { return std::abs(wrap_pi(a - b)); }

/// True when a == b modulo 2pi within tol.
inline bool angles_equal(double a, double b, double tol = default_angle_tol) {
    return circle_dist(a, b) <= tol;
}

/// Euclidean distance on the k-torus (componentwise wrap, then 2-norm).
inline double torus_dist(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        double d = wrap_pi(a[i] - b[i]);
        s += d * d;
    }
    return std::sqrt(s);
}

/**
 * Diagonal-invariant distance on the m-torus:
 *   dist(a, b) = min_alpha || wrap(a - b - alpha*1) ||_2.
 *
 * The objective is piecewise quadratic in alpha; within a pocket the optimum
 * is the mean of the wrapped differences. Each candidate offset a_j - b_j
 * seeds one pocket, so scanning all m candidates (with one mean refinement
 * each) finds the global minimum.
 */
inline double diagonal_dist(const Vec& a, const Vec& b) {
    const Eigen::Index m = a.size();
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < m; ++j) {
        double alpha = a[j] - b[j];
        for (int pass = 0; pass < 2; ++pass) {
            double mean = 0.0;
            for (Eigen::Index i = 0; i < m; ++i) mean += wrap_pi(a[i] - b[i] - alpha);
            alpha += mean / static_cast<double>(m);
        }
        double s = 0.0;
        for (Eigen::Index i = 0; i < m; ++i) {
            double d = wrap_pi(a[i] - b[i] - alpha);
            s += d * d;
        }
        best = std::min(best, s);
    }
    return std::sqrt(best);
}

} // namespace kuramoto

#endif
