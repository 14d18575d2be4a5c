/**
 * Charts and fields on the quotient Q = T^m / D of the m-torus by the
 * diagonal circle action. The canonical chart is the cube face theta_m = 0;
 * the counterdiagonal embedding gives the zero-sum representative. The
 * quotient field is the closed-form negative gradient of the quotient
 * potential with respect to the quotient metric.
 */

#ifndef KURAMOTO_QUOTIENT_HPP
#define KURAMOTO_QUOTIENT_HPP

#include "model.hpp"

namespace kuramoto {

/// A point of Q in cube-face coordinates: coords_i = theta_i - theta_m,
/// i = 1..m-1, normalized to [0, 2pi).
struct QuotientPoint {
    Vec coords;

    QuotientPoint() = default;
    explicit QuotientPoint(Vec c) : coords(normalize_angles(std::move(c))) {
        if (coords.size() < 1) throw std::invalid_argument("QuotientPoint: needs m >= 2");
    }
    QuotientPoint(std::initializer_list<double> c)
        : QuotientPoint(Eigen::Map<const Vec>(c.begin(), static_cast<Eigen::Index>(c.size()))) {}

    int m() const { return static_cast<int>(coords.size()) + 1; }
};

inline QuotientPoint project(const PhasePoint& p) {
    const int m = p.m();
    Vec c(m - 1);
    for (int i = 0; i < m - 1; ++i) c[i] = p.angles[i] - p.angles[m - 1];
    return QuotientPoint(std::move(c));
}

/// Section of the quotient map: the representative with theta_m = 0.
inline PhasePoint lift(const QuotientPoint& qp) {
    Vec a(qp.m());
    a.head(qp.m() - 1) = qp.coords;
    a[qp.m() - 1] = 0.0;
    return PhasePoint(std::move(a));
}

/// Representative on the counterdiagonal A = { sum theta_j = 0 mod 2pi }.
inline PhasePoint counterdiagonal_embed(const QuotientPoint& qp) {
    const int m = qp.m();
    const double mean = qp.coords.sum() / m;
    Vec a(m);
    for (int i = 0; i < m - 1; ++i) a[i] = qp.coords[i] - mean;
    a[m - 1] = -mean;
    return PhasePoint(std::move(a));
}

/// The quotient Riemannian metric in cube-face coordinates,
/// g = I - (1/m) u u^T with inverse I + u u^T (u the all-ones vector).
struct QuotientMetric {
    int m;

    explicit QuotientMetric(int m_) : m(m_) {}

    Mat g() const {
        Mat out = Mat::Identity(m - 1, m - 1);
        out.array() -= 1.0 / m;
        return out;
    }
    Mat g_inverse() const {
        Mat out = Mat::Identity(m - 1, m - 1);
        out.array() += 1.0;
        return out;
    }
};

/// Distance between quotient classes (diagonal-invariant metric on lifts).
inline double quotient_dist(const QuotientPoint& a, const QuotientPoint& b) {
    return diagonal_dist(lift(a).angles, lift(b).angles);
}

/// Quotient potential in the chart.
inline double quotient_potential(const Vec& x) { return potential(PhasePoint(lift(QuotientPoint(x)).angles)); }

/**
 * Negative quotient gradient in cube-face coordinates (standard model):
 *   -(grad V_Q)_i = sum_{k<m} sin(x_k - x_i) - sin x_i - sum_{k<m} sin x_k.
 * Coincides with the chart pushforward of the ambient field.
 */
inline Vec quotient_field_raw(const Vec& x) {
    const int n = static_cast<int>(x.size());
    double sum_sin = 0.0;
    for (int k = 0; k < n; ++k) sum_sin += std::sin(x[k]);
    Vec f(n);
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int k = 0; k < n; ++k) s += std::sin(x[k] - x[i]);
        f[i] = s - std::sin(x[i]) - sum_sin;
    }
    return f;
}

inline Vec quotient_field(const QuotientPoint& qp) { return quotient_field_raw(qp.coords); }

/// Jacobian of quotient_field_raw.
inline Mat quotient_field_jacobian(const Vec& x) {
    const int n = static_cast<int>(x.size());
    Mat j(n, n);
    for (int i = 0; i < n; ++i) {
        double diag = -std::cos(x[i]);
        for (int k = 0; k < n; ++k) {
            if (k == i) continue;
            double c = std::cos(x[k] - x[i]);
            j(i, k) = c - std::cos(x[k]);
            diag -= c;
        }
        j(i, i) = diag - std::cos(x[i]);
    }
    return j;
}

/// Ambient Jacobian of the generalized field.
inline Mat vector_field_jacobian(const Vec& theta, const ModelParams& params) {
    const int m = static_cast<int>(theta.size());
    Mat j(m, m);
    for (int i = 0; i < m; ++i) {
        double diag = 0.0;
        for (int k = 0; k < m; ++k) {
            if (k == i) continue;
            double c = params.coupling(i, k) * std::cos(theta[k] - theta[i]);
            j(i, k) = c;
            diag -= c;
        }
        j(i, i) = diag;
    }
    return j;
}

/// Chart pushforward of the generalized field: x_i' = F_i - F_m on theta =
/// (x, 0). For default parameters this equals quotient_field_raw.
inline Vec pushforward_field(const Vec& x, const ModelParams& params) {
    Vec theta(x.size() + 1);
    theta.head(x.size()) = x;
    theta[x.size()] = 0.0;
    Vec f = vector_field_raw(theta, params);
    Vec out(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) out[i] = f[i] - f[x.size()];
    return out;
}

inline Mat pushforward_jacobian(const Vec& x, const ModelParams& params) {
    Vec theta(x.size() + 1);
    theta.head(x.size()) = x;
    theta[x.size()] = 0.0;
    Mat ja = vector_field_jacobian(theta, params);
    const int n = static_cast<int>(x.size());
    Mat out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(i, j) = ja(i, j) - ja(n, j);
    return out;
}

} // namespace kuramoto

#endif
