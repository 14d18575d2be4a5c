/**
 * The all-to-all identical-oscillator model on the m-torus: potential V,
 * vector field K (plus the parameterized generalization with natural
 * frequencies and a coupling matrix), centroid, Hessian of -V in its two
 * closed forms, antipodality, and the diagonal action.
 */

#ifndef KURAMOTO_MODEL_HPP
#define KURAMOTO_MODEL_HPP

#include <complex>
#include <stdexcept>

#include "torus.hpp"

namespace kuramoto {

/// A point Theta on the m-torus; angles stored normalized to [0, 2pi).
struct PhasePoint {
    Vec angles;

    PhasePoint() = default;
    explicit PhasePoint(Vec a) : angles(normalize_angles(std::move(a))) {
        if (angles.size() < 2) throw std::invalid_argument("PhasePoint: m must be >= 2");
    }
    PhasePoint(std::initializer_list<double> a)
        : PhasePoint(Eigen::Map<const Vec>(a.begin(), static_cast<Eigen::Index>(a.size()))) {}

    int m() const { return static_cast<int>(angles.size()); }
};

/// Parameters of the generalized field: natural frequencies omega_i and
/// coupling weights a_ij. Defaults (omega = 0, a = 1) give the standard field.
struct ModelParams {
    int m = 0;
    Vec omega;
    Mat coupling;

    static ModelParams standard(int m) {
        ModelParams p;
        p.m = m;
        p.omega = Vec::Zero(m);
        p.coupling = Mat::Ones(m, m);
        return p;
    }
};

struct Centroid {
    std::complex<double> value;
    double modulus = 0.0;
};

/// Z = (1/m) sum_k exp(i theta_k), the phase order parameter.
inline Centroid centroid(const PhasePoint& p) {
    double re = 0.0, im = 0.0;
    for (int k = 0; k < p.m(); ++k) {
        re += std::cos(p.angles[k]);
        im += std::sin(p.angles[k]);
    }
    re /= p.m();
    im /= p.m();
    Centroid c;
    c.value = {re, im};
    c.modulus = std::hypot(re, im);
    return c;
}

/// V(Theta) = (1/2) sum_{l,k} (1 - cos(theta_l - theta_k)), in [0, m^2/2].
inline double potential(const PhasePoint& p) {
    const int m = p.m();
    double v = 0.0;
    for (int l = 0; l < m; ++l)
        for (int k = 0; k < m; ++k) v += 1.0 - std::cos(p.angles[l] - p.angles[k]);
    return 0.5 * v;
}

/// Generalized field on raw angle vectors: component j is
/// omega_j + sum_k a_jk sin(theta_k - theta_j).
inline Vec vector_field_raw(const Vec& theta, const ModelParams& params) {
    const int m = static_cast<int>(theta.size());
    if (params.m != m || params.omega.size() != m || params.coupling.rows() != m ||
        params.coupling.cols() != m)
        throw std::invalid_argument("vector_field: dimension mismatch between point and params");
    Vec f(m);
    for (int j = 0; j < m; ++j) {
        double s = params.omega[j];
        for (int k = 0; k < m; ++k) s += params.coupling(j, k) * std::sin(theta[k] - theta[j]);
        f[j] = s;
    }
    return f;
}

inline Vec vector_field_raw(const Vec& theta) {
    const int m = static_cast<int>(theta.size());
    Vec f(m);
    for (int j = 0; j < m; ++j) {
        double s = 0.0;
        for (int k = 0; k < m; ++k) s += std::sin(theta[k] - theta[j]);
        f[j] = s;
    }
    return f;
}

inline Vec vector_field(const PhasePoint& p, const ModelParams& params) {
    return vector_field_raw(p.angles, params);
}

/// Standard field K = -grad V.
inline Vec vector_field(const PhasePoint& p) { return vector_field_raw(p.angles); }

/// Hessian of -V (equals the Jacobian of K for the standard model):
/// H_ij = cos(theta_i - theta_j) - delta_ij sum_k cos(theta_k - theta_i).
inline Mat hessian(const PhasePoint& p) {
    const int m = p.m();
    Mat h(m, m);
    for (int i = 0; i < m; ++i) {
        double diag = 0.0;
        for (int k = 0; k < m; ++k) diag += std::cos(p.angles[k] - p.angles[i]);
        for (int j = 0; j < m; ++j) h(i, j) = std::cos(p.angles[i] - p.angles[j]);
        h(i, i) = 1.0 - diag;
    }
    return h;
}

/// The rank-structured form of the same matrix:
/// H = Cos Cos^T + Sin Sin^T - S diag(Sin) - C diag(Cos)
/// with Cos = (cos theta_i), Sin = (sin theta_i), C = sum cos, S = sum sin.
inline Mat hessian_centroid_form(const PhasePoint& p) {
    const int m = p.m();
    Vec c(m), s(m);
    for (int i = 0; i < m; ++i) {
        c[i] = std::cos(p.angles[i]);
        s[i] = std::sin(p.angles[i]);
    }
    const double C = c.sum(), S = s.sum();
    Mat h = c * c.transpose() + s * s.transpose();
    for (int i = 0; i < m; ++i) h(i, i) -= S * s[i] + C * c[i];
    return h;
}

/// True iff every pairwise difference is a multiple of pi (within tol).
inline bool is_antipodal(const PhasePoint& p, double tol = default_angle_tol) {
    for (int j = 0; j < p.m(); ++j)
        for (int k = j + 1; k < p.m(); ++k) {
            double d = std::fmod(std::abs(p.angles[j] - p.angles[k]), pi);
            d = std::min(d, pi - d);
            if (d > tol) return false;
        }
    return true;
}

/// Diagonal action T_alpha: Theta -> Theta + alpha * 1.
inline PhasePoint diagonal_rotate(const PhasePoint& p, double alpha) {
    return PhasePoint(Vec(p.angles.array() + alpha));
}

/// Representative of the diagonal class with coordinate mean zero
/// (unwrapped near the input); used for Euclidean distance readouts.
inline Vec counterdiagonal_representative(const Vec& theta) {
    Vec r(theta.size());
    for (Eigen::Index i = 0; i < theta.size(); ++i) r[i] = wrap_pi(theta[i]);
    double mean = r.mean();
    for (Eigen::Index i = 0; i < r.size(); ++i) r[i] = wrap_pi(r[i] - mean);
    return r;
}

} // namespace kuramoto

#endif
