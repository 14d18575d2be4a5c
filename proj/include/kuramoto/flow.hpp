/**
 * Numerical dynamics: integration of the ambient and quotient flows,
 * omega-limit classification against the enumerated equilibria, the
 * auxiliary rescaled field used to retract the high-potential region onto
 * the maximum set, saddle-connection tracing on templates, skew-subtorus
 * reduction, and the source/sink homotopy between the reduced field and the
 * product of circle flows.
 */

#ifndef KURAMOTO_FLOW_HPP
#define KURAMOTO_FLOW_HPP

#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "equilibria.hpp"
#include "ode.hpp"

namespace kuramoto {

enum class Direction { forward, backward };

enum class TerminalKind { converged_equilibrium, converged_vmax, max_time, step_failure, v_cap };

struct OrbitSample {
    double t;
    Vec state; // ambient angles (size m) or chart coordinates (size m-1)
    double V;
    double r;
};

struct OrbitTrace {
    std::vector<OrbitSample> samples;
    bool quotient_chart = false;
    TerminalKind terminal = TerminalKind::max_time;
    int matched_record = -1; // index into the caller's record list
    std::string message;

    const OrbitSample& back() const { return samples.back(); }
};

struct FlowOptions {
    IntegratorOptions ode;
    double t_span = 100.0;
    double field_tol = 1e-8;     // convergence: field norm below this...
    double snap_dist = 1e-4;     // ...and this close to a known equilibrium,
    double window_dt = 0.5;      // sustained over two detection windows
    double backward_v_cap_frac = 0.01; // backward raw flow stops at V >= m^2/2 (1 - frac)
};

namespace detail {
inline double potential_raw(const Vec& theta) { return potential(PhasePoint(theta)); }
inline double centroid_mod_raw(const Vec& theta) { return centroid(PhasePoint(theta)).modulus; }

inline OrbitSample make_sample_ambient(double t, const Vec& y) {
    PhasePoint p{Vec(y)};
    return {t, y, potential(p), centroid(p).modulus};
}
inline OrbitSample make_sample_chart(double t, const Vec& x) {
    PhasePoint p = lift(QuotientPoint(Vec(x)));
    return {t, x, potential(p), centroid(p).modulus};
}
} // namespace detail

/**
 * Integrates the (generalized) ambient flow. Backward runs are capped at
 * V = m^2/2 (1 - backward_v_cap_frac); past that level only the auxiliary
 * field gives reliable limits (see alpha_limit_retraction).
 */
inline OrbitTrace integrate(const PhasePoint& start, double t_span, Direction dir,
                            const ModelParams& params, const FlowOptions& opts = {}) {
    if (t_span <= 0) throw std::invalid_argument("integrate: t_span must be positive");
    const int m = start.m();
    if (params.m != m) throw std::invalid_argument("integrate: dimension mismatch");
    const double sign = (dir == Direction::forward) ? 1.0 : -1.0;
    const double v_cap = 0.5 * m * m * (1.0 - opts.backward_v_cap_frac);

    OrbitTrace trace;
    bool capped = false;
    auto field = [&](const Vec& y) { return Vec(sign * vector_field_raw(y, params)); };
    auto observer = [&](double t, const Vec& y) {
        trace.samples.push_back(detail::make_sample_ambient(t, y));
        if (dir == Direction::backward && trace.samples.back().V >= v_cap) {
            capped = true;
            return false;
        }
        return true;
    };
    trace.samples.push_back(detail::make_sample_ambient(0.0, start.angles));
    auto sol = rk45_integrate(field, start.angles, t_span, opts.ode, observer);
    switch (sol.status) {
        case OdeStatus::ok: trace.terminal = TerminalKind::max_time; break;
        case OdeStatus::stopped: trace.terminal = capped ? TerminalKind::v_cap : TerminalKind::max_time; break;
        default: trace.terminal = TerminalKind::step_failure; break;
    }
    return trace;
}

/// Integrates the quotient flow in cube-face coordinates (standard model).
inline OrbitTrace integrate_quotient(const QuotientPoint& start, double t_span, Direction dir,
                                     const FlowOptions& opts = {}) {
    const double sign = (dir == Direction::forward) ? 1.0 : -1.0;
    OrbitTrace trace;
    trace.quotient_chart = true;
    auto field = [&](const Vec& x) { return Vec(sign * quotient_field_raw(x)); };
    trace.samples.push_back(detail::make_sample_chart(0.0, start.coords));
    auto sol = rk45_integrate(field, start.coords, t_span, opts.ode, [&](double t, const Vec& x) {
        trace.samples.push_back(detail::make_sample_chart(t, x));
        return true;
    });
    trace.terminal = (sol.status == OdeStatus::step_failure) ? TerminalKind::step_failure
                                                             : TerminalKind::max_time;
    return trace;
}

struct LimitResult {
    OrbitTrace trace;
    int record = -1;           // index into the supplied record list
    bool vmax_point = false;
    QuotientPoint limit;
};

/**
 * Forward limit of a quotient orbit, classified against the enumerated
 * equilibria: converged when the field norm is below field_tol and the
 * state stays within snap_dist of the same record over two consecutive
 * detection windows. Non-convergence within t_span is reported as max_time,
 * never snapped.
 */
inline LimitResult omega_limit(const QuotientPoint& start,
                               const std::vector<EquilibriumRecord>& records,
                               const FlowOptions& opts = {}) {
    const int m = start.m();
    std::vector<Vec> targets;
    targets.reserve(records.size());
    for (const auto& r : records) targets.push_back(project(exemplar(r.subset, m)).coords);

    LimitResult res;
    res.trace.quotient_chart = true;
    const double vmax = 0.5 * m * m;

    int candidate = -2; // -2 none, -1 vmax, >=0 record
    double t_candidate = 0.0;
    bool done = false;

    auto classify = [&](const Vec& x) -> int {
        Vec f = quotient_field_raw(x);
        if (f.norm() >= opts.field_tol) return -2;
        if (quotient_potential(x) > vmax - 1e-6) return -1;
        QuotientPoint qp{Vec(x)};
        for (std::size_t i = 0; i < targets.size(); ++i)
            if (quotient_dist(qp, QuotientPoint(Vec(targets[i]))) < opts.snap_dist)
                return static_cast<int>(i);
        return -2;
    };

    res.trace.samples.push_back(detail::make_sample_chart(0.0, start.coords));
    auto sol = rk45_integrate(
        [](const Vec& x) { return quotient_field_raw(x); }, start.coords, opts.t_span, opts.ode,
        [&](double t, const Vec& x) {
            res.trace.samples.push_back(detail::make_sample_chart(t, x));
            int match = classify(x);
            if (match == -2) {
                candidate = -2;
                return true;
            }
            if (match != candidate) {
                candidate = match;
                t_candidate = t;
                return true;
            }
            if (t - t_candidate >= opts.window_dt) {
                done = true;
                return false;
            }
            return true;
        });

    res.limit = QuotientPoint(Vec(res.trace.samples.back().state));
    if (done) {
        res.record = (candidate >= 0) ? candidate : -1;
        res.vmax_point = (candidate == -1);
        res.trace.terminal = res.vmax_point ? TerminalKind::converged_vmax
                                            : TerminalKind::converged_equilibrium;
        res.trace.matched_record = res.record;
    } else if (sol.status == OdeStatus::step_failure) {
        res.trace.terminal = TerminalKind::step_failure;
    } else {
        res.trace.terminal = TerminalKind::max_time;
        res.trace.message = "no convergence within t_span";
    }
    return res;
}

// ---------------------------------------------------------------------------
// Auxiliary field W = (w / |grad V|^2) grad V, w = m^2/2 - V.
// Along its orbits w decays exactly as w(0) e^{-t}.
// ---------------------------------------------------------------------------

struct RetractionResult {
    enum class Status { ok, below_threshold, y_divergence, step_failure } status = Status::ok;
    QuotientPoint limit;
    Vec limit_ambient;
    std::vector<double> t_seq, w_seq, y_seq;
};

inline Vec auxiliary_field_raw(const Vec& theta) {
    const int m = static_cast<int>(theta.size());
    Vec k = vector_field_raw(theta);
    double g2 = k.squaredNorm(); // |grad V|^2
    double w = 0.5 * m * m - detail::potential_raw(theta);
    return Vec(-(w / g2) * k);
}

/// Newton polish onto the centroid-zero set along the 2-plane spanned by the
/// centroid Jacobian (minimal-norm Gauss-Newton steps).
inline bool polish_to_vmax(Vec& theta, double tol = 1e-13, int max_iter = 40) {
    const int m = static_cast<int>(theta.size());
    for (int it = 0; it < max_iter; ++it) {
        double c = 0.0, s = 0.0;
        for (int i = 0; i < m; ++i) {
            c += std::cos(theta[i]);
            s += std::sin(theta[i]);
        }
        if (std::hypot(c, s) < tol * m) return true;
        Eigen::Matrix<double, 2, Eigen::Dynamic> j(2, m);
        for (int i = 0; i < m; ++i) {
            j(0, i) = -std::sin(theta[i]);
            j(1, i) = std::cos(theta[i]);
        }
        Eigen::Vector2d f(c, s);
        Eigen::Matrix2d jjt = j * j.transpose();
        if (std::abs(jjt.determinant()) < 1e-12) return false; // near the singular set
        theta -= j.transpose() * jjt.inverse() * f;
    }
    return false;
}

/**
 * Retraction of a high-potential point onto the maximum set by the
 * auxiliary field. Requires V(start) >= m^2/2 - epsilon. Returns the limit
 * together with the w(t) and Y(t) = w/|grad V|^2 diagnostics; divergence of
 * Y signals proximity to the singular points, where the normal bundle
 * collapses, and aborts with a distinct status.
 */
inline RetractionResult alpha_limit_retraction(const QuotientPoint& start, double epsilon,
                                               const FlowOptions& opts = {}) {
    const int m = start.m();
    const double vmax = 0.5 * m * m;
    Vec theta = lift(start).angles;
    RetractionResult res;
    if (detail::potential_raw(theta) < vmax - epsilon) {
        res.status = RetractionResult::Status::below_threshold;
        res.limit_ambient = theta;
        res.limit = project(PhasePoint(Vec(theta)));
        return res;
    }

    const double w0 = vmax - detail::potential_raw(theta);
    if (w0 <= 1e-15) { // already on the maximum set
        res.limit_ambient = theta;
        res.limit = project(PhasePoint(Vec(theta)));
        res.t_seq = {0.0};
        res.w_seq = {w0};
        res.y_seq = {0.0};
        return res;
    }

    const double y0 = w0 / vector_field_raw(theta).squaredNorm();
    const double y_bound = std::max(y0, 1.0 / (2.0 * (m + std::sqrt(2.0 * epsilon))));
    const double y_cap = 50.0 * y_bound + 1.0;
    const double t_end = std::log(w0 / 1e-13); // w(t) = w0 e^{-t}
    bool diverged = false;

    res.t_seq.push_back(0.0);
    res.w_seq.push_back(w0);
    res.y_seq.push_back(y0);
    auto sol = rk45_integrate(auxiliary_field_raw, theta, t_end, opts.ode,
                              [&](double t, const Vec& y) {
                                  double w = vmax - detail::potential_raw(y);
                                  double g2 = vector_field_raw(y).squaredNorm();
                                  res.t_seq.push_back(t);
                                  res.w_seq.push_back(w);
                                  res.y_seq.push_back(w / g2);
                                  if (w / g2 > y_cap) {
                                      diverged = true;
                                      return false;
                                  }
                                  return true;
                              });
    if (diverged) {
        res.status = RetractionResult::Status::y_divergence;
    } else if (sol.status != OdeStatus::ok) {
        res.status = RetractionResult::Status::step_failure;
    }
    Vec end = sol.y.back();
    if (res.status == RetractionResult::Status::ok) polish_to_vmax(end);
    res.limit_ambient = end;
    res.limit = project(PhasePoint(Vec(end)));
    return res;
}

// ---------------------------------------------------------------------------
// Skew subtori: the induced field on block representatives.
// ---------------------------------------------------------------------------

struct Partition {
    std::vector<std::vector<int>> blocks;

    explicit Partition(std::vector<std::vector<int>> b) : blocks(std::move(b)) {
        if (blocks.size() < 2) throw std::invalid_argument("Partition: need at least 2 blocks");
    }
    int m() const {
        int n = 0;
        for (const auto& b : blocks) n += static_cast<int>(b.size());
        return n;
    }
    std::vector<int> sizes() const {
        std::vector<int> s;
        for (const auto& b : blocks) s.push_back(static_cast<int>(b.size()));
        return s;
    }
    void validate(int m_expected) const {
        std::vector<char> seen(m_expected, 0);
        for (const auto& b : blocks) {
            if (b.empty()) throw std::invalid_argument("Partition: empty block");
            for (int i : b) {
                if (i < 0 || i >= m_expected || seen[i])
                    throw std::invalid_argument("Partition: blocks must partition [m]");
                seen[i] = 1;
            }
        }
        for (char c : seen)
            if (!c) throw std::invalid_argument("Partition: blocks must cover [m]");
    }
};

/// Induced field on block representatives: f_k = sum_l n_l sin(a_l - a_k).
inline Vec skew_reduced_field(const Vec& alpha, const std::vector<int>& sizes) {
    const int r = static_cast<int>(alpha.size());
    Vec f(r);
    for (int k = 0; k < r; ++k) {
        double s = 0.0;
        for (int l = 0; l < r; ++l) s += sizes[l] * std::sin(alpha[l] - alpha[k]);
        f[k] = s;
    }
    return f;
}

inline Mat skew_reduced_jacobian(const Vec& alpha, const std::vector<int>& sizes) {
    const int r = static_cast<int>(alpha.size());
    Mat j(r, r);
    for (int k = 0; k < r; ++k) {
        double diag = 0.0;
        for (int l = 0; l < r; ++l) {
            if (l == k) continue;
            double c = sizes[l] * std::cos(alpha[l] - alpha[k]);
            j(k, l) = c;
            diag -= c;
        }
        j(k, k) = diag;
    }
    return j;
}

/// Reduced field with the last block pinned to angle 0 (the quotient form
/// used for the two-free-blocks portraits): x has r-1 components.
inline Vec skew_reduced_field_pinned(const Vec& x, const std::vector<int>& sizes) {
    const int r = static_cast<int>(sizes.size());
    Vec alpha(r);
    alpha.head(r - 1) = x;
    alpha[r - 1] = 0.0;
    Vec f = skew_reduced_field(alpha, sizes);
    Vec out(r - 1);
    for (int k = 0; k < r - 1; ++k) out[k] = f[k] - f[r - 1];
    return out;
}

inline Mat skew_reduced_jacobian_pinned(const Vec& x, const std::vector<int>& sizes) {
    const int r = static_cast<int>(sizes.size());
    Vec alpha(r);
    alpha.head(r - 1) = x;
    alpha[r - 1] = 0.0;
    Mat j = skew_reduced_jacobian(alpha, sizes);
    Mat out(r - 1, r - 1);
    for (int k = 0; k < r - 1; ++k)
        for (int l = 0; l < r - 1; ++l) out(k, l) = j(k, l) - j(r - 1, l);
    return out;
}

/// Expands block representatives to the ambient point of the skew subtorus.
inline Vec skew_expand(const Vec& alpha, const Partition& part) {
    Vec theta(part.m());
    for (std::size_t k = 0; k < part.blocks.size(); ++k)
        for (int i : part.blocks[k]) theta[i] = alpha[static_cast<Eigen::Index>(k)];
    return theta;
}

// ---------------------------------------------------------------------------
// Saddle connections on templates.
// ---------------------------------------------------------------------------

struct HeteroclinicResult {
    bool found = false;
    OrbitTrace branch_plus, branch_minus;
    std::string message;
};

/**
 * The two saddle connections from p_I down to p_J (J = I minus one index,
 * |I| < m/2). The connection is the one-dimensional stable manifold of p_J
 * inside the template, so each branch is traced by integrating backward
 * from p_J displaced by +-delta along the stable eigendirection of the
 * template linearization; backward time contracts the transversal error
 * onto the connection, and the trace is reversed into a forward orbit.
 * (A forward launch from p_I cannot work: both unstable eigendirections of
 * p_I span flow-invariant circles that bypass p_J entirely.)
 */
inline HeteroclinicResult find_heteroclinic(const std::vector<int>& I, const std::vector<int>& J,
                                            int m, const FlowOptions& opts = {},
                                            double delta = 1e-5) {
    HeteroclinicResult out;
    if (I.size() != J.size() + 1 || 2 * static_cast<int>(I.size()) >= m)
        throw std::invalid_argument("find_heteroclinic: need J subset I, |I| = |J|+1 < m/2");
    for (int j : J)
        if (std::find(I.begin(), I.end(), j) == I.end())
            throw std::invalid_argument("find_heteroclinic: J must be a subset of I");

    const int d = static_cast<int>(I.size());
    const Vec pj_angles = exemplar(J, m).angles;
    const Vec pi_angles = exemplar(I, m).angles;

    // Template dynamics at p_J: singleton blocks for the I-coordinates plus
    // the pinned equal-angle block. The within-template stable direction is
    // the eigenvector of the unique negative eigenvalue of the pinned
    // reduced Jacobian (non-symmetric: the chart is not metric-compatible).
    std::vector<int> sizes(static_cast<std::size_t>(d), 1);
    sizes.push_back(m - d);
    Vec x = Vec::Zero(d);
    for (int a = 0; a < d; ++a)
        if (std::find(J.begin(), J.end(), I[a]) != J.end()) x[a] = pi;
    Eigen::EigenSolver<Mat> es(skew_reduced_jacobian_pinned(x, sizes));
    int neg = -1;
    double best = -1e-9;
    for (int k = 0; k < d; ++k)
        if (es.eigenvalues()[k].real() < best) {
            best = es.eigenvalues()[k].real();
            neg = k;
        }
    if (neg < 0) {
        out.message = "no stable direction at p_J inside the template";
        return out;
    }
    Vec vs = Vec::Zero(m);
    for (int a = 0; a < d; ++a) vs[I[a]] = es.eigenvectors().col(neg)[a].real();
    vs.normalize();

    auto trace_branch = [&](double sgn) -> std::optional<OrbitTrace> {
        Vec y0 = pj_angles + sgn * delta * vs;
        OrbitTrace rev;
        bool reached = false;
        rev.samples.push_back(detail::make_sample_ambient(0.0, y0));
        auto sol = rk45_integrate([](const Vec& y) { return Vec(-vector_field_raw(y)); }, y0,
                                  opts.t_span, opts.ode, [&](double t, const Vec& y) {
                                      rev.samples.push_back(detail::make_sample_ambient(t, y));
                                      if (diagonal_dist(y, pi_angles) < 1e-6) {
                                          reached = true;
                                          return false;
                                      }
                                      return true;
                                  });
        if (!reached || sol.status == OdeStatus::step_failure) return std::nullopt;
        OrbitTrace fwd;
        const double t_max = rev.samples.back().t;
        for (auto it = rev.samples.rbegin(); it != rev.samples.rend(); ++it) {
            OrbitSample s = *it;
            s.t = t_max - s.t;
            fwd.samples.push_back(std::move(s));
        }
        fwd.terminal = TerminalKind::converged_equilibrium;
        return fwd;
    };

    auto plus = trace_branch(+1.0);
    auto minus = trace_branch(-1.0);
    if (!plus || !minus) {
        out.message = "saddle connection not reached within t_span";
        return out;
    }
    out.branch_plus = std::move(*plus);
    out.branch_minus = std::move(*minus);
    out.found = true;
    return out;
}

// ---------------------------------------------------------------------------
// Homotopy between the product circle flow and the reduced template field.
// ---------------------------------------------------------------------------

/// F_s = (1-s) F_0 + s F_1 on T^d, where F_0 is the product source/sink
/// field (-sin theta_i) and F_1 the template field of a d-subset in an
/// m-oscillator system.
struct HomotopyField {
    int d;
    int m;
    double s;

    HomotopyField(int d_, int m_, double s_) : d(d_), m(m_), s(s_) {
        if (s < 0.0 || s > 1.0) throw std::invalid_argument("HomotopyField: s in [0,1]");
        if (2 * d >= m) throw std::invalid_argument("HomotopyField: need d < m/2");
    }

    Vec field(const Vec& th) const {
        double sum_sin = 0.0;
        for (int k = 0; k < d; ++k) sum_sin += std::sin(th[k]);
        Vec f(d);
        for (int i = 0; i < d; ++i) {
            double f1 = -(m - d) * std::sin(th[i]) - sum_sin;
            for (int k = 0; k < d; ++k) f1 += std::sin(th[k] - th[i]);
            f[i] = (1.0 - s) * (-std::sin(th[i])) + s * f1;
        }
        return f;
    }

    Mat jacobian(const Vec& th) const {
        Mat j(d, d);
        for (int i = 0; i < d; ++i) {
            double diag1 = -(m - d) * std::cos(th[i]) - std::cos(th[i]);
            for (int k = 0; k < d; ++k) {
                if (k == i) continue;
                double c = std::cos(th[k] - th[i]);
                j(i, k) = s * (c - std::cos(th[k]));
                diag1 -= c;
            }
            j(i, i) = (1.0 - s) * (-std::cos(th[i])) + s * diag1;
        }
        return j;
    }

    /// Pair-sum potential over the d coordinates.
    double pair_sum(const Vec& th) const {
        double w = 0.0;
        for (int l = 0; l < d; ++l)
            for (int k = 0; k < d; ++k) w += 1.0 - std::cos(th[l] - th[k]);
        return 0.5 * w;
    }

    double perfect_morse(const Vec& th) const {
        double mm = 0.0;
        for (int k = 0; k < d; ++k) mm += 1.0 - std::cos(th[k]);
        return mm;
    }

    /// Lyapunov function for 0 < s < 1.
    double lyapunov(const Vec& th) const {
        if (s <= 0.0 || s >= 1.0)
            throw std::invalid_argument("HomotopyField: Lyapunov needs 0 < s < 1");
        return pair_sum(th) + (m - d + (1.0 - s) / s) * perfect_morse(th);
    }
};

struct NewtonZeros {
    std::vector<Vec> zeros; // deduplicated, wrapped to [0, 2pi)
    int failures = 0;
    bool all_on_half_pi_lattice = true;
    double max_lattice_dist = 0.0;
};

/// Newton search for zeros of F_s from a uniform grid of seeds.
inline NewtonZeros homotopy_newton_zeros(const HomotopyField& h, int grid_n) {
    NewtonZeros out;
    const int d = h.d;
    std::vector<int> idx(d, 0);
    auto next = [&]() {
        for (int i = 0; i < d; ++i) {
            if (++idx[i] < grid_n) return true;
            idx[i] = 0;
        }
        return false;
    };
    do {
        Vec x(d);
        for (int i = 0; i < d; ++i) x[i] = (idx[i] + 0.5) * two_pi / grid_n;
        bool ok = false;
        for (int it = 0; it < 60; ++it) {
            Vec f = h.field(x);
            if (f.norm() < 1e-12) {
                ok = true;
                break;
            }
            Mat j = h.jacobian(x);
            Eigen::FullPivLU<Mat> lu(j);
            if (!lu.isInvertible()) break;
            Vec step = lu.solve(f);
            if (step.norm() > 10.0) break;
            x -= step;
        }
        if (!ok) {
            ++out.failures;
            continue;
        }
        x = normalize_angles(x);
        bool dup = false;
        for (const Vec& z : out.zeros)
            if (torus_dist(z, x) < 1e-6) {
                dup = true;
                break;
            }
        if (dup) continue;
        double lat = 0.0;
        for (int i = 0; i < d; ++i) {
            double di = std::min(circle_dist(x[i], 0.0), circle_dist(x[i], pi));
            lat = std::max(lat, di);
        }
        out.max_lattice_dist = std::max(out.max_lattice_dist, lat);
        if (lat > 1e-8) out.all_on_half_pi_lattice = false;
        out.zeros.push_back(std::move(x));
    } while (next());
    return out;
}

/// Maximum principal angle between the positive eigenspace of DF_s at p_I
/// and the span of the coordinate directions of I.
inline double homotopy_unstable_angle(const HomotopyField& h, const std::vector<int>& I) {
    const int d = h.d;
    Vec p = Vec::Zero(d);
    for (int i : I) p[i] = pi;
    Eigen::EigenSolver<Mat> es(h.jacobian(p));
    std::vector<Vec> cols;
    for (int k = 0; k < d; ++k)
        if (es.eigenvalues()[k].real() > 0.0) cols.push_back(es.eigenvectors().col(k).real());
    if (cols.size() != I.size()) return pi / 2;
    Mat q1(d, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) q1.col(static_cast<Eigen::Index>(c)) = cols[c];
    Mat q1o = Eigen::HouseholderQR<Mat>(q1).householderQ() * Mat::Identity(d, static_cast<int>(cols.size()));
    Mat q2 = Mat::Zero(d, static_cast<int>(I.size()));
    for (std::size_t c = 0; c < I.size(); ++c) q2(I[c], static_cast<Eigen::Index>(c)) = 1.0;
    Eigen::JacobiSVD<Mat> svd(q1o.transpose() * q2);
    double smin = svd.singularValues().minCoeff();
    return std::acos(std::clamp(smin, -1.0, 1.0));
}

struct HomotopyReport {
    NewtonZeros zeros;
    bool lyapunov_decreasing = true;
    double worst_lyapunov_increase = 0.0;
    double max_unstable_angle = 0.0; // over all subsets I of [d]
};

/// Gathers the three pieces of numerical evidence for the topological
/// equivalence: lattice-only zeros, Lyapunov decrease along sampled orbits,
/// and s-independence of the positive eigenspaces.
inline HomotopyReport homotopy_analysis(const HomotopyField& h, int grid_n = 20,
                                        int n_orbits = 50, std::uint64_t seed = 1,
                                        const FlowOptions& opts = {}) {
    HomotopyReport rep;
    rep.zeros = homotopy_newton_zeros(h, grid_n);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, two_pi);
    for (int orbit = 0; orbit < n_orbits; ++orbit) {
        Vec x0(h.d);
        for (int i = 0; i < h.d; ++i) x0[i] = uni(rng);
        double last = h.lyapunov(x0);
        rk45_integrate([&](const Vec& x) { return h.field(x); }, x0, 20.0, opts.ode,
                       [&](double, const Vec& x) {
                           double lam = h.lyapunov(x);
                           if (lam > last + 1e-12)
                               rep.worst_lyapunov_increase =
                                   std::max(rep.worst_lyapunov_increase, lam - last);
                           last = lam;
                           return h.field(x).norm() > 1e-10;
                       });
    }
    rep.lyapunov_decreasing = rep.worst_lyapunov_increase == 0.0;

    for (unsigned mask = 0; mask < (1u << h.d); ++mask) {
        std::vector<int> I;
        for (int i = 0; i < h.d; ++i)
            if (mask & (1u << i)) I.push_back(i);
        if (I.empty()) continue; // sink: no positive eigenspace
        rep.max_unstable_angle = std::max(rep.max_unstable_angle, homotopy_unstable_angle(h, I));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Trace export.
// ---------------------------------------------------------------------------

inline std::string orbit_trace_csv(const OrbitTrace& trace) {
    std::ostringstream os;
    os.precision(17);
    const Eigen::Index n = trace.samples.empty() ? 0 : trace.samples.front().state.size();
    os << "t";
    for (Eigen::Index i = 0; i < n; ++i)
        os << "," << (trace.quotient_chart ? "x" : "theta") << i + 1;
    os << ",V,r\n";
    for (const auto& s : trace.samples) {
        os << s.t;
        for (Eigen::Index i = 0; i < n; ++i) os << "," << s.state[i];
        os << "," << s.V << "," << s.r << "\n";
    }
    return os.str();
}

} // namespace kuramoto

#endif
