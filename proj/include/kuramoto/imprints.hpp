/**
 * How stable manifolds of the saddles meet the maximum set: membership and
 * sampling of imprints, the normal-circle crossing experiments, winding
 * numbers of closed curves around a template, and the tangent-cone check at
 * the singular points of even m.
 */

#ifndef KURAMOTO_IMPRINTS_HPP
#define KURAMOTO_IMPRINTS_HPP

#include <array>

#include "cells.hpp"
#include "flow.hpp"

namespace kuramoto {

enum class ImprintKind { sphere, pinched_sphere, all_of_vmax };

struct ImprintSpec {
    std::vector<int> subsetI;
    int m = 0;
    ImprintKind expected_kind = ImprintKind::sphere;

    void validate() const {
        if (2 * static_cast<int>(subsetI.size()) >= m)
            throw std::invalid_argument("ImprintSpec: need |I| < m/2");
    }
};

/// A point belongs to the imprint of p_I iff the I-angles coincide (mod
/// 2pi) and the point lies on the maximum set.
inline bool imprint_membership(const ImprintSpec& spec, const PhasePoint& p,
                               double tol = 1e-8) {
    spec.validate();
    for (std::size_t a = 1; a < spec.subsetI.size(); ++a)
        if (!angles_equal(p.angles[spec.subsetI[a]], p.angles[spec.subsetI[0]], tol)) return false;
    return vmax_membership(p, tol);
}

/**
 * Points of the imprint: the I-angles tied to a common value, centroid zero,
 * solved by minimal-norm Gauss-Newton from random seeds.
 */
inline std::vector<PhasePoint> imprint_sample(const ImprintSpec& spec, int n,
                                              std::uint64_t seed = 1) {
    spec.validate();
    const int m = spec.m;
    std::vector<char> in_I(m, 0);
    for (int i : spec.subsetI) in_I[i] = 1;
    std::vector<int> free_idx;
    for (int i = 0; i < m; ++i)
        if (!in_I[i]) free_idx.push_back(i);
    const int nv = static_cast<int>(free_idx.size()) + 1; // common angle + free angles

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, two_pi);
    std::vector<PhasePoint> out;
    while (static_cast<int>(out.size()) < n) {
        Vec vars(nv);
        for (int k = 0; k < nv; ++k) vars[k] = uni(rng);
        bool ok = false;
        for (int it = 0; it < 60; ++it) {
            double c = spec.subsetI.size() * std::cos(vars[0]);
            double s = spec.subsetI.size() * std::sin(vars[0]);
            for (int k = 1; k < nv; ++k) {
                c += std::cos(vars[k]);
                s += std::sin(vars[k]);
            }
            if (std::hypot(c, s) < 1e-12) {
                ok = true;
                break;
            }
            Eigen::Matrix<double, 2, Eigen::Dynamic> jac(2, nv);
            jac(0, 0) = -static_cast<double>(spec.subsetI.size()) * std::sin(vars[0]);
            jac(1, 0) = static_cast<double>(spec.subsetI.size()) * std::cos(vars[0]);
            for (int k = 1; k < nv; ++k) {
                jac(0, k) = -std::sin(vars[k]);
                jac(1, k) = std::cos(vars[k]);
            }
            Eigen::Matrix2d jjt = jac * jac.transpose();
            if (std::abs(jjt.determinant()) < 1e-12) break;
            Eigen::Vector2d f(c, s);
            vars -= jac.transpose() * jjt.inverse() * f;
        }
        if (!ok) continue;
        Vec theta(m);
        for (int i : spec.subsetI) theta[i] = vars[0];
        for (std::size_t k = 0; k < free_idx.size(); ++k)
            theta[free_idx[k]] = vars[static_cast<Eigen::Index>(k) + 1];
        out.emplace_back(std::move(theta));
    }
    return out;
}

/**
 * Backward alpha-limits of points sampled on the stable manifold of p_I:
 * the exemplar displaced by eps along random unit combinations of the
 * stable eigenvectors, flowed backward to the high-potential region and
 * retracted onto the maximum set by the auxiliary field.
 */
inline std::vector<PhasePoint> stable_manifold_alpha_limits(const std::vector<int>& I, int m,
                                                            int n, double eps = 1e-4,
                                                            std::uint64_t seed = 7,
                                                            const FlowOptions& opts = {}) {
    std::vector<Vec> stable;
    for (const auto& [lambda, v] : detail::permuted_eigenpairs(I, m))
        if (lambda < -0.5) stable.push_back(v.normalized());
    if (stable.empty()) throw std::invalid_argument("stable_manifold_alpha_limits: no stable directions");

    const Vec base = exemplar(I, m).angles;
    const double vmax = 0.5 * m * m;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;

    std::vector<PhasePoint> out;
    out.reserve(static_cast<std::size_t>(n));
    while (static_cast<int>(out.size()) < n) {
        Vec dir = Vec::Zero(m);
        for (const Vec& v : stable) dir += gauss(rng) * v;
        if (dir.norm() < 1e-12) continue;
        Vec y0 = base + eps * dir.normalized();

        OrbitTrace up = integrate(PhasePoint(Vec(y0)), 400.0, Direction::backward,
                                  ModelParams::standard(m), opts);
        if (up.terminal != TerminalKind::v_cap) continue;
        double eps_high = vmax - up.back().V;
        auto ret = alpha_limit_retraction(project(PhasePoint(Vec(up.back().state))),
                                          std::max(eps_high * 1.5, 1e-3), opts);
        if (ret.status != RetractionResult::Status::ok) continue;
        out.emplace_back(Vec(ret.limit_ambient));
    }
    return out;
}

/**
 * Numerical estimate of the imprint of p_I: alpha-limits of stable-manifold
 * samples, enriched with launches near the equality circles of the stable
 * sphere. Orbits from those circles shadow the saddles one index up before
 * reaching the maximum set, so the enrichment fills in the thinly covered
 * sub-imprints (the containment chain of the imprints).
 */
inline std::vector<PhasePoint> imprint_estimate(const std::vector<int>& I, int m, int n_generic,
                                                int n_biased_per_circle, double eps = 1e-4,
                                                std::uint64_t seed = 7,
                                                const FlowOptions& opts = {}) {
    std::vector<PhasePoint> cloud = stable_manifold_alpha_limits(I, m, n_generic, eps, seed, opts);

    std::vector<Vec> stable;
    for (const auto& [lambda, v] : detail::permuted_eigenpairs(I, m))
        if (lambda < -0.5) stable.push_back(v.normalized());
    std::vector<char> in_I(m, 0);
    for (int i : I) in_I[i] = 1;
    std::vector<int> free_idx;
    for (int i = 0; i < m; ++i)
        if (!in_I[i]) free_idx.push_back(i);

    std::mt19937_64 rng(seed + 1);
    std::normal_distribution<double> gauss;
    const Vec base = exemplar(I, m).angles;
    const double vmax = 0.5 * m * m;

    for (int pos : free_idx) {
        int made = 0;
        for (int attempt = 0; attempt < 20 * n_biased_per_circle && made < n_biased_per_circle;
             ++attempt) {
            Vec veq = Vec::Zero(m);
            for (int j : free_idx) veq[j] = (j == pos) ? static_cast<double>(free_idx.size()) - 1.0
                                                       : -1.0;
            Vec noise = Vec::Zero(m);
            for (const Vec& v : stable) noise += gauss(rng) * v;
            double eta = std::pow(10.0, -1.5 - 2.0 * std::uniform_real_distribution<double>(0, 1)(rng));
            Vec dir = veq.normalized() + eta * noise.normalized();
            Vec y0 = base + eps * dir.normalized();
            OrbitTrace up = integrate(PhasePoint(Vec(y0)), 400.0, Direction::backward,
                                      ModelParams::standard(m), opts);
            if (up.terminal != TerminalKind::v_cap) continue;
            auto ret = alpha_limit_retraction(project(PhasePoint(Vec(up.back().state))),
                                              std::max(1.5 * (vmax - up.back().V), 1e-3), opts);
            if (ret.status != RetractionResult::Status::ok) continue;
            cloud.emplace_back(Vec(ret.limit_ambient));
            ++made;
        }
    }
    return cloud;
}

// ---------------------------------------------------------------------------
// Normal-circle experiment.
// ---------------------------------------------------------------------------

struct DegenerateFrameError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NormalCircleRow {
    double phi;
    Vec crossing;               // ambient state at the crossing level
    double t_cross;
    // Euclidean distance of counterdiagonal representatives, after aligning
    // the diagonal phase (fixed representatives wrap discontinuously).
    Vec saddle_distance;
    Vec backward_limit;         // alpha-limit on the maximum set
    double backward_dist;       // distance of that limit to the base point
};

struct NormalCircleResult {
    PhasePoint base;
    double radius;
    double crossing_level;
    std::vector<NormalCircleRow> rows;
};

/**
 * Places n points on the circle of the given radius in the normal plane of
 * the maximum set at `base`, integrates each forward to the V =
 * crossing_level surface (recording the distance to every index-1 saddle)
 * and backward via the auxiliary field (recording how close the alpha-limit
 * returns to the base point).
 */
inline NormalCircleResult normal_circle_experiment(const PhasePoint& base, double radius, int n,
                                                   double crossing_level,
                                                   const FlowOptions& opts = {}) {
    const int m = base.m();
    if (!vmax_membership(base, 1e-8))
        throw std::invalid_argument("normal_circle_experiment: base not on the maximum set");
    NormalFrame frame = normal_frame(base);
    if (!frame.independent)
        throw DegenerateFrameError("normal frame degenerate: base too near the singular set");

    // orthonormalize (Cos, Sin)
    Vec n1 = frame.cos_vec.normalized();
    Vec n2 = frame.sin_vec - n1.dot(frame.sin_vec) * n1;
    n2.normalize();

    std::vector<Vec> saddles;
    for (int i = 0; i < m; ++i) saddles.push_back(exemplar({i}, m).angles);

    NormalCircleResult res;
    res.base = base;
    res.radius = radius;
    res.crossing_level = crossing_level;

    const Vec base_rep = counterdiagonal_representative(base.angles);
    for (int k = 0; k < n; ++k) {
        NormalCircleRow row;
        row.phi = two_pi * k / n;
        Vec y0 = base.angles + radius * (std::cos(row.phi) * n1 + std::sin(row.phi) * n2);

        // forward to the crossing level
        Vec prev = y0;
        double t_prev = 0.0;
        bool crossed = false;
        rk45_integrate([](const Vec& y) { return vector_field_raw(y); }, y0, opts.t_span,
                       opts.ode, [&](double t, const Vec& y) {
                           if (detail::potential_raw(y) <= crossing_level) {
                               crossed = true;
                               // secant refinement inside the last step
                               double lo = t_prev, hi = t;
                               Vec ylo = prev;
                               for (int it = 0; it < 60 && hi - lo > 1e-12; ++it) {
                                   double mid = 0.5 * (lo + hi);
                                   auto seg = rk45_integrate(
                                       [](const Vec& z) { return vector_field_raw(z); }, ylo,
                                       mid - lo, opts.ode);
                                   if (detail::potential_raw(seg.y.back()) <= crossing_level) {
                                       hi = mid;
                                   } else {
                                       lo = mid;
                                       ylo = seg.y.back();
                                   }
                               }
                               row.crossing = ylo;
                               row.t_cross = lo;
                               return false;
                           }
                           prev = y;
                           t_prev = t;
                           return true;
                       });
        if (!crossed) {
            row.crossing = prev;
            row.t_cross = t_prev;
        }
        row.saddle_distance.resize(m);
        for (int i = 0; i < m; ++i) row.saddle_distance[i] = diagonal_dist(row.crossing, saddles[i]);

        // backward via the auxiliary field
        double w0 = 0.5 * m * m - detail::potential_raw(y0);
        auto ret = alpha_limit_retraction(project(PhasePoint(Vec(y0))),
                                          std::max(2.0 * w0, 1e-6), opts);
        row.backward_limit = ret.limit_ambient;
        row.backward_dist = diagonal_dist(ret.limit_ambient, base.angles);
        res.rows.push_back(std::move(row));
    }
    return res;
}

// ---------------------------------------------------------------------------
// Winding numbers.
// ---------------------------------------------------------------------------

struct WindingUndefined : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/**
 * Winding number of a closed polyline in the quotient around the template
 * of equal angles templateI (|templateI| = m-2, so the template has
 * codimension 2). The curve is lifted to the transverse plane's universal
 * cover and the plane winding sum is accumulated over the lattice
 * translates inside the lifted bounding box plus one period of margin.
 */
inline int winding_number(const std::vector<QuotientPoint>& curve,
                          const std::vector<int>& templateI, double tol = 1e-9) {
    if (curve.size() < 3) throw std::invalid_argument("winding_number: need a closed polyline");
    const int m = curve.front().m();
    if (static_cast<int>(templateI.size()) != m - 2)
        throw std::invalid_argument("winding_number: template must have m-2 equal angles");

    // The template is the locus where the templateI angles agree, so the
    // transverse plane is spanned by their internal differences (two of
    // them, against the last as anchor).
    const int anchor = templateI.back();
    const int t0 = templateI[0], t1 = templateI[1];

    // continuous lift of the transverse projection
    std::vector<double> u(curve.size()), v(curve.size());
    auto uv = [&](const QuotientPoint& qp, double& uu, double& vv) {
        Vec th = lift(qp).angles;
        uu = th[t0] - th[anchor];
        vv = th[t1] - th[anchor];
    };
    uv(curve[0], u[0], v[0]);
    for (std::size_t k = 1; k < curve.size(); ++k) {
        double uu, vv;
        uv(curve[k], uu, vv);
        u[k] = u[k - 1] + wrap_pi(uu - u[k - 1]);
        v[k] = v[k - 1] + wrap_pi(vv - v[k - 1]);
    }
    if (std::abs(wrap_pi(u.back() - u.front())) > 1e-6 ||
        std::abs(wrap_pi(v.back() - v.front())) > 1e-6)
        throw std::invalid_argument("winding_number: curve is not closed");
    const bool lift_closed = std::abs(u.back() - u.front()) < 1e-6 &&
                             std::abs(v.back() - v.front()) < 1e-6;

    double umin = *std::min_element(u.begin(), u.end()),
           umax = *std::max_element(u.begin(), u.end());
    double vmin = *std::min_element(v.begin(), v.end()),
           vmax = *std::max_element(v.begin(), v.end());

    double total = 0.0;
    for (long a = static_cast<long>(std::floor((umin - two_pi) / two_pi));
         a <= static_cast<long>(std::ceil((umax + two_pi) / two_pi)); ++a) {
        for (long b = static_cast<long>(std::floor((vmin - two_pi) / two_pi));
             b <= static_cast<long>(std::ceil((vmax + two_pi) / two_pi)); ++b) {
            const double cx = two_pi * a, cy = two_pi * b;
            double angle_sum = 0.0;
            for (std::size_t k = 0; k + 1 < u.size(); ++k) {
                double x0 = u[k] - cx, y0 = v[k] - cy;
                double x1 = u[k + 1] - cx, y1 = v[k + 1] - cy;
                if (std::hypot(x0, y0) < tol || std::hypot(x1, y1) < tol)
                    throw WindingUndefined("winding_number: curve touches the template");
                angle_sum += std::atan2(x0 * y1 - y0 * x1, x0 * x1 + y0 * y1);
            }
            total += angle_sum / two_pi;
        }
    }
    double rounded = std::round(total);
    if (!lift_closed || std::abs(total - rounded) > 1e-3)
        throw WindingUndefined("winding_number: lattice sum is not an integer");
    return static_cast<int>(rounded);
}

/// The circle of radius delta around the saddle p_I, normal to the template
/// of its complement (whose angles are equal at p_I): the transverse plane
/// is spanned by the internal differences of the complement angles. Closed
/// polyline, positively oriented, ready for winding_number with templateI =
/// complement of I.
inline std::vector<QuotientPoint> normal_circle_polyline(const std::vector<int>& I, int m,
                                                         double delta, int segments = 256) {
    std::vector<char> in_I(m, 0);
    for (int i : I) in_I[i] = 1;
    std::vector<int> comp;
    for (int i = 0; i < m; ++i)
        if (!in_I[i]) comp.push_back(i);
    if (comp.size() < 3)
        throw std::invalid_argument("normal_circle_polyline: complement must have >= 3 angles");
    Vec base = exemplar(I, m).angles;
    std::vector<QuotientPoint> out;
    for (int k = 0; k <= segments; ++k) {
        double t = two_pi * k / segments;
        Vec th = base;
        th[comp[0]] += delta * std::cos(t);
        th[comp[1]] += delta * std::sin(t);
        out.push_back(project(PhasePoint(std::move(th))));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Tangent blowup at the singular points (m even).
// ---------------------------------------------------------------------------

struct BlowupReport {
    int m = 0;
    int curves = 0;
    double max_sum_a = 0.0, max_sum_b = 0.0; // half-sum violations
    double max_halves_diff = 0.0;            // | sum a^2 - sum b^2 | after normalization
    bool tangents_in_cones = true;           // m = 6 cone membership
    std::vector<Vec> tangents;
};

namespace imprint_detail {

/// Curve point on the maximum set at parameter t along the straight segment
/// from the singular point to an interior realization, Newton-projected.
inline bool vmax_curve_point(const Vec& sing, const Vec& interior, double t, Vec& out) {
    out = (1.0 - t) * sing + t * interior;
    return polish_to_vmax(out);
}

} // namespace imprint_detail

/**
 * Samples curves inside the maximum set approaching the canonical
 * singularity (0,...,0,pi,...,pi), estimates their one-sided tangents by
 * three-point Richardson extrapolation of normalized secants at
 * geometrically decreasing parameters, and verifies the blowup structure:
 * both halves of the (counterdiagonal) tangent sum to zero and carry equal
 * squared mass; for m = 6 the tangent halves must lie in one of the
 * row-permuted tangent cones.
 */
inline BlowupReport blowup_check(int m, int n, std::uint64_t seed = 11) {
    if (m < 4 || m % 2 != 0) throw std::invalid_argument("blowup_check: m must be even, >= 4");
    const int d = m / 2;
    Vec sing(m);
    for (int i = 0; i < m; ++i) sing[i] = (i < d) ? 0.0 : pi;

    std::mt19937_64 rng(seed);
    BlowupReport rep;
    rep.m = m;

    Mat cone(3, 2); // m = 6 tangent cone generators (one row ordering)
    cone << -2, -1, 1, -1, 1, 2;

    int made = 0;
    for (int attempt = 0; attempt < 20 * n && made < n; ++attempt) {
        // random incident top cell: permute the within-half orders
        std::vector<int> perm_a{0}, perm_b;
        for (int i = 1; i < d; ++i) perm_a.push_back(i);
        for (int i = d; i < m; ++i) perm_b.push_back(i);
        std::shuffle(perm_a.begin() + 1, perm_a.end(), rng);
        std::shuffle(perm_b.begin(), perm_b.end(), rng);

        Sentence top;
        top.m = m;
        for (int sym : perm_a) top.words.push_back({sym});
        for (int sym : perm_b) top.words.push_back({sym});
        Vec interior;
        try {
            interior = realize_cell(top).angles;
        } catch (const RealizeError&) {
            continue;
        }
        // unwrap the interior point against the singular point
        for (int i = 0; i < m; ++i) interior[i] = sing[i] + wrap_pi(interior[i] - sing[i]);

        // jitter the approach direction within the cell
        Vec target = interior;
        for (int i = 1; i < m; ++i) target[i] += 0.1 * std::uniform_real_distribution<double>(-1, 1)(rng);
        if (!polish_to_vmax(target)) continue;

        // normalized secants at t, 2t, 4t, 8t; cubic Richardson
        const double t_base = 2.5e-3;
        std::array<Vec, 4> s;
        bool good = true;
        for (int k = 0; k < 4 && good; ++k) {
            Vec pt;
            good = imprint_detail::vmax_curve_point(sing, target, t_base * (1 << k), pt);
            if (good) s[static_cast<std::size_t>(k)] =
                counterdiagonal_representative(pt - sing).normalized();
        }
        if (!good) continue;
        Vec tangent = ((64.0 * s[0] - 56.0 * s[1] + 14.0 * s[2] - s[3]) / 21.0).normalized();

        double sum_a = tangent.head(d).sum(), sum_b = tangent.tail(d).sum();
        rep.max_sum_a = std::max(rep.max_sum_a, std::abs(sum_a));
        rep.max_sum_b = std::max(rep.max_sum_b, std::abs(sum_b));
        rep.max_halves_diff = std::max(
            rep.max_halves_diff,
            std::abs(tangent.head(d).squaredNorm() - tangent.tail(d).squaredNorm()));

        if (m == 6) {
            auto in_cone = [&](const Vec& half) {
                std::array<int, 3> idx{0, 1, 2};
                std::sort(idx.begin(), idx.end());
                do {
                    Mat g(3, 2);
                    for (int r = 0; r < 3; ++r) g.row(r) = cone.row(idx[static_cast<std::size_t>(r)]);
                    Eigen::Vector2d coef =
                        (g.transpose() * g).ldlt().solve(g.transpose() * half);
                    if ((g * coef - half).norm() < 1e-5 && coef.minCoeff() > -1e-6) return true;
                } while (std::next_permutation(idx.begin(), idx.end()));
                return false;
            };
            Vec ha = tangent.head(3), hb = tangent.tail(3);
            if (!in_cone(ha) || !in_cone(hb)) rep.tangents_in_cones = false;
        }
        rep.tangents.push_back(tangent);
        ++made;
    }
    rep.curves = made;
    return rep;
}

} // namespace kuramoto

#endif
