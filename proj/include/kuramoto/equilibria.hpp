/**
 * Exact enumeration and classification of the fixed points of the quotient
 * flow: exemplars with angles in {0, pi}, their indices and potential values,
 * and the closed-form eigenstructure of the Hessian of -V at each of them.
 *
 * Index subsets are 0-based throughout the library.
 */

#ifndef KURAMOTO_EQUILIBRIA_HPP
#define KURAMOTO_EQUILIBRIA_HPP

#include <algorithm>
#include <functional>
#include <utility>
#include <vector>

#include "model.hpp"
#include "quotient.hpp"

namespace kuramoto {

enum class EquilibriumKind { sink, saddle, singular_max };

struct EquilibriumRecord {
    std::vector<int> subset;   // positions with angle pi
    int index = 0;             // u = |subset| (positive eigenvalue count)
    double potential = 0.0;    // 2 u (m - u)
    std::vector<std::pair<double, Vec>> eigenpairs;
    EquilibriumKind kind = EquilibriumKind::sink;
    int m = 0;
};

/// 2u(m-u), the critical value of an index-u saddle. Requires 0 <= u < m/2.
inline double saddle_potential(int u, int m) {
    if (u < 0 || 2 * u >= m) throw std::invalid_argument("saddle_potential: need 0 <= u < m/2");
    return 2.0 * u * (m - u);
}

/// Exemplar of the subset I: angle pi at positions of I, zero elsewhere.
inline PhasePoint exemplar(const std::vector<int>& subset, int m) {
    Vec a = Vec::Zero(m);
    for (int i : subset) a[i] = pi;
    return PhasePoint(std::move(a));
}

/// Rotates an exemplar-style singular point into the +-pi/2 convention
/// (pi/2 where the angle was pi, -pi/2 where it was 0).
inline PhasePoint singular_half_pi_form(const PhasePoint& p) { return diagonal_rotate(p, -pi / 2); }

/**
 * Eigenpairs of the Hessian of -V at the exemplar (pi,...,pi,0,...,0) with
 * d angles pi and z angles 0, d < z:
 *   - the all-ones vector with eigenvalue 0,
 *   - the dz-vector (z,...,z,-d,...,-d) with eigenvalue m (omitted when d =
 *     0, where it degenerates to the zero vector),
 *   - d-1 head-supported difference vectors with eigenvalue z - d,
 *   - z-1 tail-supported difference vectors with eigenvalue d - z.
 */
inline std::vector<std::pair<double, Vec>> analytic_eigenpairs(int d, int z) {
    if (d < 0 || d >= z) throw std::invalid_argument("analytic_eigenpairs: need 0 <= d < z");
    const int m = d + z;
    std::vector<std::pair<double, Vec>> out;
    out.reserve(m);

    out.emplace_back(0.0, Vec::Ones(m));

    if (d > 0) {
        Vec dz(m);
        dz.head(d).setConstant(z);
        dz.tail(z).setConstant(-d);
        out.emplace_back(static_cast<double>(m), std::move(dz));
    }

    for (int k = 1; k < d; ++k) {
        Vec v = Vec::Zero(m);
        v.head(k).setOnes();
        v[k] = -k;
        out.emplace_back(static_cast<double>(z - d), std::move(v));
    }
    for (int k = 1; k < z; ++k) {
        Vec v = Vec::Zero(m);
        v.segment(d, k).setOnes();
        v[d + k] = -k;
        out.emplace_back(static_cast<double>(d - z), std::move(v));
    }
    return out;
}

namespace detail {

/// Permutes the canonical-slot eigenvectors ([subset | complement] ordering)
/// onto the actual coordinate positions of the subset.
inline std::vector<std::pair<double, Vec>> permuted_eigenpairs(const std::vector<int>& subset, int m) {
    const int d = static_cast<int>(subset.size());
    auto slots = analytic_eigenpairs(d, m - d);
    std::vector<int> pos(m);
    std::vector<char> in_subset(m, 0);
    for (int i : subset) in_subset[i] = 1;
    int head = 0, tail = d;
    for (int i = 0; i < m; ++i) (in_subset[i] ? pos[head++] : pos[tail++]) = i;
    for (auto& [lambda, v] : slots) {
        Vec w(m);
        for (int s = 0; s < m; ++s) w[pos[s]] = v[s];
        v = std::move(w);
    }
    return slots;
}

inline std::vector<std::pair<double, Vec>> singular_eigenpairs(const PhasePoint& p) {
    const int m = p.m();
    Vec cosv(m);
    for (int i = 0; i < m; ++i) cosv[i] = std::cos(p.angles[i]);
    std::vector<std::pair<double, Vec>> out;
    out.emplace_back(static_cast<double>(m), cosv);
    // orthonormal basis of the kernel (everything orthogonal to Cos)
    std::vector<Vec> basis{cosv.normalized(), Vec::Ones(m).normalized()};
    out.emplace_back(0.0, Vec::Ones(m));
    for (int i = 0; i < m && static_cast<int>(basis.size()) < m; ++i) {
        Vec v = Vec::Unit(m, i);
        for (const Vec& b : basis) v -= b.dot(v) * b;
        if (v.norm() > 1e-8) {
            v.normalize();
            basis.push_back(v);
            out.emplace_back(0.0, v);
        }
    }
    return out;
}

inline void for_each_subset(int m, int u, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> idx(u);
    for (int i = 0; i < u; ++i) idx[i] = i;
    while (true) {
        fn(idx);
        int i = u - 1;
        while (i >= 0 && idx[i] == m - u + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < u; ++j) idx[j] = idx[j - 1] + 1;
    }
}

} // namespace detail

/**
 * All fixed points of the quotient flow for the standard model: one record
 * per subset I with |I| < m/2 (2^{m-1} of them for m odd, 2^{m-1} -
 * C(m, m/2)/2 for m even), followed by the C(m, m/2)/2 singular records of
 * the maximum set when m is even (deduplicated against complements by
 * keeping the subsets containing position 0).
 */
inline std::vector<EquilibriumRecord> enumerate_equilibria(int m) {
    if (m < 2) throw std::invalid_argument("enumerate_equilibria: m must be >= 2");
    std::vector<EquilibriumRecord> out;
    for (int u = 0; 2 * u < m; ++u) {
        detail::for_each_subset(m, u, [&](const std::vector<int>& subset) {
            EquilibriumRecord r;
            r.m = m;
            r.subset = subset;
            r.index = u;
            r.potential = saddle_potential(u, m);
            r.eigenpairs = detail::permuted_eigenpairs(subset, m);
            r.kind = (u == 0) ? EquilibriumKind::sink : EquilibriumKind::saddle;
            out.push_back(std::move(r));
        });
    }
    if (m % 2 == 0) {
        detail::for_each_subset(m, m / 2, [&](const std::vector<int>& subset) {
            if (subset[0] != 0) return; // complement gives the same diagonal
            EquilibriumRecord r;
            r.m = m;
            r.subset = subset;
            r.index = m / 2;
            r.potential = 0.5 * m * m;
            r.eigenpairs = detail::singular_eigenpairs(exemplar(subset, m));
            r.kind = EquilibriumKind::singular_max;
            out.push_back(std::move(r));
        });
    }
    return out;
}

/// Count of non-maximal fixed points: 2^{m-1}, minus C(m, m/2)/2 when m even.
inline long long nonmaximal_count(int m) {
    long long total = 1LL << (m - 1);
    if (m % 2 == 0) {
        long long binom = 1;
        for (int i = 1; i <= m / 2; ++i) binom = binom * (m / 2 + i) / i;
        total -= binom / 2;
    }
    return total;
}

} // namespace kuramoto

#endif
