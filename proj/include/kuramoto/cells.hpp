/**
 * The combinatorial cell complex of the maximum set of the potential in the
 * quotient, in the theta_1 = 0 chart.
 *
 * A cell is encoded by a sentence: an ordered set partition of the symbols
 * {0, a, b, ...} (symbol 0 is theta_1 = 0, symbol a is theta_2, ...) whose
 * first word contains 0. A word collects the indices of angles that are
 * equal; consecutive words are strictly increasing angle groups, read
 * cyclically. Valid sentences (word sizes at most m/2, a word of size
 * exactly m/2 forcing a two-word sentence) are exactly the nonempty closed
 * cells. The two-word sentences, which exist only for even m, are the
 * singular points.
 *
 * Dimension bookkeeping: m angles, one gauge fix, (m - #words) equalities
 * and two centroid constraints leave dim = #words - 3, except the rigid
 * two-word case which is a point.
 */

#ifndef KURAMOTO_CELLS_HPP
#define KURAMOTO_CELLS_HPP

#include <map>
#include <random>
#include <string>

#include "model.hpp"
#include "snf.hpp"

namespace kuramoto {

struct Sentence {
    std::vector<std::vector<int>> words; // symbols 0..m-1, each word sorted
    int m = 0;

    int word_count() const { return static_cast<int>(words.size()); }

    /// dim = #words - 3; the two-word (size m/2) sentences are points.
    int dimension() const { return word_count() == 2 ? 0 : word_count() - 3; }

    bool valid() const {
        for (const auto& w : words) {
            if (w.empty() || 2 * static_cast<int>(w.size()) > m) return false;
            if (2 * static_cast<int>(w.size()) == m && word_count() != 2) return false;
        }
        return !words.empty() && words.front().front() == 0 && word_count() >= 2;
    }

    /// Label in the paper's alphabet, e.g. "0a-bc-d".
    std::string label() const {
        std::string out;
        for (std::size_t i = 0; i < words.size(); ++i) {
            if (i) out += '-';
            for (int s : words[i]) out += (s == 0) ? '0' : static_cast<char>('a' + s - 1);
        }
        return out;
    }

    static Sentence parse(const std::string& lbl, int m) {
        Sentence s;
        s.m = m;
        s.words.emplace_back();
        for (char ch : lbl) {
            if (ch == '-')
                s.words.emplace_back();
            else
                s.words.back().push_back(ch == '0' ? 0 : ch - 'a' + 1);
        }
        for (auto& w : s.words) std::sort(w.begin(), w.end());
        return s;
    }
};

/// Signed formal sum of sentences.
using SentenceChain = std::vector<std::pair<int, Sentence>>;

namespace cells_detail {

inline std::vector<int> sorted_union(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    out.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

/// Rotates words so the one containing symbol 0 leads.
inline void anchor_at_zero(std::vector<std::vector<int>>& words) {
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (std::find(words[i].begin(), words[i].end(), 0) != words[i].end()) {
            std::rotate(words.begin(), words.begin() + static_cast<std::ptrdiff_t>(i), words.end());
            return;
        }
    }
}

} // namespace cells_detail

/**
 * Signed border of a sentence: remove each of the w cyclic separators in
 * turn (the wrap separator merges the last word into the 0-word) with sign
 * (-1)^{k-1}. Faces with a word larger than m/2 are dropped; a face with a
 * word of exactly m/2 collapses the remaining words into one (the rigid
 * point) and is dropped unless the dimension falls by exactly one. Distinct
 * removals can collapse onto the same point; such repeats carry the same
 * sign and are kept once with coefficient +-1.
 */
inline SentenceChain border(const Sentence& s) {
    if (s.dimension() < 1) throw std::invalid_argument("border: dimension-0 cell");
    const int w = s.word_count();
    const int m = s.m;
    SentenceChain out;

    for (int k = 1; k <= w; ++k) {
        std::vector<std::vector<int>> words;
        if (k < w) {
            words = s.words;
            words[k - 1] = cells_detail::sorted_union(words[k - 1], words[k]);
            words.erase(words.begin() + k);
        } else {
            words = s.words;
            words[0] = cells_detail::sorted_union(words[0], words.back());
            words.pop_back();
        }

        bool oversized = false, half = false;
        std::size_t half_at = 0;
        for (std::size_t i = 0; i < words.size(); ++i) {
            if (2 * static_cast<int>(words[i].size()) > m) oversized = true;
            if (2 * static_cast<int>(words[i].size()) == m) {
                half = true;
                half_at = i;
            }
        }
        if (oversized) continue;

        Sentence face;
        face.m = m;
        if (half && words.size() > 2) {
            if (s.dimension() != 1) continue; // would drop dimension by more than 1
            std::vector<int> rest;
            for (std::size_t i = 0; i < words.size(); ++i)
                if (i != half_at) rest = cells_detail::sorted_union(rest, words[i]);
            face.words = {words[half_at], rest};
        } else {
            face.words = std::move(words);
        }
        cells_detail::anchor_at_zero(face.words);

        int sign = (k % 2 == 1) ? +1 : -1;
        bool dup = false;
        for (auto& [sg, cell] : out)
            if (cell.words == face.words) {
                dup = true;
                break;
            }
        if (!dup) out.emplace_back(sign, std::move(face));
    }
    return out;
}

struct ChainComplex {
    int m = 0;
    std::vector<std::vector<Sentence>> cells;            // by dimension
    std::vector<std::map<std::string, int>> cell_index;  // label -> position
    // boundary[k]: columns of the map from k-cells to (k-1)-cells
    std::vector<std::vector<std::vector<std::pair<int, int>>>> boundary;

    int max_dim() const { return static_cast<int>(cells.size()) - 1; }
    long cell_count(int k) const {
        return (k >= 0 && k <= max_dim()) ? static_cast<long>(cells[k].size()) : 0;
    }
};

namespace cells_detail {

template <class Fn>
void enumerate_partitions(int m, unsigned remaining, std::vector<std::vector<int>>& acc,
                          int max_word, const Fn& emit) {
    if (remaining == 0) {
        if (acc.size() >= 2) emit(acc);
        return;
    }
    if (acc.empty()) {
        // the first word is anchored at symbol 0
        unsigned rest = remaining & ~1u;
        for (unsigned sub = rest;; sub = (sub - 1) & rest) {
            if (__builtin_popcount(sub) + 1 <= max_word) {
                std::vector<int> word{0};
                for (int b = 1; b < m; ++b)
                    if (sub & (1u << b)) word.push_back(b);
                acc.push_back(std::move(word));
                enumerate_partitions(m, rest & ~sub, acc, max_word, emit);
                acc.pop_back();
            }
            if (sub == 0) break;
        }
        return;
    }
    // later words range over all nonempty subsets of the remaining symbols
    for (unsigned sub = remaining;; sub = (sub - 1) & remaining) {
        if (sub != 0 && __builtin_popcount(sub) <= max_word) {
            std::vector<int> word;
            for (int b = 0; b < m; ++b)
                if (sub & (1u << b)) word.push_back(b);
            acc.push_back(std::move(word));
            enumerate_partitions(m, remaining & ~sub, acc, max_word, emit);
            acc.pop_back();
        }
        if (sub == 0) break;
    }
}

} // namespace cells_detail

/**
 * All valid canonical sentences for m symbols, grouped by dimension, with
 * boundary matrices assembled from border(). The two-word point cells of
 * even m are enumerated as the subsets of size m/2 containing symbol 0.
 */
inline ChainComplex enumerate_cells(int m) {
    if (m < 3) throw std::invalid_argument("enumerate_cells: m must be >= 3");
    ChainComplex cc;
    cc.m = m;
    const int top_dim = m - 3;
    cc.cells.resize(top_dim + 1);
    cc.cell_index.resize(top_dim + 1);

    // word size cap for >2-word sentences: strictly below m/2
    const int max_word = (m - 1) / 2;
    std::vector<std::vector<int>> acc;
    cells_detail::enumerate_partitions(
        m, (1u << m) - 1, acc, max_word, [&](const std::vector<std::vector<int>>& words) {
            Sentence s;
            s.m = m;
            s.words = words;
            int d = s.dimension();
            if (d < 0 || d > top_dim) return;
            cc.cell_index[d].emplace(s.label(), static_cast<int>(cc.cells[d].size()));
            cc.cells[d].push_back(std::move(s));
        });
    if (m % 2 == 0) {
        // rigid two-word points
        unsigned all = (1u << m) - 1;
        for (unsigned sub = 0; sub <= all; ++sub) {
            if (!(sub & 1u) || __builtin_popcount(sub) != m / 2) continue;
            Sentence s;
            s.m = m;
            std::vector<int> w0, w1;
            for (int b = 0; b < m; ++b) ((sub >> b) & 1u ? w0 : w1).push_back(b);
            s.words = {w0, w1};
            cc.cell_index[0].emplace(s.label(), static_cast<int>(cc.cells[0].size()));
            cc.cells[0].push_back(std::move(s));
        }
    }

    cc.boundary.resize(top_dim + 1);
    for (int k = 1; k <= top_dim; ++k) {
        cc.boundary[k].resize(cc.cells[k].size());
        for (std::size_t c = 0; c < cc.cells[k].size(); ++c) {
            for (const auto& [sign, face] : border(cc.cells[k][c])) {
                auto it = cc.cell_index[k - 1].find(face.label());
                if (it == cc.cell_index[k - 1].end())
                    throw std::logic_error("enumerate_cells: face outside the complex: " +
                                           face.label());
                cc.boundary[k][c].emplace_back(it->second, sign);
            }
        }
    }
    return cc;
}

/// Checks that the composition of consecutive boundary maps vanishes.
inline bool verify_dd_zero(const ChainComplex& cc) {
    for (int k = 2; k <= cc.max_dim(); ++k) {
        for (const auto& col : cc.boundary[k]) {
            std::map<int, long> sum;
            for (auto [mid, c1] : col)
                for (auto [low, c2] : cc.boundary[k - 1][static_cast<std::size_t>(mid)])
                    sum[low] += static_cast<long>(c1) * c2;
            for (auto& [row, v] : sum)
                if (v != 0) return false;
        }
    }
    return true;
}

inline long long euler_characteristic(const ChainComplex& cc) {
    long long chi = 0;
    for (int k = 0; k <= cc.max_dim(); ++k) chi += (k % 2 == 0 ? 1 : -1) * cc.cell_count(k);
    return chi;
}

struct BettiTable {
    int m = 0;
    std::vector<long long> betti;
    std::vector<std::vector<BigInt>> torsion; // per dimension
    bool dd_zero = false;

    bool has_torsion() const {
        for (const auto& t : torsion)
            if (!t.empty()) return true;
        return false;
    }
};

/// Integer homology by Smith normal form of the boundary matrices:
/// beta_k = #k-cells - rank d_k - rank d_{k+1}, torsion of H_k from the
/// non-unit divisors of d_{k+1}.
inline BettiTable homology_snf(const ChainComplex& cc) {
    BettiTable table;
    table.m = cc.m;
    table.dd_zero = verify_dd_zero(cc);
    const int top = cc.max_dim();
    std::vector<long> rank(top + 2, 0);
    std::vector<std::vector<BigInt>> nonunit(top + 2);
    for (int k = 1; k <= top; ++k) {
        SparseIntMatrix mtx;
        mtx.rows = static_cast<int>(cc.cell_count(k - 1));
        mtx.cols = static_cast<int>(cc.cell_count(k));
        mtx.columns = cc.boundary[k];
        auto res = smith_normal_form(mtx);
        rank[k] = res.rank;
        nonunit[k] = res.nonunit_divisors;
    }
    table.betti.resize(top + 1);
    table.torsion.resize(top + 1);
    for (int k = 0; k <= top; ++k) {
        table.betti[k] = cc.cell_count(k) - rank[k] - rank[k + 1];
        table.torsion[k] = nonunit[k + 1];
    }
    return table;
}

/// Closed-form Betti numbers of the maximum set, d = floor((m-1)/2).
inline long long betti_formula(int m, int k) {
    if (k < 0) throw std::invalid_argument("betti_formula: k must be >= 0");
    auto binom = [](int n, int r) -> long long {
        if (r < 0 || r > n) return 0;
        long long out = 1;
        for (int i = 1; i <= r; ++i) out = out * (n - r + i) / i;
        return out;
    };
    const int d = (m - 1) / 2;
    if (k >= m - 2) return 0;
    if (k >= m - d - 1) return binom(m - 1, k + 2);
    if (k == m - d - 2) return binom(m - 1, k) + binom(m - 1, k + 2);
    return binom(m - 1, k);
}

/// |Z| < tol: the point maximizes the potential.
inline bool vmax_membership(const PhasePoint& p, double tol = 1e-10) {
    return centroid(p).modulus < tol;
}

struct NormalFrame {
    Vec cos_vec, sin_vec;
    bool independent = false;
    double gram_det = 0.0;
};

/// The (cos theta_i) and (sin theta_i) trivialization of the normal bundle;
/// independence fails exactly near the singular points.
inline NormalFrame normal_frame(const PhasePoint& p, double tol = 1e-8) {
    const int m = p.m();
    NormalFrame f;
    f.cos_vec.resize(m);
    f.sin_vec.resize(m);
    for (int i = 0; i < m; ++i) {
        f.cos_vec[i] = std::cos(p.angles[i]);
        f.sin_vec[i] = std::sin(p.angles[i]);
    }
    double cc = f.cos_vec.squaredNorm(), ss = f.sin_vec.squaredNorm(),
           cs = f.cos_vec.dot(f.sin_vec);
    f.gram_det = cc * ss - cs * cs;
    f.independent = f.gram_det > tol;
    return f;
}

struct RealizeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/**
 * Interior point of a cell: word angles phi with phi_1 = 0, strictly
 * increasing in (0, 2pi), and sum n_j exp(i phi_j) = 0 to 1e-10. Solved by
 * minimal-norm Newton on the two centroid equations from equally spaced
 * seeds, with the ordering checked afterwards and perturbed retries.
 */
inline PhasePoint realize_cell(const Sentence& s, int max_retries = 20) {
    if (!s.valid()) throw RealizeError("realize_cell: invalid sentence " + s.label());
    const int w = s.word_count();
    const int m = s.m;
    Vec sizes(w);
    for (int j = 0; j < w; ++j) sizes[j] = static_cast<double>(s.words[j].size());

    std::mt19937_64 rng(0xce11u);
    std::uniform_real_distribution<double> jitter(-0.2, 0.2);

    for (int attempt = 0; attempt < max_retries; ++attempt) {
        Vec phi(w);
        for (int j = 0; j < w; ++j) {
            phi[j] = two_pi * j / w;
            if (attempt > 0 && j > 0) phi[j] += jitter(rng);
        }
        bool converged = false;
        for (int it = 0; it < 80; ++it) {
            double c = 0.0, sn = 0.0;
            for (int j = 0; j < w; ++j) {
                c += sizes[j] * std::cos(phi[j]);
                sn += sizes[j] * std::sin(phi[j]);
            }
            if (std::hypot(c, sn) < 1e-13 * m) {
                converged = true;
                break;
            }
            Eigen::Matrix<double, 2, Eigen::Dynamic> jac(2, w - 1);
            for (int j = 1; j < w; ++j) {
                jac(0, j - 1) = -sizes[j] * std::sin(phi[j]);
                jac(1, j - 1) = sizes[j] * std::cos(phi[j]);
            }
            Eigen::Matrix2d jjt = jac * jac.transpose();
            if (std::abs(jjt.determinant()) < 1e-14) break;
            Eigen::Vector2d f(c, sn);
            Eigen::VectorXd step = jac.transpose() * jjt.inverse() * f;
            phi.tail(w - 1) -= step;
        }
        if (!converged) continue;
        bool ordered = phi[0] == 0.0;
        for (int j = 1; j < w; ++j)
            if (phi[j] <= phi[j - 1] + 1e-9 || phi[j] >= two_pi - 1e-9) ordered = false;
        if (!ordered) continue;

        Vec theta(m);
        for (int j = 0; j < w; ++j)
            for (int sym : s.words[j]) theta[sym] = phi[j];
        return PhasePoint(std::move(theta));
    }
    throw RealizeError("realize_cell: no interior solution for " + s.label());
}

} // namespace kuramoto

#endif
