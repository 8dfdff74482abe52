#pragma once

// Plumbing graphs and their intersection forms. All linear algebra is
// exact: fraction-free (Bareiss) elimination over arbitrary-precision
// integers, with rationals only at the Q^{-1} boundary.

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include <hfp/errors.hpp>
#include <hfp/numeric.hpp>

namespace hfp {

using Edge = std::pair<int, int>;  // 1-based endpoints, stored (min,max)
using IntMatrix = std::vector<std::vector<Int>>;

/// Weighted simple connected graph. Vertices are addressed 1..size()
/// everywhere; the vertex order is the canonical coordinate order for
/// all vectors and push certificates derived from the graph.
class PlumbingGraph {
public:
    PlumbingGraph(std::vector<Int> weights, std::vector<Edge> edges)
        : weights_(std::move(weights)) {
        const int s = static_cast<int>(weights_.size());
        if (s == 0) throw MalformedInput("graph has no vertices");
        for (int v = 1; v <= s; ++v)
            if (weights_[v - 1] == 0)
                throw InvalidWeight("vertex " + std::to_string(v) + " has weight 0");
        for (auto& [a, b] : edges) {
            if (a < 1 || a > s || b < 1 || b > s)
                throw MalformedInput("edge endpoint out of range: " + std::to_string(a) +
                                     " " + std::to_string(b));
            if (a == b) throw MalformedInput("self-loop at vertex " + std::to_string(a));
            if (a > b) std::swap(a, b);
        }
        std::sort(edges.begin(), edges.end());
        if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
            throw MalformedInput("duplicate edge");
        edges_ = std::move(edges);
        adjacency_.assign(s, {});
        for (const auto& [a, b] : edges_) {
            adjacency_[a - 1].push_back(b);
            adjacency_[b - 1].push_back(a);
        }
        for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
        check_connected();
    }

    int size() const { return static_cast<int>(weights_.size()); }
    const Int& weight(int v) const { return weights_[v - 1]; }
    int degree(int v) const { return static_cast<int>(adjacency_[v - 1].size()); }
    const std::vector<int>& neighbors(int v) const { return adjacency_[v - 1]; }
    const std::vector<Int>& weights() const { return weights_; }
    const std::vector<Edge>& edges() const { return edges_; }

    bool operator==(const PlumbingGraph& other) const {
        return weights_ == other.weights_ && edges_ == other.edges_;
    }

private:
    void check_connected() {
        const int s = size();
        std::vector<char> seen(s, 0);
        std::vector<int> stack{1};
        seen[0] = 1;
        int count = 0;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            ++count;
            for (int w : neighbors(v))
                if (!seen[w - 1]) {
                    seen[w - 1] = 1;
                    stack.push_back(w);
                }
        }
        if (count != s) throw DisconnectedGraph("graph is not connected");
    }

    std::vector<Int> weights_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adjacency_;
};

inline PlumbingGraph build_graph(std::vector<Int> weights, std::vector<Edge> edges) {
    return PlumbingGraph(std::move(weights), std::move(edges));
}

inline IntMatrix intersection_matrix_of(const PlumbingGraph& g) {
    const int s = g.size();
    IntMatrix q(s, std::vector<Int>(s, 0));
    for (int v = 1; v <= s; ++v) q[v - 1][v - 1] = g.weight(v);
    for (const auto& [a, b] : g.edges()) {
        q[a - 1][b - 1] = 1;
        q[b - 1][a - 1] = 1;
    }
    return q;
}

/// Leading principal minors d_1, d_2, ... via Bareiss elimination without
/// row swaps. The list stops after the first zero minor: past it the
/// fraction-free recursion is undefined, and no caller needs more.
inline std::vector<Int> leading_principal_minors(IntMatrix m) {
    const int n = static_cast<int>(m.size());
    std::vector<Int> minors;
    Int prev = 1;
    for (int k = 0; k < n; ++k) {
        minors.push_back(m[k][k]);
        if (m[k][k] == 0) break;
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return minors;
}

/// Exact determinant: Bareiss elimination with row swaps when a pivot
/// vanishes.
inline Int determinant(IntMatrix m) {
    const int n = static_cast<int>(m.size());
    if (n == 0) return 1;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            int r = -1;
            for (int i = k + 1; i < n; ++i)
                if (m[i][k] != 0) {
                    r = i;
                    break;
                }
            if (r < 0) return 0;
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : Int(-m[n - 1][n - 1]);
}

namespace detail {

// Fraction-free Gauss-Jordan (Montante) on [Q | I]. Returns the adjugate
// candidate rows scaled so that row i must be divided by m[i][i].
inline bool montante_inverse(const IntMatrix& q, IntMatrix& left_diag, IntMatrix& right) {
    const int n = static_cast<int>(q.size());
    IntMatrix m(n, std::vector<Int>(2 * n, 0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) m[i][j] = q[i][j];
        m[i][n + i] = 1;
    }
    Int prev = 1;
    for (int k = 0; k < n; ++k) {
        if (m[k][k] == 0) {
            int r = -1;
            for (int i = k + 1; i < n; ++i)
                if (m[i][k] != 0) {
                    r = i;
                    break;
                }
            if (r < 0) return false;
            std::swap(m[k], m[r]);
        }
        const Int pivot = m[k][k];
        for (int i = 0; i < n; ++i) {
            if (i == k) continue;
            const Int f = m[i][k];
            for (int j = 0; j < 2 * n; ++j) {
                if (j == k) continue;
                m[i][j] = (pivot * m[i][j] - f * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = pivot;
    }
    left_diag.assign(n, std::vector<Int>(1));
    right.assign(n, std::vector<Int>(n));
    for (int i = 0; i < n; ++i) {
        left_diag[i][0] = m[i][i];
        for (int j = 0; j < n; ++j) right[i][j] = m[i][n + j];
    }
    return true;
}

// Plain rational Gauss-Jordan, used only if the fraction-free route fails
// to verify (possible on pathological non-definite inputs).
inline bool rational_adjugate(const IntMatrix& q, const Int& det, IntMatrix& adj) {
    const int n = static_cast<int>(q.size());
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(2 * n, 0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) m[i][j] = q[i][j];
        m[i][n + i] = 1;
    }
    for (int k = 0; k < n; ++k) {
        int r = k;
        while (r < n && m[r][k] == 0) ++r;
        if (r == n) return false;
        std::swap(m[k], m[r]);
        const Rational pivot = m[k][k];
        for (int j = 0; j < 2 * n; ++j) m[k][j] /= pivot;
        for (int i = 0; i < n; ++i) {
            if (i == k || m[i][k] == 0) continue;
            const Rational f = m[i][k];
            for (int j = 0; j < 2 * n; ++j) m[i][j] -= f * m[k][j];
        }
    }
    adj.assign(n, std::vector<Int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rational scaled = m[i][n + j] * det;
            if (!is_integer(scaled)) return false;
            adj[i][j] = numerator(scaled);
        }
    return true;
}

}  // namespace detail

/// The symmetric pairing matrix of a plumbing graph together with its
/// exact determinant and inverse. The inverse is held as adjugate/det so
/// that pairings stay in integer arithmetic until the final division.
class IntersectionForm {
public:
    static IntersectionForm of(const PlumbingGraph& g) {
        IntersectionForm f;
        f.q_ = intersection_matrix_of(g);
        f.det_ = determinant(f.q_);
        if (f.det_ == 0) throw SingularForm("intersection form is singular (det Q = 0)");
        const int n = g.size();
        IntMatrix diag, right;
        bool ok = detail::montante_inverse(f.q_, diag, right);
        if (ok) {
            // adj[i][j] = right[i][j] * det / diag[i]; exact by construction,
            // re-verified below.
            f.adj_.assign(n, std::vector<Int>(n));
            for (int i = 0; i < n && ok; ++i) {
                if (diag[i][0] == 0) {
                    ok = false;
                    break;
                }
                for (int j = 0; j < n; ++j) {
                    Int num = right[i][j] * f.det_;
                    if (num % diag[i][0] != 0) {
                        ok = false;
                        break;
                    }
                    f.adj_[i][j] = num / diag[i][0];
                }
            }
        }
        if (ok) ok = f.verify_inverse();
        if (!ok) {
            if (!detail::rational_adjugate(f.q_, f.det_, f.adj_) || !f.verify_inverse())
                throw SingularForm("intersection form could not be inverted exactly");
        }
        return f;
    }

    int size() const { return static_cast<int>(q_.size()); }
    const IntMatrix& matrix() const { return q_; }
    const Int& q(int i, int j) const { return q_[i - 1][j - 1]; }
    const Int& det() const { return det_; }

    /// Entry (i,j) of Q^{-1} as an exact rational.
    Rational inverse(int i, int j) const { return make_rational(adj_[i - 1][j - 1], det_); }

    /// a^T Q^{-1} b, computed in integers with a single division at the end.
    Rational pair_inverse(const std::vector<Int>& a, const std::vector<Int>& b) const {
        const int n = size();
        if (static_cast<int>(a.size()) != n || static_cast<int>(b.size()) != n)
            throw LengthMismatch("vector length does not match form size");
        Int acc = 0;
        for (int i = 0; i < n; ++i) {
            Int row = 0;
            for (int j = 0; j < n; ++j) row += adj_[i][j] * b[j];
            acc += a[i] * row;
        }
        return make_rational(std::move(acc), det_);
    }

    /// Q * Q^{-1} == identity, exactly. Always true for a constructed form;
    /// exposed so test mode can assert it across the corpus.
    bool verify_inverse() const {
        const int n = size();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Int acc = 0;
                for (int k = 0; k < n; ++k) acc += q_[i][k] * adj_[k][j];
                if (acc != (i == j ? det_ : Int(0))) return false;
            }
        return true;
    }

private:
    IntMatrix q_;
    Int det_ = 0;
    IntMatrix adj_;  // adjugate: Q^{-1} = adj / det
};

inline IntersectionForm intersection_matrix(const PlumbingGraph& g) {
    return IntersectionForm::of(g);
}

struct DefinitenessReport {
    bool negative_definite = false;
    std::optional<int> first_violation;  // 1-based index of the first bad minor
    std::vector<Int> minors;
};

/// Sign test on leading principal minors: negative definite iff
/// (-1)^k d_k > 0 for every k.
inline DefinitenessReport is_negative_definite(const PlumbingGraph& g) {
    DefinitenessReport r;
    r.minors = leading_principal_minors(intersection_matrix_of(g));
    for (int k = 1; k <= static_cast<int>(r.minors.size()); ++k) {
        const Int& d = r.minors[k - 1];
        const bool ok = (k % 2 == 1) ? d < 0 : d > 0;
        if (!ok) {
            r.first_violation = k;
            return r;
        }
    }
    // A short minor list means elimination stopped at a zero minor, which
    // the sign test above already rejected.
    r.negative_definite = static_cast<int>(r.minors.size()) == g.size();
    return r;
}

/// Vertices with degree exceeding -weight, in index order.
inline std::vector<int> bad_vertices(const PlumbingGraph& g) {
    std::vector<int> out;
    for (int v = 1; v <= g.size(); ++v)
        if (Int(g.degree(v)) > -g.weight(v)) out.push_back(v);
    return out;
}

}  // namespace hfp
