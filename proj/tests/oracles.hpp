#pragma once

// Test-side oracles, independent of the library's computation paths:
// a permutation-sum determinant, a grid search for definiteness, a
// rational linear solve for squares, and the shared test corpus.

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <hfp/hfp.hpp>

namespace oracle {

using hfp::CharVector;
using hfp::Int;
using hfp::IntMatrix;
using hfp::PlumbingGraph;
using hfp::Rational;

/// Leibniz formula: sum over all permutations. Exponential, fine for s <= 6.
inline Int leibniz_determinant(const IntMatrix& m) {
    const int n = static_cast<int>(m.size());
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Int det = 0;
    do {
        Int term = 1;
        for (int i = 0; i < n; ++i) term *= m[i][perm[i]];
        // Sign by counting inversions.
        int inversions = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inversions;
        det += (inversions % 2 == 0) ? term : Int(-term);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

/// x^T Q x < 0 for every nonzero integer x with |x_i| <= bound.
inline bool grid_negative_definite(const IntMatrix& q, int bound = 3) {
    const int n = static_cast<int>(q.size());
    std::vector<int> x(n, -bound);
    for (;;) {
        bool zero = std::all_of(x.begin(), x.end(), [](int v) { return v == 0; });
        if (!zero) {
            Int val = 0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) val += Int(x[i]) * q[i][j] * x[j];
            if (val >= 0) return false;
        }
        int i = n - 1;
        while (i >= 0 && x[i] == bound) x[i--] = -bound;
        if (i < 0) return true;
        ++x[i];
    }
}

/// Solves Q x = xi by rational Gaussian elimination and returns xi . x,
/// an independent route to K.K that never touches the library's inverse.
inline Rational square_by_solve(const IntMatrix& q, const CharVector& xi) {
    const int n = static_cast<int>(q.size());
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) m[i][j] = q[i][j];
        m[i][n] = xi.evals[i];
    }
    for (int k = 0; k < n; ++k) {
        int r = k;
        while (m[r][k] == 0) ++r;  // Q is invertible in every test that calls this
        std::swap(m[k], m[r]);
        for (int i = 0; i < n; ++i) {
            if (i == k || m[i][k] == 0) continue;
            const Rational f = m[i][k] / m[k][k];
            for (int j = k; j <= n; ++j) m[i][j] -= f * m[k][j];
        }
    }
    Rational acc = 0;
    for (int i = 0; i < n; ++i) acc += Rational(xi.evals[i]) * (m[i][n] / m[i][i]);
    return acc;
}

/// Minors of the A_s chain via the recurrence d_k = -2 d_{k-1} - d_{k-2}.
inline std::vector<Int> chain_minors(int s) {
    std::vector<Int> d;
    Int prev2 = 1, prev1 = -2;
    d.push_back(prev1);
    for (int k = 2; k <= s; ++k) {
        Int cur = -2 * prev1 - prev2;
        d.push_back(cur);
        prev2 = prev1;
        prev1 = cur;
    }
    return d;
}

/// Star plumbing of Sigma(2,3,5): central -2 vertex with -2 legs of
/// lengths 1, 2 and 4. Unimodular, one bad vertex, a single basic vector.
inline PlumbingGraph e8_graph() {
    return PlumbingGraph(std::vector<Int>(8, -2),
                         {{1, 2}, {1, 3}, {3, 4}, {1, 5}, {5, 6}, {6, 7}, {7, 8}});
}

struct CorpusEntry {
    std::string name;
    PlumbingGraph graph;
};

/// Small graphs (s <= 6) for exhaustive properties.
inline std::vector<CorpusEntry> small_corpus() {
    std::vector<CorpusEntry> out;
    for (int s = 1; s <= 6; ++s)
        out.push_back({"A_" + std::to_string(s), hfp::a_chain(s)});
    for (int n = 1; n <= 3; ++n)
        out.push_back({"sigma(2,3," + std::to_string(6 * n + 1) + ")",
                       hfp::sigma_2_3(n).graph});
    return out;
}

/// Everything the regression suite runs over.
inline std::vector<CorpusEntry> full_corpus() {
    auto out = small_corpus();
    for (int s = 7; s <= 8; ++s)
        out.push_back({"A_" + std::to_string(s), hfp::a_chain(s)});
    for (int n = 4; n <= 10; ++n)
        out.push_back({"sigma(2,3," + std::to_string(6 * n + 1) + ")",
                       hfp::sigma_2_3(n).graph});
    out.push_back({"E8", e8_graph()});
    return out;
}

}  // namespace oracle
