#pragma once

// Generators for the Sigma(2,3,6n+1) plumbings and the linear A_s chains,
// together with their known basic vectors and push certificates. The
// certificates are data, not trusted facts: every generated sequence is
// validated by the replay engines in the test suite, so a wrong closed
// form cannot survive.

#include <vector>

#include <hfp/charvec.hpp>
#include <hfp/kplus.hpp>

namespace hfp {

struct FamilyInstance {
    int n = 0;
    PlumbingGraph graph;
    std::vector<CharVector> basics;  // K_1, ..., K_{n+1}
    CharVector target;               // L = (-3,2,5,1,0,...,0)
};

/// The Sigma(2,3,6n+1) plumbing: central vertex of weight -1 with legs
/// -2, -3 and -7, the -7 continuing into a -2 chain of length n-1.
/// Vertex numbering: 1 = center, 2 = -2, 3 = -3, 4 = -7, 5..n+3 = chain.
inline FamilyInstance sigma_2_3(int n) {
    if (n < 1) throw InvalidN("family index must be >= 1, got " + std::to_string(n));
    const int s = n + 3;
    std::vector<Int> weights{-1, -2, -3, -7};
    std::vector<Edge> edges{{1, 2}, {1, 3}, {1, 4}};
    for (int v = 5; v <= s; ++v) {
        weights.push_back(-2);
        edges.push_back({v - 1, v});
    }

    FamilyInstance f{n, PlumbingGraph(std::move(weights), std::move(edges)), {}, {}};

    auto base = [s](Int fourth) {
        std::vector<Int> e(s, 0);
        e[0] = 1;
        e[2] = -1;
        e[3] = fourth;
        return e;
    };
    f.basics.push_back(CharVector(base(-5)));  // K_1
    f.basics.push_back(CharVector(base(-3)));  // K_2
    for (int j = 3; j <= n + 1; ++j) {         // K_j carries a 2 at coordinate j+2
        auto e = base(-5);
        e[j + 1] = 2;
        f.basics.push_back(CharVector(std::move(e)));
    }

    std::vector<Int> l(s, 0);
    l[0] = -3;
    l[1] = 2;
    l[2] = 5;
    l[3] = 1;
    f.target = CharVector(std::move(l));
    return f;
}

/// Linear graph with s vertices, all of weight -2.
inline PlumbingGraph a_chain(int s) {
    if (s < 1) throw InvalidN("chain length must be >= 1, got " + std::to_string(s));
    std::vector<Int> weights(s, -2);
    std::vector<Edge> edges;
    for (int v = 2; v <= s; ++v) edges.push_back({v - 1, v});
    return PlumbingGraph(std::move(weights), std::move(edges));
}

/// Good full path for K_i on Sigma(2,3,6n+1). K_1 and K_2 use the core
/// 1,2,1,3,1,2,1; K_j (j >= 3) continues with descending windows that
/// walk the chain coordinate out to the end: block k runs from j+1+k down
/// to k+4, for k = 1..n+2-j.
inline std::vector<int> good_path_certificate(int n, int i) {
    if (n < 1) throw InvalidN("family index must be >= 1, got " + std::to_string(n));
    if (i < 1 || i > n + 1)
        throw InvalidIndex("basic vector index must be in 1.." + std::to_string(n + 1) +
                           ", got " + std::to_string(i));
    std::vector<int> out{1, 2, 1, 3, 1, 2, 1};
    if (i >= 3)
        for (int k = 1; k <= n + 2 - i; ++k)
            for (int v = i + 1 + k; v >= k + 4; --v) out.push_back(v);
    return out;
}

/// Move list taking (1, K_i) to (0, L) with every level in {0, 1}.
/// Structure: a common prelude lowers K_i to the shape the connector
/// blocks C_k act on; each C_k shifts the chain 2 one vertex outward;
/// the closing block B_n funnels through (1, K_1) into L.
inline std::vector<int> u_chain_certificate(int n, int i) {
    if (n < 1) throw InvalidN("family index must be >= 1, got " + std::to_string(n));
    if (i < 1 || i > n + 1)
        throw InvalidIndex("basic vector index must be in 1.." + std::to_string(n + 1) +
                           ", got " + std::to_string(i));
    if (i == 1) return {1, 1, 2, 1};
    std::vector<int> out{1, 1, 2, 1, 2, 3, 1};
    for (int k = i - 1; k <= n - 1; ++k) {  // C_k
        for (int v : {1, 2, 3, 1, 4, 1, 2, 1, 3, 1, 2, 1}) out.push_back(v);
        for (int v = 5; v <= 3 + k; ++v) out.push_back(v);
    }
    // B_n
    for (int v : {1, 2, 3, 1, 4, 1, 2, 1}) out.push_back(v);
    for (int v = 5; v <= n + 3; ++v) out.push_back(v);
    out.push_back(1);
    return out;
}

}  // namespace hfp
