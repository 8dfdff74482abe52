#pragma once

// Equivalence classes of pairs (u, K) in Z^{>=0} x Char(G) under the
// elementary moves (m, K) ~ (m + n, K + 2PD[v]), 2n = K.v + v.v, with
// both levels nonnegative. Class equality is decided by breadth-first
// connectivity inside a bounded coordinate box, never by normal-form
// reduction: a class can have box-violating level-0 representatives, so
// normalization through the candidate box is unsafe.

#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <hfp/fullpath.hpp>

namespace hfp {

struct KState {
    Int u;  // U-level, >= 0
    CharVector xi;

    bool operator==(const KState& o) const { return u == o.u && xi == o.xi; }
    bool operator<(const KState& o) const {
        if (u != o.u) return u < o.u;
        return xi < o.xi;
    }
};

inline std::string format_kstate(const KState& s) {
    return "(" + s.u.str() + ", " + format_char_vector(s.xi) + ")";
}

struct ExplorationParams {
    int slack = 4;        // box half-width beyond the candidate box, in steps of 2
    int level_cap = 32;
    std::uint64_t state_cap = 10'000'000;
    bool check_gradings = true;  // recompute K.K per visited state and compare
};

/// h(u, K) = 2u - (K.K + s)/4. Constant along every legal move.
inline Rational grading(const IntersectionForm& form, const KState& s) {
    return 2 * Rational(s.u) - (square(form, s.xi) + form.size()) / 4;
}

inline bool in_box(const PlumbingGraph& g, const CharVector& xi, int slack) {
    for (int v = 1; v <= g.size(); ++v) {
        const Int& m = g.weight(v);
        if (xi.at(v) < m - 2 * slack || xi.at(v) > -m + 2 * slack) return false;
    }
    return true;
}

struct NeighborMoves {
    std::vector<KState> states;
    bool pruned_box = false;
    bool pruned_level = false;
};

namespace detail {

// Emits every legal move out of (u, xi); moves landing outside the box or
// above the level cap are reported through the callback's prune flags.
// square_delta is the exact change of K.K along the move.
template <class Emit>
void for_each_move(const PlumbingGraph& g, const KState& s, const ExplorationParams& p,
                   bool& pruned_box, bool& pruned_level, Emit&& emit) {
    for (int v = 1; v <= g.size(); ++v) {
        const Int& m = g.weight(v);
        {  // forward: (u + n, K + 2PD[v])
            Int n = (s.xi.at(v) + m) / 2;
            Int u2 = s.u + n;
            if (u2 >= 0) {
                if (u2 > p.level_cap) {
                    pruned_level = true;
                } else {
                    CharVector target = push(g, s.xi, v).vec;
                    if (!in_box(g, target, p.slack))
                        pruned_box = true;
                    else
                        emit(KState{std::move(u2), std::move(target)},
                             Int(4 * (s.xi.at(v) + m)));
                }
            }
        }
        {  // reverse: (u - n', K - 2PD[v]) with 2n' = (K - 2PD[v]).v + v.v
            Int n = (s.xi.at(v) - m) / 2;
            Int u2 = s.u - n;
            if (u2 >= 0) {
                if (u2 > p.level_cap) {
                    pruned_level = true;
                } else {
                    CharVector target = pull(g, s.xi, v);
                    if (!in_box(g, target, p.slack))
                        pruned_box = true;
                    else
                        emit(KState{std::move(u2), std::move(target)},
                             Int(-4 * (s.xi.at(v) - m)));
                }
            }
        }
    }
}

class UnionFind {
public:
    std::size_t add() {
        parent_.push_back(parent_.size());
        size_.push_back(1);
        return parent_.size() - 1;
    }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

}  // namespace detail

/// Legal moves out of a state under the box and level bounds.
inline NeighborMoves neighbors(const PlumbingGraph& g, const KState& s,
                               const ExplorationParams& p) {
    NeighborMoves out;
    detail::for_each_move(g, s, p, out.pruned_box, out.pruned_level,
                          [&](KState&& target, Int&&) { out.states.push_back(target); });
    return out;
}

struct ExploreResult {
    std::vector<std::size_t> seed_component;  // dense ids, numbered by first seed
    std::size_t component_count = 0;          // distinct components among seeds
    std::uint64_t visited_states = 0;
    bool truncated_by_box = false;
    bool truncated_by_level = false;
};

/// Breadth-first closure of the seeds under elementary moves, with a
/// union-find over visited states. Single-threaded and fully ordered, so
/// results are reproducible bit for bit.
inline ExploreResult explore(const PlumbingGraph& g, const IntersectionForm& form,
                             const std::vector<KState>& seeds,
                             const ExplorationParams& p) {
    ExploreResult result;
    std::map<KState, std::size_t> ids;
    std::deque<std::size_t> frontier;
    std::vector<const KState*> states;
    std::vector<Rational> squares;  // K.K per state, propagated along moves
    detail::UnionFind dsu;

    auto intern = [&](const KState& s, const Rational& sq) {
        auto [it, inserted] = ids.emplace(s, states.size());
        if (inserted) {
            if (states.size() >= p.state_cap)
                throw StateCapExceeded("exploration exceeded state cap " +
                                       std::to_string(p.state_cap));
            states.push_back(&it->first);
            squares.push_back(sq);
            dsu.add();
            frontier.push_back(it->second);
        }
        return it->second;
    };

    std::vector<std::size_t> seed_ids;
    for (const auto& s : seeds) {
        if (s.u < 0 || s.u > p.level_cap || !in_box(g, s.xi, p.slack))
            throw Error("seed " + format_kstate(s) + " is outside the exploration box");
        seed_ids.push_back(intern(s, square(form, s.xi)));
    }

    while (!frontier.empty()) {
        const std::size_t id = frontier.front();
        frontier.pop_front();
        const KState state = *states[id];
        const Rational sq = squares[id];
        detail::for_each_move(
            g, state, p, result.truncated_by_box, result.truncated_by_level,
            [&](KState&& target, Int&& delta) {
                const std::size_t tid = intern(target, sq + delta);
                // Grading is forced to be constant along the move by the
                // square delta; verify the stored value agrees when the
                // state was reached along a different route.
                if (squares[tid] != sq + delta)
                    throw GradingMismatch("grading not constant along move from " +
                                          format_kstate(state));
                dsu.unite(id, tid);
            });
    }

    if (p.check_gradings) {
        for (std::size_t i = 0; i < states.size(); ++i)
            if (square(form, states[i]->xi) != squares[i])
                throw GradingMismatch("propagated square disagrees with exact square at " +
                                      format_kstate(*states[i]));
    }

    result.visited_states = states.size();
    std::map<std::size_t, std::size_t> dense;
    for (std::size_t sid : seed_ids) {
        const std::size_t root = dsu.find(sid);
        auto [it, inserted] = dense.emplace(root, dense.size());
        result.seed_component.push_back(it->second);
    }
    result.component_count = dense.size();
    return result;
}

struct ClassCountResult {
    std::vector<std::uint64_t> counts;  // c(0), ..., c(M)
    int stabilization_level = 0;        // M, first level with c(M) = 1
    Rational h0;                        // common grading of the level-0 classes
    bool truncated_by_box = false;
    bool truncated_by_level = false;
};

/// Component counts c(m) of the seed families {(m, K_i)} for m = 0, 1, ...
/// until the first level with a single component. Classes only ever merge
/// as the level rises, so the first such level is the stabilization level.
inline ClassCountResult class_counts(const PlumbingGraph& g, const IntersectionForm& form,
                                     const std::vector<CharVector>& basics,
                                     const ExplorationParams& p) {
    if (basics.empty()) throw Error("no basic vectors supplied");
    ClassCountResult out;
    out.h0 = grading(form, KState{0, basics.front()});
    for (const auto& b : basics) {
        const Rational h = grading(form, KState{0, b});
        if (h != out.h0)
            throw GradingMismatch("level-0 classes have unequal gradings " +
                                  to_string(out.h0) + " and " + to_string(h));
    }
    for (int m = 0; m <= p.level_cap; ++m) {
        std::vector<KState> seeds;
        seeds.reserve(basics.size());
        for (const auto& b : basics) seeds.push_back(KState{m, b});
        const ExploreResult r = explore(g, form, seeds, p);
        out.truncated_by_box |= r.truncated_by_box;
        out.truncated_by_level |= r.truncated_by_level;
        out.counts.push_back(r.component_count);
        if (m == 0 && r.component_count != basics.size())
            throw Error("basic vectors merged at level 0; this contradicts "
                        "uniqueness of depth-0 representatives");
        if (r.component_count == 1) {
            out.stabilization_level = m;
            return out;
        }
    }
    throw NotStabilized("class counts did not reach 1 below level cap " +
                        std::to_string(p.level_cap) + "; raise --max-level");
}

struct HFDecomposition {
    Rational d;                                            // tower bottom grading
    std::vector<std::pair<Rational, std::uint64_t>> reduced;  // (grading, rank), rank > 0
    std::vector<std::uint64_t> class_counts;               // c(0), ..., c(M)
    int stabilization_level = 0;

    /// "T+_0 (+) Z^1_(0)" style rendering.
    std::string render() const {
        std::string out = "T+_" + to_string(d);
        for (const auto& [g, r] : reduced)
            out += " (+) Z^" + std::to_string(r) + "_(" + to_string(g) + ")";
        return out;
    }
};

/// Assembles the decomposition from the class counts: the tower starts at
/// the common level-0 grading d, and level m contributes reduced rank
/// c(m) - 1 in grading d + 2m.
inline HFDecomposition assemble_decomposition(const ClassCountResult& cc) {
    HFDecomposition out;
    out.d = cc.h0;
    out.class_counts = cc.counts;
    out.stabilization_level = cc.stabilization_level;
    for (int m = 0; m < cc.stabilization_level; ++m)
        if (cc.counts[m] > 1) out.reduced.emplace_back(cc.h0 + 2 * m, cc.counts[m] - 1);
    return out;
}

/// Full pipeline on a verified graph: enumerate basics, count classes,
/// assemble. Preconditions (negative definite, at most one bad vertex,
/// unimodular form) are the caller's contract; violations still compute
/// but carry no meaning.
inline HFDecomposition hf_decomposition(const PlumbingGraph& g, const IntersectionForm& form,
                                        const ExplorationParams& p = {},
                                        const PathParams& pp = {}, int jobs = 1) {
    const std::vector<BasicVector> basics = basic_vectors(g, form, pp, jobs);
    std::vector<CharVector> vecs;
    vecs.reserve(basics.size());
    for (const auto& b : basics) vecs.push_back(b.vec);
    return assemble_decomposition(class_counts(g, form, vecs, p));
}

/// Replays a move list (vertex indices; moves may change level) from a
/// state, returning the whole trajectory including the start. Throws if
/// any move would take the level below zero.
inline std::vector<KState> replay_moves(const PlumbingGraph& g, const KState& start,
                                        const std::vector<int>& moves) {
    std::vector<KState> traj{start};
    std::size_t step = 0;
    for (int v : moves) {
        ++step;
        if (v < 1 || v > g.size())
            throw IndexOutOfRange("vertex " + std::to_string(v) + " out of range");
        const KState& cur = traj.back();
        PushResult r = push(g, cur.xi, v);
        Int u2 = cur.u + r.level_delta;
        if (u2 < 0)
            throw IllegalPush(step, v, "move drops level below zero");
        traj.push_back(KState{std::move(u2), std::move(r.vec)});
    }
    return traj;
}

}  // namespace hfp
