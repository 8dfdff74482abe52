#pragma once

// The full-path engine. Starting from a vector in the candidate box,
// pushes are applied at vertices sitting exactly at -m_v until either
// some coordinate overshoots (-K can no longer enter the box: bad) or
// the negation lands in the box (good). Which eligible vertex is pushed
// does not change the outcome, so the engine uses the smallest index and
// stays deterministic.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <hfp/charvec.hpp>

namespace hfp {

enum class Verdict { Good, Bad, Incomplete };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Good: return "good";
        case Verdict::Bad: return "bad";
        default: return "incomplete";
    }
}

struct Violation {
    std::size_t step;  // number of pushes applied when the overshoot appeared
    int vertex;        // smallest coordinate with K.v > -v.v
};

struct PathOutcome {
    Verdict verdict = Verdict::Incomplete;
    std::vector<int> pushes;        // 1-based vertex indices, in order
    CharVector final_vector;        // terminal vector on Good, last vector otherwise
    std::optional<Violation> violation;  // set exactly on Bad
};

struct PathParams {
    Int step_limit = 0;  // 0 = default guard 16 * s * max|m|^2
};

inline Int default_step_limit(const PlumbingGraph& g) {
    Int m = 0;
    for (int v = 1; v <= g.size(); ++v) m = std::max(m, Int(abs(g.weight(v))));
    return 16 * g.size() * m * m;
}

inline int first_overshoot(const PlumbingGraph& g, const CharVector& xi) {
    for (int v = 1; v <= g.size(); ++v)
        if (xi.at(v) > -g.weight(v)) return v;
    return 0;
}

/// Full path with a pluggable tie-break rule; `pick` receives the list of
/// eligible vertices (those sitting at -m_v) and returns one of them.
/// Termination is guaranteed on negative-definite forms; the step guard
/// turns anything else into a clean error.
template <class Chooser>
PathOutcome classify_with(const PlumbingGraph& g, const CharVector& start,
                          const PathParams& params, Chooser&& pick) {
    const Int limit = params.step_limit != 0 ? params.step_limit : default_step_limit(g);
    PathOutcome out;
    out.final_vector = start;
    std::vector<int> eligible;
    for (Int step = 0;; ++step) {
        if (step > limit)
            throw StepLimitExceeded("full path exceeded " + limit.str() +
                                    " steps; form is probably not negative definite");
        // Overshoot beats eligibility: a vector that overshoots anywhere is
        // bad even if another coordinate could still be pushed.
        if (int v = first_overshoot(g, out.final_vector); v != 0) {
            out.verdict = Verdict::Bad;
            out.violation = Violation{out.pushes.size(), v};
            return out;
        }
        if (satisfies_terminal(g, out.final_vector)) {
            out.verdict = Verdict::Good;
            return out;
        }
        eligible.clear();
        for (int v = 1; v <= g.size(); ++v)
            if (out.final_vector.at(v) == -g.weight(v)) eligible.push_back(v);
        // Parity leaves no other case: not terminal and no overshoot forces
        // some coordinate to sit exactly at -m_v.
        const int v = pick(static_cast<const std::vector<int>&>(eligible));
        out.final_vector = push(g, out.final_vector, v).vec;
        out.pushes.push_back(v);
    }
}

/// Deterministic classification (smallest eligible vertex).
inline PathOutcome classify(const PlumbingGraph& g, const CharVector& start,
                            const PathParams& params = {}) {
    if (!satisfies_cond13(g, start))
        throw MalformedInput("start vector " + format_char_vector(start) +
                             " is outside the candidate box");
    return classify_with(g, start, params,
                         [](const std::vector<int>& eligible) { return eligible.front(); });
}

/// Replays an externally supplied push list from any characteristic
/// vector. Every listed push must be legal when reached (coordinate at
/// -m_v), else IllegalPush. Overshoots are permanent, so the first one
/// decides the Bad verdict even if later pushes remain legal.
inline PathOutcome replay_certificate(const PlumbingGraph& g, const CharVector& start,
                                      const std::vector<int>& pushes,
                                      const PathParams& = {}) {
    require_length(g, start);
    PathOutcome out;
    out.final_vector = start;
    if (int v = first_overshoot(g, out.final_vector); v != 0)
        out.violation = Violation{0, v};
    std::size_t step = 0;
    for (int v : pushes) {
        ++step;
        if (v < 1 || v > g.size())
            throw IndexOutOfRange("vertex " + std::to_string(v) + " out of range");
        if (out.final_vector.at(v) != -g.weight(v))
            throw IllegalPush(step, v,
                              "coordinate is " + out.final_vector.at(v).str() +
                                  ", expected " + Int(-g.weight(v)).str());
        out.final_vector = push(g, out.final_vector, v).vec;
        out.pushes.push_back(v);
        if (!out.violation)
            if (int w = first_overshoot(g, out.final_vector); w != 0)
                out.violation = Violation{step, w};
    }
    if (out.violation)
        out.verdict = Verdict::Bad;
    else if (satisfies_terminal(g, out.final_vector))
        out.verdict = Verdict::Good;
    else
        out.verdict = Verdict::Incomplete;
    return out;
}

struct BasicVector {
    CharVector vec;
    Rational length;  // renormalized length (K.K + s) / 4

    bool operator==(const BasicVector&) const = default;
};

namespace detail {

inline void classify_range(const PlumbingGraph& g, const Cond13Box& box,
                           const PathParams& params, Int begin, Int end,
                           std::vector<CharVector>& found) {
    box.for_each(begin, end, [&](const CharVector& cand) {
        if (classify_with(g, cand, params,
                          [](const std::vector<int>& e) { return e.front(); })
                .verdict == Verdict::Good)
            found.push_back(cand);
    });
}

}  // namespace detail

/// All vectors of the candidate box that support a good full path, in
/// enumeration order, each with its renormalized length. `jobs` splits
/// the box into contiguous index ranges; the merge is by range order, so
/// the result is identical for any job count.
inline std::vector<BasicVector> basic_vectors(const PlumbingGraph& g,
                                              const IntersectionForm& form,
                                              const PathParams& params = {},
                                              int jobs = 1) {
    const Cond13Box box(g);
    std::vector<std::vector<CharVector>> chunks;
    if (jobs <= 1 || box.size() < 2 * jobs) {
        chunks.resize(1);
        detail::classify_range(g, box, params, 0, box.size(), chunks[0]);
    } else {
        chunks.resize(jobs);
        std::vector<std::thread> workers;
        workers.reserve(jobs);
        for (int t = 0; t < jobs; ++t) {
            Int begin = box.size() * t / jobs;
            Int end = box.size() * (t + 1) / jobs;
            workers.emplace_back([&, t, begin, end] {
                detail::classify_range(g, box, params, begin, end, chunks[t]);
            });
        }
        for (auto& w : workers) w.join();
    }
    std::vector<BasicVector> out;
    for (auto& chunk : chunks)
        for (auto& vec : chunk) {
            Rational len = renormalized_length(form, vec);
            out.push_back(BasicVector{std::move(vec), std::move(len)});
        }
    return out;
}

}  // namespace hfp
