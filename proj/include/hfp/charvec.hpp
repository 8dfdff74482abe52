#pragma once

// Characteristic vectors in evaluation coordinates: a vector K is stored
// as the tuple (K.v_1, ..., K.v_s). All geometry goes through the
// intersection form; nothing here ever leaves evaluation coordinates.

#include <cctype>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <hfp/plumbing.hpp>

namespace hfp {

struct CharVector {
    std::vector<Int> evals;  // evals[v-1] = K.v_v

    CharVector() = default;
    explicit CharVector(std::vector<Int> e) : evals(std::move(e)) {}

    int size() const { return static_cast<int>(evals.size()); }
    const Int& at(int v) const { return evals[v - 1]; }
    Int& at(int v) { return evals[v - 1]; }

    bool operator==(const CharVector& o) const { return evals == o.evals; }
    bool operator<(const CharVector& o) const { return evals < o.evals; }
};

/// Canonical text syntax: "(1,0,-1,-5)".
inline std::string format_char_vector(const CharVector& xi) {
    std::string out = "(";
    for (int v = 1; v <= xi.size(); ++v) {
        if (v > 1) out += ",";
        out += xi.at(v).str();
    }
    return out + ")";
}

/// Parses the canonical syntax; whitespace is tolerated anywhere.
inline CharVector parse_char_vector(const std::string& text) {
    std::string compact;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
    if (compact.size() < 2 || compact.front() != '(' || compact.back() != ')')
        throw MalformedInput("vector must look like (1,0,-1,-5): " + text);
    std::vector<Int> evals;
    std::string body = compact.substr(1, compact.size() - 2);
    if (!body.empty()) {
        std::size_t pos = 0;
        while (pos <= body.size()) {
            std::size_t comma = body.find(',', pos);
            std::string tok = body.substr(pos, comma == std::string::npos ? std::string::npos
                                                                          : comma - pos);
            if (tok.empty() || tok.find_first_not_of("+-0123456789") != std::string::npos ||
                tok.find_first_of("0123456789") == std::string::npos)
                throw MalformedInput("bad integer '" + tok + "' in vector " + text);
            evals.emplace_back(tok);
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    }
    return CharVector(std::move(evals));
}

inline void require_length(const PlumbingGraph& g, const CharVector& xi) {
    if (xi.size() != g.size())
        throw LengthMismatch("vector has " + std::to_string(xi.size()) +
                             " coordinates, graph has " + std::to_string(g.size()));
}

/// Parity test: K.v_i = v_i.v_i (mod 2) at every coordinate.
inline bool is_characteristic(const PlumbingGraph& g, const CharVector& xi) {
    require_length(g, xi);
    for (int v = 1; v <= g.size(); ++v)
        if ((xi.at(v) - g.weight(v)) % 2 != 0) return false;
    return true;
}

/// The candidate box: m_i + 2 <= K.v_i <= -m_i for all i.
inline bool satisfies_cond13(const PlumbingGraph& g, const CharVector& xi) {
    require_length(g, xi);
    for (int v = 1; v <= g.size(); ++v) {
        const Int& m = g.weight(v);
        if (xi.at(v) < m + 2 || xi.at(v) > -m) return false;
    }
    return true;
}

/// True iff -K lies in the candidate box: m_i <= K.v_i <= -m_i - 2.
inline bool satisfies_terminal(const PlumbingGraph& g, const CharVector& xi) {
    require_length(g, xi);
    for (int v = 1; v <= g.size(); ++v) {
        const Int& m = g.weight(v);
        if (xi.at(v) < m || xi.at(v) > -m - 2) return false;
    }
    return true;
}

struct PushResult {
    CharVector vec;
    Int level_delta;  // n with K.v + v.v = 2n, evaluated before the push
};

/// The elementary move K -> K + 2PD[v] in evaluation coordinates:
/// coordinate v gains 2m_v, each neighbor gains 2.
inline PushResult push(const PlumbingGraph& g, const CharVector& xi, int v) {
    require_length(g, xi);
    if (v < 1 || v > g.size())
        throw IndexOutOfRange("vertex " + std::to_string(v) + " out of range");
    PushResult r{xi, (xi.at(v) + g.weight(v)) / 2};
    r.vec.at(v) += 2 * g.weight(v);
    for (int w : g.neighbors(v)) r.vec.at(w) += 2;
    return r;
}

/// Inverse move K -> K - 2PD[v].
inline CharVector pull(const PlumbingGraph& g, const CharVector& xi, int v) {
    require_length(g, xi);
    if (v < 1 || v > g.size())
        throw IndexOutOfRange("vertex " + std::to_string(v) + " out of range");
    CharVector out = xi;
    out.at(v) -= 2 * g.weight(v);
    for (int w : g.neighbors(v)) out.at(w) -= 2;
    return out;
}

/// K.K = xi^T Q^{-1} xi, exact.
inline Rational square(const IntersectionForm& form, const CharVector& xi) {
    return form.pair_inverse(xi.evals, xi.evals);
}

/// (K.K + s) / 4, the renormalized length.
inline Rational renormalized_length(const IntersectionForm& form, const CharVector& xi) {
    return (square(form, xi) + form.size()) / 4;
}

/// Enumerates the candidate box in lexicographic order (coordinate 1 most
/// significant, values ascending). Random access by index makes the
/// stream splittable for parallel consumption.
class Cond13Box {
public:
    explicit Cond13Box(const PlumbingGraph& g) {
        total_ = 1;
        for (int v = 1; v <= g.size(); ++v) {
            low_.push_back(g.weight(v) + 2);
            radix_.push_back(-g.weight(v));
            if (radix_.back() <= 0) total_ = 0;
        }
        if (total_ != 0)
            for (const Int& r : radix_) total_ *= r;
    }

    const Int& size() const { return total_; }

    /// k-th vector, 0 <= k < size(), by mixed-radix decoding.
    CharVector at(Int k) const {
        const int s = static_cast<int>(radix_.size());
        std::vector<Int> evals(s);
        for (int i = s - 1; i >= 0; --i) {
            Int digit = k % radix_[i];
            k /= radix_[i];
            evals[i] = low_[i] + 2 * digit;
        }
        return CharVector(std::move(evals));
    }

    /// Applies f to every vector of the index range [begin, end) in order.
    template <class F>
    void for_each(Int begin, Int end, F&& f) const {
        if (begin >= end) return;
        CharVector cur = at(begin);
        for (Int k = begin;;) {
            f(static_cast<const CharVector&>(cur));
            if (++k >= end) break;
            advance(cur);
        }
    }

    template <class F>
    void for_each(F&& f) const {
        for_each(0, total_, std::forward<F>(f));
    }

private:
    // Odometer increment, last coordinate fastest.
    void advance(CharVector& xi) const {
        for (int i = static_cast<int>(radix_.size()) - 1; i >= 0; --i) {
            const Int top = low_[i] + 2 * (radix_[i] - 1);
            if (xi.evals[i] < top) {
                xi.evals[i] += 2;
                return;
            }
            xi.evals[i] = low_[i];
        }
    }

    std::vector<Int> low_;
    std::vector<Int> radix_;
    Int total_;
};

}  // namespace hfp
