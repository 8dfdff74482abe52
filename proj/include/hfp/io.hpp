#pragma once

// File formats: the two-section graph document, single-path certificate
// files, and the certificate bundles written by the family generator.
// Blank lines and '#' comments are allowed everywhere.

#include <fstream>
#include <istream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include <hfp/charvec.hpp>
#include <hfp/plumbing.hpp>

namespace hfp {

using json = nlohmann::json;

struct GraphDoc {
    std::vector<Int> weights;
    std::vector<Edge> edges;

    PlumbingGraph build() const { return PlumbingGraph(weights, edges); }
};

namespace detail {

inline std::string strip(const std::string& line) {
    std::string s = line.substr(0, line.find('#'));
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline Int parse_int(const std::string& tok, const std::string& source, int line) {
    if (tok.empty() || tok.find_first_not_of("+-0123456789") != std::string::npos ||
        tok.find_first_of("0123456789") == std::string::npos)
        throw ParseError(source, line, "expected an integer, got '" + tok + "'");
    return Int(tok);
}

}  // namespace detail

/// Text document with a `vertices:` line of weights and an `edges:`
/// section of one 1-based pair per line.
inline GraphDoc parse_graph_text(std::istream& in, const std::string& source) {
    GraphDoc doc;
    enum { Preamble, Vertices, Edges } section = Preamble;
    std::string raw;
    int lineno = 0;
    bool have_vertices = false;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = detail::strip(raw);
        if (line.empty()) continue;
        if (line.rfind("vertices:", 0) == 0) {
            section = Vertices;
            have_vertices = true;
            line = detail::strip(line.substr(9));
            if (line.empty()) continue;
        } else if (line.rfind("edges:", 0) == 0) {
            if (!have_vertices)
                throw ParseError(source, lineno, "missing 'vertices:' section before 'edges:'");
            section = Edges;
            line = detail::strip(line.substr(6));
            if (line.empty()) continue;
        }
        std::istringstream toks(line);
        std::string tok;
        if (section == Vertices) {
            while (toks >> tok) doc.weights.push_back(detail::parse_int(tok, source, lineno));
        } else if (section == Edges) {
            std::vector<Int> pair;
            while (toks >> tok) pair.push_back(detail::parse_int(tok, source, lineno));
            if (pair.size() != 2)
                throw ParseError(source, lineno, "expected 'i j' edge pair");
            if (pair[0] < 1 || pair[1] < 1 || pair[0] > doc.weights.size() ||
                pair[1] > doc.weights.size())
                throw ParseError(source, lineno, "edge endpoint out of range");
            doc.edges.emplace_back(static_cast<int>(pair[0]), static_cast<int>(pair[1]));
        } else {
            throw ParseError(source, lineno, "expected 'vertices:' section first");
        }
    }
    if (!have_vertices) throw ParseError(source, lineno, "missing 'vertices:' section");
    return doc;
}

inline GraphDoc parse_graph_json(const std::string& content, const std::string& source) {
    json j;
    try {
        j = json::parse(content);
    } catch (const json::parse_error& e) {
        throw ParseError(source, 0, std::string("bad JSON: ") + e.what());
    }
    if (!j.contains("vertices") || !j.contains("edges"))
        throw ParseError(source, 0, "JSON graph needs 'vertices' and 'edges' fields");
    GraphDoc doc;
    for (const auto& w : j["vertices"]) {
        if (w.is_number_integer())
            doc.weights.push_back(Int(w.get<long long>()));
        else if (w.is_string())
            doc.weights.push_back(Int(w.get<std::string>()));
        else
            throw ParseError(source, 0, "vertex weight must be an integer");
    }
    for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() != 2)
            throw ParseError(source, 0, "edge must be a pair [i, j]");
        doc.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return doc;
}

/// Accepts either format; JSON is recognized by a leading '{'.
inline GraphDoc parse_graph(const std::string& content, const std::string& source) {
    for (char c : content) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c == '{') return parse_graph_json(content, source);
        break;
    }
    std::istringstream in(content);
    return parse_graph_text(in, source);
}

inline GraphDoc read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open graph file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_graph(buf.str(), path);
}

inline std::string emit_graph_text(const PlumbingGraph& g) {
    std::string out = "vertices:";
    for (const Int& w : g.weights()) out += " " + w.str();
    out += "\nedges:\n";
    for (const auto& [a, b] : g.edges())
        out += std::to_string(a) + " " + std::to_string(b) + "\n";
    return out;
}

inline json graph_to_json(const PlumbingGraph& g) {
    json j;
    j["vertices"] = json::array();
    for (const Int& w : g.weights()) {
        // Weights beyond 64 bits go out as strings; the parser takes both.
        if (w >= std::numeric_limits<long long>::min() &&
            w <= std::numeric_limits<long long>::max())
            j["vertices"].push_back(static_cast<long long>(w));
        else
            j["vertices"].push_back(w.str());
    }
    j["edges"] = json::array();
    for (const auto& [a, b] : g.edges()) j["edges"].push_back({a, b});
    return j;
}

/// A full-path certificate: a start vector plus the pushes to replay.
struct Certificate {
    CharVector start;
    std::vector<int> pushes;
};

inline Certificate parse_certificate(std::istream& in, const std::string& source) {
    Certificate cert;
    bool have_start = false, have_pushes = false;
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = detail::strip(raw);
        if (line.empty()) continue;
        if (line.rfind("start:", 0) == 0) {
            try {
                cert.start = parse_char_vector(line.substr(6));
            } catch (const MalformedInput& e) {
                throw ParseError(source, lineno, e.what());
            }
            have_start = true;
        } else if (line.rfind("pushes:", 0) == 0) {
            std::istringstream toks(line.substr(7));
            std::string tok;
            while (toks >> tok)
                cert.pushes.push_back(
                    static_cast<int>(detail::parse_int(tok, source, lineno)));
            have_pushes = true;
        } else {
            throw ParseError(source, lineno, "expected 'start:' or 'pushes:' line");
        }
    }
    if (!have_start) throw ParseError(source, lineno, "missing 'start:' line");
    if (!have_pushes) throw ParseError(source, lineno, "missing 'pushes:' line");
    return cert;
}

inline Certificate read_certificate_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open certificate file: " + path);
    return parse_certificate(in, path);
}

inline std::string emit_certificate(const Certificate& cert) {
    std::string out = "start: " + format_char_vector(cert.start) + "\npushes:";
    for (int v : cert.pushes) out += " " + std::to_string(v);
    return out + "\n";
}

/// One line of a family certificate bundle: either a good full path for
/// K_i or a U-chain of moves from (level, K_i).
struct BundleEntry {
    enum class Kind { Good, UChain };
    Kind kind = Kind::Good;
    int index = 0;  // i of K_i
    Int level = 0;  // starting level (U-chains start at 1)
    CharVector start;
    std::vector<int> moves;
};

inline std::string emit_bundle(const std::vector<BundleEntry>& entries) {
    std::string out;
    for (const auto& e : entries) {
        out += e.kind == BundleEntry::Kind::Good ? "good" : "uchain";
        out += " i=" + std::to_string(e.index);
        if (e.kind == BundleEntry::Kind::UChain) out += " level: " + e.level.str();
        out += " start: " + format_char_vector(e.start);
        out += e.kind == BundleEntry::Kind::Good ? " pushes:" : " moves:";
        for (int v : e.moves) out += " " + std::to_string(v);
        out += "\n";
    }
    return out;
}

inline std::vector<BundleEntry> parse_bundle(std::istream& in, const std::string& source) {
    std::vector<BundleEntry> entries;
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = detail::strip(raw);
        if (line.empty()) continue;
        BundleEntry e;
        std::istringstream toks(line);
        std::string kind, tok;
        toks >> kind;
        if (kind == "good")
            e.kind = BundleEntry::Kind::Good;
        else if (kind == "uchain")
            e.kind = BundleEntry::Kind::UChain;
        else
            throw ParseError(source, lineno, "expected 'good' or 'uchain', got '" + kind + "'");
        toks >> tok;
        if (tok.rfind("i=", 0) != 0)
            throw ParseError(source, lineno, "expected 'i=<index>'");
        e.index = static_cast<int>(detail::parse_int(tok.substr(2), source, lineno));
        toks >> tok;
        if (e.kind == BundleEntry::Kind::UChain) {
            if (tok != "level:") throw ParseError(source, lineno, "expected 'level:'");
            toks >> tok;
            e.level = detail::parse_int(tok, source, lineno);
            toks >> tok;
        }
        if (tok != "start:") throw ParseError(source, lineno, "expected 'start:'");
        toks >> tok;
        try {
            e.start = parse_char_vector(tok);
        } catch (const MalformedInput& ex) {
            throw ParseError(source, lineno, ex.what());
        }
        toks >> tok;
        const std::string wanted = e.kind == BundleEntry::Kind::Good ? "pushes:" : "moves:";
        if (tok != wanted) throw ParseError(source, lineno, "expected '" + wanted + "'");
        while (toks >> tok)
            e.moves.push_back(static_cast<int>(detail::parse_int(tok, source, lineno)));
        entries.push_back(std::move(e));
    }
    return entries;
}

}  // namespace hfp
