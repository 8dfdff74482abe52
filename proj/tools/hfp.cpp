// Command-line front end: graph checking, basic-vector enumeration, the
// HF+ pipeline, path tracing / certificate replay, and family generation.
//
// Exit codes: 0 success, 1 hypothesis or precondition failure, 2 parse
// error, 3 resource cap hit. Machine-readable reports (--json) carry no
// timing and no job count, so reruns and parallel runs are byte-identical.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <hfp/hfp.hpp>

namespace {

using namespace hfp;
using nlohmann::json;

struct CommonOpts {
    bool as_json = false;
    bool force = false;
    int jobs = 1;
    int slack = 4;
    int level_cap = 32;
    std::uint64_t state_cap = 10'000'000;
    std::string step_limit = "0";  // 0 = automatic guard
    bool stability_check = true;
};

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         start)
            .count();
    }
};

PathParams path_params(const CommonOpts& o) {
    PathParams p;
    p.step_limit = Int(o.step_limit);
    return p;
}

ExplorationParams exploration_params(const CommonOpts& o) {
    ExplorationParams p;
    p.slack = o.slack;
    p.level_cap = o.level_cap;
    p.state_cap = o.state_cap;
    return p;
}

struct GraphSummary {
    PlumbingGraph graph;
    DefinitenessReport definiteness;
    Int det;
    std::vector<int> bad;
    bool hypotheses_ok = false;  // negative definite with at most one bad vertex
};

GraphSummary summarize(PlumbingGraph g) {
    GraphSummary s{std::move(g), {}, 0, {}, false};
    s.definiteness = is_negative_definite(s.graph);
    s.det = determinant(intersection_matrix_of(s.graph));
    s.bad = bad_vertices(s.graph);
    s.hypotheses_ok = s.definiteness.negative_definite && s.bad.size() <= 1;
    return s;
}

json graph_report(const GraphSummary& s) {
    json j;
    j["vertices"] = s.graph.size();
    j["edges"] = s.graph.edges().size();
    j["det"] = s.det.str();
    j["unimodular"] = abs(s.det) == 1;
    j["negative_definite"] = s.definiteness.negative_definite;
    j["bad_vertices"] = s.bad;
    return j;
}

json params_report(const CommonOpts& o) {
    // Deliberately excludes the job count: concurrency must not show in
    // the result.
    json j;
    j["slack"] = o.slack;
    j["level_cap"] = o.level_cap;
    j["state_cap"] = o.state_cap;
    j["step_limit"] = o.step_limit;
    j["force"] = o.force;
    return j;
}

void print_graph_text(const GraphSummary& s) {
    std::cout << "graph: " << s.graph.size() << " vertices, " << s.graph.edges().size()
              << " edges\n";
    std::cout << "det Q: " << s.det << (abs(s.det) == 1 ? " (unimodular)" : "") << "\n";
    std::cout << "negative definite: " << (s.definiteness.negative_definite ? "yes" : "no");
    if (s.definiteness.first_violation)
        std::cout << " (first violation at minor " << *s.definiteness.first_violation << ")";
    std::cout << "\nbad vertices: [";
    for (std::size_t i = 0; i < s.bad.size(); ++i)
        std::cout << (i ? " " : "") << s.bad[i];
    std::cout << "]\n";
}

// Hypothesis gate shared by the computing commands.
void require_hypotheses(const GraphSummary& s, bool force) {
    if (s.hypotheses_ok) return;
    std::string why = !s.definiteness.negative_definite
                          ? "graph is not negative definite"
                          : "graph has " + std::to_string(s.bad.size()) + " bad vertices";
    if (!force) throw Error(why + " (use --force to compute anyway)");
    std::cout << "warning: " << why << "; proceeding under --force, results carry no "
              << "guarantee\n";
}

void emit_report(const CommonOpts& o, json& report, const Timer& timer) {
    if (o.as_json) {
        std::cout << report.dump(2) << "\n";
    } else {
        std::cout << "time: " << timer.ms() << " ms\n";
    }
}

int cmd_check(const std::string& file, const CommonOpts& o) {
    Timer timer;
    GraphSummary s = summarize(read_graph_file(file).build());
    json report;
    report["schema"] = 1;
    report["command"] = "check";
    report["input"] = file;
    report["graph"] = graph_report(s);
    json result;
    result["hypotheses_ok"] = s.hypotheses_ok;
    result["minors"] = json::array();
    for (const Int& m : s.definiteness.minors) result["minors"].push_back(m.str());
    result["first_minor_violation"] =
        s.definiteness.first_violation ? json(*s.definiteness.first_violation) : json();
    report["result"] = result;
    if (!o.as_json) {
        print_graph_text(s);
        std::cout << "minors:";
        for (const Int& m : s.definiteness.minors) std::cout << " " << m;
        std::cout << "\nhypotheses: " << (s.hypotheses_ok ? "satisfied" : "NOT satisfied")
                  << "\n";
    }
    emit_report(o, report, timer);
    return (s.hypotheses_ok || o.force) ? 0 : 1;
}

int cmd_basics(const std::string& file, const CommonOpts& o) {
    Timer timer;
    GraphSummary s = summarize(read_graph_file(file).build());
    require_hypotheses(s, o.force);
    const IntersectionForm form = IntersectionForm::of(s.graph);
    const Cond13Box box(s.graph);
    const auto basics = basic_vectors(s.graph, form, path_params(o), o.jobs);

    json report;
    report["schema"] = 1;
    report["command"] = "basics";
    report["input"] = file;
    report["graph"] = graph_report(s);
    report["params"] = params_report(o);
    json result;
    result["candidates"] = box.size().str();
    result["count"] = basics.size();
    result["basics"] = json::array();
    for (const auto& b : basics)
        result["basics"].push_back(
            {{"vector", format_char_vector(b.vec)}, {"length", to_string(b.length)}});
    report["result"] = result;

    if (!o.as_json) {
        print_graph_text(s);
        std::cout << "candidates: " << box.size() << "\n";
        std::cout << "basic vectors (" << basics.size() << "):\n";
        for (const auto& b : basics)
            std::cout << "  " << format_char_vector(b.vec) << "  length " << to_string(b.length)
                      << "\n";
    }
    emit_report(o, report, timer);
    return 0;
}

int cmd_hf(const std::string& file, const CommonOpts& o) {
    Timer timer;
    GraphSummary s = summarize(read_graph_file(file).build());
    require_hypotheses(s, o.force);
    if (abs(s.det) != 1)
        throw Error("det Q = " + s.det.str() +
                     "; the decomposition needs |det Q| = 1 (integral homology sphere)");
    const IntersectionForm form = IntersectionForm::of(s.graph);
    const auto basics = basic_vectors(s.graph, form, path_params(o), o.jobs);
    if (basics.empty()) throw Error("no basic vectors found; this should not happen");
    std::vector<CharVector> vecs;
    for (const auto& b : basics) vecs.push_back(b.vec);

    const ExplorationParams params = exploration_params(o);
    const ClassCountResult cc = class_counts(s.graph, form, vecs, params);
    std::string stability = "unchecked";
    if (o.stability_check) {
        ExplorationParams wide = params;
        wide.slack += 2;
        wide.level_cap += 8;
        const ClassCountResult cc2 = class_counts(s.graph, form, vecs, wide);
        if (cc2.counts != cc.counts || cc2.stabilization_level != cc.stabilization_level ||
            cc2.h0 != cc.h0)
            throw UnstableResult(
                "result changed when the exploration box was enlarged; raise --slack "
                "and --max-level");
        stability = "checked";
    }
    const HFDecomposition dec = assemble_decomposition(cc);

    json report;
    report["schema"] = 1;
    report["command"] = "hf";
    report["input"] = file;
    report["graph"] = graph_report(s);
    report["params"] = params_report(o);
    json result;
    result["hf"] = "T+ decomposition";
    result["hf"] = dec.render();
    result["d"] = to_string(dec.d);
    result["d_reversed"] = to_string(Rational(-dec.d));
    json reduced = json::array();
    for (const auto& [g, r] : dec.reduced) reduced.push_back({to_string(g), r});
    result["reduced"] = reduced;
    json counts = json::array();
    for (std::size_t m = 0; m < dec.class_counts.size(); ++m)
        counts.push_back({m, dec.class_counts[m]});
    result["class_counts"] = counts;
    json ranks = json::array();
    for (std::size_t m = 0; m < dec.class_counts.size(); ++m)
        ranks.push_back({to_string(dec.d + 2 * Rational(m)), dec.class_counts[m]});
    result["total_ranks"] = ranks;
    result["stabilization_level"] = dec.stabilization_level;
    result["stability"] = stability;
    report["result"] = result;

    if (!o.as_json) {
        print_graph_text(s);
        std::cout << "HF+ = " << dec.render() << "\n";
        std::cout << "d = " << to_string(dec.d) << "  (reversed orientation: "
                  << to_string(Rational(-dec.d)) << ")\n";
        std::cout << "class counts:";
        for (std::size_t m = 0; m < dec.class_counts.size(); ++m)
            std::cout << " c(" << m << ")=" << dec.class_counts[m];
        std::cout << "  stabilized at level " << dec.stabilization_level << "\n";
        std::cout << "stability: " << stability << "\n";
    }
    emit_report(o, report, timer);
    return 0;
}

int cmd_path(const std::string& file, std::optional<std::string> vector_text,
             std::optional<std::string> cert_file, const CommonOpts& o) {
    Timer timer;
    GraphSummary s = summarize(read_graph_file(file).build());
    require_hypotheses(s, o.force);

    CharVector start;
    std::optional<std::vector<int>> cert;
    if (cert_file) {
        Certificate c = read_certificate_file(*cert_file);
        start = c.start;
        cert = c.pushes;
        if (vector_text && parse_char_vector(*vector_text) != start)
            throw Error("--vector disagrees with the certificate's start vector");
    } else if (vector_text) {
        start = parse_char_vector(*vector_text);
    } else {
        throw Error("path needs --vector or --certificate");
    }
    if (!is_characteristic(s.graph, start))
        throw Error("vector " + format_char_vector(start) + " is not characteristic");

    PathOutcome out;
    if (cert) {
        out = replay_certificate(s.graph, start, *cert, path_params(o));
    } else {
        if (!satisfies_cond13(s.graph, start))
            throw Error("vector " + format_char_vector(start) +
                        " is outside the candidate box; supply a certificate to replay "
                        "arbitrary starts");
        out = classify(s.graph, start, path_params(o));
    }

    json report;
    report["schema"] = 1;
    report["command"] = "path";
    report["input"] = file;
    report["graph"] = graph_report(s);
    json result;
    result["start"] = format_char_vector(start);
    result["verdict"] = to_string(out.verdict);
    result["pushes"] = out.pushes;
    result["final"] = format_char_vector(out.final_vector);
    if (out.verdict == Verdict::Good) result["terminal"] = format_char_vector(out.final_vector);
    if (out.violation)
        result["violation"] = {{"step", out.violation->step},
                               {"vertex", out.violation->vertex}};
    report["result"] = result;

    if (!o.as_json) {
        print_graph_text(s);
        CharVector cur = start;
        std::cout << "step 0: " << format_char_vector(cur) << "\n";
        std::size_t stepno = 0;
        for (int v : out.pushes) {
            PushResult r = push(s.graph, cur, v);
            std::cout << "push v" << v << " (n=" << r.level_delta << ") -> step " << ++stepno
                      << ": " << format_char_vector(r.vec) << "\n";
            cur = r.vec;
        }
        std::cout << "verdict: " << to_string(out.verdict);
        if (out.verdict == Verdict::Good)
            std::cout << ", terminal " << format_char_vector(out.final_vector) << " after "
                      << out.pushes.size() << " pushes";
        if (out.violation)
            std::cout << ", overshoot at vertex " << out.violation->vertex << " after "
                      << out.violation->step << " pushes";
        std::cout << "\n";
    }
    emit_report(o, report, timer);
    return 0;
}

int cmd_family(int n, const std::string& out_dir, bool verify, const CommonOpts& o) {
    Timer timer;
    const FamilyInstance fam = sigma_2_3(n);
    std::filesystem::create_directories(out_dir);
    const std::string stem = "sigma_2_3_" + std::to_string(n);
    const std::string graph_path =
        (std::filesystem::path(out_dir) / (stem + (o.as_json ? ".json" : ".graph"))).string();
    const std::string certs_path =
        (std::filesystem::path(out_dir) / (stem + ".certs")).string();

    {
        std::ofstream out(graph_path);
        if (!out) throw Error("cannot write " + graph_path);
        if (o.as_json)
            out << graph_to_json(fam.graph).dump(2) << "\n";
        else
            out << emit_graph_text(fam.graph);
    }
    std::vector<BundleEntry> entries;
    for (int i = 1; i <= n + 1; ++i)
        entries.push_back(BundleEntry{BundleEntry::Kind::Good, i, 0, fam.basics[i - 1],
                                      good_path_certificate(n, i)});
    for (int i = 1; i <= n + 1; ++i)
        entries.push_back(BundleEntry{BundleEntry::Kind::UChain, i, 1, fam.basics[i - 1],
                                      u_chain_certificate(n, i)});
    {
        std::ofstream out(certs_path);
        if (!out) throw Error("cannot write " + certs_path);
        out << emit_bundle(entries);
    }

    int good_pass = 0, uchain_pass = 0, failures = 0;
    if (verify) {
        for (const auto& e : entries) {
            bool ok = false;
            if (e.kind == BundleEntry::Kind::Good) {
                ok = replay_certificate(fam.graph, e.start, e.moves).verdict == Verdict::Good;
                good_pass += ok;
            } else {
                const auto traj = replay_moves(fam.graph, KState{e.level, e.start}, e.moves);
                ok = traj.back() == KState{0, fam.target};
                for (const auto& st : traj)
                    if (st.u < 0 || st.u > 1) ok = false;
                uchain_pass += ok;
            }
            failures += !ok;
        }
    }

    json report;
    report["schema"] = 1;
    report["command"] = "family";
    report["n"] = n;
    json result;
    result["graph_file"] = graph_path;
    result["certificate_file"] = certs_path;
    result["certificates"] = entries.size();
    if (verify)
        result["verify"] = {{"good_passed", good_pass},
                            {"uchain_passed", uchain_pass},
                            {"failures", failures}};
    report["result"] = result;

    if (!o.as_json) {
        std::cout << "wrote " << graph_path << "\n";
        std::cout << "wrote " << certs_path << " (" << entries.size() << " certificates)\n";
        if (verify)
            std::cout << "verify: " << good_pass << " good paths, " << uchain_pass
                      << " U-chains, " << failures << " failures\n";
    }
    emit_report(o, report, timer);
    return failures == 0 ? 0 : 1;
}

void add_common(CLI::App* cmd, CommonOpts& o, bool exploration) {
    cmd->add_flag("--json", o.as_json, "emit a machine-readable report");
    cmd->add_flag("--force", o.force, "compute even if the hypotheses fail");
    cmd->add_option("--jobs", o.jobs, "worker threads for the candidate scan")
        ->envname("HFP_JOBS")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--step-limit", o.step_limit, "full-path step guard (0 = automatic)")
        ->envname("HFP_STEP_LIMIT");
    if (exploration) {
        cmd->add_option("--slack", o.slack, "exploration box slack beyond the candidate box")
            ->envname("HFP_SLACK")
            ->check(CLI::NonNegativeNumber);
        cmd->add_option("--max-level", o.level_cap, "exploration level cap")
            ->envname("HFP_MAX_LEVEL")
            ->check(CLI::NonNegativeNumber);
        cmd->add_option("--state-cap", o.state_cap, "exploration state cap")
            ->envname("HFP_STATE_CAP")
            ->check(CLI::PositiveNumber);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"HF+ of negative-definite plumbed homology spheres"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string graph_file;
    std::optional<std::string> vector_text, cert_file;
    int family_n = 1;
    std::string out_dir = ".";
    bool verify = false;

    CLI::App* check = app.add_subcommand("check", "validate a graph against the hypotheses");
    check->add_option("graph", graph_file, "graph file")->required();
    add_common(check, o, false);

    CLI::App* basics = app.add_subcommand("basics", "enumerate basic vectors");
    basics->add_option("graph", graph_file, "graph file")->required();
    add_common(basics, o, false);

    CLI::App* hf = app.add_subcommand("hf", "compute the HF+ decomposition");
    hf->add_option("graph", graph_file, "graph file")->required();
    add_common(hf, o, true);
    hf->add_flag("--stability-check,!--no-stability-check", o.stability_check,
                 "recompute with an enlarged box and compare (default on)");

    CLI::App* path = app.add_subcommand("path", "trace a full path or replay a certificate");
    path->add_option("graph", graph_file, "graph file")->required();
    std::string vec_opt, cert_opt;
    CLI::Option* vopt = path->add_option("--vector", vec_opt, "start vector, e.g. (1,0,-1,-5)");
    CLI::Option* copt = path->add_option("--certificate", cert_opt, "certificate file to replay");
    add_common(path, o, false);

    CLI::App* family = app.add_subcommand("family", "emit a family graph and its certificates");
    family->add_option("--n", family_n, "family index (>= 1)")->required();
    family->add_option("--out", out_dir, "output directory (default .)");
    family->add_flag("--verify", verify, "replay every emitted certificate");
    add_common(family, o, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) return cmd_check(graph_file, o);
        if (basics->parsed()) return cmd_basics(graph_file, o);
        if (hf->parsed()) return cmd_hf(graph_file, o);
        if (path->parsed()) {
            if (*vopt) vector_text = vec_opt;
            if (*copt) cert_file = cert_opt;
            return cmd_path(graph_file, vector_text, cert_file, o);
        }
        if (family->parsed()) {
            if (family_n < 1) throw InvalidN("family index must be >= 1");
            return cmd_family(family_n, out_dir, verify, o);
        }
    } catch (const hfp::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const hfp::ResourceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const hfp::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
