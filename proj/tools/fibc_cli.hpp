#pragma once

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <fibc/heatmap.hpp>
#include <fibc/score.hpp>

namespace fibc::cli {

// Exit codes: 0 ok, 1 computational failure, 2 usage / input error.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string one_line(std::string s) {
    for (char& c : s)
        if (c == '\n' || c == '\r') c = ';';
    while (!s.empty() && s.back() == ';') s.pop_back();
    return s;
}

inline void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty())
        out << text;
    else
        write_text_file(out_path, text);
}

inline std::pair<int, int> parse_shard(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) throw UsageError("--shard expects k/N");
    try {
        std::size_t a = 0, b = 0;
        const int k = std::stoi(s.substr(0, slash), &a);
        const int n = std::stoi(s.substr(slash + 1), &b);
        if (a != slash || b != s.size() - slash - 1) throw UsageError("--shard expects k/N");
        return {k, n};
    } catch (const std::logic_error&) {
        throw UsageError("--shard expects k/N");
    }
}

// NAME for an exact gate, NAME:WORD for a word approximating NAME.
inline Role parse_role(const std::string& s) {
    // deutsch:T names carry their own colon
    const auto colon = s.find(':', s.rfind("deutsch:", 0) == 0 ? 8 : 0);
    if (colon == std::string::npos) return Role::exact(gate_matrix(s));
    const std::string name = s.substr(0, colon);
    return Role::of(BraidWord::parse(s.substr(colon + 1)), gate_matrix(name));
}

inline std::vector<std::string> read_word_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') continue;
        out.push_back(line.substr(b));
    }
    return out;
}

inline GateCircuit preset_circuit(const std::string& name, const ConventionProfile& p) {
    if (name == "m-identity-ix") return published::m_identity_ix(p);
    if (name == "m-not-ix") return published::m_not_ix(p);
    if (name == "itoffoli") return published::ccs_itoffoli(p);
    if (name == "itoffoli-decomposition") return published::decomposition_itoffoli(p);
    throw UsageError("unknown preset '" + name + "' (m-identity-ix, m-not-ix, itoffoli, itoffoli-decomposition)");
}

inline Mat2 target_for(const std::string& name) { return gate_matrix(name); }

struct Options {
    std::string profile_path;

    int anyons = 3;
    std::string charge = "tau";
    bool list = false;
    int index = 1;
    std::string word, words_file, target;
    std::string out;

    int length = 8;
    bool weave = false;
    std::string endpoint = "same";
    std::string shard = "0/1";
    int threads = 1;
    int top = 32;
    bool no_prune = false;

    std::vector<std::string> merge_files;

    std::string preset, kind;
    std::string r, i, s, m_s, not_role, inject, cu_target, cnot_inject, csqrt_inject, sqrt_role;
    int qubits = 2, control = 0, swap_j = 0;

    std::string circuit_file;

    int L = 48;
    bool calibrate = false;
    std::string profile_out, json_out;
    std::vector<std::string> pools;
    int pool_top = 4;

    std::string matrix_file;
    bool full = false;
};

inline ConventionProfile load_profile(const Options& o) {
    if (!o.profile_path.empty()) return ConventionProfile::from_json(read_json_file(o.profile_path));
    return active_profile();
}

inline int run_basis(const Options& o, std::ostream& out) {
    const FusionBasis b = enumerate_basis(o.anyons, parse_charge(o.charge));
    out << "dimension " << b.dim() << "\n";
    if (o.list)
        for (const auto& t : b.trees) out << t.label() << "\n";
    return 0;
}

inline int run_gen(const Options& o, std::ostream& out) {
    const auto p = load_profile(o);
    const FusionBasis b = enumerate_basis(o.anyons, parse_charge(o.charge));
    if (o.index < 1 || o.index >= o.anyons) throw UsageError("gen: --index must be in 1..anyons-1");
    const json j = {{"anyons", o.anyons}, {"charge", o.charge}, {"index", o.index}, {"handedness", to_string(p.handedness)},
                    {"matrix", matrix_to_json(braid_generator(b, o.index, p.handedness))}};
    emit(j.dump(2) + "\n", o.out, out);
    return 0;
}

inline int run_eval(const Options& o, std::ostream& out) {
    const auto p = load_profile(o);
    std::vector<std::string> words;
    if (!o.word.empty()) words.push_back(o.word);
    if (!o.words_file.empty())
        for (auto& w : read_word_lines(o.words_file)) words.push_back(w);
    if (words.empty()) throw UsageError("eval: give --word or --words-file");
    const Charge sector = parse_charge(o.charge);
    std::vector<BraidWord> parsed;
    for (const auto& w : words) {
        BraidWord bw = BraidWord::parse(w);
        if (bw.max_gen() >= o.anyons) throw UsageError("eval: word '" + w + "' needs more than " + std::to_string(o.anyons) + " anyons");
        parsed.push_back(std::move(bw));
    }
    const auto gs = generators(o.anyons, sector, p.handedness);
    std::optional<Mat> target;
    if (!o.target.empty()) {
        if (o.target == "I")
            target = Mat::Identity(gs->dim(), gs->dim());
        else if (gs->dim() == 2)
            target = target_for(o.target);
        else
            throw UsageError("eval: only the identity target applies beyond a 2-dimensional space");
    }
    json results = json::array();
    for (std::size_t k = 0; k < parsed.size(); ++k) {
        const Mat u = word_matrix(*gs, parsed[k], p.reading_order);
        json r = {{"word", parsed[k].str()}, {"length", parsed[k].length()}, {"winding", parsed[k].winding()}, {"matrix", matrix_to_json(u)}};
        if (target) {
            // Two-dimensional blocks use the phase-blind SU(2) form, the same one search reports.
            r["distance"] = u.rows() == 2 ? distance(to_su2(u), to_su2(*target)) : distance(u, *target);
        }
        results.push_back(r);
    }
    const json doc = {{"anyons", o.anyons}, {"charge", o.charge}, {"profile", p.to_json()}, {"results", results}};
    emit(doc.dump(2) + "\n", o.out, out);
    return 0;
}

inline int run_search(const Options& o, std::ostream& out) {
    const auto p = load_profile(o);
    WeaveSearchSpec s;
    if (o.target.empty()) throw UsageError("search: --target is required");
    s.target = target_for(o.target);
    s.length_budget = o.length;
    s.endpoint = parse_endpoint(o.endpoint);
    s.weave_only = o.weave;
    std::tie(s.shard_index, s.shard_count) = parse_shard(o.shard);
    s.top_k = o.top;
    s.handedness = p.handedness;
    s.reading_order = p.reading_order;
    s.prune = !o.no_prune;
    s.threads = o.threads;
    s.validate();
    emit(search(s).to_json().dump(2) + "\n", o.out, out);
    return 0;
}

inline int run_merge(const Options& o, std::ostream& out) {
    if (o.merge_files.empty()) throw UsageError("merge: no result files");
    std::vector<SearchResult> rs;
    for (const auto& f : o.merge_files) rs.push_back(SearchResult::from_json(read_json_file(f)));
    emit(merge(rs, o.top).to_json().dump(2) + "\n", o.out, out);
    return 0;
}

inline Role require_role(const std::string& v, const char* flag) {
    if (v.empty()) throw UsageError(std::string("build: ") + flag + " is required");
    return parse_role(v);
}

inline GateCircuit build_from(const Options& o, const ConventionProfile& p) {
    if (!o.preset.empty()) return preset_circuit(o.preset, p);
    if (o.kind == "cu") return build_injection_cu(require_role(o.inject, "--inject"), require_role(o.cu_target, "--target"), o.qubits, o.control, p);
    if (o.kind == "m") return build_m_gate(require_role(o.r, "--r"), require_role(o.i, "--i"), require_role(o.s, "--s"), p);
    if (o.kind == "ccs") {
        const Role s = require_role(o.s, "--s");
        Role ms = o.m_s.empty() ? (s.is_exact() ? Role::exact(s.target.adjoint()) : s) : parse_role(o.m_s);
        const GateCircuit m = build_m_gate(require_role(o.r, "--r"), require_role(o.i, "--i"), ms, p);
        return build_ccs(m, require_role(o.not_role, "--not"), s, p);
    }
    if (o.kind == "decomposition")
        return build_ccs_decomposition(require_role(o.cnot_inject, "--cnot-inject"), require_role(o.csqrt_inject, "--csqrt-inject"),
                                       require_role(o.sqrt_role, "--sqrt"), require_role(o.not_role, "--not"), p);
    if (o.kind == "swap") return build_swap(o.qubits, o.swap_j);
    throw UsageError("build: give --preset or --kind {cu, m, ccs, decomposition, swap}");
}

inline int run_build(const Options& o, std::ostream& out) {
    const auto p = load_profile(o);
    emit(circuit_to_json(build_from(o, p)).dump(2) + "\n", o.out, out);
    return 0;
}

inline GateCircuit circuit_arg(const Options& o, const ConventionProfile& p) {
    if (!o.circuit_file.empty()) return circuit_from_json(read_json_file(o.circuit_file));
    if (!o.preset.empty()) return preset_circuit(o.preset, p);
    throw UsageError("give --circuit FILE or --preset NAME");
}

inline int run_score(const Options& o, std::ostream& out) {
    const auto p = load_profile(o);
    json j = score_gate(circuit_arg(o, p), p).to_json();
    j["profile"] = p.to_json();
    emit(j.dump(2) + "\n", o.out, out);
    return 0;
}

// Candidate pools: KEY=FILE with KEY one of ci.R ci.I ci.S ci.NOT
// dec.cnot-inject dec.csqrt-inject dec.sqrt dec.NOT. Each pool starts with the
// published word and adds the file's top candidates.
struct Pools {
    std::map<std::string, std::vector<std::string>> words;
};

inline Pools load_pools(const Options& o) {
    namespace pub = published;
    Pools p;
    p.words = {{"ci.R", {pub::ccs_r_not}}, {"ci.I", {pub::ccs_injection}}, {"ci.S", {pub::target_ix}}, {"ci.NOT", {pub::target_ix}},
               {"dec.cnot-inject", {pub::cnot_injection}}, {"dec.csqrt-inject", {pub::injection}}, {"dec.sqrt", {pub::sqrt_not}},
               {"dec.NOT", {pub::target_ix}}};
    for (const auto& spec : o.pools) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos) throw UsageError("--pool expects KEY=FILE");
        const std::string key = spec.substr(0, eq);
        if (!p.words.count(key)) throw UsageError("--pool: unknown key '" + key + "'");
        const SearchResult r = SearchResult::from_json(read_json_file(spec.substr(eq + 1)));
        int taken = 0;
        for (const auto& c : r.candidates) {
            if (taken >= o.pool_top) break;
            const std::string w = c.word.str();
            auto& v = p.words[key];
            if (std::find(v.begin(), v.end(), w) == v.end()) v.push_back(w), ++taken;
        }
    }
    return p;
}

inline std::vector<Role> roles_of(const std::vector<std::string>& words, const std::string& target, std::optional<Endpoint> need) {
    std::vector<Role> out;
    for (const auto& w : words) {
        const BraidWord bw = BraidWord::parse(w);
        const auto cls = endpoint_class(bw);
        if (need && (!cls || *cls != *need)) continue;
        out.push_back(Role::of(bw, gate_matrix(target)));
    }
    return out;
}

inline int run_report(const Options& o, std::ostream& out) {
    ConventionProfile p = load_profile(o);
    if (o.calibrate) {
        const CalibrationReport cal = calibrate_conventions();
        p = cal.profile;
        out << cal.table();
        if (!o.profile_out.empty()) write_text_file(o.profile_out, p.to_json().dump(2) + "\n");
    }
    if (o.L < 1) throw UsageError("report: --L must be >= 1");
    const Pools pools = load_pools(o);
    const auto& w = pools.words;
    const auto TB = Endpoint::TopToBottom, SS = Endpoint::SameStrand;

    const std::vector<std::vector<Role>> ci_pools = {roles_of(w.at("ci.R"), "iX", TB), roles_of(w.at("ci.I"), "I", TB),
                                                      roles_of(w.at("ci.S"), "iX", SS), roles_of(w.at("ci.NOT"), "iX", SS)};
    const auto ci_scores = score_combinations(
        ci_pools,
        [&](const std::vector<Role>& r) { return build_ccs(build_m_gate(r[0], r[1], r[2], p), r[3], r[2], p); }, p);
    const std::vector<std::vector<Role>> dec_pools = {roles_of(w.at("dec.cnot-inject"), "I", TB), roles_of(w.at("dec.csqrt-inject"), "I", TB),
                                                       roles_of(w.at("dec.sqrt"), "sqrt-iX", SS), roles_of(w.at("dec.NOT"), "iX", SS)};
    const auto dec_scores = score_combinations(
        dec_pools, [&](const std::vector<Role>& r) { return build_ccs_decomposition(r[0], r[1], r[2], r[3], p); }, p);

    const ComboStats cs = combination_stats(ci_scores), ds = combination_stats(dec_scores);
    const Report rep = comparison_report(ci_scores[cs.best_index], dec_scores[ds.best_index], o.L, p, &cs, &ds);
    if (o.out.empty()) {
        out << rep.markdown;
    } else {
        write_text_file(o.out, rep.markdown);
        write_text_file(o.json_out.empty() ? o.out + ".json" : o.json_out, rep.data.dump(2) + "\n");
    }
    return 0;
}

inline int run_heatmap(const Options& o, std::ostream&) {
    const auto p = load_profile(o);
    if (o.out.empty()) throw UsageError("heatmap: --out is required");
    Mat m;
    if (!o.matrix_file.empty()) {
        m = matrix_from_json(read_json_file(o.matrix_file));
    } else if (!o.preset.empty() || !o.circuit_file.empty()) {
        const Evaluation ev = evaluate_circuit(circuit_arg(o, p), p);
        m = o.full ? ev.full : ev.block;
    } else if (!o.word.empty()) {
        m = word_matrix(enumerate_basis(o.anyons, parse_charge(o.charge)), BraidWord::parse(o.word), p.handedness, p.reading_order);
    } else {
        throw UsageError("heatmap: give --matrix, --preset, --circuit or --word");
    }
    emit_heatmap(m, o.out);
    return 0;
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Fibonacci-anyon braid compiler"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--profile", o.profile_path, "convention profile JSON (overrides FIBC_PROFILE)");

    auto* basis = app.add_subcommand("basis", "enumerate a fusion basis");
    basis->add_option("--anyons", o.anyons)->required()->check(CLI::Range(1, 40));
    basis->add_option("--charge", o.charge)->check(CLI::IsMember({"vac", "tau"}));
    basis->add_flag("--list", o.list, "print tree labels");

    auto* gen = app.add_subcommand("gen", "dense generator matrix");
    gen->add_option("--anyons", o.anyons)->required()->check(CLI::Range(2, 16));
    gen->add_option("--charge", o.charge)->check(CLI::IsMember({"vac", "tau"}));
    gen->add_option("--index", o.index)->required();
    gen->add_option("--out", o.out);

    auto* eval = app.add_subcommand("eval", "evaluate braid words");
    eval->add_option("--anyons", o.anyons)->check(CLI::Range(2, 16));
    eval->add_option("--charge", o.charge)->check(CLI::IsMember({"vac", "tau"}));
    eval->add_option("--word", o.word);
    eval->add_option("--words-file", o.words_file);
    eval->add_option("--target", o.target);
    eval->add_option("--out", o.out);

    auto* srch = app.add_subcommand("search", "exhaustive weave search");
    srch->add_option("--target", o.target)->required();
    srch->add_option("--length", o.length)->required();
    srch->add_flag("--weave", o.weave, "weaves only: even powers with endpoint adjusters");
    srch->add_option("--endpoint", o.endpoint);
    srch->add_option("--shard", o.shard, "k/N");
    srch->add_option("--threads", o.threads);
    srch->add_option("--top", o.top);
    srch->add_flag("--no-prune", o.no_prune);
    srch->add_option("--out", o.out);

    auto* mrg = app.add_subcommand("merge", "merge shard results");
    mrg->add_option("files", o.merge_files)->required();
    mrg->add_option("--top", o.top);
    mrg->add_option("--out", o.out);

    auto* build = app.add_subcommand("build", "assemble a gate circuit");
    build->add_option("--preset", o.preset);
    build->add_option("--kind", o.kind);
    build->add_option("--r", o.r);
    build->add_option("--i", o.i);
    build->add_option("--s", o.s);
    build->add_option("--m-s", o.m_s);
    build->add_option("--not", o.not_role);
    build->add_option("--inject", o.inject);
    build->add_option("--target", o.cu_target);
    build->add_option("--cnot-inject", o.cnot_inject);
    build->add_option("--csqrt-inject", o.csqrt_inject);
    build->add_option("--sqrt", o.sqrt_role);
    build->add_option("--qubits", o.qubits);
    build->add_option("--control", o.control);
    build->add_option("--j", o.swap_j);
    build->add_option("--out", o.out);

    auto* score = app.add_subcommand("score", "score a circuit");
    score->add_option("--circuit", o.circuit_file);
    score->add_option("--preset", o.preset);
    score->add_option("--out", o.out);

    auto* report = app.add_subcommand("report", "comparison report");
    report->add_option("--L", o.L);
    report->add_flag("--calibrate", o.calibrate);
    report->add_option("--profile-out", o.profile_out);
    report->add_option("--pool", o.pools, "KEY=FILE");
    report->add_option("--pool-top", o.pool_top);
    report->add_option("--out", o.out);
    report->add_option("--json-out", o.json_out);

    auto* heat = app.add_subcommand("heatmap", "PPM heatmap of a matrix");
    heat->add_option("--matrix", o.matrix_file);
    heat->add_option("--preset", o.preset);
    heat->add_option("--circuit", o.circuit_file);
    heat->add_flag("--full", o.full, "whole fusion space instead of the computational block");
    heat->add_option("--word", o.word);
    heat->add_option("--anyons", o.anyons);
    heat->add_option("--charge", o.charge);
    heat->add_option("--out", o.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "fibc: usage: " << one_line(e.what()) << "\n";
        return 2;
    }

    try {
        if (*basis) return run_basis(o, out);
        if (*gen) return run_gen(o, out);
        if (*eval) return run_eval(o, out);
        if (*srch) return run_search(o, out);
        if (*mrg) return run_merge(o, out);
        if (*build) return run_build(o, out);
        if (*score) return run_score(o, out);
        if (*report) return run_report(o, out);
        if (*heat) return run_heatmap(o, out);
    } catch (const UsageError& e) {
        err << "fibc: usage: " << one_line(e.what()) << "\n";
        return 2;
    } catch (const InvalidInput& e) {
        err << "fibc: invalid-input: " << one_line(e.what()) << "\n";
        return 2;
    } catch (const IoError& e) {
        err << "fibc: io: " << one_line(e.what()) << "\n";
        return 2;
    } catch (const Infeasible& e) {
        err << "fibc: infeasible: " << one_line(e.what()) << "\n";
        return 1;
    } catch (const CalibrationFailure& e) {
        err << "fibc: calibration: " << one_line(e.what()) << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "fibc: error: " << one_line(e.what()) << "\n";
        return 1;
    }
    return 2;
}

}  // namespace fibc::cli
