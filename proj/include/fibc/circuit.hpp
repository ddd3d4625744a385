#pragma once

#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/QR>

#include "profile.hpp"
#include "search.hpp"

namespace fibc {

// ---------------------------------------------------------------- cabling

// Positive crossing of an upper cable of a strands (starting at anyon s)
// with the b strands below it, as unit steps in time order.
inline std::vector<Factor> positive_crossing(int s, int a, int b) {
    std::vector<Factor> out;
    for (int k = 0; k < b; ++k)
        for (int g = s + a + k - 1; g >= s + k; --g) out.push_back({g, 1});
    return out;
}

struct CableResult {
    BraidWord word;                 // elementary word, printed per the reading order
    std::vector<int> final_widths;  // macro widths after the word has acted
};

inline void check_composition(const std::vector<int>& widths, int anyons) {
    int sum = 0;
    for (int w : widths) {
        if (w < 1) throw InvalidInput("composition widths must be positive");
        sum += w;
    }
    if (anyons >= 0 && sum != anyons)
        throw InvalidInput("composition sums to " + std::to_string(sum) + ", expected " + std::to_string(anyons));
}

inline CableResult cable(const BraidWord& word, const std::vector<int>& widths, ReadingOrder order = ReadingOrder::PrintedLeftLast) {
    check_composition(widths, -1);
    const int m = int(widths.size());
    for (const auto& f : word.factors)
        if (f.gen < 1 || f.gen >= m) throw InvalidInput("cable: macro index " + std::to_string(f.gen) + " invalid for " + std::to_string(m) + " macro-strands");
    std::vector<int> w = widths;
    std::vector<Factor> steps;
    for (const auto& st : time_sequence(word, order)) {
        int s = 1;
        for (int j = 0; j < st.gen - 1; ++j) s += w[j];
        const int a = w[st.gen - 1], b = w[st.gen];
        if (st.power > 0) {
            auto c = positive_crossing(s, a, b);
            steps.insert(steps.end(), c.begin(), c.end());
        } else {
            auto c = positive_crossing(s, b, a);
            for (auto it = c.rbegin(); it != c.rend(); ++it) steps.push_back({it->gen, -1});
        }
        std::swap(w[st.gen - 1], w[st.gen]);
    }
    return {from_time_sequence(steps, order), w};
}

// ------------------------------------------------------------ qubit layout

struct QubitEncoding {
    int qubit_count = 0;
    int anyons_per_qubit = 4;
    std::vector<int> computational_indices;  // bit strings with qubit 0 most significant
};

inline std::vector<int> computational_indices(const FusionBasis& b, int qubits) {
    std::vector<int> idx;
    for (int bits = 0; bits < (1 << qubits); ++bits) {
        std::vector<Charge> lab;
        for (int q = 0; q < qubits; ++q) {
            const bool one = (bits >> (qubits - 1 - q)) & 1;
            // a(4q+2) = first pair charge, a(4q+3) = Tau, a(4q+4) = Vacuum
            lab.push_back(one ? Charge::Tau : Charge::Vacuum);
            lab.push_back(Charge::Tau);
            lab.push_back(Charge::Vacuum);
            if (q + 1 < qubits) lab.push_back(Charge::Tau);  // a(4q+5)
        }
        const int k = b.index_of(lab);
        if (k < 0) throw std::logic_error("computational state missing from basis");
        idx.push_back(k);
    }
    return idx;
}

inline std::pair<FusionBasis, QubitEncoding> encode_qubits(int qubits) {
    if (qubits < 1 || qubits > 3) throw InvalidInput("encode_qubits: qubit count must be 1..3");
    FusionBasis b = enumerate_basis(4 * qubits, Charge::Vacuum);
    QubitEncoding e;
    e.qubit_count = qubits;
    e.computational_indices = computational_indices(b, qubits);
    return {std::move(b), e};
}

// ------------------------------------------------------------------ roles

// A gate slot in a composite build: a published/searched word with its
// nominal target, or an exact gate.
struct Role {
    std::optional<BraidWord> word;
    Mat2 target = Mat2::Identity();

    static Role exact(const Mat2& g) { return {std::nullopt, g}; }
    static Role of(const BraidWord& w, const Mat2& nominal) { return {w, nominal}; }

    bool is_exact() const { return !word.has_value(); }
    int length() const { return word ? word->length() : 0; }

    Role inverse() const {
        Role r;
        if (word) r.word = word->inverse();
        r.target = target.adjoint();
        return r;
    }
};

inline BraidWord reflect3(const BraidWord& w) {
    BraidWord r;
    for (const auto& f : w.factors) r.factors.push_back({3 - f.gen, -f.power});
    return r;
}

inline BraidWord lift(const BraidWord& w3, int offset, Embedding e) {
    BraidWord out;
    for (const auto& f : w3.factors) {
        if (f.gen != 1 && f.gen != 2) throw InvalidInput("lift: word is not on three strands");
        out.factors.push_back(e == Embedding::Direct ? Factor{offset + f.gen, f.power} : Factor{offset + 3 - f.gen, -f.power});
    }
    return out;
}

// Action of a three-strand word on the qubit it targets, once embedded.
// The reflected layout relabels strands by Gamma = s1 s2 s1.
inline Mat2 effective_block(const BraidWord& w3, Embedding e, const ConventionProfile& p) {
    if (e == Embedding::Direct) return tau_block(w3, p.handedness, p.reading_order);
    const Mat2 g = tau_block(BraidWord{{1, 1}, {2, 1}, {1, 1}}, p.handedness, p.reading_order);
    return g.adjoint() * tau_block(reflect3(w3), p.handedness, p.reading_order) * g;
}

inline cd effective_vacuum(const BraidWord& w3, Embedding e, const ConventionProfile& p) {
    return vacuum_phase(e == Embedding::Direct ? w3 : reflect3(w3), p.handedness, p.reading_order);
}

// The exact gate a role stands for inside a circuit: exact roles as given;
// word roles as the nominal target scaled to SU(2) times the 20th root of
// unity closest to the word's own phase. Nominal targets describe the
// standalone word; the reflected layout realizes their complex conjugate.
inline Mat2 ideal_gate(const Role& r, Embedding e, const ConventionProfile& p) {
    if (r.is_exact()) return r.target;
    const Mat2 eff = effective_block(*r.word, e, p);
    const Mat2 t = to_su2(e == Embedding::Direct ? r.target : r.target.conjugate().eval());
    const cd ov = (t.adjoint() * eff).trace();
    if (std::abs(ov) < 1e-9) throw InvalidInput("role word is orthogonal to its nominal target");
    const double step = std::numbers::pi / 10.0;
    const double k = std::round(std::arg(ov) / step);
    return std::polar(1.0, k * step) * t;
}

// ------------------------------------------------------------------ stages

struct ExactSpec {
    Mat2 gate;
    Endpoint endpoint = Endpoint::SameStrand;
    int offset = 0;
    Embedding embedding = Embedding::Direct;
    bool inverse = false;
};

struct Stage {
    std::string name;
    BraidWord word;                 // macro-strand word (empty for exact stages)
    std::vector<int> composition;   // macro widths when the stage starts
    std::optional<ExactSpec> exact;
};

enum class GateKind { Custom, InjectionCU, MIdentity, MNot, CCS, Decomposition, Swap };

inline const char* to_string(GateKind k) {
    switch (k) {
        case GateKind::InjectionCU: return "injection-cu";
        case GateKind::MIdentity: return "m-identity";
        case GateKind::MNot: return "m-not";
        case GateKind::CCS: return "ccs";
        case GateKind::Decomposition: return "decomposition";
        case GateKind::Swap: return "swap";
        default: return "custom";
    }
}

inline GateKind parse_gate_kind(const std::string& s) {
    for (GateKind k : {GateKind::Custom, GateKind::InjectionCU, GateKind::MIdentity, GateKind::MNot, GateKind::CCS, GateKind::Decomposition, GateKind::Swap})
        if (s == to_string(k)) return k;
    throw InvalidInput("unknown gate kind '" + s + "'");
}

// Length and depth formulas a*L + b.
struct Accounting {
    int length_per_L = 0, length_const = 0;
    int depth_per_L = 0, depth_const = 0;
    int two_qubit_gates = 0;
    int three_anyon_gates = 0;
};

struct GateCircuit {
    std::string name;
    GateKind kind = GateKind::Custom;
    int anyons = 0;
    int qubits = 0;
    int weave_length = 0;  // L: longest role word
    Accounting accounting;
    std::vector<Stage> stages;
    Mat reference;
    std::map<std::string, Mat2> ideals;  // role name -> exact gate it stands for
};

// --------------------------------------------------------- exact stand-ins

inline std::vector<BraidWord> standin_words(Endpoint e) {
    const Factor pre = e == Endpoint::TopToBottom ? Factor{1, 1} : Factor{2, 1};
    const Factor suf = e == Endpoint::TopToBottom ? Factor{2, 1} : Factor{2, -1};
    std::vector<BraidWord> out;
    out.push_back(BraidWord{pre, suf});
    const int pw[3] = {2, -2, 4};
    for (int n = 1; n <= 3 && out.size() < 40; ++n)
        for (int g0 = 1; g0 <= 2 && out.size() < 40; ++g0) {
            int total = 1;
            for (int j = 0; j < n; ++j) total *= 3;
            for (int code = 0; code < total && out.size() < 40; ++code) {
                BraidWord w{pre};
                int c = code;
                std::vector<int> digits(n);
                for (int j = n - 1; j >= 0; --j) digits[j] = c % 3, c /= 3;
                for (int j = 0; j < n; ++j) w.factors.push_back({(g0 - 1 + j) % 2 + 1, pw[digits[j]]});
                w.factors.push_back(suf);
                out.push_back(w);
            }
        }
    return out;
}

namespace detail {
inline void apply_word(const GeneratorSet& gs, const BraidWord& macro, const std::vector<int>& comp, ReadingOrder o, Mat& u) {
    apply_steps(gs, time_sequence(cable(macro, comp, o).word, o), u);
}
}  // namespace detail

// Linear combination of cabled braids whose three-strand action is the
// exact gate on the tau sector and 1 on the vacuum and trivial-weft sectors.
inline Mat exact_stage_matrix(const Stage& st, const GeneratorSet& gs, const ConventionProfile& p) {
    const ExactSpec& ex = *st.exact;
    std::vector<BraidWord> ws = standin_words(ex.endpoint);
    Mat2 g = ex.gate;
    if (ex.inverse) {
        for (auto& w : ws) w = w.inverse();
        g = g.inverse().eval();
    }
    const int K = int(ws.size());
    Mat a(6, K);
    for (int k = 0; k < K; ++k) {
        const Mat2 t = effective_block(ws[k], ex.embedding, p);
        a(0, k) = t(0, 0), a(1, k) = t(0, 1), a(2, k) = t(1, 0), a(3, k) = t(1, 1);
        a(4, k) = effective_vacuum(ws[k], ex.embedding, p);
        a(5, k) = 1.0;
    }
    Eigen::VectorXcd b(6);
    b << g(0, 0), g(0, 1), g(1, 0), g(1, 1), 1.0, 1.0;
    const Eigen::VectorXcd c = a.completeOrthogonalDecomposition().solve(b);
    if ((a * c - b).norm() > 1e-10) throw std::runtime_error("exact stand-in: gate outside the span of the basis braids");
    Mat u = Mat::Zero(gs.dim(), gs.dim());
    for (int k = 0; k < K; ++k) {
        Mat uk = Mat::Identity(gs.dim(), gs.dim());
        detail::apply_word(gs, lift(ws[k], ex.offset, ex.embedding), st.composition, p.reading_order, uk);
        u += c(k) * uk;
    }
    return u;
}

// ----------------------------------------------------------------- builders

inline std::vector<int> layout(int anyons, int start, const std::vector<int>& widths) {
    std::vector<int> c(start - 1, 1);
    c.insert(c.end(), widths.begin(), widths.end());
    int used = 0;
    for (int w : c) used += w;
    if (used > anyons) throw InvalidInput("stage does not fit in " + std::to_string(anyons) + " anyons");
    c.insert(c.end(), anyons - used, 1);
    return c;
}

inline Stage make_stage(const std::string& name, const Role& role, int anyons, int start, const std::vector<int>& widths,
                        Endpoint endpoint, Embedding e, bool inverse) {
    Stage st;
    st.name = name;
    st.composition = layout(anyons, start, widths);
    const int offset = start - 1;
    if (role.is_exact()) {
        st.exact = ExactSpec{role.target, endpoint, offset, e, inverse};
        return st;
    }
    const BraidWord w = inverse ? role.word->inverse() : *role.word;
    const auto cls = endpoint_class(w);
    if (!cls || *cls != endpoint)
        throw InvalidInput("stage '" + name + "': word endpoints are not " + to_string(endpoint));
    st.word = lift(w, offset, e);
    return st;
}

inline Mat controlled_reference(int qubits, int control, int target, const Mat2& u) {
    const int d = 1 << qubits;
    Mat r = Mat::Zero(d, d);
    const int cb = qubits - 1 - control, tb = qubits - 1 - target;
    for (int col = 0; col < d; ++col) {
        if (!((col >> cb) & 1)) {
            r(col, col) = 1;
            continue;
        }
        const int tin = (col >> tb) & 1;
        for (int tout = 0; tout < 2; ++tout) {
            const int row = (col & ~(1 << tb)) | (tout << tb);
            r(row, col) = u(tout, tin);
        }
    }
    return r;
}

// S on the last qubit for the listed control patterns of the first two.
inline Mat block_reference(const std::vector<int>& controls, const Mat2& s) {
    Mat r = Mat::Identity(8, 8);
    for (int c : controls) r.block<2, 2>(2 * c, 2 * c) = s;
    return r;
}

inline Mat m_reference(const Mat2& s, bool not_r) { return not_r ? block_reference({1, 2, 3}, s) : block_reference({1, 2}, s); }
inline Mat ccs_reference(const Mat2& s) { return block_reference({3}, s); }

inline Mat swap_reference(int qubits, int j) {
    const int d = 1 << qubits;
    Mat r = Mat::Zero(d, d);
    const int a = qubits - 1 - j, b = qubits - 2 - j;
    for (int col = 0; col < d; ++col) {
        const int x = (col >> a) & 1, y = (col >> b) & 1;
        int row = col & ~(1 << a) & ~(1 << b);
        row |= (y << a) | (x << b);
        r(row, col) = 1;
    }
    return r;
}

inline int max_len(std::initializer_list<const Role*> roles) {
    int l = 0;
    for (const Role* r : roles) l = std::max(l, r->length());
    return l;
}

inline GateCircuit build_injection_cu(const Role& inject, const Role& target, int qubits = 2, int control = 0,
                                      const ConventionProfile& p = pinned_profile()) {
    if (qubits < 2 || qubits > 3 || control < 0 || control + 1 >= qubits) throw InvalidInput("injection CU: need control + 1 < qubits <= 3");
    const int n = 4 * qubits, s = 4 * control + 3;
    const Embedding e = p.weft_embedding;
    GateCircuit c;
    c.name = "injection-cu";
    c.kind = GateKind::InjectionCU;
    c.anyons = n;
    c.qubits = qubits;
    c.weave_length = max_len({&inject, &target});
    c.accounting = {6, 0, 6, 0, 1, 2};
    c.stages.push_back(make_stage("inject", inject, n, s, {2, 1, 1}, Endpoint::TopToBottom, e, false));
    c.stages.push_back(make_stage("target", target, n, s + 2, {2, 1, 1}, Endpoint::SameStrand, e, false));
    c.stages.push_back(make_stage("inject^-1", inject, n, s, {1, 1, 2}, Endpoint::TopToBottom, e, true));
    const Mat2 u = ideal_gate(target, e, p);
    c.ideals = {{"inject", ideal_gate(inject, e, p)}, {"target", u}};
    c.reference = controlled_reference(qubits, control, control + 1, u);
    return c;
}

inline GateCircuit build_m_gate(const Role& r, const Role& i, const Role& s, const ConventionProfile& p = pinned_profile(),
                                const std::optional<Mat>& reference = std::nullopt) {
    const int n = 12;
    const Embedding e = p.weft_embedding;
    GateCircuit c;
    c.anyons = n;
    c.qubits = 3;
    c.weave_length = max_len({&r, &i, &s});
    c.accounting = {20, 0, 20, 0, 4, 3};
    c.stages.push_back(make_stage("R", r, n, 3, {2, 2, 2}, Endpoint::TopToBottom, e, false));
    c.stages.push_back(make_stage("I", i, n, 5, {4, 1, 1}, Endpoint::TopToBottom, e, false));
    c.stages.push_back(make_stage("S", s, n, 7, {4, 1, 1}, Endpoint::SameStrand, e, false));
    c.stages.push_back(make_stage("I^-1", i, n, 5, {1, 1, 4}, Endpoint::TopToBottom, e, true));
    c.stages.push_back(make_stage("R^-1", r, n, 3, {2, 2, 2}, Endpoint::TopToBottom, e, true));
    const Mat2 ri = ideal_gate(r, e, p), si = ideal_gate(s, e, p);
    c.ideals = {{"R", ri}, {"I", ideal_gate(i, e, p)}, {"S", si}};
    const Mat2 id = Mat2::Identity(), x = gate_matrix("X");
    if (distance(ri, id) < 0.25) {
        c.kind = GateKind::MIdentity;
        c.name = "m-identity";
        c.reference = m_reference(si, false);
    } else if (distance(ri, x) < 0.25) {
        c.kind = GateKind::MNot;
        c.name = "m-not";
        c.reference = m_reference(si, true);
    } else {
        if (!reference) throw InvalidInput("M gate: R role approximates neither I nor NOT; an explicit reference matrix is required");
        c.kind = GateKind::Custom;
        c.name = "m-custom";
    }
    if (reference) {
        if (reference->rows() != 8 || reference->cols() != 8) throw InvalidInput("M gate: reference must be 8x8");
        c.reference = *reference;
    }
    return c;
}

inline Stage swap_stage(int qubits, int j) {
    if (j < 0 || j + 1 >= qubits) throw InvalidInput("swap: qubit index out of range");
    Stage st;
    st.name = "swap";
    st.composition.assign(qubits, 4);
    st.word = BraidWord{{j + 1, 1}};
    return st;
}

inline GateCircuit build_swap(int qubits, int j) {
    GateCircuit c;
    c.name = "swap";
    c.kind = GateKind::Swap;
    c.anyons = 4 * qubits;
    c.qubits = qubits;
    c.accounting = {0, 16, 0, 16, 1, 0};
    c.stages.push_back(swap_stage(qubits, j));
    c.reference = swap_reference(qubits, j);
    return c;
}

inline GateCircuit build_ccs(const GateCircuit& m, const Role& not_role, const Role& s_role, const ConventionProfile& p = pinned_profile()) {
    if (m.kind != GateKind::MNot) throw InvalidInput("CCS: the M circuit must have a NOT-type R role");
    const int n = 12;
    const Embedding d = Embedding::Direct;
    const Mat2 s = ideal_gate(s_role, d, p);
    if (distance(m.ideals.at("S"), s.adjoint()) > 0.25) throw InvalidInput("CCS: the M circuit's target must be S-dagger");
    GateCircuit c;
    c.name = "ccs";
    c.kind = GateKind::CCS;
    c.anyons = n;
    c.qubits = 3;
    c.weave_length = std::max({m.weave_length, not_role.length(), s_role.length()});
    c.accounting = {25, 0, 22, 0, 4, 3};
    c.stages.push_back(make_stage("NOT q0", not_role, n, 1, {1, 1, 1}, Endpoint::SameStrand, d, false));
    c.stages.push_back(make_stage("NOT q1", not_role, n, 5, {1, 1, 1}, Endpoint::SameStrand, d, false));
    c.stages.push_back(make_stage("S q2", s_role, n, 9, {1, 1, 1}, Endpoint::SameStrand, d, false));
    for (const auto& st : m.stages) c.stages.push_back(st);
    c.stages.push_back(make_stage("NOT^-1 q0", not_role, n, 1, {1, 1, 1}, Endpoint::SameStrand, d, true));
    c.stages.push_back(make_stage("NOT^-1 q1", not_role, n, 5, {1, 1, 1}, Endpoint::SameStrand, d, true));
    c.ideals = m.ideals;
    c.ideals["NOT"] = ideal_gate(not_role, d, p);
    c.ideals["S_pre"] = s;
    c.reference = ccs_reference(s);
    return c;
}

inline void append_stages(GateCircuit& c, const GateCircuit& part, const std::string& prefix) {
    for (auto st : part.stages) {
        st.name = prefix + st.name;
        c.stages.push_back(std::move(st));
    }
}

// Time order: C-sqrtU(1->2), CNOT(0->1), C-sqrtU^-1(1->2), CNOT^-1(0->1),
// SWAP(0,1), C-sqrtU(1->2), SWAP(0,1).
inline GateCircuit build_ccs_decomposition(const Role& inject_cnot, const Role& inject_csqrt, const Role& sqrt_not, const Role& not_role,
                                           const ConventionProfile& p = pinned_profile()) {
    GateCircuit c;
    c.name = "ccs-decomposition";
    c.kind = GateKind::Decomposition;
    c.anyons = 12;
    c.qubits = 3;
    c.weave_length = max_len({&inject_cnot, &inject_csqrt, &sqrt_not, &not_role});
    c.accounting = {30, 32, 30, 32, 7, 3};
    append_stages(c, build_injection_cu(inject_csqrt, sqrt_not, 3, 1, p), "csqrt/");
    append_stages(c, build_injection_cu(inject_cnot, not_role, 3, 0, p), "cnot/");
    append_stages(c, build_injection_cu(inject_csqrt, sqrt_not.inverse(), 3, 1, p), "csqrt-dag/");
    append_stages(c, build_injection_cu(inject_cnot, not_role.inverse(), 3, 0, p), "cnot-dag/");
    c.stages.push_back(swap_stage(3, 0));
    append_stages(c, build_injection_cu(inject_csqrt, sqrt_not, 3, 1, p), "csqrt/");
    c.stages.push_back(swap_stage(3, 0));
    const Mat2 v = ideal_gate(sqrt_not, p.weft_embedding, p);
    c.ideals = {{"sqrtU", v}, {"NOT", ideal_gate(not_role, p.weft_embedding, p)}};
    c.reference = ccs_reference(v * v);
    return c;
}

// Stages of `parts` run in the listed time order.
inline GateCircuit compose(const std::vector<GateCircuit>& parts, const std::string& name) {
    if (parts.empty()) throw InvalidInput("compose: no circuits");
    GateCircuit c;
    c.name = name;
    c.anyons = parts.front().anyons;
    c.qubits = parts.front().qubits;
    c.reference = Mat::Identity(1 << c.qubits, 1 << c.qubits);
    for (const auto& part : parts) {
        if (part.anyons != c.anyons) throw InvalidInput("compose: anyon counts differ");
        append_stages(c, part, part.name + "/");
        c.reference = (part.reference * c.reference).eval();
        c.weave_length = std::max(c.weave_length, part.weave_length);
    }
    return c;
}

// ---------------------------------------------------------------- evaluate

struct Evaluation {
    Mat full;
    Mat block;
};

inline Evaluation evaluate_circuit(const GateCircuit& c, const ConventionProfile& p = pinned_profile()) {
    const auto gs = generators(c.anyons, Charge::Vacuum, p.handedness);
    Mat u = Mat::Identity(gs->dim(), gs->dim());
    for (const auto& st : c.stages) {
        check_composition(st.composition, c.anyons);
        if (st.exact) {
            u = (exact_stage_matrix(st, *gs, p) * u).eval();
        } else {
            detail::apply_word(*gs, st.word, st.composition, p.reading_order, u);
        }
    }
    const auto idx = computational_indices(gs->basis, c.qubits);
    return {u, submatrix(u, idx)};
}

// ------------------------------------------------------------ serialization

inline json circuit_to_json(const GateCircuit& c) {
    json stages = json::array();
    for (const auto& st : c.stages) {
        json s = {{"name", st.name}, {"word", st.word.str()}, {"composition", st.composition}};
        if (st.exact)
            s["exact"] = {{"gate", matrix_to_json(st.exact->gate)},
                          {"endpoint", to_string(st.exact->endpoint)},
                          {"offset", st.exact->offset},
                          {"embedding", to_string(st.exact->embedding)},
                          {"inverse", st.exact->inverse}};
        stages.push_back(s);
    }
    json ideals = json::object();
    for (const auto& [k, v] : c.ideals) ideals[k] = matrix_to_json(v);
    return {{"name", c.name},
            {"kind", to_string(c.kind)},
            {"anyons", c.anyons},
            {"qubits", c.qubits},
            {"weave_length", c.weave_length},
            {"accounting",
             {{"length", {c.accounting.length_per_L, c.accounting.length_const}},
              {"depth", {c.accounting.depth_per_L, c.accounting.depth_const}},
              {"two_qubit_gates", c.accounting.two_qubit_gates},
              {"three_anyon_gates", c.accounting.three_anyon_gates}}},
            {"stages", stages},
            {"ideals", ideals},
            {"reference", matrix_to_json(c.reference)}};
}

inline GateCircuit circuit_from_json(const json& j) {
    GateCircuit c;
    try {
        c.name = j.at("name").get<std::string>();
        c.kind = parse_gate_kind(j.value("kind", std::string("custom")));
        c.anyons = j.at("anyons").get<int>();
        c.qubits = j.at("qubits").get<int>();
        c.weave_length = j.value("weave_length", 0);
        if (j.contains("accounting")) {
            const auto& a = j.at("accounting");
            c.accounting.length_per_L = a.at("length")[0], c.accounting.length_const = a.at("length")[1];
            c.accounting.depth_per_L = a.at("depth")[0], c.accounting.depth_const = a.at("depth")[1];
            c.accounting.two_qubit_gates = a.value("two_qubit_gates", 0);
            c.accounting.three_anyon_gates = a.value("three_anyon_gates", 0);
        }
        for (const auto& s : j.at("stages")) {
            Stage st;
            st.name = s.at("name").get<std::string>();
            st.word = BraidWord::parse(s.at("word").get<std::string>());
            st.composition = s.at("composition").get<std::vector<int>>();
            if (s.contains("exact")) {
                const auto& e = s.at("exact");
                const Mat g = matrix_from_json(e.at("gate"));
                if (g.rows() != 2) throw InvalidInput("exact stage gate must be 2x2");
                st.exact = ExactSpec{g, parse_endpoint(e.at("endpoint").get<std::string>()), e.at("offset").get<int>(),
                                     parse_embedding(e.at("embedding").get<std::string>()), e.at("inverse").get<bool>()};
            }
            c.stages.push_back(std::move(st));
        }
        if (j.contains("ideals"))
            for (const auto& [k, v] : j.at("ideals").items()) c.ideals[k] = matrix_from_json(v);
        c.reference = matrix_from_json(j.at("reference"));
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("malformed circuit description: ") + e.what());
    }
    if (c.qubits < 1 || c.qubits > 3 || c.anyons != 4 * c.qubits) throw InvalidInput("circuit: anyons must be 4 x qubits with 1..3 qubits");
    if (c.reference.rows() != (1 << c.qubits)) throw InvalidInput("circuit: reference dimension does not match qubit count");
    for (const auto& st : c.stages) {
        check_composition(st.composition, c.anyons);
        if (st.word.max_gen() >= int(st.composition.size())) throw InvalidInput("circuit: stage '" + st.name + "' uses a macro index beyond its composition");
    }
    return c;
}

}  // namespace fibc
