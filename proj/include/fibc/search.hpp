#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "io.hpp"
#include "su2.hpp"

namespace fibc {

enum class Endpoint { SameStrand, TopToBottom };

inline const char* to_string(Endpoint e) { return e == Endpoint::SameStrand ? "same" : "top-to-bottom"; }

inline Endpoint parse_endpoint(const std::string& s) {
    if (s == "same" || s == "same-strand") return Endpoint::SameStrand;
    if (s == "ttb" || s == "top-to-bottom") return Endpoint::TopToBottom;
    throw InvalidInput("unknown endpoint '" + s + "'");
}

// Strand permutation of a three-strand word, as images of positions 1..3.
inline std::array<int, 3> strand_permutation(const BraidWord& w) {
    std::array<int, 3> pos{0, 1, 2};
    for (const auto& f : w.factors) {
        if (f.gen != 1 && f.gen != 2) throw InvalidInput("strand_permutation: word is not on three strands");
        if (f.power % 2 == 0) continue;
        const int a = f.gen - 1;
        for (int& p : pos) p = p == a ? a + 1 : p == a + 1 ? a : p;
    }
    return pos;
}

// SameStrand: every strand returns. TopToBottom: an end strand ends at the
// other end. Both classes are closed under inversion and sigma_1 <-> sigma_2.
inline std::optional<Endpoint> endpoint_class(const BraidWord& w) {
    const auto p = strand_permutation(w);
    if (p[0] == 0 && p[1] == 1 && p[2] == 2) return Endpoint::SameStrand;
    if (p[0] == 2 || p[2] == 0) return Endpoint::TopToBottom;
    return std::nullopt;
}

struct WeaveSearchSpec {
    Mat2 target = Mat2::Identity();
    int length_budget = 8;
    Endpoint endpoint = Endpoint::SameStrand;
    bool weave_only = true;
    int shard_index = 0;
    int shard_count = 1;
    int top_k = 32;
    Handedness handedness = Handedness::Right;
    ReadingOrder reading_order = ReadingOrder::PrintedLeftLast;
    bool prune = true;
    int threads = 1;

    void validate() const {
        if (length_budget < 1) throw InvalidInput("search: length budget must be >= 1");
        if (shard_count < 1 || shard_index < 0 || shard_index >= shard_count) throw InvalidInput("search: shard must satisfy 0 <= k < N");
        if (top_k < 1) throw InvalidInput("search: top_k must be >= 1");
        if (threads < 1) throw InvalidInput("search: threads must be >= 1");
        if (!is_unitary(target, 1e-9)) throw InvalidInput("search: target is not unitary");
    }

    // Everything that defines the candidate space; shard index, top_k and
    // threads are excluded.
    json canonical() const {
        json t = json::array();
        char buf[64];
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                std::snprintf(buf, sizeof buf, "%.12f,%.12f", target(r, c).real() + 0.0, target(r, c).imag() + 0.0);
                t.push_back(buf);
            }
        return {{"target", t},
                {"length_budget", length_budget},
                {"endpoint", to_string(endpoint)},
                {"weave_only", weave_only},
                {"shard_count", shard_count},
                {"handedness", to_string(handedness)},
                {"reading_order", to_string(reading_order)},
                {"prune", prune}};
    }

    std::string fingerprint() const {
        std::uint64_t h = 1469598103934665603ull;
        for (unsigned char c : canonical().dump()) {
            h ^= c;
            h *= 1099511628211ull;
        }
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
        return buf;
    }
};

struct Candidate {
    BraidWord word;
    double error = 0;
    int winding = 0;
};

inline bool candidate_less(const Candidate& a, const Candidate& b) {
    if (a.error != b.error) return a.error < b.error;
    if (a.word.length() != b.word.length()) return a.word.length() < b.word.length();
    return a.word.factors < b.word.factors;
}

struct SearchResult {
    std::string fingerprint;
    json spec;
    std::vector<int> shards;
    long long enumerated_count = 0;
    std::vector<Candidate> candidates;

    json to_json() const {
        json c = json::array();
        for (const auto& k : candidates) c.push_back({{"word", k.word.str()}, {"error", k.error}, {"winding", k.winding}});
        return {{"fingerprint", fingerprint}, {"spec", spec}, {"shards", shards}, {"enumerated_count", enumerated_count}, {"candidates", c}};
    }

    static SearchResult from_json(const json& j) {
        SearchResult r;
        try {
            r.fingerprint = j.at("fingerprint").get<std::string>();
            r.spec = j.at("spec");
            r.shards = j.at("shards").get<std::vector<int>>();
            r.enumerated_count = j.at("enumerated_count").get<long long>();
            for (const auto& c : j.at("candidates"))
                r.candidates.push_back({BraidWord::parse(c.at("word").get<std::string>()), c.at("error").get<double>(), c.at("winding").get<int>()});
        } catch (const json::exception& e) {
            throw InvalidInput(std::string("malformed search result: ") + e.what());
        }
        return r;
    }
};

namespace detail {

struct TopK {
    std::size_t k;
    std::vector<Candidate> heap;  // max-heap on candidate_less: front is the worst kept

    bool admits(double err) const { return heap.size() < k || err <= heap.front().error; }

    void offer(Candidate c) {
        if (heap.size() < k) {
            heap.push_back(std::move(c));
            std::push_heap(heap.begin(), heap.end(), candidate_less);
        } else if (candidate_less(c, heap.front())) {
            std::pop_heap(heap.begin(), heap.end(), candidate_less);
            heap.back() = std::move(c);
            std::push_heap(heap.begin(), heap.end(), candidate_less);
        }
    }

    std::vector<Candidate> sorted() const {
        auto v = heap;
        std::sort(v.begin(), v.end(), candidate_less);
        return v;
    }
};

struct Adjuster {
    std::optional<Factor> pre, suf;
    int length() const { return (pre ? 1 : 0) + (suf ? 1 : 0); }
};

inline std::vector<Adjuster> adjusters(const WeaveSearchSpec& s) {
    std::vector<Adjuster> out;
    if (!s.weave_only) return {Adjuster{}};
    if (s.endpoint == Endpoint::SameStrand) out.push_back({});
    const int first = s.endpoint == Endpoint::TopToBottom ? 1 : 2;
    for (int a : {-1, 1})
        for (int b : {-1, 1}) out.push_back({Factor{first, a}, Factor{2, b}});
    return out;
}

inline std::vector<int> alphabet(const WeaveSearchSpec& s) {
    if (s.weave_only) return {-4, -2, 2, 4};
    return {-4, -3, -2, -1, 1, 2, 3, 4};
}

inline BraidWord make_body(int first_gen, const std::vector<int>& powers) {
    BraidWord b;
    b.factors.reserve(powers.size());
    for (std::size_t j = 0; j < powers.size(); ++j) b.factors.push_back({j % 2 == 0 ? first_gen : 3 - first_gen, powers[j]});
    return b;
}

struct Plan {
    std::vector<Adjuster> adj;
    std::vector<int> alpha;
    std::vector<int> firsts;
    int max_body = 0;
    bool gamma = false;
    bool hermitian = false;
    Quaternion q_gamma;
    std::vector<Quaternion> t, tg;  // per adjuster: plain and Gamma-conjugated body targets
    Quaternion gq[2];
};

inline Plan make_plan(const WeaveSearchSpec& s) {
    Plan p;
    p.adj = adjusters(s);
    p.alpha = alphabet(s);
    p.firsts = s.prune ? std::vector<int>{1} : std::vector<int>{1, 2};
    int min_adj = 99;
    for (const auto& a : p.adj) min_adj = std::min(min_adj, a.length());
    p.max_body = s.length_budget - min_adj;
    p.gamma = s.prune;
    const bool closed_under_inverse = !(s.weave_only && s.endpoint == Endpoint::TopToBottom);
    p.hermitian = s.prune && closed_under_inverse && is_phase_hermitian(s.target);

    const Handedness h = s.handedness;
    const ReadingOrder o = s.reading_order;
    p.gq[0] = generator_quaternion(1, h);
    p.gq[1] = generator_quaternion(2, h);
    p.q_gamma = word_quaternion(BraidWord{{1, 1}, {2, 1}, {1, 1}}, h, o);
    const Quaternion qt = Quaternion::from_su2(to_su2(s.target));
    for (const auto& a : p.adj) {
        Quaternion qp, qs;
        if (a.pre) qp = power_quaternion(p.gq[a.pre->gen - 1], a.pre->power);
        if (a.suf) qs = power_quaternion(p.gq[a.suf->gen - 1], a.suf->power);
        const Quaternion t = o == ReadingOrder::PrintedLeftLast ? qp.conj() * qt * qs.conj() : qs.conj() * qt * qp.conj();
        p.t.push_back(t);
        p.tg.push_back(p.q_gamma * t * p.q_gamma.conj());
    }
    return p;
}

// Smallest gen-1-first member of {B, Gamma B, B^-1, Gamma B^-1}.
inline bool hermitian_canonical(const BraidWord& b) {
    const BraidWord inv = b.inverse();
    const BraidWord alts[3] = {b.gamma_conjugate(), inv, inv.gamma_conjugate()};
    for (const auto& a : alts)
        if (a.factors.front().gen == 1 && a.factors < b.factors) return false;
    return true;
}

struct ShardOutput {
    TopK top;
    long long count = 0;
};

// Depth-first walk over bodies (first generator, powers) whose length fits
// max_body, in a fixed order; each body gets the next rank. The empty body
// has rank 0.
template <class F>
void walk_bodies(const Plan& p, F&& visit) {
    unsigned long long rank = 0;
    std::vector<int> powers;
    powers.reserve(p.max_body);
    visit(rank++, 1, powers, 0);
    auto rec = [&](auto&& self, int first, int len) -> void {
        for (int a : p.alpha) {
            if (len + std::abs(a) > p.max_body) continue;
            powers.push_back(a);
            visit(rank++, first, powers, len + std::abs(a));
            self(self, first, len + std::abs(a));
            powers.pop_back();
        }
    };
    for (int first : p.firsts) rec(rec, first, 0);
}

inline void score_body(const WeaveSearchSpec& s, const Plan& p, int first, const std::vector<int>& powers, int len, ShardOutput& out) {
    const int k = int(powers.size());
    const ReadingOrder o = s.reading_order;
    BraidWord body = make_body(first, powers);
    if (!s.weave_only) {
        if (k == 0) return;
        const auto cls = endpoint_class(body);
        if (!cls || *cls != s.endpoint) return;
    }
    if (p.hermitian && k > 0 && !hermitian_canonical(body)) return;

    Quaternion qb;
    for (int j = 0; j < k; ++j) {
        const Quaternion f = power_quaternion(p.gq[(j % 2 == 0 ? first : 3 - first) - 1], powers[j]);
        qb = o == ReadingOrder::PrintedLeftLast ? qb * f : f * qb;
    }
    const bool use_gamma = p.gamma && k > 0;
    for (std::size_t a = 0; a < p.adj.size(); ++a) {
        const Adjuster& adj = p.adj[a];
        if (len + adj.length() > s.length_budget) continue;
        if (len + adj.length() == 0) continue;
        ++out.count;
        auto emit = [&](double err, const BraidWord& b) {
            if (!out.top.admits(err)) return;
            BraidWord w;
            if (adj.pre) w.factors.push_back(*adj.pre);
            w.factors.insert(w.factors.end(), b.factors.begin(), b.factors.end());
            if (adj.suf) w.factors.push_back(*adj.suf);
            const int wind = w.winding();
            out.top.offer({std::move(w), err, wind});
        };
        emit(quaternion_distance(qb, p.t[a]), body);
        if (use_gamma) emit(quaternion_distance(qb, p.tg[a]), body.gamma_conjugate());
    }
}

// Shard k of N owns ranks congruent to k mod N; within a shard, thread t of T
// owns the shard's ranks whose quotient is congruent to t mod T.
inline void scan(const WeaveSearchSpec& s, const Plan& p, int thread, int threads, ShardOutput& out) {
    const unsigned long long n = unsigned(s.shard_count), sh = unsigned(s.shard_index), nt = unsigned(threads), t = unsigned(thread);
    walk_bodies(p, [&](unsigned long long rank, int first, const std::vector<int>& powers, int len) {
        if (rank % n != sh || (rank / n) % nt != t) return;
        score_body(s, p, first, powers, len, out);
    });
}

}  // namespace detail

inline SearchResult search(const WeaveSearchSpec& s) {
    s.validate();
    if (s.length_budget < 2)
        throw Infeasible("search: length budget " + std::to_string(s.length_budget) + " cannot realize a " + to_string(s.endpoint) + " weave (minimum 2)");
    const detail::Plan p = detail::make_plan(s);

    const int nt = s.threads;
    std::vector<detail::ShardOutput> outs(nt);
    for (auto& o : outs) o.top.k = s.top_k;
    auto worker = [&](int t) { detail::scan(s, p, t, nt, outs[t]); };
    if (nt == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nt; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }

    SearchResult r;
    r.fingerprint = s.fingerprint();
    r.spec = s.canonical();
    r.shards = {s.shard_index};
    detail::TopK all{std::size_t(s.top_k), {}};
    for (auto& o : outs) {
        r.enumerated_count += o.count;
        for (auto& c : o.top.heap) all.offer(c);
    }
    r.candidates = all.sorted();
    return r;
}

inline SearchResult merge(const std::vector<SearchResult>& results, int top_k) {
    if (results.empty()) throw InvalidInput("merge: no results");
    if (top_k < 1) throw InvalidInput("merge: top_k must be >= 1");
    SearchResult out;
    out.fingerprint = results.front().fingerprint;
    out.spec = results.front().spec;
    std::set<int> seen;
    detail::TopK all{std::size_t(top_k), {}};
    for (const auto& r : results) {
        if (r.fingerprint != out.fingerprint) throw InvalidInput("merge: spec fingerprints differ (" + r.fingerprint + " vs " + out.fingerprint + ")");
        for (int k : r.shards)
            if (!seen.insert(k).second) throw InvalidInput("merge: shard " + std::to_string(k) + " appears twice");
        out.enumerated_count += r.enumerated_count;
        for (const auto& c : r.candidates) all.offer(c);
    }
    out.shards.assign(seen.begin(), seen.end());
    out.candidates = all.sorted();
    return out;
}

}  // namespace fibc
