#pragma once

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <string>
#include <vector>

#include "basis.hpp"

namespace fibc {

struct Factor {
    int gen = 1;
    int power = 1;
    auto operator<=>(const Factor&) const = default;
};

class BraidWord {
public:
    std::vector<Factor> factors;

    BraidWord() = default;
    BraidWord(std::initializer_list<Factor> f) : factors(f) {}
    explicit BraidWord(std::vector<Factor> f) : factors(std::move(f)) {}

    // word := term (ws term)* ; term := 's' digit+ '^' sign? digit+
    static BraidWord parse(const std::string& text) {
        BraidWord w;
        std::size_t p = 0;
        auto skip_ws = [&] {
            while (p < text.size() && std::isspace(static_cast<unsigned char>(text[p]))) ++p;
        };
        auto digits = [&](const char* what) {
            std::size_t q = p;
            while (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p]))) ++p;
            if (q == p || p - q > 6) throw InvalidInput(std::string("malformed braid word: bad ") + what + " at column " + std::to_string(q));
            return std::stoi(text.substr(q, p - q));
        };
        skip_ws();
        while (p < text.size()) {
            if (text[p] != 's') throw InvalidInput("malformed braid word: expected 's' at column " + std::to_string(p));
            ++p;
            const int g = digits("generator");
            if (p >= text.size() || text[p] != '^') throw InvalidInput("malformed braid word: expected '^' at column " + std::to_string(p));
            ++p;
            int sign = 1;
            if (p < text.size() && (text[p] == '-' || text[p] == '+')) sign = text[p++] == '-' ? -1 : 1;
            const int pw = sign * digits("power");
            if (g < 1) throw InvalidInput("malformed braid word: generator index must be >= 1");
            if (pw == 0) throw InvalidInput("malformed braid word: zero power");
            w.factors.push_back({g, pw});
            const std::size_t before = p;
            skip_ws();
            if (p < text.size() && p == before) throw InvalidInput("malformed braid word: missing separator at column " + std::to_string(p));
        }
        return w;
    }

    std::string str() const {
        std::string s;
        for (const auto& f : factors) {
            if (!s.empty()) s += ' ';
            s += 's' + std::to_string(f.gen) + '^' + std::to_string(f.power);
        }
        return s;
    }

    bool empty() const { return factors.empty(); }
    std::size_t size() const { return factors.size(); }

    int length() const {
        int l = 0;
        for (const auto& f : factors) l += std::abs(f.power);
        return l;
    }

    int winding() const {
        int w = 0;
        for (const auto& f : factors) w += f.power;
        return w;
    }

    int max_gen() const {
        int m = 0;
        for (const auto& f : factors) m = std::max(m, f.gen);
        return m;
    }

    BraidWord normalized() const {
        BraidWord out;
        for (const auto& f : factors) {
            if (f.power == 0) continue;
            if (!out.factors.empty() && out.factors.back().gen == f.gen) {
                out.factors.back().power += f.power;
                if (out.factors.back().power == 0) out.factors.pop_back();
            } else {
                out.factors.push_back(f);
            }
        }
        return out;
    }

    BraidWord inverse() const {
        BraidWord out;
        for (auto it = factors.rbegin(); it != factors.rend(); ++it) out.factors.push_back({it->gen, -it->power});
        return out;
    }

    // Three strands only: sigma_1 <-> sigma_2.
    BraidWord gamma_conjugate() const {
        BraidWord out;
        for (const auto& f : factors) {
            if (f.gen != 1 && f.gen != 2) throw InvalidInput("gamma_conjugate: word is not on three strands");
            out.factors.push_back({3 - f.gen, f.power});
        }
        return out;
    }

    BraidWord operator+(const BraidWord& o) const {
        BraidWord out = *this;
        out.factors.insert(out.factors.end(), o.factors.begin(), o.factors.end());
        return out;
    }

    auto operator<=>(const BraidWord&) const = default;
    bool operator==(const BraidWord&) const = default;
};

// PrintedLeftLast: the printed product is the matrix, so the rightmost
// printed factor acts first. PrintedLeftFirst: the leftmost acts first.
enum class ReadingOrder { PrintedLeftFirst, PrintedLeftLast };

inline const char* to_string(ReadingOrder o) {
    return o == ReadingOrder::PrintedLeftLast ? "printed-left-last" : "printed-left-first";
}

inline ReadingOrder parse_reading_order(const std::string& s) {
    if (s == "printed-left-last") return ReadingOrder::PrintedLeftLast;
    if (s == "printed-left-first") return ReadingOrder::PrintedLeftFirst;
    throw InvalidInput("unknown reading order '" + s + "'");
}

// Unit steps (gen, +-1) in the order they act on states.
inline std::vector<Factor> time_sequence(const BraidWord& w, ReadingOrder order) {
    std::vector<Factor> out;
    out.reserve(w.length());
    auto push = [&](const Factor& f) {
        for (int k = 0; k < std::abs(f.power); ++k) out.push_back({f.gen, f.power > 0 ? 1 : -1});
    };
    if (order == ReadingOrder::PrintedLeftFirst)
        for (const auto& f : w.factors) push(f);
    else
        for (auto it = w.factors.rbegin(); it != w.factors.rend(); ++it) push(*it);
    return out;
}

inline BraidWord from_time_sequence(const std::vector<Factor>& steps, ReadingOrder order) {
    BraidWord w;
    if (order == ReadingOrder::PrintedLeftFirst)
        w.factors = steps;
    else
        w.factors.assign(steps.rbegin(), steps.rend());
    return w;
}

inline void apply_steps(const GeneratorSet& gs, const std::vector<Factor>& steps, Mat& u) {
    Mat scratch;
    for (const auto& s : steps) {
        if (s.gen < 1 || s.gen > int(gs.sparse.size())) throw InvalidInput("generator index " + std::to_string(s.gen) + " out of range");
        gs.sparse[s.gen - 1].apply_left(u, s.power, scratch);
    }
}

inline Mat word_matrix(const GeneratorSet& gs, const BraidWord& w, ReadingOrder order = ReadingOrder::PrintedLeftLast) {
    if (w.max_gen() > gs.basis.n - 1) throw InvalidInput("word_matrix: generator index out of range for " + std::to_string(gs.basis.n) + " anyons");
    Mat u = Mat::Identity(gs.dim(), gs.dim());
    apply_steps(gs, time_sequence(w, order), u);
    return u;
}

inline Mat word_matrix(const FusionBasis& basis, const BraidWord& w, Handedness h = Handedness::Right,
                       ReadingOrder order = ReadingOrder::PrintedLeftLast) {
    return word_matrix(*generators(basis.n, basis.sector, h), w, order);
}

}  // namespace fibc
