#pragma once

#include <cstdlib>
#include <string>

#include "io.hpp"
#include "word.hpp"

namespace fibc {

// How a three-strand word is laid onto three adjacent macro-strands.
// Direct: generator i is macro crossing i with the printed sign.
// Reflected: generator i is macro crossing 3 - i with the sign negated.
enum class Embedding { Direct, Reflected };

inline const char* to_string(Embedding e) { return e == Embedding::Direct ? "direct" : "reflected"; }

inline Embedding parse_embedding(const std::string& s) {
    if (s == "direct") return Embedding::Direct;
    if (s == "reflected") return Embedding::Reflected;
    throw InvalidInput("unknown embedding '" + s + "'");
}

struct ConventionProfile {
    Handedness handedness = Handedness::Right;
    ReadingOrder reading_order = ReadingOrder::PrintedLeftLast;
    Embedding weft_embedding = Embedding::Reflected;  // multi-anyon weft stages

    bool operator==(const ConventionProfile&) const = default;

    std::string str() const {
        return std::string(to_string(handedness)) + "/" + to_string(reading_order) + "/" + to_string(weft_embedding);
    }

    json to_json() const {
        return {{"handedness", to_string(handedness)},
                {"reading_order", to_string(reading_order)},
                {"weft_embedding", to_string(weft_embedding)}};
    }

    static ConventionProfile from_json(const json& j) {
        ConventionProfile p;
        try {
            p.handedness = parse_handedness(j.at("handedness").get<std::string>());
            p.reading_order = parse_reading_order(j.at("reading_order").get<std::string>());
            p.weft_embedding = parse_embedding(j.at("weft_embedding").get<std::string>());
        } catch (const json::exception& e) {
            throw InvalidInput(std::string("malformed convention profile: ") + e.what());
        }
        return p;
    }
};

// The profile fixed by calibration against the published words.
inline ConventionProfile pinned_profile() { return {}; }

// FIBC_PROFILE, if set, names a profile JSON file.
inline ConventionProfile active_profile() {
    const char* path = std::getenv("FIBC_PROFILE");
    if (!path || !*path) return pinned_profile();
    return ConventionProfile::from_json(read_json_file(path));
}

}  // namespace fibc
