#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "core.hpp"

namespace fibc {

using json = nlohmann::json;

inline json matrix_to_json(const Mat& m) {
    if (m.rows() != m.cols()) throw InvalidInput("matrix_to_json: matrix is not square");
    json entries = json::array();
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) entries.push_back({m(r, c).real(), m(r, c).imag()});
    return {{"dim", m.rows()}, {"entries", entries}};
}

inline Mat matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("entries")) throw InvalidInput("matrix JSON needs 'dim' and 'entries'");
    const int d = j.at("dim").get<int>();
    const auto& e = j.at("entries");
    if (d < 0 || !e.is_array() || e.size() != std::size_t(d) * std::size_t(d))
        throw InvalidInput("matrix JSON: entries must hold dim*dim [re, im] pairs");
    Mat m(d, d);
    for (int k = 0; k < d * d; ++k) {
        const auto& p = e[k];
        if (!p.is_array() || p.size() != 2) throw InvalidInput("matrix JSON: entry is not a [re, im] pair");
        m(k / d, k % d) = cd(p[0].get<double>(), p[1].get<double>());
    }
    return m;
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InvalidInput("'" + path + "' is not valid JSON: " + e.what());
    }
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << text;
    if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace fibc
