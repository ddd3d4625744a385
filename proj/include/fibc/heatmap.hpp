#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <string>

#include "core.hpp"

namespace fibc {

// Transfer curves for matrix heatmaps.
//   hue        = kHueSpan * (arg z + pi) / (2 pi)   (degrees; red at -pi, violet at +pi)
//   value      = min(1, |z| / kValueRamp)            (dark near zero)
//   saturation = exp(-(|z| - 1)^2 / (2 kSatWidth^2)) (full at unit amplitude)
inline constexpr double kHueSpan = 300.0;
inline constexpr double kValueRamp = 0.5;
inline constexpr double kSatWidth = 0.35;

using Rgb = std::array<std::uint8_t, 3>;

inline Rgb hsv_to_rgb(double h, double s, double v) {
    h = std::fmod(h, 360.0);
    if (h < 0) h += 360.0;
    const double c = v * s;
    const double x = c * (1 - std::abs(std::fmod(h / 60.0, 2.0) - 1));
    const double m = v - c;
    double r = 0, g = 0, b = 0;
    switch (int(h / 60.0)) {
        case 0: r = c, g = x; break;
        case 1: r = x, g = c; break;
        case 2: g = c, b = x; break;
        case 3: g = x, b = c; break;
        case 4: r = x, b = c; break;
        default: r = c, b = x; break;
    }
    auto q = [m](double t) { return std::uint8_t(std::lround(std::clamp(t + m, 0.0, 1.0) * 255.0)); };
    return {q(r), q(g), q(b)};
}

inline Rgb heat_color(cd z) {
    const double a = std::abs(z);
    const double hue = kHueSpan * (std::arg(z) + std::numbers::pi) / (2 * std::numbers::pi);
    const double v = std::min(1.0, a / kValueRamp);
    const double s = std::exp(-(a - 1) * (a - 1) / (2 * kSatWidth * kSatWidth));
    return hsv_to_rgb(hue, s, v);
}

// Binary PPM, one pixel per entry, row-major.
inline std::string heatmap_ppm(const Mat& m) {
    if (m.rows() < 1 || m.cols() < 1) throw InvalidInput("heatmap: empty matrix");
    std::string out = "P6\n" + std::to_string(m.cols()) + " " + std::to_string(m.rows()) + "\n255\n";
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            const Rgb px = heat_color(m(r, c));
            out.append(reinterpret_cast<const char*>(px.data()), 3);
        }
    return out;
}

inline void emit_heatmap(const Mat& m, const std::string& path) {
    const std::string bytes = heatmap_ppm(m);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot write '" + path + "'");
    f.write(bytes.data(), std::streamsize(bytes.size()));
    if (!f) throw IoError("write failed for '" + path + "'");
}

}  // namespace fibc
