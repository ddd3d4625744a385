#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace fibc {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Mat2 = Eigen::Matrix2cd;

inline constexpr double kTol = 1e-12;          // involution / unitarity of model data
inline constexpr double kUnitaryTol = 1e-10;   // tagged-unitary matrices

struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct Infeasible : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CalibrationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Charge { Vacuum = 0, Tau = 1 };
enum class Handedness { Right, Left };

inline std::vector<Charge> fuse(Charge a, Charge b) {
    if (a == Charge::Vacuum) return {b};
    if (b == Charge::Vacuum) return {a};
    return {Charge::Vacuum, Charge::Tau};
}

inline const char* to_string(Charge c) { return c == Charge::Vacuum ? "vac" : "tau"; }
inline const char* to_string(Handedness h) { return h == Handedness::Right ? "right" : "left"; }

inline Charge parse_charge(const std::string& s) {
    if (s == "vac" || s == "1" || s == "vacuum") return Charge::Vacuum;
    if (s == "tau" || s == "t") return Charge::Tau;
    throw InvalidInput("unknown charge '" + s + "'");
}

inline Handedness parse_handedness(const std::string& s) {
    if (s == "right" || s == "R") return Handedness::Right;
    if (s == "left" || s == "L") return Handedness::Left;
    throw InvalidInput("unknown handedness '" + s + "'");
}

inline constexpr double phi = std::numbers::phi;

struct ModelConstants {
    double phi;
    Eigen::Matrix2d f_matrix;
    Mat2 r_matrix;
    Handedness handedness;

    cd r(Charge c) const { return r_matrix(int(c), int(c)); }
};

inline ModelConstants model_constants(Handedness h = Handedness::Right) {
    using std::numbers::pi;
    ModelConstants m;
    m.phi = phi;
    const double a = 1.0 / phi, b = 1.0 / std::sqrt(phi);
    m.f_matrix << a, b, b, -a;
    const double s = h == Handedness::Right ? 1.0 : -1.0;
    m.r_matrix = Mat2::Zero();
    m.r_matrix(0, 0) = std::polar(1.0, s * 4.0 * pi / 5.0);
    m.r_matrix(1, 1) = -std::polar(1.0, s * 2.0 * pi / 5.0);
    m.handedness = h;
    return m;
}

inline double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

inline bool is_unitary(const Mat& u, double tol = kUnitaryTol) {
    if (u.rows() != u.cols()) return false;
    return max_abs(u * u.adjoint() - Mat::Identity(u.rows(), u.cols())) < tol;
}

}  // namespace fibc
