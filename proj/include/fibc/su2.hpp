#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "word.hpp"

namespace fibc {

// Unit quaternion q <-> w I - i (x X + y Y + z Z); matrix products map to
// Hamilton products.
struct Quaternion {
    double w = 1, x = 0, y = 0, z = 0;

    Quaternion operator*(const Quaternion& o) const {
        return {w * o.w - x * o.x - y * o.y - z * o.z,
                w * o.x + x * o.w + y * o.z - z * o.y,
                w * o.y - x * o.z + y * o.w + z * o.x,
                w * o.z + x * o.y - y * o.x + z * o.w};
    }
    Quaternion conj() const { return {w, -x, -y, -z}; }
    Quaternion operator-() const { return {-w, -x, -y, -z}; }
    double dot(const Quaternion& o) const { return w * o.w + x * o.x + y * o.y + z * o.z; }
    double norm() const { return std::sqrt(dot(*this)); }

    Mat2 matrix() const {
        const cd i(0, 1);
        Mat2 m;
        m << cd(w, -z), -i * x - y, -i * x + y, cd(w, z);
        return m;
    }

    static Quaternion from_su2(const Mat2& u) {
        return {0.5 * (u(0, 0).real() + u(1, 1).real()),
                -0.5 * (u(0, 1).imag() + u(1, 0).imag()),
                0.5 * (u(1, 0).real() - u(0, 1).real()),
                0.5 * (u(1, 1).imag() - u(0, 0).imag())};
    }

    // Sign-fixed representative: first nonzero component positive.
    Quaternion canonical(int* sign = nullptr) const {
        const std::array<double, 4> c{w, x, y, z};
        for (double v : c) {
            if (v > 0) break;
            if (v < 0) {
                if (sign) *sign = -1;
                return -*this;
            }
        }
        if (sign) *sign = 1;
        return *this;
    }
};

// Phase-blind SU(2) distance: 2 sin(beta/2), cos beta = |<a,b>|.
inline double quaternion_distance(const Quaternion& a, const Quaternion& b) {
    const Quaternion r = a.conj() * b;
    const double v = std::sqrt(r.x * r.x + r.y * r.y + r.z * r.z);
    const double beta = std::atan2(v, std::abs(r.w));
    return 2.0 * std::sin(0.5 * beta);
}

inline Mat2 to_su2(const Mat2& u) {
    const cd d = u.determinant();
    if (std::abs(d) < 1e-14) throw InvalidInput("to_su2: singular matrix");
    return u / std::sqrt(d);
}

// Three-anyon blocks of a word: tau sector 2x2 and vacuum sector phase.
inline Mat2 tau_block(const BraidWord& w, Handedness h = Handedness::Right, ReadingOrder o = ReadingOrder::PrintedLeftLast) {
    if (w.max_gen() > 2) throw InvalidInput("word does not act on three anyons");
    return word_matrix(*generators(3, Charge::Tau, h), w, o);
}

inline cd vacuum_phase(const BraidWord& w, Handedness h = Handedness::Right, ReadingOrder o = ReadingOrder::PrintedLeftLast) {
    if (w.max_gen() > 2) throw InvalidInput("word does not act on three anyons");
    return word_matrix(*generators(3, Charge::Vacuum, h), w, o)(0, 0);
}

inline double handed_sign(Handedness h) { return h == Handedness::Right ? 1.0 : -1.0; }

// sigma_i on the tau sector = e^{+-i pi/10} * generator_quaternion(i).
inline Quaternion generator_quaternion(int i, Handedness h) {
    const Mat2 m = (*generators(3, Charge::Tau, h))[i];
    return Quaternion::from_su2(m * std::polar(1.0, -handed_sign(h) * std::numbers::pi / 10.0));
}

inline Quaternion power_quaternion(const Quaternion& q, int p) {
    Quaternion r;
    const Quaternion b = p > 0 ? q : q.conj();
    for (int k = 0; k < std::abs(p); ++k) r = r * b;
    return r;
}

struct Su2Block {
    Quaternion q;
    int phase_sign = 1;
    // tau block = phase_sign * e^{+-i W pi/10} * q.matrix()
};

inline Quaternion word_quaternion(const BraidWord& w, Handedness h, ReadingOrder o = ReadingOrder::PrintedLeftLast) {
    const Quaternion g[2] = {generator_quaternion(1, h), generator_quaternion(2, h)};
    Quaternion r;
    for (const auto& f : w.factors) {
        if (f.gen != 1 && f.gen != 2) throw InvalidInput("su2_block: word does not act on three anyons");
        const Quaternion p = power_quaternion(g[f.gen - 1], f.power);
        r = o == ReadingOrder::PrintedLeftLast ? r * p : p * r;
    }
    return r;
}

inline Su2Block su2_block(const BraidWord& w, Handedness h = Handedness::Right, ReadingOrder o = ReadingOrder::PrintedLeftLast) {
    Su2Block b;
    b.q = word_quaternion(w, h, o).canonical(&b.phase_sign);
    return b;
}

inline Mat2 su2_block_matrix(const BraidWord& w, Handedness h = Handedness::Right, ReadingOrder o = ReadingOrder::PrintedLeftLast) {
    const Su2Block b = su2_block(w, h, o);
    return double(b.phase_sign) * std::polar(1.0, handed_sign(h) * w.winding() * std::numbers::pi / 10.0) * b.q.matrix();
}

inline double spectral_norm(const Mat& a) {
    if (a.size() == 0) return 0.0;
    Eigen::JacobiSVD<Mat> svd(a);
    return svd.singularValues()(0);
}

inline bool is_special_unitary(const Mat& u, double tol = kTol) {
    return u.rows() == 2 && u.cols() == 2 && is_unitary(u, tol) && std::abs(u.determinant() - 1.0) < tol;
}

// min over theta of sigma_max(u1 - e^{i theta} u2)
inline double distance(const Mat& u1, const Mat& u2) {
    if (u1.rows() != u2.rows() || u1.cols() != u2.cols()) throw InvalidInput("distance: dimension mismatch");
    if (u1.size() == 0) return 0.0;
    if (is_special_unitary(u1) && is_special_unitary(u2))
        return quaternion_distance(Quaternion::from_su2(u1), Quaternion::from_su2(u2));

    auto f = [&](double t) { return spectral_norm(u1 - std::polar(1.0, t) * u2); };
    constexpr double two_pi = 2.0 * std::numbers::pi;
    constexpr int grid = 64;
    const cd tr = (u2.adjoint() * u1).trace();
    std::vector<double> cands;
    if (std::abs(tr) > 1e-300) {
        cands.push_back(std::arg(tr));
        cands.push_back(std::arg(tr) + std::numbers::pi);
    }
    for (int k = 0; k < grid; ++k) cands.push_back(two_pi * k / grid);
    double best_t = 0, best = std::numeric_limits<double>::infinity();
    for (double t : cands)
        if (double v = f(t); v < best) best = v, best_t = t;

    const double h = two_pi / grid;
    double a = best_t - h, b = best_t + h;
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > 1e-12) {
        if (fc < fd) {
            b = d, d = c, fd = fc;
            c = b - g * (b - a), fc = f(c);
        } else {
            a = c, c = d, fc = fd;
            d = a + g * (b - a), fd = f(d);
        }
    }
    return std::min({best, fc, fd, f(0.5 * (a + b))});
}

inline Mat submatrix(const Mat& full, const std::vector<int>& idx) {
    Mat b(idx.size(), idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r)
        for (std::size_t c = 0; c < idx.size(); ++c) b(r, c) = full(idx[r], idx[c]);
    return b;
}

inline double block_leakage(const Mat& block) {
    const Mat gram = block * block.adjoint();
    Eigen::SelfAdjointEigenSolver<Mat> es(gram, Eigen::EigenvaluesOnly);
    const double lmin = std::max(es.eigenvalues().minCoeff(), 0.0);
    return std::clamp(1.0 - std::sqrt(lmin), 0.0, 1.0);
}

inline double leakage(const Mat& full, const std::vector<int>& computational) {
    if (computational.empty()) throw InvalidInput("leakage: empty index list");
    std::vector<char> seen(full.rows(), 0);
    for (int i : computational) {
        if (i < 0 || i >= full.rows()) throw InvalidInput("leakage: index out of range");
        if (seen[i]++) throw InvalidInput("leakage: duplicate index");
    }
    return block_leakage(submatrix(full, computational));
}

// Hermitian up to a global phase: for a unitary, u^2 proportional to I.
inline bool is_phase_hermitian(const Mat& u, double tol = kTol) {
    const Mat sq = u * u;
    const cd lam = sq.trace() / double(u.rows());
    return std::abs(std::abs(lam) - 1.0) < tol && max_abs(sq - lam * Mat::Identity(u.rows(), u.cols())) < tol;
}

inline Mat2 gate_matrix(const std::string& name) {
    const cd i(0, 1);
    const double r = 1.0 / std::sqrt(2.0);
    Mat2 m;
    if (name == "I") m << 1, 0, 0, 1;
    else if (name == "X") m << 0, 1, 1, 0;
    else if (name == "Y") m << 0, -i, i, 0;
    else if (name == "Z") m << 1, 0, 0, -1;
    else if (name == "H") m << r, r, r, -r;
    else if (name == "iX") m << 0, i, i, 0;
    else if (name == "-iX") m << 0, -i, -i, 0;
    else if (name == "sqrt-iX") m << r, i * r, i * r, r;
    else if (name == "sqrt--iX") m << r, -i * r, -i * r, r;
    else if (name.rfind("deutsch:", 0) == 0) {
        // i cos(t) I + sin(t) X
        double t;
        try {
            t = std::stod(name.substr(8));
        } catch (...) {
            throw InvalidInput("bad angle in '" + name + "'");
        }
        m << i * std::cos(t), std::sin(t), std::sin(t), i * std::cos(t);
    } else {
        throw InvalidInput("unknown gate '" + name + "'");
    }
    return m;
}

}  // namespace fibc
