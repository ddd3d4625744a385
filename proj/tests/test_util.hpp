#pragma once

#include <random>

#include <fibc/word.hpp>

namespace fibc::test_util {

inline BraidWord random_word(std::mt19937& rng, int max_gen, int factors, int max_power = 4) {
    std::uniform_int_distribution<int> g(1, max_gen), p(1, max_power), sgn(0, 1);
    BraidWord w;
    for (int k = 0; k < factors; ++k) w.factors.push_back({g(rng), sgn(rng) ? p(rng) : -p(rng)});
    return w;
}

inline Mat random_su2(std::mt19937& rng) {
    std::normal_distribution<double> n;
    double a = n(rng), b = n(rng), c = n(rng), d = n(rng);
    const double r = std::sqrt(a * a + b * b + c * c + d * d);
    a /= r, b /= r, c /= r, d /= r;
    Mat m(2, 2);
    m << cd(a, b), cd(c, d), cd(-c, d), cd(a, -b);
    return m;
}

}  // namespace fibc::test_util
