#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include <fibc/basis.hpp>
#include <fibc/su2.hpp>

#include "test_util.hpp"

using namespace fibc;
using std::numbers::pi;

TEST(Model, FusionRules) {
    EXPECT_EQ(fuse(Charge::Vacuum, Charge::Tau), std::vector<Charge>{Charge::Tau});
    EXPECT_EQ(fuse(Charge::Tau, Charge::Vacuum), std::vector<Charge>{Charge::Tau});
    EXPECT_EQ(fuse(Charge::Vacuum, Charge::Vacuum), std::vector<Charge>{Charge::Vacuum});
    EXPECT_EQ(fuse(Charge::Tau, Charge::Tau), (std::vector<Charge>{Charge::Vacuum, Charge::Tau}));
}

TEST(Model, FMatrixIsRealSymmetricInvolution) {
    const auto m = model_constants();
    EXPECT_NEAR((m.f_matrix * m.f_matrix - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff(), 0, 1e-12);
    EXPECT_NEAR(m.f_matrix(0, 1), m.f_matrix(1, 0), 1e-15);
    EXPECT_NEAR(m.phi * m.phi, m.phi + 1, 1e-12);
}

TEST(Model, RPhasesBothHandednesses) {
    const auto r = model_constants(Handedness::Right), l = model_constants(Handedness::Left);
    EXPECT_NEAR(std::abs(r.r(Charge::Vacuum) - std::polar(1.0, 4 * pi / 5)), 0, 1e-14);
    EXPECT_NEAR(std::abs(r.r(Charge::Tau) - std::polar(1.0, -3 * pi / 5)), 0, 1e-14);
    EXPECT_NEAR(std::abs(l.r(Charge::Vacuum) - std::conj(r.r(Charge::Vacuum))), 0, 1e-14);
    EXPECT_NEAR(std::abs(l.r(Charge::Tau) - std::conj(r.r(Charge::Tau))), 0, 1e-14);
}

TEST(Model, ParseRejectsUnknownNames) {
    EXPECT_THROW(parse_charge("sigma"), InvalidInput);
    EXPECT_THROW(parse_handedness("up"), InvalidInput);
    EXPECT_EQ(parse_charge("tau"), Charge::Tau);
}

// Independent oracle: Fibonacci recurrence seeded by the small-n rows.
TEST(Basis, DimensionsFollowFibonacciRecurrence) {
    long long vac[15] = {0, 0, 1, 1}, tau[15] = {0, 1, 1, 2};
    for (int n = 4; n <= 14; ++n) vac[n] = vac[n - 1] + vac[n - 2], tau[n] = tau[n - 1] + tau[n - 2];
    for (int n = 1; n <= 14; ++n) {
        EXPECT_EQ(enumerate_basis(n, Charge::Vacuum).dim(), vac[n]) << n;
        EXPECT_EQ(enumerate_basis(n, Charge::Tau).dim(), tau[n]) << n;
    }
}

TEST(Basis, SmallRowsAndTwelveAnyonVacuum) {
    EXPECT_EQ(enumerate_basis(1, Charge::Vacuum).dim(), 0);
    EXPECT_EQ(enumerate_basis(4, Charge::Vacuum).dim(), 2);
    EXPECT_EQ(enumerate_basis(4, Charge::Tau).dim(), 3);
    EXPECT_EQ(enumerate_basis(8, Charge::Vacuum).dim(), 13);
    EXPECT_EQ(enumerate_basis(12, Charge::Vacuum).dim(), 89);
}

TEST(Basis, TreesAreAdmissibleSortedAndIndexed) {
    const FusionBasis b = enumerate_basis(9, Charge::Tau);
    for (int k = 0; k < b.dim(); ++k) {
        const FusionTree& t = b.trees[k];
        EXPECT_EQ(t.total(), Charge::Tau);
        for (int j = 2; j <= t.n; ++j) {
            const auto f = fuse(t.a(j - 1), Charge::Tau);
            EXPECT_NE(std::find(f.begin(), f.end(), t.a(j)), f.end());
        }
        EXPECT_EQ(b.index_of(t.internal), k);
        if (k) {
            EXPECT_LT(b.trees[k - 1].internal, t.internal);
        }
    }
    EXPECT_EQ(b.index_of({Charge::Vacuum, Charge::Vacuum}), -1);
}

TEST(Basis, RejectsBadArguments) {
    EXPECT_THROW(enumerate_basis(0, Charge::Tau), InvalidInput);
    EXPECT_THROW(braid_generator(enumerate_basis(3, Charge::Tau), 3), InvalidInput);
}

// Independent oracle for three anyons, total charge tau.
TEST(Generators, ThreeAnyonTauMatrices) {
    const double phi = std::numbers::phi;
    const cd r1 = std::polar(1.0, 4 * pi / 5), rt = std::polar(1.0, -3 * pi / 5);
    Mat2 f;
    f << 1 / phi, 1 / std::sqrt(phi), 1 / std::sqrt(phi), -1 / phi;
    Mat2 s1 = Mat2::Zero();
    s1(0, 0) = r1, s1(1, 1) = rt;
    const Mat2 s2 = f * s1 * f;
    const FusionBasis b = enumerate_basis(3, Charge::Tau);
    EXPECT_LT(max_abs(braid_generator(b, 1) - s1), 1e-12);
    EXPECT_LT(max_abs(braid_generator(b, 2) - s2), 1e-12);
}

class GeneratorAlgebra : public ::testing::TestWithParam<std::pair<int, Charge>> {};

TEST_P(GeneratorAlgebra, BraidRelationsAndUnitarity) {
    const auto [n, c] = GetParam();
    const auto gs = generators(n, c, Handedness::Right);
    const int d = gs->dim();
    const Mat id = Mat::Identity(d, d);
    for (int i = 1; i < n; ++i) {
        const Mat& a = (*gs)[i];
        EXPECT_LT(max_abs(a * a.adjoint() - id), 1e-9);
        EXPECT_LT(max_abs(a - a.transpose()), 1e-12);
        Mat p = id;
        for (int k = 0; k < 10; ++k) p = p * a;
        EXPECT_LT(max_abs(p - id), 1e-9);
        for (int j = i + 2; j < n; ++j) EXPECT_LT(max_abs(a * (*gs)[j] - (*gs)[j] * a), 1e-9);
        if (i + 1 < n) {
            const Mat& b = (*gs)[i + 1];
            EXPECT_LT(max_abs(a * b * a - b * a * b), 1e-9);
        }
    }
}

INSTANTIATE_TEST_SUITE_P(Sizes, GeneratorAlgebra,
                         ::testing::Values(std::pair{3, Charge::Tau}, std::pair{4, Charge::Vacuum}, std::pair{5, Charge::Tau},
                                           std::pair{6, Charge::Vacuum}, std::pair{8, Charge::Vacuum}, std::pair{9, Charge::Tau}),
                         [](const auto& info) { return "n" + std::to_string(info.param.first) + "_" + to_string(info.param.second); });

TEST(Generators, FourAnyonVacuumThirdEqualsFirst) {
    const auto gs = generators(4, Charge::Vacuum, Handedness::Right);
    EXPECT_LT(max_abs((*gs)[3] - (*gs)[1]), 1e-9);
}

TEST(Generators, SparseApplyMatchesDense) {
    const auto gs = generators(8, Charge::Vacuum, Handedness::Right);
    std::mt19937 rng(7);
    const BraidWord w = test_util::random_word(rng, 7, 12);
    Mat dense = Mat::Identity(gs->dim(), gs->dim());
    for (const auto& f : w.factors) {
        const Mat& g = (*gs)[f.gen];
        const Mat step = f.power > 0 ? Mat(g) : Mat(g.adjoint());
        for (int k = 0; k < std::abs(f.power); ++k) dense = (step * dense).eval();
    }
    EXPECT_LT(max_abs(word_matrix(*gs, w, ReadingOrder::PrintedLeftFirst) - dense), 1e-12);
}

TEST(Generators, LeftHandednessIsComplexConjugate) {
    const auto r = generators(6, Charge::Tau, Handedness::Right), l = generators(6, Charge::Tau, Handedness::Left);
    for (int i = 1; i < 6; ++i) EXPECT_LT(max_abs((*l)[i] - (*r)[i].conjugate()), 1e-12);
}
