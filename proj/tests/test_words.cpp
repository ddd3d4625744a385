#include <gtest/gtest.h>

#include <random>

#include <fibc/published.hpp>
#include <fibc/word.hpp>

#include "test_util.hpp"

using namespace fibc;

TEST(Word, ParsesAndPrints) {
    const BraidWord w = BraidWord::parse("  s1^2 s2^-4\ts12^+1 ");
    ASSERT_EQ(w.size(), 3u);
    EXPECT_EQ(w.factors[0], (Factor{1, 2}));
    EXPECT_EQ(w.factors[1], (Factor{2, -4}));
    EXPECT_EQ(w.factors[2], (Factor{12, 1}));
    EXPECT_EQ(w.str(), "s1^2 s2^-4 s12^1");
    EXPECT_EQ(BraidWord::parse(w.str()), w);
    EXPECT_TRUE(BraidWord::parse("").empty());
}

TEST(Word, RejectsMalformedText) {
    for (const char* bad : {"s1", "s^2", "x1^2", "s1^", "s1^0", "s0^1", "s1^2s2^2", "s1^-", "s1^2,", "s1^1234567"})
        EXPECT_THROW(BraidWord::parse(bad), InvalidInput) << bad;
}

TEST(Word, LengthWindingAndInverse) {
    const BraidWord w = BraidWord::parse("s1^2 s2^-3 s1^1");
    EXPECT_EQ(w.length(), 6);
    EXPECT_EQ(w.winding(), 0);
    EXPECT_EQ(w.max_gen(), 2);
    EXPECT_EQ(w.inverse().str(), "s1^-1 s2^3 s1^-2");
    EXPECT_EQ(w.gamma_conjugate().str(), "s2^2 s1^-3 s2^1");
    EXPECT_EQ(BraidWord::parse("s1^2 s1^-2 s2^1 s2^1").normalized().str(), "s2^2");
    EXPECT_THROW(BraidWord::parse("s3^1").gamma_conjugate(), InvalidInput);
}

// Frozen from the published word strings.
TEST(Word, PublishedWindings) {
    namespace p = published;
    EXPECT_EQ(BraidWord::parse(p::r_identity).winding(), 0);
    EXPECT_EQ(BraidWord::parse(p::injection).winding(), 30);
    EXPECT_EQ(BraidWord::parse(p::target_ix).winding(), -10);
    EXPECT_EQ(BraidWord::parse(p::r_not).winding(), -10);
    EXPECT_EQ(BraidWord::parse(p::ccs_r_not).winding(), 0);
    EXPECT_EQ(BraidWord::parse(p::ccs_injection).winding(), 30);
    EXPECT_EQ(BraidWord::parse(p::cnot_injection).winding(), 0);
    EXPECT_EQ(BraidWord::parse(p::sqrt_not).winding(), 20);
    for (const auto& s : {p::r_identity, p::injection, p::target_ix, p::r_not, p::ccs_r_not, p::ccs_injection, p::cnot_injection, p::sqrt_not})
        EXPECT_EQ(BraidWord::parse(s).length(), 48) << s;
}

TEST(Word, TimeSequenceRoundTrip) {
    std::mt19937 rng(3);
    for (int k = 0; k < 50; ++k) {
        const BraidWord w = test_util::random_word(rng, 5, 6);
        for (ReadingOrder o : {ReadingOrder::PrintedLeftFirst, ReadingOrder::PrintedLeftLast}) {
            const auto steps = time_sequence(w, o);
            EXPECT_EQ(int(steps.size()), w.length());
            EXPECT_EQ(from_time_sequence(steps, o).normalized(), w.normalized());
        }
    }
    EXPECT_EQ(time_sequence(BraidWord::parse("s1^2 s2^-1"), ReadingOrder::PrintedLeftLast).front(), (Factor{2, -1}));
    EXPECT_EQ(time_sequence(BraidWord::parse("s1^2 s2^-1"), ReadingOrder::PrintedLeftFirst).front(), (Factor{1, 1}));
}

TEST(Word, ReadingOrdersAreReverses) {
    std::mt19937 rng(5);
    const auto basis = enumerate_basis(5, Charge::Tau);
    for (int k = 0; k < 20; ++k) {
        const BraidWord w = test_util::random_word(rng, 4, 5);
        BraidWord rev;
        rev.factors.assign(w.factors.rbegin(), w.factors.rend());
        EXPECT_LT(max_abs(word_matrix(basis, w, Handedness::Right, ReadingOrder::PrintedLeftLast) -
                          word_matrix(basis, rev, Handedness::Right, ReadingOrder::PrintedLeftFirst)),
                  1e-12);
    }
    EXPECT_EQ(parse_reading_order(to_string(ReadingOrder::PrintedLeftFirst)), ReadingOrder::PrintedLeftFirst);
    EXPECT_THROW(parse_reading_order("sideways"), InvalidInput);
}

TEST(Word, ProductMatchesMatrixProduct) {
    const auto gs = generators(4, Charge::Tau, Handedness::Right);
    const BraidWord a = BraidWord::parse("s1^2 s3^-1"), b = BraidWord::parse("s2^3");
    EXPECT_LT(max_abs(word_matrix(*gs, a + b) - word_matrix(*gs, a) * word_matrix(*gs, b)), 1e-12);
    EXPECT_LT(max_abs(word_matrix(*gs, a.inverse()) - word_matrix(*gs, a).adjoint()), 1e-12);
    EXPECT_THROW(word_matrix(*gs, BraidWord::parse("s4^1")), InvalidInput);
}
