#include <gtest/gtest.h>

#include "cpda/bounds.hpp"
#include "cpda/constructions.hpp"
#include "cpda/oracle.hpp"

using cpda::Cell;
using cpda::CaseKind;
using cpda::Rational;
using cpda::validate;

TEST(Construction1, ExampleOneEntries) {
  const auto pda = cpda::construction1(validate(10, 3, 2));
  EXPECT_EQ(pda.at({0, 1}, 1), Cell::star());
  EXPECT_EQ(pda.at({0, 2}, 1), Cell::pair(1, 1));
  EXPECT_EQ(pda.at({0, 4}, 1), Cell::pair(2, 4));
  EXPECT_EQ(pda.provenance(), "construction1 case=Divisible");
}

TEST(Construction1, SingleTrackCase) {
  // K - t = 1: every non-star cell sits on the middle track
  const auto pda = cpda::construction1(validate(5, 4, 1));
  for (const auto& c : pda.cells()) {
    if (!c.is_star()) {
      EXPECT_EQ(c, Cell::pair(1, 1));
    }
  }
  const auto st = cpda::verify(pda).stats();
  EXPECT_EQ(st.S, 1);
  EXPECT_EQ(st.g_max, 5);
  EXPECT_TRUE(st.regular);
}

TEST(Construction1, RejectsOtherCases) {
  EXPECT_THROW(cpda::construction1(validate(5, 2, 1)), cpda::WrongCaseError);
  EXPECT_THROW(cpda::construction1(validate(6, 2, 3)), cpda::WrongCaseError);
  EXPECT_THROW(cpda::construction1(validate(7, 1, 0)), cpda::WrongCaseError);
}

TEST(Construction2, ExampleTwoEntries) {
  const auto pda = cpda::construction2(validate(5, 2, 1));
  EXPECT_EQ(pda.F(), 10);
  EXPECT_EQ(pda.at({1, 1}, 1), Cell::star());
  EXPECT_EQ(pda.at({1, 2}, 1), Cell::pair(1, 1));
  EXPECT_EQ(pda.at({2, 2}, 1), Cell::pair(3, 3));
  EXPECT_EQ(cpda::verify(pda).stats().tuple(), "2-(5,10,4,15)");
}

TEST(Construction2, NoCaching) {
  const auto pda = cpda::construction2(validate(7, 3, 0));
  EXPECT_EQ(pda.F(), 7);
  for (const auto& c : pda.cells()) EXPECT_FALSE(c.is_star());
  const auto st = cpda::verify(pda).stats();
  EXPECT_EQ(st.S, 49);
  EXPECT_EQ(st.g_max, 1);
  EXPECT_EQ(pda.provenance(), "construction2 case=RemainderKmt t=0-extension");
}

TEST(Construction2, RejectsOtherCases) {
  EXPECT_THROW(cpda::construction2(validate(10, 3, 2)), cpda::WrongCaseError);
  EXPECT_THROW(cpda::construction2(validate(4, 4, 1)), cpda::WrongCaseError);
}

TEST(GNew, Values) {
  EXPECT_EQ(cpda::g_new(5, 2), 2);
  EXPECT_EQ(cpda::g_new(7, 0), 1);
  EXPECT_EQ(cpda::g_new(11, 6), 3);
}

TEST(BuildScheme, ExampleRates) {
  const auto s1 = cpda::build_scheme(validate(10, 3, 2));
  EXPECT_EQ(s1.rate, Rational(1));
  EXPECT_EQ(s1.subpacketization, 10);
  EXPECT_EQ(s1.summary(), "4-(10,10,6,10) PDA, R=1, F=10, case=Divisible");
  const auto s2 = cpda::build_scheme(validate(5, 2, 1));
  EXPECT_EQ(s2.rate, Rational(3, 2));
  EXPECT_EQ(s2.subpacketization, 10);
  const auto s3 = cpda::build_scheme(validate(6, 3, 2));
  EXPECT_EQ(s3.rate, Rational(0));
  EXPECT_EQ(s3.subpacketization, 6);
  EXPECT_EQ(s3.kind, CaseKind::AllCached);
  EXPECT_EQ(s3.stats.S, 0);
}

// Parameter tuples written out per case, then compared with the verifier
// output for every valid system up to K = 40.
TEST(BuildScheme, TheoremTuplesOverSweep) {
  for (int K = 1; K <= 40; ++K) {
    for (int L = 1; L <= K; ++L) {
      for (int gamma = 0; gamma <= K / L; ++gamma) {
        const auto p = validate(K, L, gamma);
        const auto s = cpda::build_scheme(p);
        const int t = p.t;
        const int m = K - t + 1;
        std::string expected;
        if (t == K) {
          expected = "(" + std::to_string(K) + "," + std::to_string(K) + "," +
                     std::to_string(K) + ",0)";
        } else if (K % m == 0 || K - t == 1) {
          expected = std::to_string(2 * K / m) + "-(" + std::to_string(K) + "," +
                     std::to_string(K) + "," + std::to_string(t) + "," +
                     std::to_string((K - t) * m / 2) + ")";
        } else {
          const int g = (K % m == K - t ? 1 : 0) + 2 * (K / m);
          expected = std::to_string(g) + "-(" + std::to_string(K) + "," +
                     std::to_string(g * K) + "," + std::to_string(g * t) + "," +
                     std::to_string(K * (K - t)) + ")";
        }
        ASSERT_EQ(s.stats.tuple(), expected) << "K=" << K << " L=" << L << " gamma=" << gamma;
        ASSERT_TRUE(cpda::verify_against_placement(s.pda, p));
        if (s.kind == CaseKind::RemainderKmt || s.kind == CaseKind::Other) {
          ASSERT_EQ(s.stats.Z, cpda::g_new(K, t) * t);
        } else {
          ASSERT_EQ(s.stats.Z, t);
        }
        ASSERT_EQ(s.stats.memory_ratio, Rational(t, K));
        if (K > 1) {
          ASSERT_LT(s.subpacketization, static_cast<std::int64_t>(K) * K);
        }
      }
    }
  }
}

TEST(BuildScheme, NaiveCheckerAgreesOnSample) {
  for (auto [K, L, gamma] :
       {std::tuple{10, 3, 2}, {5, 2, 1}, {11, 2, 3}, {13, 3, 2}, {7, 1, 0}, {9, 3, 3}}) {
    EXPECT_TRUE(cpda::naive_pda_check(cpda::build_scheme(validate(K, L, gamma)).pda));
  }
}
