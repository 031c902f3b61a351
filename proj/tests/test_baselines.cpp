#include <sstream>

#include <gtest/gtest.h>

#include "cpda/baselines.hpp"

using cpda::BigInt;
using cpda::Rational;
using cpda::Scheme;

TEST(Hkd, Rates) {
  EXPECT_EQ(cpda::r_hkd(10, 5, 1), Rational(5, 2));
  EXPECT_EQ(cpda::r_hkd(36, 5, 3), Rational(33, 4));
  EXPECT_EQ(cpda::r_hkd(36, 5, 0), Rational(36));
  EXPECT_THROW(cpda::r_hkd(10, 5, 3), cpda::ParameterError);
}

TEST(Rk1, RateAndSubpacketization) {
  EXPECT_EQ(cpda::r_rk1(10, 3, 2), Rational(8, 5));
  EXPECT_EQ(cpda::f_rk1(10, 3, 2), BigInt(25));
  EXPECT_EQ(cpda::r_rk1(12, 4, 3), Rational(0));
  EXPECT_EQ(cpda::f_rk1(12, 4, 0), BigInt(1));
  EXPECT_EQ(cpda::r_rk1(12, 4, 0), Rational(12));
}

TEST(Cw, RateAndSubpacketization) {
  EXPECT_EQ(cpda::r_cw(10, 3, 2), Rational(4, 3));
  EXPECT_EQ(cpda::f_cw(10, 3, 2), BigInt(150));
  EXPECT_EQ(cpda::r_cw(9, 2, 0), Rational(9));
  EXPECT_EQ(cpda::f_cw(9, 2, 0), BigInt(9));
  EXPECT_EQ(cpda::r_cw(36, 5, 3), Rational(21, 4));
}

TEST(Cw, ArbitraryPrecisionSubpacketization) {
  // K * C(K, gamma) with L = 1 overflows 64 bits long before K = 400
  const BigInt f = cpda::f_cw(400, 1, 200);
  BigInt direct = 1;
  for (int i = 1; i <= 200; ++i) direct = direct * (200 + i) / i;
  EXPECT_EQ(f, direct * 400);
  EXPECT_GT(f, BigInt(std::numeric_limits<std::uint64_t>::max()));
}

TEST(Sr2, Applicability) {
  const auto a = cpda::sr2_applicable(10, 3, 2);
  EXPECT_FALSE(a.ok);
  EXPECT_FALSE(cpda::r_sr2(10, 3, 2).has_value());
  EXPECT_EQ(cpda::r_sr2(12, 4, 2), Rational(1));
  EXPECT_EQ(cpda::f_sr2(12, 4, 2), 12);
  EXPECT_EQ(cpda::r_sr2(12, 4, 3), Rational(0));
  EXPECT_FALSE(cpda::sr2_applicable(12, 4, 0).ok);
}

TEST(Mr, Rates) {
  EXPECT_EQ(cpda::r_mr(5, 2), Rational(8, 5));
  EXPECT_EQ(cpda::r_mr(45, 7), Rational(19));
  EXPECT_EQ(cpda::r_mr(6, 6), Rational(0));
  EXPECT_EQ(cpda::f_mr(45, 7), 45);
}

TEST(Spe, Subpacketization) {
  EXPECT_EQ(cpda::f_spe(10, 3), 15);
  EXPECT_EQ(cpda::f_spe(8, 3), 8);
  EXPECT_FALSE(cpda::f_spe(9, 3).has_value());
  EXPECT_FALSE(cpda::f_spe(6, 4).has_value());
}

namespace {

const cpda::ComparisonRow& find(const std::vector<cpda::ComparisonRow>& rows, int gamma,
                                Scheme s) {
  for (const auto& r : rows) {
    if (r.gamma == gamma && r.scheme == s) return r;
  }
  throw std::runtime_error("row not found");
}

}  // namespace

TEST(CompareTable, FigureThreeParameters) {
  const auto rows = cpda::compare_table(36, 5, 0, 7);
  ASSERT_EQ(rows.size(), 8U * 7U);
  const auto& nw = find(rows, 3, Scheme::NEW);
  EXPECT_EQ(*nw.rate, Rational(21, 2));
  EXPECT_EQ(*nw.subpacketization, BigInt(72));
  EXPECT_EQ(*find(rows, 3, Scheme::CW).rate, Rational(21, 4));
  const auto& top = find(rows, 7, Scheme::NEW);
  EXPECT_EQ(*top.rate, Rational(1, 36));
  EXPECT_EQ(*top.subpacketization, BigInt(36));
  for (Scheme s : {Scheme::CW, Scheme::HKD, Scheme::NEW, Scheme::RK1}) {
    EXPECT_EQ(*find(rows, 0, s).rate, Rational(36)) << cpda::to_string(s);
  }
  EXPECT_FALSE(find(rows, 3, Scheme::MR).applicable);
  EXPECT_FALSE(find(rows, 2, Scheme::SPE).rate.has_value());
}

TEST(CompareTable, SortedAndInapplicableRowsHaveReasons) {
  const auto rows = cpda::compare_table(45, 7, 0, 6);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& a = rows[i - 1];
    const auto& b = rows[i];
    ASSERT_TRUE(a.gamma < b.gamma ||
                (a.gamma == b.gamma && cpda::to_string(a.scheme) < cpda::to_string(b.scheme)));
  }
  for (const auto& r : rows) {
    if (!r.applicable) {
      EXPECT_FALSE(r.rate.has_value());
      EXPECT_FALSE(r.subpacketization.has_value());
      EXPECT_FALSE(r.reason.empty());
    }
  }
  const auto& mr = find(rows, 1, Scheme::MR);
  EXPECT_EQ(*mr.gain, Rational(38, 19));
  EXPECT_TRUE(find(rows, 1, Scheme::NEW).gain.has_value());
  EXPECT_FALSE(find(rows, 1, Scheme::CW).gain.has_value());
}

TEST(CompareTable, RangeChecks) {
  EXPECT_THROW(cpda::compare_table(4, 5, 0, 0), cpda::ParameterError);
  EXPECT_THROW(cpda::compare_table(10, 3, 0, 4), cpda::ParameterError);
  EXPECT_THROW(cpda::compare_table(10, 3, 2, 1), cpda::ParameterError);
}

TEST(CompareCsv, Layout) {
  const auto csv = cpda::to_csv(cpda::compare_table(10, 3, 2, 2));
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "gamma,scheme,applicable,rate_num,rate_den,subpacketization,gain_num,gain_den,reason");
  std::getline(in, line);
  EXPECT_EQ(line, "2,CW,true,4,3,150,,,");
  std::getline(in, line);
  EXPECT_EQ(line, "2,HKD,true,8,3,,,,subpacketization only known up to order");
  std::getline(in, line);
  EXPECT_EQ(line, "2,MR,false,,,,,,defined for gamma = 1 only");
  std::getline(in, line);
  EXPECT_EQ(line, "2,NEW,true,1,1,10,4,1,Divisible");
  int lines = 5;
  while (std::getline(in, line)) {
    ++lines;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 8) << line;
  }
  EXPECT_EQ(lines, 8);
}
