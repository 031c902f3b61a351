#pragma once

// Closed-form rate and subpacketization of earlier multi-access schemes,
// and a per-gamma comparison table against the cyclic-PDA scheme.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cpda/constructions.hpp"
#include "cpda/errors.hpp"
#include "cpda/params.hpp"
#include "cpda/rational.hpp"

namespace cpda {

namespace detail {

inline void check_gamma(int K, int L, int gamma) {
  validate(K, L, gamma);
}

inline Rational ceil(const Rational& r) {
  const auto q = r.numerator() / r.denominator();
  const auto rem = r.numerator() % r.denominator();
  return Rational(rem > 0 ? q + 1 : q);
}

}  // namespace detail

inline Rational r_hkd(int K, int L, int gamma) {
  detail::check_gamma(K, L, gamma);
  const std::int64_t removed = K % L == 0 ? static_cast<std::int64_t>(L) * gamma : gamma;
  return Rational(K - removed, 1 + gamma);
}

inline Rational r_rk1(int K, int L, int gamma) {
  detail::check_gamma(K, L, gamma);
  const std::int64_t left = K - static_cast<std::int64_t>(gamma) * L;
  return Rational(left * left, K);
}

/// (K/gamma) * C(K - gamma(L-1) - 1, gamma - 1); 1 at gamma = 0.
inline BigInt f_rk1(int K, int L, int gamma) {
  detail::check_gamma(K, L, gamma);
  if (gamma == 0) return 1;
  const BigInt scaled = BigInt(K) * binomial(K - static_cast<std::int64_t>(gamma) * (L - 1) - 1,
                                             gamma - 1);
  if (scaled % gamma != 0) {
    throw InvariantError("RK1 subpacketization is not an integer");
  }
  return scaled / gamma;
}

inline Rational r_cw(int K, int L, int gamma) {
  detail::check_gamma(K, L, gamma);
  return Rational(K - static_cast<std::int64_t>(gamma) * L, gamma + 1);
}

inline BigInt f_cw(int K, int L, int gamma) {
  detail::check_gamma(K, L, gamma);
  return BigInt(K) * binomial(K - static_cast<std::int64_t>(gamma) * (L - 1), gamma);
}

/// Applicability plus the formula. `reason` is set when the scheme does
/// not apply.
struct Applicable {
  bool ok = false;
  std::string reason;
};

inline Applicable sr2_applicable(int K, int L, int gamma) {
  detail::check_gamma(K, L, gamma);
  if (gamma < 1) return {false, "needs gamma >= 1"};
  if (K % gamma != 0) return {false, "needs gamma | K"};
  const int d = K - gamma * L + gamma;
  if (K % d != 0) return {false, "needs (K-gamma*L+gamma) | K"};
  return {true, {}};
}

inline std::optional<Rational> r_sr2(int K, int L, int gamma) {
  if (!sr2_applicable(K, L, gamma).ok) return std::nullopt;
  const std::int64_t left = K - static_cast<std::int64_t>(gamma) * L;
  return Rational(left * (left + gamma), 2 * static_cast<std::int64_t>(K));
}

inline std::optional<std::int64_t> f_sr2(int K, int L, int gamma) {
  if (!sr2_applicable(K, L, gamma).ok) return std::nullopt;
  return K;
}

/// Defined for gamma = 1 only; the inner quotient is rounded up.
inline Rational r_mr(int K, int L) {
  validate(K, L, 1);
  const int d = K - L + 1;
  const std::int64_t denom = 2 + L / d + (L - 1) / d;
  const Rational inner(static_cast<std::int64_t>(K) * (K - L), denom);
  return detail::ceil(inner) / K;
}

inline std::int64_t f_mr(int K, int L) {
  validate(K, L, 1);
  return K;
}

/// K(K - 2L + 2)/4 for gamma = 2, when that is a positive integer.
inline std::optional<std::int64_t> f_spe(int K, int L) {
  const std::int64_t num = static_cast<std::int64_t>(K) * (K - 2 * L + 2);
  if (num <= 0 || num % 4 != 0) return std::nullopt;
  return num / 4;
}

enum class Scheme { CW, HKD, MR, NEW, RK1, SPE, SR2 };

inline std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::CW: return "CW";
    case Scheme::HKD: return "HKD";
    case Scheme::MR: return "MR";
    case Scheme::NEW: return "NEW";
    case Scheme::RK1: return "RK1";
    case Scheme::SPE: return "SPE";
    case Scheme::SR2: return "SR2";
  }
  return "?";
}

struct ComparisonRow {
  int gamma = 0;
  Scheme scheme = Scheme::NEW;
  bool applicable = false;
  std::optional<Rational> rate;
  std::optional<BigInt> subpacketization;
  /// (K - t)/R, reported for schemes with F <= K^2.
  std::optional<Rational> gain;
  std::string reason;
};

namespace detail {

inline std::optional<Rational> gain_of(int K, int t, const Rational& rate) {
  if (rate.numerator() == 0) return std::nullopt;
  return Rational(K - t) / rate;
}

}  // namespace detail

/// Rows for gamma in [gamma_min, gamma_max], sorted by gamma then scheme
/// name. The RK2021 scheme has no closed-form rate and is not tabulated.
inline std::vector<ComparisonRow> compare_table(int K, int L, int gamma_min, int gamma_max) {
  validate(K, L, 0);
  if (gamma_min < 0 || gamma_max > K / L || gamma_min > gamma_max) {
    throw ParameterError("gamma range [" + std::to_string(gamma_min) + ":" +
                         std::to_string(gamma_max) + "] not inside [0:floor(K/L)=" +
                         std::to_string(K / L) + "]");
  }
  std::vector<ComparisonRow> rows;
  for (int gamma = gamma_min; gamma <= gamma_max; ++gamma) {
    const int t = gamma * L;

    rows.push_back({gamma, Scheme::CW, true, r_cw(K, L, gamma), f_cw(K, L, gamma),
                    std::nullopt, {}});

    rows.push_back({gamma, Scheme::HKD, true, r_hkd(K, L, gamma), std::nullopt,
                    std::nullopt, "subpacketization only known up to order"});

    if (gamma == 1) {
      const auto r = r_mr(K, L);
      rows.push_back({gamma, Scheme::MR, true, r, BigInt(f_mr(K, L)),
                      detail::gain_of(K, t, r), {}});
    } else {
      rows.push_back({gamma, Scheme::MR, false, std::nullopt, std::nullopt, std::nullopt,
                      "defined for gamma = 1 only"});
    }

    const auto r_new = rate_closed_form(K, t);
    rows.push_back({gamma, Scheme::NEW, true, r_new,
                    BigInt(subpacketization_closed_form(K, t)),
                    detail::gain_of(K, t, r_new), std::string(to_string(classify(K, t)))});

    rows.push_back({gamma, Scheme::RK1, true, r_rk1(K, L, gamma), f_rk1(K, L, gamma),
                    std::nullopt, {}});

    if (gamma != 2) {
      rows.push_back({gamma, Scheme::SPE, false, std::nullopt, std::nullopt, std::nullopt,
                      "defined for gamma = 2 only"});
    } else if (const auto f = f_spe(K, L)) {
      rows.push_back({gamma, Scheme::SPE, true, std::nullopt, BigInt(*f), std::nullopt,
                      "rate has no closed form; subpacketization only"});
    } else {
      rows.push_back({gamma, Scheme::SPE, false, std::nullopt, std::nullopt, std::nullopt,
                      "K(K-2L+2)/4 is not a positive integer"});
    }

    const auto sr2 = sr2_applicable(K, L, gamma);
    if (sr2.ok) {
      const auto r = *r_sr2(K, L, gamma);
      rows.push_back({gamma, Scheme::SR2, true, r, BigInt(*f_sr2(K, L, gamma)),
                      detail::gain_of(K, t, r), {}});
    } else {
      rows.push_back({gamma, Scheme::SR2, false, std::nullopt, std::nullopt, std::nullopt,
                      sr2.reason});
    }
  }
  return rows;
}

inline constexpr std::string_view kCompareCsvHeader =
    "gamma,scheme,applicable,rate_num,rate_den,subpacketization,gain_num,gain_den,reason";

inline std::string to_csv(const std::vector<ComparisonRow>& rows) {
  std::string out(kCompareCsvHeader);
  out += '\n';
  for (const auto& row : rows) {
    out += std::to_string(row.gamma);
    out += ',';
    out += to_string(row.scheme);
    out += row.applicable ? ",true," : ",false,";
    if (row.rate) {
      out += std::to_string(row.rate->numerator()) + "," +
             std::to_string(row.rate->denominator());
    } else {
      out += ",";
    }
    out += ',';
    if (row.subpacketization) out += row.subpacketization->str();
    out += ',';
    if (row.gain) {
      out += std::to_string(row.gain->numerator()) + "," +
             std::to_string(row.gain->denominator());
    } else {
      out += ",";
    }
    out += ',';
    out += row.reason;
    out += '\n';
  }
  return out;
}

}  // namespace cpda
