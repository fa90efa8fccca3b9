#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "revpal/densities.hpp"
#include "revpal/sieve.hpp"

using namespace revpal;

namespace {

constexpr double kPi = std::numbers::pi;

// Partial sum to D plus the integral tail bounds; the midpoint of
// [S + 1/((k-1)(D+1)^(k-1)), S + 1/((k-1)D^(k-1))].
double zeta_by_partial_sum(unsigned k, u64 D) {
  double s = 0.0;
  for (u64 n = D; n >= 1; --n) s += std::pow(static_cast<double>(n), -static_cast<double>(k));
  const double lo = 1.0 / ((k - 1) * std::pow(D + 1.0, k - 1.0));
  const double hi = 1.0 / ((k - 1) * std::pow(static_cast<double>(D), k - 1.0));
  return s + 0.5 * (lo + hi);
}

// sum_{d <= D, gcd(d, b^3-b) = 1} mu(d) / d^k using sieve values of mu.
double truncated_dirichlet(const BaseContext& ctx, unsigned k, const FactorTable& t) {
  double s = 0.0;
  for (u64 d = t.limit(); d >= 1; --d) {
    const int m = t.mu_unchecked(d);
    if (m == 0 || std::gcd(d, ctx.b3mb()) != 1) continue;
    s += m * std::pow(static_cast<double>(d), -static_cast<double>(k));
  }
  return s;
}

const FactorTable& table_1e6() {
  static const FactorTable t = FactorTable::build(1'000'000);
  return t;
}

}  // namespace

TEST(Zeta, ClosedForms) {
  EXPECT_NEAR(zeta(2), kPi * kPi / 6.0, 1e-14);
  EXPECT_NEAR(zeta(4), std::pow(kPi, 4) / 90.0, 1e-14);
  EXPECT_NEAR(zeta(6), std::pow(kPi, 6) / 945.0, 1e-13);
  EXPECT_NEAR(zeta(8), std::pow(kPi, 8) / 9450.0, 1e-13);
  EXPECT_THROW(zeta(1), std::invalid_argument);
}

TEST(Zeta, OddValuesMatchPartialSums) {
  const double z3 = zeta_by_partial_sum(3, 1'000'000);
  EXPECT_NEAR(zeta(3), z3, 1e-12);
  EXPECT_NEAR(zeta(3), 1.202057, 1e-6);
  EXPECT_NEAR(zeta(5), zeta_by_partial_sum(5, 100000), 1e-13);
  EXPECT_NEAR(zeta(7), zeta_by_partial_sum(7, 10000), 1e-13);
  EXPECT_NEAR(zeta(40), 1.0 + std::pow(2.0, -40), 1e-15);
}

TEST(KFreeDensity, BaseTwoSquarefree) {
  EXPECT_NEAR(kfree_density(BaseContext(2), 2), 6.0 / (kPi * kPi) * 1.5, 1e-14);
}

TEST(KFreeDensity, InUnitIntervalAndIncreasingInK) {
  for (u64 b : {2u, 3u, 7u, 10u, 16u, 30u, 210u, 26000u}) {
    const BaseContext ctx(b);
    double prev = 0.0;
    for (unsigned k = 2; k <= 12; ++k) {
      const double v = kfree_density(ctx, k);
      EXPECT_GT(v, 0.0);
      EXPECT_LE(v, 1.0);
      EXPECT_GT(v, prev);
      prev = v;
    }
    EXPECT_NEAR(prev, 1.0, 1e-3);
  }
}

TEST(KFreeDensity, MatchesTruncatedDirichletSeries) {
  const auto& t = table_1e6();
  const double D = static_cast<double>(t.limit());
  EXPECT_NEAR(kfree_density(BaseContext(10), 3), truncated_dirichlet(BaseContext(10), 3, t), 1e-9);
  for (u64 b : {2u, 3u, 10u, 12u}) {
    const BaseContext ctx(b);
    for (unsigned k : {2u, 3u, 4u}) {
      // |tail| <= sum_{d > D} d^-k <= 1/((k-1) D^(k-1)); plus rounding slack.
      const double tail = 1.0 / ((k - 1) * std::pow(D, k - 1.0)) + 1e-12;
      EXPECT_NEAR(kfree_density(ctx, k), truncated_dirichlet(ctx, k, t), tail) << b << " " << k;
    }
  }
}

TEST(MainTerms, RevKFreeFormula) {
  const BaseContext ten(10);
  const double expected = kfree_density(ten, 2) * 0.4 * 1e8 / (8 * std::log(10.0));
  EXPECT_NEAR(rev_kfree_main_term(ten, 2, 8).value() / expected, 1.0, 1e-13);
  // phi(2)/2 = 1/2
  const BaseContext two(2);
  EXPECT_NEAR(rev_kfree_main_term(two, 3, 20).value(),
              kfree_density(two, 3) * 0.5 * std::pow(2.0, 20) / (20 * std::log(2.0)), 1e-6);
  double prev = 0.0;
  for (unsigned N = 1; N <= 60; ++N) {
    const double v = rev_kfree_main_term(ten, 2, N).log_value;
    EXPECT_GT(v, prev);
    prev = v;
  }
  EXPECT_THROW(rev_kfree_main_term(ten, 2, 0), std::invalid_argument);
}

TEST(MainTerms, LogSpaceBeyondDoubleRange) {
  const BaseContext big(1'000'000);
  const MainTerm mt = rev_kfree_main_term(big, 2, 64);
  EXPECT_TRUE(std::isfinite(mt.log_value));
  EXPECT_TRUE(std::isinf(mt.value()));
  const std::string s = mt.str();
  EXPECT_NE(s.find("e+"), std::string::npos);
  // 10^384 / (64 ln 10^6) * 0.984 * 0.4 is about 4.45e380.
  EXPECT_EQ(s.rfind("4.45328951", 0), 0u) << s;
  EXPECT_NE(s.find("e+380"), std::string::npos) << s;
  EXPECT_EQ(rev_kfree_main_term(BaseContext(10), 2, 3).str().find("e+"), std::string::npos);
}

TEST(MainTerms, RevPi) {
  const BaseContext ten(10);
  EXPECT_NEAR(rev_pi_main_term(ten, 7, 6).value(), (1.0 / 7) * 0.4 * 1e6 / (6 * std::log(10.0)), 1e-9);
  // d = 1 is the k-free main term without the density factor.
  EXPECT_NEAR(rev_pi_main_term(ten, 1, 7).value() * kfree_density(ten, 2),
              rev_kfree_main_term(ten, 2, 7).value(), 1e-6);
  // b^3-b is always even, so scale by another coprime factor instead of 2.
  EXPECT_NEAR(rev_pi_main_term(ten, 7, 6).value() / rev_pi_main_term(ten, 49, 6).value(), 7.0, 1e-12);
  EXPECT_NEAR(rev_pi_main_term(ten, 1, 6).value() / rev_pi_main_term(ten, 13, 6).value(), 13.0, 1e-12);
}

TEST(MainTerms, RevPiRejectsNonCoprime) {
  const BaseContext ten(10);
  EXPECT_THROW(rev_pi_main_term(ten, 3, 6), std::invalid_argument);
  EXPECT_THROW(rev_pi_main_term(ten, 22, 6), std::invalid_argument);
  EXPECT_THROW(rev_pi_main_term(ten, 0, 6), std::invalid_argument);
}

TEST(MainTerms, Palindromes) {
  const BaseContext two(2);
  EXPECT_EQ(palin_kfree_main_term(two, 3, 0), 0.0);
  EXPECT_DOUBLE_EQ(palin_kfree_main_term(two, 3, 1000), 1000 * kfree_density(two, 3));
  for (u64 c : {1u, 10u, 12345u}) EXPECT_LT(palin_kfree_main_term(BaseContext(10), 3, c), c);
  EXPECT_THROW(palin_kfree_main_term(two, 2, 10), std::invalid_argument);
}
