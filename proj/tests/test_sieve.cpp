#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <numeric>
#include <random>

#include "revpal/sieve.hpp"

using namespace revpal;

namespace {

// Squarefree test by plain trial division, kept local to the tests.
bool squarefree_by_trial(u64 n) {
  for (u64 p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
    if (n % p == 0) n /= p;
  }
  return true;
}

const FactorTable& table_1e6() {
  static const FactorTable t = FactorTable::build(1'000'000);
  return t;
}

}  // namespace

TEST(FactorTable, SmallExamples) {
  const auto t = FactorTable::build(30);
  EXPECT_EQ(t.spf(15), 3u);
  EXPECT_EQ(t.mu(30), -1);
  EXPECT_EQ(t.omega(30), 3u);
  EXPECT_EQ(t.mu(12), 0);
  EXPECT_EQ(t.mu(1), 1);
  EXPECT_EQ(t.omega(1), 0u);
  EXPECT_TRUE(t.is_prime(29));
  EXPECT_FALSE(t.is_prime(1));
  EXPECT_FALSE(t.is_prime(27));
}

TEST(FactorTable, Errors) {
  EXPECT_THROW(FactorTable::build(1), std::invalid_argument);
  EXPECT_THROW(FactorTable::build(1000, 999), std::length_error);
  EXPECT_THROW(FactorTable::build(FactorTable::kDefaultBudget + 1), std::length_error);
  const auto t = FactorTable::build(100);
  EXPECT_THROW(t.mu(101), std::out_of_range);
  EXPECT_THROW(t.mu(0), std::out_of_range);
  EXPECT_THROW(smallest_prime_factor(1, t), std::invalid_argument);
  EXPECT_THROW(smallest_prime_factor(101, t), std::out_of_range);
  EXPECT_THROW(is_k_free(101, 2, t), std::out_of_range);
  EXPECT_THROW(is_k_free(10, 1, t), std::invalid_argument);
}

TEST(FactorTable, SquarefreeCountTo1e6MatchesTrialDivision) {
  const auto& t = table_1e6();
  u64 sieve_count = 0;
  u64 oracle_count = 0;
  for (u64 n = 1; n <= 1'000'000; ++n) {
    sieve_count += t.mu(n) != 0;
    oracle_count += squarefree_by_trial(n);
  }
  EXPECT_EQ(oracle_count, 607926u);
  EXPECT_EQ(sieve_count, oracle_count);
}

TEST(FactorTable, TableInvariants) {
  const auto& t = table_1e6();
  std::mt19937_64 rng(3);
  for (u64 p = 2; p <= 100000; ++p) ASSERT_EQ(t.spf(p) == p, t.is_prime(p));
  for (int i = 0; i < 100000; ++i) {
    const u64 n = 2 + rng() % (1'000'000 - 1);
    const u64 p = t.spf(n);
    ASSERT_EQ(n % p, 0u);
    ASSERT_TRUE(t.is_prime(p));
    ASSERT_EQ(t.omega(n), 1 + t.omega(n / p));
    for (u64 q = 2; q < p && q * q <= n; ++q) ASSERT_NE(n % q, 0u) << n;
  }
  // Multiplicativity of mu and additivity of Omega on coprime pairs.
  for (int i = 0; i < 100000; ++i) {
    const u64 a = 1 + rng() % 1000;
    const u64 b = 1 + rng() % 1000;
    if (std::gcd(a, b) != 1) continue;
    ASSERT_EQ(t.mu(a * b), t.mu(a) * t.mu(b));
    ASSERT_EQ(t.omega(a * b), t.omega(a) + t.omega(b));
  }
}

TEST(FactorTable, SmallestPrimeFactorRandomSample) {
  const auto& t = table_1e6();
  EXPECT_EQ(smallest_prime_factor(21, t), 3u);
  EXPECT_EQ(smallest_prime_factor(97, t), 97u);
  std::mt19937_64 rng(17);
  for (int i = 0; i < 1'000'000; ++i) {
    const u64 n = 2 + rng() % (1'000'000 - 1);
    const u64 p = smallest_prime_factor(n, t);
    ASSERT_EQ(n % p, 0u);
    if (p > 2) ASSERT_NE(n % 2, 0u);
    if (p > 3) ASSERT_NE(n % 3, 0u);
  }
  for (u64 n = 2; n <= 20000; ++n) {
    u64 q = 2;
    while (n % q != 0) ++q;
    ASSERT_EQ(smallest_prime_factor(n, t), q);
  }
}

TEST(KFree, Examples) {
  const auto t = FactorTable::build(100);
  EXPECT_FALSE(is_k_free(12, 2, t));
  EXPECT_TRUE(is_k_free(12, 3, t));
  for (unsigned k = 2; k <= 6; ++k) EXPECT_TRUE(is_k_free(1, k, t));
  EXPECT_FALSE(is_k_free(64, 6, t));
  EXPECT_TRUE(is_k_free(64, 7, t));
}

TEST(MobiusSumOracle, Examples) {
  EXPECT_EQ(mobius_sum_oracle(4, 2), 0);
  EXPECT_EQ(mobius_sum_oracle(6, 2), 1);
  EXPECT_EQ(mobius_sum_oracle(72, 3), 0);
  EXPECT_EQ(mobius_sum_oracle(1, 5), 1);
  EXPECT_THROW(mobius_sum_oracle(0, 2), std::invalid_argument);
  EXPECT_THROW(mobius_sum_oracle(5, 1), std::invalid_argument);
}

TEST(KFree, AgreesWithMobiusDivisorSumTo1e5) {
  const auto t = FactorTable::build(100000);
  for (unsigned k : {2u, 3u, 4u})
    for (u64 n = 1; n <= 100000; ++n)
      ASSERT_EQ(is_k_free(n, k, t), mobius_sum_oracle(n, k) == 1) << "n=" << n << " k=" << k;
}

TEST(FactorTable, SquarefreeDensityAt1e7) {
  const auto t = FactorTable::build(10'000'000);
  u64 c = 0;
  for (u64 n = 1; n <= t.limit(); ++n) c += t.mu_unchecked(n) != 0;
  const double density = static_cast<double>(c) / 1e7;
  const double expected = 6.0 / (std::numbers::pi * std::numbers::pi);
  EXPECT_NEAR(density / expected, 1.0, 0.01);
}

TEST(FactorTable, CacheRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "revpal_sieve_cache_test";
  std::filesystem::remove_all(dir);
  const auto built = FactorTable::load_or_build(5000, dir);
  const auto path = dir / "factor_table_5000.bin";
  ASSERT_TRUE(std::filesystem::exists(path));
  // 8 magic + 4 version + 8 limit + 5001 * (4 + 1 + 1)
  EXPECT_EQ(std::filesystem::file_size(path), 20u + 5001u * 6u);
  const auto loaded = FactorTable::load_or_build(5000, dir);
  EXPECT_EQ(loaded, built);
  EXPECT_EQ(loaded, FactorTable::build(5000));

  {
    std::ifstream is(path, std::ios::binary);
    char head[12];
    is.read(head, 12);
    EXPECT_EQ(std::string(head, 8), "RVPLSIEV");
    EXPECT_EQ(head[8], 1);  // version, little-endian
    EXPECT_EQ(head[9], 0);
  }

  {
    std::ofstream os(dir / "bad.bin", std::ios::binary);
    os << "not a table";
  }
  EXPECT_THROW(FactorTable::load(dir / "bad.bin"), std::runtime_error);
  std::filesystem::remove_all(dir);
}
