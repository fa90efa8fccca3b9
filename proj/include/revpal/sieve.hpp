#pragma once

// Linear (smallest-prime-factor propagating) sieve producing the arithmetic
// tables every experiment queries: spf, Moebius mu and Omega.
//
// Memory: 4 bytes (spf) + 1 byte (mu, stored as int8) + 1 byte (Omega) per
// integer, so a table to 10^7 needs about 60 MB.

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "revpal/digits.hpp"

namespace revpal {

class FactorTable {
 public:
  static constexpr u64 kDefaultBudget = u64{1} << 31;

  FactorTable() = default;

  /// Sieves [1, limit]. Throws std::length_error above `budget`.
  static FactorTable build(u64 limit, u64 budget = kDefaultBudget) {
    if (limit < 2) throw std::invalid_argument("FactorTable: limit must be >= 2");
    if (limit > budget)
      throw std::length_error("FactorTable: limit " + std::to_string(limit) +
                              " exceeds memory budget " + std::to_string(budget));
    FactorTable t;
    t.limit_ = limit;
    t.spf_.assign(limit + 1, 0);
    t.mu_.assign(limit + 1, 0);
    t.omega_.assign(limit + 1, 0);
    t.mu_[1] = 1;

    std::vector<std::uint32_t> primes;
    for (u64 i = 2; i <= limit; ++i) {
      if (t.spf_[i] == 0) {
        t.spf_[i] = static_cast<std::uint32_t>(i);
        t.mu_[i] = -1;
        t.omega_[i] = 1;
        primes.push_back(static_cast<std::uint32_t>(i));
      }
      const std::uint32_t si = t.spf_[i];
      for (std::uint32_t p : primes) {
        if (p > si || i * p > limit) break;
        const u64 m = i * p;
        t.spf_[m] = p;
        t.omega_[m] = static_cast<std::uint8_t>(t.omega_[i] + 1);
        t.mu_[m] = (p == si) ? std::int8_t{0} : static_cast<std::int8_t>(-t.mu_[i]);
      }
    }
    return t;
  }

  u64 limit() const noexcept { return limit_; }

  bool covers(u64 n) const noexcept { return n >= 1 && n <= limit_; }

  bool is_prime(u64 n) const {
    check(n, "is_prime");
    return n >= 2 && spf_[n] == n;
  }

  int mu(u64 n) const {
    check(n, "mu");
    return mu_[n];
  }

  /// Prime factors of n counted with multiplicity; Omega(1) = 0.
  unsigned omega(u64 n) const {
    check(n, "omega");
    return omega_[n];
  }

  u64 spf(u64 n) const {
    check(n, "spf");
    if (n < 2) throw std::invalid_argument("spf: n must be >= 2");
    return spf_[n];
  }

  // Unchecked accessors for hot loops; caller guarantees 1 <= n <= limit.
  bool prime_unchecked(u64 n) const noexcept { return n >= 2 && spf_[n] == n; }
  int mu_unchecked(u64 n) const noexcept { return mu_[n]; }

  /// Writes the table as: magic "RVPLSIEV", u32 version, u64 limit, then the
  /// spf (u32), mu (i8) and Omega (u8) arrays for 0..limit, little-endian.
  void save(const std::filesystem::path& path) const {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
    os.write(kMagic, sizeof kMagic);
    write_le(os, kVersion);
    write_le(os, limit_);
    if constexpr (std::endian::native == std::endian::little) {
      os.write(reinterpret_cast<const char*>(spf_.data()),
               static_cast<std::streamsize>(spf_.size() * sizeof(std::uint32_t)));
    } else {
      for (std::uint32_t v : spf_) write_le(os, v);
    }
    os.write(reinterpret_cast<const char*>(mu_.data()), static_cast<std::streamsize>(mu_.size()));
    os.write(reinterpret_cast<const char*>(omega_.data()),
             static_cast<std::streamsize>(omega_.size()));
    if (!os) throw std::runtime_error("write failed: " + path.string());
  }

  static FactorTable load(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path.string());
    char magic[sizeof kMagic];
    is.read(magic, sizeof magic);
    if (!is || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
      throw std::runtime_error("bad magic in " + path.string());
    if (read_le<std::uint32_t>(is) != kVersion)
      throw std::runtime_error("unsupported table version in " + path.string());
    FactorTable t;
    t.limit_ = read_le<u64>(is);
    if (t.limit_ < 2 || t.limit_ > kDefaultBudget)
      throw std::runtime_error("corrupt limit in " + path.string());
    const std::size_t n = t.limit_ + 1;
    t.spf_.resize(n);
    t.mu_.resize(n);
    t.omega_.resize(n);
    if constexpr (std::endian::native == std::endian::little) {
      is.read(reinterpret_cast<char*>(t.spf_.data()),
              static_cast<std::streamsize>(n * sizeof(std::uint32_t)));
    } else {
      for (auto& v : t.spf_) v = read_le<std::uint32_t>(is);
    }
    is.read(reinterpret_cast<char*>(t.mu_.data()), static_cast<std::streamsize>(n));
    is.read(reinterpret_cast<char*>(t.omega_.data()), static_cast<std::streamsize>(n));
    if (!is) throw std::runtime_error("truncated table file " + path.string());
    return t;
  }

  /// Loads `<dir>/factor_table_<limit>.bin` if present, otherwise builds and
  /// stores it there.
  static FactorTable load_or_build(u64 limit, const std::filesystem::path& dir,
                                   u64 budget = kDefaultBudget) {
    const auto path = dir / ("factor_table_" + std::to_string(limit) + ".bin");
    if (std::filesystem::exists(path)) {
      auto t = load(path);
      if (t.limit() == limit) return t;
    }
    auto t = build(limit, budget);
    std::filesystem::create_directories(dir);
    t.save(path);
    return t;
  }

  friend bool operator==(const FactorTable&, const FactorTable&) = default;

 private:
  static constexpr char kMagic[8] = {'R', 'V', 'P', 'L', 'S', 'I', 'E', 'V'};
  static constexpr std::uint32_t kVersion = 1;

  void check(u64 n, const char* what) const {
    if (n < 1 || n > limit_)
      throw std::out_of_range(std::string(what) + ": " + std::to_string(n) +
                              " outside table range [1, " + std::to_string(limit_) + "]");
  }

  template <class T>
  static void write_le(std::ostream& os, T v) {
    unsigned char buf[sizeof(T)];
    for (std::size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(buf), sizeof buf);
  }

  template <class T>
  static T read_le(std::istream& is) {
    unsigned char buf[sizeof(T)] = {};
    is.read(reinterpret_cast<char*>(buf), sizeof buf);
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(buf[i]) << (8 * i);
    return v;
  }

  u64 limit_ = 0;
  std::vector<std::uint32_t> spf_;
  std::vector<std::int8_t> mu_;
  std::vector<std::uint8_t> omega_;
};

/// True iff no p^k divides n, read off the spf factorization of n.
inline bool is_k_free(u64 n, unsigned k, const FactorTable& table) {
  if (k < 2) throw std::invalid_argument("is_k_free: k must be >= 2");
  if (!table.covers(n))
    throw std::out_of_range("is_k_free: " + std::to_string(n) + " outside table");
  if (k == 2) return table.mu_unchecked(n) != 0;
  while (n > 1) {
    const u64 p = table.spf(n);
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      if (++e >= k) return false;
    }
  }
  return true;
}

inline u64 smallest_prime_factor(u64 n, const FactorTable& table) {
  if (n < 2) throw std::invalid_argument("smallest_prime_factor: n must be >= 2");
  return table.spf(n);
}

/// Moebius function by trial division; independent of FactorTable.
inline int mobius_trial(u64 n) {
  int m = 1;
  for (u64 p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    m = -m;
  }
  return n > 1 ? -m : m;
}

/// mu_k(n) = sum over d with d^k | n of mu(d), evaluated by enumerating d
/// directly. Cross-check oracle for is_k_free; uses no sieve.
inline int mobius_sum_oracle(u64 n, unsigned k) {
  if (n == 0) throw std::invalid_argument("mobius_sum_oracle: n must be positive");
  if (k < 2) throw std::invalid_argument("mobius_sum_oracle: k must be >= 2");
  int sum = 0;
  for (u64 d = 1;; ++d) {
    unsigned __int128 dk = 1;
    for (unsigned i = 0; i < k && dk <= n; ++i) dk *= d;
    if (dk > n) break;
    if (n % static_cast<u64>(dk) == 0) sum += mobius_trial(d);
  }
  return sum;
}

}  // namespace revpal
