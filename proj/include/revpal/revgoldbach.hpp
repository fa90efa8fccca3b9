#pragma once

// Representations M = rev(p1) + p2 with p1, p2 prime, the exception scan over
// a range of targets, and the square-free analogue h_b(M).
//
// rev(p) is always taken with respect to p's own digit count, so p ranges
// over primes not divisible by b.

#include <algorithm>
#include <cstdint>
#include <exception>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "revpal/digits.hpp"
#include "revpal/sieve.hpp"

namespace revpal {

enum class ParityClass { EvenTargetsOnly, AllTargets };

/// Odd bases and base 2 map odd primes to odd reverses, so only even targets
/// are expected to be representable; larger even bases cover every target.
inline ParityClass parity_class(const BaseContext& ctx) {
  const u64 b = ctx.b();
  return (b % 2 == 1 || b == 2) ? ParityClass::EvenTargetsOnly : ParityClass::AllTargets;
}

inline const char* to_string(ParityClass pc) {
  return pc == ParityClass::AllTargets ? "ALL_TARGETS" : "EVEN_TARGETS_ONLY";
}

inline ParityClass parity_class_from_string(const std::string& s) {
  if (s == "ALL_TARGETS") return ParityClass::AllTargets;
  if (s == "EVEN_TARGETS_ONLY") return ParityClass::EvenTargetsOnly;
  throw std::invalid_argument("unknown parity class: " + s);
}

inline bool in_parity_class(u64 target, ParityClass pc) {
  return pc == ParityClass::AllTargets || target % 2 == 0;
}

/// Factor-table size needed so that every prime p with rev(p) <= limit is
/// covered. rev(p) and p share a digit count, so that is b^D - 1 where D is
/// the digit count of the largest m <= limit with b not dividing m.
inline u64 reverse_table_requirement(const BaseContext& ctx, u64 limit) {
  if (limit < 2) return 2;
  const u64 top = (limit % ctx.b() == 0) ? limit - 1 : limit;
  return std::max(limit, checked_pow(ctx.b(), digit_count(top, ctx.b())) - 1);
}

/// The reverses rev(p) <= limit of primes p (b not dividing p), sorted, plus
/// a membership bitmap over [0, limit].
class ReverseSet {
 public:
  ReverseSet(const BaseContext& ctx, u64 limit, const FactorTable& table) : limit_(limit) {
    const u64 need = reverse_table_requirement(ctx, limit);
    if (need > table.limit())
      throw std::out_of_range("ReverseSet: reverses up to " + std::to_string(limit) +
                              " need a factor table up to " + std::to_string(need) + ", have " +
                              std::to_string(table.limit()));
    member_.assign(limit + 1, false);
    for (u64 m = 1; m <= limit; ++m) {
      if (m % ctx.b() == 0) continue;
      if (table.prime_unchecked(reverse(m, ctx))) {
        values_.push_back(m);
        member_[m] = true;
      }
    }
  }

  u64 limit() const noexcept { return limit_; }
  const std::vector<u64>& values() const noexcept { return values_; }
  bool contains(u64 r) const noexcept { return r <= limit_ && member_[r]; }

 private:
  u64 limit_;
  std::vector<u64> values_;
  std::vector<bool> member_;
};

namespace detail {

inline void require_target(u64 M, const ReverseSet& rs, const FactorTable& table, const char* what) {
  if (M > table.limit() || M > rs.limit() + 1)
    throw std::out_of_range(std::string(what) + ": target " + std::to_string(M) +
                            " beyond precomputed range");
}

}  // namespace detail

/// Ordered pairs (p1, p2) of primes with rev(p1) + p2 = M.
inline u64 representations(u64 M, const ReverseSet& rs, const FactorTable& table) {
  detail::require_target(M, rs, table, "representations");
  u64 c = 0;
  for (u64 r : rs.values()) {
    if (r >= M) break;
    if (table.prime_unchecked(M - r)) ++c;
  }
  return c;
}

inline u64 representations(const BaseContext& ctx, u64 M, const FactorTable& table) {
  if (M < 2) return 0;
  return representations(M, ReverseSet(ctx, M - 1, table), table);
}

/// The same count, iterating over p2 and looking M - p2 up in the reverse set.
inline u64 representations_by_p2(u64 M, const ReverseSet& rs, const FactorTable& table) {
  detail::require_target(M, rs, table, "representations_by_p2");
  u64 c = 0;
  for (u64 p = 2; p < M; ++p)
    if (table.prime_unchecked(p) && rs.contains(M - p)) ++c;
  return c;
}

inline bool representable(u64 M, const ReverseSet& rs, const FactorTable& table) {
  for (u64 r : rs.values()) {
    if (r >= M) break;
    if (table.prime_unchecked(M - r)) return true;
  }
  return false;
}

struct ScanResult {
  u64 base = 0;
  u64 limit = 0;
  u64 scanned_from = 4;
  ParityClass parity = ParityClass::AllTargets;
  std::vector<u64> exceptions;

  friend bool operator==(const ScanResult&, const ScanResult&) = default;
};

/// In-class targets in [4, limit] with no representation. The target range
/// is split into one contiguous block per worker and merged in order.
inline ScanResult scan_exceptions(const BaseContext& ctx, u64 limit, const FactorTable& table,
                                  unsigned workers = 1) {
  constexpr u64 from = 4;
  if (limit > table.limit())
    throw std::out_of_range("scan_exceptions: limit exceeds factor table");
  ScanResult res{ctx.b(), limit, from, parity_class(ctx), {}};
  if (limit < from) return res;
  const ReverseSet rs(ctx, limit - 1, table);

  const u64 span = limit - from + 1;
  workers = std::max(1u, static_cast<unsigned>(std::min<u64>(workers, span)));
  std::vector<std::vector<u64>> parts(workers);
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](unsigned w) {
    try {
      const u64 lo = from + span * w / workers;
      const u64 hi = from + span * (w + 1) / workers;
      for (u64 M = lo; M < hi; ++M)
        if (in_parity_class(M, res.parity) && !representable(M, rs, table)) parts[w].push_back(M);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  for (auto& p : parts) res.exceptions.insert(res.exceptions.end(), p.begin(), p.end());
  return res;
}

/// h_b(M): primes p (b not dividing p) with rev(p) <= M - 1 and M - rev(p)
/// square-free.
inline u64 estermann_count(u64 M, const ReverseSet& rs, const FactorTable& table) {
  if (M < 2) return 0;
  detail::require_target(M, rs, table, "estermann_count");
  u64 c = 0;
  for (u64 r : rs.values()) {
    if (r >= M) break;
    if (table.mu_unchecked(M - r) != 0) ++c;
  }
  return c;
}

inline u64 estermann_count(const BaseContext& ctx, u64 M, const FactorTable& table) {
  if (M < 2) return 0;
  return estermann_count(M, ReverseSet(ctx, M - 1, table), table);
}

}  // namespace revpal
