#pragma once

// Empirical counting functions, each paired with its predicted main term.

#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "revpal/densities.hpp"
#include "revpal/digits.hpp"
#include "revpal/sieve.hpp"

namespace revpal {

/// An empirical count next to its predicted main term. k and d are 0 when
/// they do not apply to the experiment.
struct CountReport {
  std::string label;
  u64 b = 0;
  unsigned k = 0;
  u64 n_or_x = 0;
  u64 d = 0;
  u64 empirical = 0;
  double main_term = 0.0;

  std::optional<double> ratio() const {
    if (!(main_term > 0.0)) return std::nullopt;
    return static_cast<double>(empirical) / main_term;
  }

  friend bool operator==(const CountReport&, const CountReport&) = default;
};

namespace detail {

inline void require_covered(u64 top, const FactorTable& table, const char* what) {
  if (top > table.limit())
    throw std::out_of_range(std::string(what) + ": needs a factor table up to " +
                            std::to_string(top) + ", have " + std::to_string(table.limit()));
}

}  // namespace detail

/// Calls fn(n) for every palindrome n <= x (b not dividing n) in ascending
/// order. Each N-digit palindrome is built by mirroring its leading
/// ceil(N/2) digits, so the cost is proportional to the output.
template <class Fn>
void for_each_palindrome(const BaseContext& ctx, u64 x, Fn&& fn) {
  const u64 b = ctx.b();
  using u128 = unsigned __int128;
  u128 lo = 1;  // b^(N-1)
  for (unsigned N = 1; lo <= x; ++N, lo *= b) {
    const unsigned half = (N + 1) / 2;
    u128 plo = 1;
    for (unsigned i = 1; i < half; ++i) plo *= b;
    const u128 phi = plo * b;
    for (u128 prefix = plo; prefix < phi; ++prefix) {
      u128 n = prefix;
      u128 t = (N % 2 == 1) ? prefix / b : prefix;
      for (; t != 0; t /= b) n = n * b + t % b;
      if (n > x) break;
      fn(static_cast<u64>(n));
    }
  }
}

/// P_b(x), or P*_b(x) when star is set, ascending.
inline std::vector<u64> enumerate_palindromes(const BaseContext& ctx, u64 x, bool star) {
  std::vector<u64> out;
  for_each_palindrome(ctx, x, [&](u64 n) {
    if (!star || in_b_star(n, ctx)) out.push_back(n);
  });
  return out;
}

inline u64 count_palindromes(const BaseContext& ctx, u64 x, bool star) {
  u64 c = 0;
  for_each_palindrome(ctx, x, [&](u64 n) {
    if (!star || in_b_star(n, ctx)) ++c;
  });
  return c;
}

/// r_{b,k}(N): primes p in B_N with rev(p) in B*_N and rev(p) k-free.
inline CountReport count_rev_kfree_primes(const BaseContext& ctx, unsigned k, unsigned N,
                                          const FactorTable& table) {
  if (k < 2) throw std::invalid_argument("count_rev_kfree_primes: k must be >= 2");
  const u64 b = ctx.b();
  const u64 lo = checked_pow(b, N - 1);
  const u64 hi = checked_pow(b, N);
  detail::require_covered(hi - 1, table, "count_rev_kfree_primes");
  u64 count = 0;
  for (u64 p = lo; p < hi; ++p) {
    if (p % b == 0 || !table.prime_unchecked(p)) continue;
    const u64 r = reverse(p, ctx);
    if (in_b_star(r, ctx) && is_k_free(r, k, table)) ++count;
  }
  return {"rev_kfree_primes", b, k, N, 0, count, rev_kfree_main_term(ctx, k, N).value()};
}

/// Same count as count_rev_kfree_primes, reached from the other side: walk
/// the k-free m in B*_N and test whether rev(m) is prime.
inline u64 count_rev_kfree_primes_by_reverse(const BaseContext& ctx, unsigned k, unsigned N,
                                             const FactorTable& table) {
  const u64 b = ctx.b();
  const u64 lo = checked_pow(b, N - 1);
  const u64 hi = checked_pow(b, N);
  detail::require_covered(hi - 1, table, "count_rev_kfree_primes_by_reverse");
  u64 count = 0;
  for (u64 m = lo; m < hi; ++m) {
    if (!in_b_star(m, ctx) || !is_k_free(m, k, table)) continue;
    if (table.prime_unchecked(reverse(m, ctx))) ++count;
  }
  return count;
}

/// pi*_N(0, d): primes p in B_N with rev(p) in B*_N and d | rev(p).
inline CountReport rev_pi_star(const BaseContext& ctx, unsigned N, u64 d, const FactorTable& table) {
  const MainTerm mt = rev_pi_main_term(ctx, d, N);  // validates d
  const u64 b = ctx.b();
  const u64 lo = checked_pow(b, N - 1);
  const u64 hi = checked_pow(b, N);
  detail::require_covered(hi - 1, table, "rev_pi_star");
  u64 count = 0;
  for (u64 p = lo; p < hi; ++p) {
    if (p % b == 0 || !table.prime_unchecked(p)) continue;
    const u64 r = reverse(p, ctx);
    if (r % d == 0 && in_b_star(r, ctx)) ++count;
  }
  return {"rev_pi_star", b, 0, N, d, count, mt.value()};
}

/// p_{k,b}(x): k-free members of P*_b(x), against |P*_b(x)| times the
/// k-free density.
inline CountReport count_kfree_palindromes(const BaseContext& ctx, unsigned k, u64 x,
                                           const FactorTable& table) {
  if (k < 3) throw std::invalid_argument("count_kfree_palindromes: k must be >= 3");
  detail::require_covered(x, table, "count_kfree_palindromes");
  u64 pstar = 0;
  u64 count = 0;
  for_each_palindrome(ctx, x, [&](u64 n) {
    if (!in_b_star(n, ctx)) return;
    ++pstar;
    if (is_k_free(n, k, table)) ++count;
  });
  return {"kfree_palindromes", ctx.b(), k, x, 0, count, palin_kfree_main_term(ctx, k, pstar)};
}

/// Number of palindromes n <= x (coprime to b^3-b when star) with d | n.
inline u64 count_palindromes_div_by(const BaseContext& ctx, u64 x, u64 d, bool star) {
  if (d == 0) throw std::invalid_argument("count_palindromes_div_by: d must be >= 1");
  u64 c = 0;
  for_each_palindrome(ctx, x, [&](u64 n) {
    if (n % d == 0 && (!star || in_b_star(n, ctx))) ++c;
  });
  return c;
}

/// sup over 1 <= d <= d_max of count(d) * sqrt(d) / |P_b(x)|.
struct DivisibilitySweep {
  u64 x = 0;
  u64 d_max = 0;
  u64 total = 0;
  double sup = 0.0;
  u64 argmax = 0;
};

inline DivisibilitySweep divisibility_sweep(const BaseContext& ctx, u64 x, u64 d_max, bool star) {
  const auto pals = enumerate_palindromes(ctx, x, star);
  DivisibilitySweep s{x, d_max, pals.size(), 0.0, 0};
  if (pals.empty()) return s;
  for (u64 d = 1; d <= d_max; ++d) {
    u64 c = 0;
    for (u64 n : pals) c += (n % d == 0);
    const double v = static_cast<double>(c) * std::sqrt(static_cast<double>(d)) /
                     static_cast<double>(pals.size());
    if (v > s.sup) {
      s.sup = v;
      s.argmax = d;
    }
  }
  return s;
}

/// Positive rational num/den, used for the exponent of the roughness bound.
struct Rational {
  u64 num = 1;
  u64 den = 1;
};

namespace detail {

// Exact a^e when it fits in 128 bits; nullopt on overflow.
inline std::optional<unsigned __int128> pow128(u64 a, u64 e) {
  unsigned __int128 r = 1;
  for (u64 i = 0; i < e; ++i) {
    if (a != 0 && r > std::numeric_limits<unsigned __int128>::max() / a) return std::nullopt;
    r *= a;
  }
  return r;
}

// t^den >= x^num
inline bool pow_ge(u64 t, u64 x, const Rational& e) {
  auto lhs = pow128(t, e.den);
  auto rhs = pow128(x, e.num);
  if (lhs && rhs) return *lhs >= *rhs;
  if (!lhs && rhs) return true;
  if (lhs && !rhs) return false;
  return static_cast<long double>(e.den) * std::log(static_cast<long double>(t)) >=
         static_cast<long double>(e.num) * std::log(static_cast<long double>(x));
}

}  // namespace detail

/// Smallest integer t >= 1 with t >= x^(num/den).
inline u64 rough_threshold(u64 x, const Rational& e) {
  if (e.den == 0) throw std::invalid_argument("rough_threshold: zero denominator");
  if (x <= 1 || e.num == 0) return 1;
  const long double guess = std::pow(static_cast<long double>(x),
                                     static_cast<long double>(e.num) / static_cast<long double>(e.den));
  u64 t = guess < 1.0L ? 1 : static_cast<u64>(guess);
  while (t > 1 && detail::pow_ge(t - 1, x, e)) --t;
  while (!detail::pow_ge(t, x, e)) ++t;
  return t;
}

/// Palindromes n <= x with Omega(n) <= omega_max, optionally k-free and
/// optionally with smallest prime factor >= x^rough. n = 1 has no prime
/// factor and satisfies the roughness condition vacuously.
inline u64 count_almost_prime_palindromes(const BaseContext& ctx, u64 x, unsigned omega_max,
                                          std::optional<unsigned> kfree_k,
                                          std::optional<Rational> rough, const FactorTable& table) {
  detail::require_covered(x, table, "count_almost_prime_palindromes");
  if (kfree_k && *kfree_k < 2)
    throw std::invalid_argument("count_almost_prime_palindromes: k must be >= 2");
  const u64 threshold = rough ? rough_threshold(x, *rough) : 0;
  u64 c = 0;
  for_each_palindrome(ctx, x, [&](u64 n) {
    if (table.omega(n) > omega_max) return;
    if (kfree_k && !is_k_free(n, *kfree_k, table)) return;
    if (rough && n > 1 && table.spf(n) < threshold) return;
    ++c;
  });
  return c;
}

struct SqrtLawPoint {
  u64 x = 0;
  u64 count = 0;
  double normalized = 0.0;  // count / sqrt(x)
};

inline std::vector<SqrtLawPoint> sqrt_law_check(const BaseContext& ctx, const std::vector<u64>& xs,
                                                bool star) {
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (xs[i] < xs[i - 1]) throw std::invalid_argument("sqrt_law_check: x values must ascend");
  std::vector<SqrtLawPoint> out;
  out.reserve(xs.size());
  for (u64 x : xs) {
    const u64 c = x < 1 ? 0 : count_palindromes(ctx, x, star);
    out.push_back({x, c, x < 1 ? 0.0 : static_cast<double>(c) / std::sqrt(static_cast<double>(x))});
  }
  return out;
}

}  // namespace revpal
