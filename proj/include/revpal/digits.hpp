#pragma once

// Base-b digit arithmetic: expansion, digital reverse and the palindrome /
// coprimality predicates used throughout the library.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace revpal {

using u64 = std::uint64_t;

namespace detail {

// Appends the distinct prime divisors of n to out (trial division).
inline void append_prime_divisors(u64 n, std::vector<u64>& out) {
  for (u64 p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
}

}  // namespace detail

/// b^e, throwing std::overflow_error when the result does not fit in 64 bits.
inline u64 checked_pow(u64 b, unsigned e) {
  u64 r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (r > std::numeric_limits<u64>::max() / b)
      throw std::overflow_error("checked_pow: " + std::to_string(b) + "^" +
                                std::to_string(e) + " exceeds 64 bits");
    r *= b;
  }
  return r;
}

/// A base together with the constants derived from it.
///
/// Holds b^2-1, b^3-b = (b-1)b(b+1), the distinct primes dividing b^3-b and
/// Euler's totient of b. Immutable once constructed.
class BaseContext {
 public:
  // b^3 must fit in 64 bits.
  static constexpr u64 kMaxBase = 2642245;

  explicit BaseContext(u64 b) : b_(b) {
    if (b < 2) throw std::invalid_argument("base must be >= 2");
    if (b > kMaxBase)
      throw std::invalid_argument("base " + std::to_string(b) +
                                  " too large (b^3 must fit in 64 bits)");
    b2m1_ = b * b - 1;
    b3mb_ = b * b2m1_;

    // b^3-b = (b-1)b(b+1); each factor is at most b+1.
    std::vector<u64> ps;
    detail::append_prime_divisors(b - 1, ps);
    detail::append_prime_divisors(b, ps);
    detail::append_prime_divisors(b + 1, ps);
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    primes_b3mb_ = std::move(ps);

    std::vector<u64> pb;
    detail::append_prime_divisors(b, pb);
    phi_b_ = b;
    for (u64 p : pb) phi_b_ = phi_b_ / p * (p - 1);
  }

  u64 b() const noexcept { return b_; }
  u64 b2m1() const noexcept { return b2m1_; }
  u64 b3mb() const noexcept { return b3mb_; }
  const std::vector<u64>& primes_b3mb() const noexcept { return primes_b3mb_; }
  u64 phi_b() const noexcept { return phi_b_; }

 private:
  u64 b_;
  u64 b2m1_;
  u64 b3mb_;
  std::vector<u64> primes_b3mb_;
  u64 phi_b_;
};

/// Base-b expansion, least significant digit first, without leading zeros.
struct DigitVector {
  u64 base = 10;
  std::vector<u64> digits;

  std::size_t size() const noexcept { return digits.size(); }

  u64 value() const {
    u64 v = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) v = v * base + *it;
    return v;
  }

  friend bool operator==(const DigitVector&, const DigitVector&) = default;
};

inline DigitVector to_digits(u64 n, u64 b) {
  if (b < 2) throw std::invalid_argument("to_digits: base must be >= 2");
  if (n == 0) throw std::invalid_argument("to_digits: n must be positive");
  DigitVector dv{b, {}};
  for (; n != 0; n /= b) dv.digits.push_back(n % b);
  return dv;
}

/// Number of base-b digits of n >= 1.
inline unsigned digit_count(u64 n, u64 b) {
  if (n == 0) throw std::invalid_argument("digit_count: n must be positive");
  unsigned c = 0;
  for (; n != 0; n /= b) ++c;
  return c;
}

/// Digital reverse of n. Requires b not dividing n, so that the reverse keeps
/// the digit count of n and reverse(reverse(n)) == n.
inline u64 reverse(u64 n, const BaseContext& ctx) {
  const u64 b = ctx.b();
  if (n == 0) throw std::invalid_argument("reverse: n must be positive");
  if (n % b == 0)
    throw std::invalid_argument("reverse: " + std::to_string(n) +
                                " is divisible by the base " + std::to_string(b));
  unsigned __int128 r = 0;
  for (; n != 0; n /= b) {
    r = r * b + n % b;
    if (r > std::numeric_limits<u64>::max())
      throw std::overflow_error("reverse: result exceeds 64 bits");
  }
  return static_cast<u64>(r);
}

/// True iff b does not divide n and n reads the same in both directions.
inline bool is_palindrome(u64 n, const BaseContext& ctx) {
  if (n == 0 || n % ctx.b() == 0) return false;
  return reverse(n, ctx) == n;
}

/// Membership in B*_N for the digit count of n: gcd(n, b^3-b) == 1.
inline bool in_b_star(u64 n, const BaseContext& ctx) {
  return std::gcd(n, ctx.b3mb()) == 1;
}

/// Membership in B_N: n has exactly N digits and b does not divide n.
inline bool in_b_n(u64 n, unsigned N, const BaseContext& ctx) {
  return n != 0 && n % ctx.b() != 0 && digit_count(n, ctx.b()) == N;
}

}  // namespace revpal
