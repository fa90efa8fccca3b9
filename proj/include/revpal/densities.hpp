#pragma once

// Closed-form main terms: zeta(k), the k-free density restricted to integers
// coprime to b^3-b, and the leading terms the empirical counts are compared
// against. Everything involving b^N is accumulated in log space.

#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "revpal/digits.hpp"

namespace revpal {

/// Riemann zeta at an integer k >= 2.
inline double zeta(unsigned k) {
  if (k < 2) throw std::invalid_argument("zeta: k must be >= 2");
  constexpr double pi = std::numbers::pi;
  if (k == 2) return pi * pi / 6.0;
  if (k == 4) return pi * pi * pi * pi / 90.0;

  // Euler-Maclaurin: partial sum below n0, then integral, half-term and
  // Bernoulli corrections. With n0 = 16 the first omitted term is < 1e-20.
  constexpr unsigned n0 = 16;
  const double s = static_cast<double>(k);
  double sum = 0.0;
  for (unsigned n = n0 - 1; n >= 1; --n) sum += std::pow(static_cast<double>(n), -s);
  const double N = n0;
  double tail = std::pow(N, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(N, -s);
  // B_{2j}/(2j)!
  constexpr double coef[] = {1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0, -1.0 / 1209600.0};
  double rising = s;  // s(s+1)...(s+2j-2)
  for (int j = 1; j <= 4; ++j) {
    tail += coef[j - 1] * rising * std::pow(N, -s - 2.0 * j + 1.0);
    rising *= (s + 2.0 * j - 1.0) * (s + 2.0 * j);
  }
  return sum + tail;
}

/// (1/zeta(k)) * prod_{p | b^3-b} (1 - p^-k)^-1, i.e. the sum of mu(d)/d^k
/// over d coprime to b^3-b.
inline double kfree_density(const BaseContext& ctx, unsigned k) {
  double v = 1.0 / zeta(k);
  for (u64 p : ctx.primes_b3mb()) v /= 1.0 - std::pow(static_cast<double>(p), -static_cast<double>(k));
  return v;
}

/// A positive real held as its natural logarithm so that b^N-sized values
/// survive beyond double range.
struct MainTerm {
  double log_value = 0.0;
  std::string description;

  double value() const { return std::exp(log_value); }

  /// 12 significant digits; (mantissa)e(exponent) form above 1e300.
  std::string str() const {
    char buf[64];
    const double log10v = log_value / std::numbers::ln10;
    if (log10v < 300.0) {
      std::snprintf(buf, sizeof buf, "%.12g", value());
    } else {
      double e = std::floor(log10v);
      double m = std::pow(10.0, log10v - e);
      std::snprintf(buf, sizeof buf, "%.11fe+%.0f", m, e);
    }
    return buf;
  }
};

namespace detail {

// log( (phi(b)/b) * b^N / (N log b) )
inline double log_leading_prime_count(const BaseContext& ctx, unsigned N) {
  if (N < 1) throw std::invalid_argument("digit count N must be >= 1");
  const double lb = std::log(static_cast<double>(ctx.b()));
  return std::log(static_cast<double>(ctx.phi_b()) / static_cast<double>(ctx.b())) + N * lb -
         std::log(N * lb);
}

}  // namespace detail

/// Predicted count of primes p in B_N with rev(p) in B*_N and k-free.
inline MainTerm rev_kfree_main_term(const BaseContext& ctx, unsigned k, unsigned N) {
  return {std::log(kfree_density(ctx, k)) + detail::log_leading_prime_count(ctx, N),
          "rev_kfree(b=" + std::to_string(ctx.b()) + ",k=" + std::to_string(k) +
              ",N=" + std::to_string(N) + ")"};
}

/// Predicted count of reversed primes in B*_N divisible by d; needs
/// gcd(d, b^3-b) = 1.
inline MainTerm rev_pi_main_term(const BaseContext& ctx, u64 d, unsigned N) {
  if (d == 0 || std::gcd(d, ctx.b3mb()) != 1)
    throw std::invalid_argument("rev_pi_main_term: d must be coprime to b^3-b");
  return {detail::log_leading_prime_count(ctx, N) - std::log(static_cast<double>(d)),
          "rev_pi_star(b=" + std::to_string(ctx.b()) + ",d=" + std::to_string(d) +
              ",N=" + std::to_string(N) + ")"};
}

/// |P*_b(x)| times the k-free density; k >= 3.
inline double palin_kfree_main_term(const BaseContext& ctx, unsigned k, u64 pstar_count) {
  if (k < 3) throw std::invalid_argument("palin_kfree_main_term: k must be >= 3");
  return static_cast<double>(pstar_count) * kfree_density(ctx, k);
}

}  // namespace revpal
