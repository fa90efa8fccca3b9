#pragma once

// Certification that f(theta) = sum_{0<=h<b} min(b, 1/|sin pi(h/b + theta)|)
// stays below b^(6/5) for every real theta.
//
// f has period 1/b, so only theta in [0, 1/b] matters. That window is cut
// into K segments of width 1/(Kb). Each term f_h is a chain of convex arches
// joined by plateaus at height b, and every plateau is wider than 1/(Kb)
// once K >= 2, so on a segment f_h is maximised at one of the two endpoints.
// Summing the endpoint maxima bounds f on the segment.
//
// All endpoints lie on the grid j/(Kb), so the certifier tabulates
// g(j/(Kb)) once and reads every f_h endpoint from that table.

#include <algorithm>
#include <atomic>
#include <exception>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "revpal/digits.hpp"

namespace revpal {

inline constexpr double kDefaultSlack = 1e-9;

// Relative widening of the cap test |sin| < 1/b so that values rounding to
// either side of an arch boundary are both capped.
inline constexpr double kCapGuard = 1e-12;

struct Certificate {
  u64 b = 0;
  u64 K = 0;
  double max_bound = 0.0;
  double threshold = 0.0;
  double slack = kDefaultSlack;
  bool passed = false;
  double cb_estimate = 0.0;
  double alpha_estimate = 0.0;
  u64 worst_segment = 0;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

namespace detail {

// min(b, 1/s) for s = |sin(pi x)| >= 0, with the guarded cap.
inline double capped_reciprocal(double s, double b) {
  if (s < (1.0 + kCapGuard) / b) return b;
  return 1.0 / s;
}

// |sin(pi x)| with x reduced to [0, 1/2] first.
inline double abs_sin_pi(double x) {
  x -= std::floor(x);
  x = std::min(x, 1.0 - x);
  return std::sin(std::numbers::pi * x);
}

}  // namespace detail

/// f_h(theta) = min(b, 1/|sin pi(h/b + theta)|).
inline double f_h(const BaseContext& ctx, u64 h, double theta) {
  const double b = static_cast<double>(ctx.b());
  return detail::capped_reciprocal(detail::abs_sin_pi(static_cast<double>(h) / b + theta), b);
}

inline double f_eval(const BaseContext& ctx, double theta) {
  double sum = 0.0;
  for (u64 h = 0; h < ctx.b(); ++h) sum += f_h(ctx, h, theta);
  return sum;
}

/// Width of each plateau of f_h: (2/pi) arcsin(1/b).
inline double arch_length(const BaseContext& ctx) {
  return 2.0 / std::numbers::pi * std::asin(1.0 / static_cast<double>(ctx.b()));
}

inline double certification_threshold(u64 b) {
  return std::pow(static_cast<double>(b), 1.2);
}

namespace detail {

inline Certificate make_certificate(u64 b, u64 K, double max_bound, u64 worst, double slack) {
  Certificate c;
  c.b = b;
  c.K = K;
  c.max_bound = max_bound;
  c.threshold = certification_threshold(b);
  c.slack = slack;
  c.passed = max_bound * (1.0 + slack) < c.threshold;
  c.cb_estimate = max_bound / static_cast<double>(b);
  c.alpha_estimate = std::log(c.cb_estimate) / std::log(static_cast<double>(b));
  c.worst_segment = worst;
  return c;
}

inline void check_K(u64 K) {
  if (K < 2) throw std::invalid_argument("certify: K must be >= 2, got " + std::to_string(K));
}

}  // namespace detail

/// Values of g(j/M) = min(b, 1/|sin(pi j/M)|) on the grid M = K*b. Stored for
/// j in [0, M/2] only since g(x) = g(1-x).
class GridTable {
 public:
  GridTable(u64 b, u64 K) : M_(b * K) {
    const double bd = static_cast<double>(b);
    const double Md = static_cast<double>(M_);
    half_.resize(M_ / 2 + 1);
    for (u64 j = 0; j < half_.size(); ++j)
      half_[j] = detail::capped_reciprocal(std::sin(std::numbers::pi * (static_cast<double>(j) / Md)), bd);
  }

  u64 size() const noexcept { return M_; }

  double operator()(u64 j) const noexcept {
    j %= M_;
    return half_[std::min(j, M_ - j)];
  }

 private:
  u64 M_;
  std::vector<double> half_;
};

/// Certifies f < b^(6/5) on [0, 1/b] with K segments, reading endpoints from
/// the shared grid. `offset` shifts the segments by offset/(Kb); shifting by
/// a multiple of K is a shift by a whole period 1/b.
inline Certificate certify_base(const BaseContext& ctx, u64 K, double slack = kDefaultSlack,
                                u64 offset = 0) {
  detail::check_K(K);
  const u64 b = ctx.b();
  const GridTable g(b, K);
  double best = -1.0;
  u64 worst = 0;
  for (u64 i = 0; i < K; ++i) {
    double sum = 0.0;
    for (u64 h = 0; h < b; ++h) {
      const u64 j = h * K + i + offset;
      sum += std::max(g(j), g(j + 1));
    }
    if (sum > best) {
      best = sum;
      worst = i;
    }
  }
  return detail::make_certificate(b, K, best, worst, slack);
}

/// Same certificate evaluated endpoint by endpoint through f_h, without the
/// grid table. Used to cross-check certify_base.
inline Certificate certify_base_naive(const BaseContext& ctx, u64 K, double slack = kDefaultSlack) {
  detail::check_K(K);
  const u64 b = ctx.b();
  const double w = 1.0 / static_cast<double>(K * b);
  double best = -1.0;
  u64 worst = 0;
  for (u64 i = 0; i < K; ++i) {
    const double left = static_cast<double>(i) * w;
    const double right = static_cast<double>(i + 1) * w;
    double sum = 0.0;
    for (u64 h = 0; h < b; ++h) sum += std::max(f_h(ctx, h, left), f_h(ctx, h, right));
    if (sum > best) {
      best = sum;
      worst = i;
    }
  }
  return detail::make_certificate(b, K, best, worst, slack);
}

/// One certificate per base in [b0, b1], in base order. Bases are handed to
/// `workers` threads; the output does not depend on the worker count.
inline std::vector<Certificate> certify_range(u64 b0, u64 b1, u64 K, unsigned workers = 1,
                                              double slack = kDefaultSlack) {
  if (b0 < 2 || b1 < b0) throw std::invalid_argument("certify_range: need 2 <= b0 <= b1");
  detail::check_K(K);
  const u64 n = b1 - b0 + 1;
  std::vector<Certificate> out(n);
  workers = std::max(1u, static_cast<unsigned>(std::min<u64>(workers, n)));
  std::atomic<u64> next{0};
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](unsigned w) {
    try {
      for (u64 i = next++; i < n; i = next++) out[i] = certify_base(BaseContext(b0 + i), K, slack);
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
  return out;
}

inline bool all_passed(const std::vector<Certificate>& certs) {
  return std::all_of(certs.begin(), certs.end(), [](const Certificate& c) { return c.passed; });
}

/// Smallest K in [2, K_max] whose certificate passes. Every K is tried in
/// turn; passing is not assumed monotone in K.
inline std::optional<u64> find_min_K(const BaseContext& ctx, u64 K_max, double slack = kDefaultSlack) {
  for (u64 K = 2; K <= K_max; ++K)
    if (certify_base(ctx, K, slack).passed) return K;
  return std::nullopt;
}

}  // namespace revpal
