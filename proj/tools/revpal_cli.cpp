// revpal: command-line front end to the library. One subcommand per
// computation; results go to stdout (or --output) as JSON lines, CSV or
// human-readable text.
//
// Exit status: 0 success, 1 computational failure (a certificate failed,
// no K found, I/O error), 2 usage or precondition error.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "revpal/revpal.hpp"

using namespace revpal;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  u64 base = 10;
  u64 n = 0;
  unsigned k = 2;
  unsigned N = 1;
  u64 x = 0;
  u64 d = 1;
  u64 d_max = 0;
  u64 K = 2;
  u64 K_max = 64;
  u64 b0 = 0;
  u64 b1 = 0;
  u64 limit = 0;
  u64 M = 0;
  u64 pstar = 0;
  unsigned omega_max = 6;
  std::optional<unsigned> kfree_k;
  std::string rough;
  std::vector<u64> x_values;
  double theta = 0.0;
  double slack = kDefaultSlack;
  bool star = false;
  std::string kind = "rev-kfree";
  unsigned workers = 1;
  std::string format = "json";
  std::string output;
  std::string summary;
  std::string cache_dir;
  u64 sieve_budget = FactorTable::kDefaultBudget;
};

Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  try {
    Rational r;
    std::size_t used = 0;
    if (slash == std::string::npos) {
      r.num = std::stoull(s, &used);
      if (used != s.size()) throw UsageError("");
      r.den = 1;
    } else {
      r.num = std::stoull(s.substr(0, slash), &used);
      if (used != slash) throw UsageError("");
      const std::string tail = s.substr(slash + 1);
      r.den = std::stoull(tail, &used);
      if (used != tail.size()) throw UsageError("");
    }
    if (r.den == 0 || r.num == 0 || r.num > r.den) throw UsageError("");
    return r;
  } catch (const std::exception&) {
    throw UsageError("--rough expects a rational p/q in (0, 1], got '" + s + "'");
  }
}

FactorTable get_table(const RunConfig& cfg, u64 limit) {
  limit = std::max<u64>(limit, 2);
  if (limit > cfg.sieve_budget)
    throw std::length_error("this run needs a factor table up to " + std::to_string(limit) +
                            ", above --sieve-budget " + std::to_string(cfg.sieve_budget));
  std::string dir = cfg.cache_dir;
  if (dir.empty())
    if (const char* env = std::getenv("REVPAL_CACHE_DIR")) dir = env;
  if (dir.empty()) return FactorTable::build(limit, cfg.sieve_budget);
  return FactorTable::load_or_build(limit, dir, cfg.sieve_budget);
}

template <class Record>
void emit(const RunConfig& cfg, const std::vector<Record>& records) {
  emit_report(records, parse_format(cfg.format),
              cfg.output.empty() ? std::nullopt : std::optional<std::string>(cfg.output));
}

u64 digit_table_limit(const BaseContext& ctx, unsigned N) { return checked_pow(ctx.b(), N) - 1; }

int run(const std::string& cmd, const RunConfig& cfg) {
  parse_format(cfg.format);
  if (cfg.workers < 1) throw UsageError("--workers must be >= 1");

  if (cmd == "reverse") {
    const BaseContext ctx(cfg.base);
    if (cfg.n == 0 || cfg.n % ctx.b() == 0)
      throw UsageError("reverse: n must be positive and not divisible by the base");
    const ValueRecord r{{{"b", ctx.b()},
                         {"n", cfg.n},
                         {"digits", digit_count(cfg.n, ctx.b())},
                         {"reverse", reverse(cfg.n, ctx)},
                         {"palindrome", is_palindrome(cfg.n, ctx)},
                         {"in_b_star", in_b_star(cfg.n, ctx)}}};
    emit(cfg, std::vector{r});
    return kExitOk;
  }

  if (cmd == "palindromes") {
    const BaseContext ctx(cfg.base);
    std::vector<ValueRecord> rows;
    for (u64 n : enumerate_palindromes(ctx, cfg.x, cfg.star)) rows.push_back({{{"n", n}}});
    if (rows.empty()) {
      rows.push_back({{{"b", ctx.b()}, {"x", cfg.x}, {"star", cfg.star}, {"count", 0}}});
    }
    emit(cfg, rows);
    return kExitOk;
  }

  if (cmd == "count-rev-kfree") {
    const BaseContext ctx(cfg.base);
    if (cfg.k < 2) throw UsageError("--k must be >= 2");
    const auto table = get_table(cfg, digit_table_limit(ctx, cfg.N));
    emit(cfg, std::vector{count_rev_kfree_primes(ctx, cfg.k, cfg.N, table)});
    return kExitOk;
  }

  if (cmd == "count-palin-kfree") {
    const BaseContext ctx(cfg.base);
    if (cfg.k < 3) throw UsageError("--k must be >= 3");
    const auto table = get_table(cfg, cfg.x);
    emit(cfg, std::vector{count_kfree_palindromes(ctx, cfg.k, cfg.x, table)});
    return kExitOk;
  }

  if (cmd == "rev-pi-star") {
    const BaseContext ctx(cfg.base);
    rev_pi_main_term(ctx, cfg.d, cfg.N);  // validates d before sieving
    const auto table = get_table(cfg, digit_table_limit(ctx, cfg.N));
    emit(cfg, std::vector{rev_pi_star(ctx, cfg.N, cfg.d, table)});
    return kExitOk;
  }

  if (cmd == "palin-div") {
    const BaseContext ctx(cfg.base);
    if (cfg.d_max > 0) {
      const auto s = divisibility_sweep(ctx, cfg.x, cfg.d_max, cfg.star);
      emit(cfg, std::vector{ValueRecord{{{"b", ctx.b()},
                                         {"x", s.x},
                                         {"star", cfg.star},
                                         {"d_max", s.d_max},
                                         {"palindromes", s.total},
                                         {"sup_count_sqrt_d_over_total", round12(s.sup)},
                                         {"argmax_d", s.argmax}}}});
      return kExitOk;
    }
    if (cfg.d < 1) throw UsageError("--d must be >= 1");
    emit(cfg, std::vector{ValueRecord{{{"b", ctx.b()},
                                       {"x", cfg.x},
                                       {"d", cfg.d},
                                       {"star", cfg.star},
                                       {"count", count_palindromes_div_by(ctx, cfg.x, cfg.d, cfg.star)},
                                       {"total", count_palindromes(ctx, cfg.x, cfg.star)}}}});
    return kExitOk;
  }

  if (cmd == "almost-prime") {
    const BaseContext ctx(cfg.base);
    std::optional<Rational> rough;
    if (!cfg.rough.empty()) rough = parse_rational(cfg.rough);
    if (cfg.kfree_k && *cfg.kfree_k < 2) throw UsageError("--kfree-k must be >= 2");
    const auto table = get_table(cfg, cfg.x);
    const u64 c = count_almost_prime_palindromes(ctx, cfg.x, cfg.omega_max, cfg.kfree_k, rough, table);
    ValueRecord r{{{"b", ctx.b()}, {"x", cfg.x}, {"omega_max", cfg.omega_max}}};
    r.fields.emplace_back("kfree_k", cfg.kfree_k ? json(*cfg.kfree_k) : json(nullptr));
    r.fields.emplace_back("rough", cfg.rough.empty() ? json(nullptr) : json(cfg.rough));
    r.fields.emplace_back("count", c);
    emit(cfg, std::vector{r});
    return kExitOk;
  }

  if (cmd == "sqrt-law") {
    const BaseContext ctx(cfg.base);
    if (cfg.x_values.empty()) throw UsageError("--x-values is required");
    emit(cfg, sqrt_law_check(ctx, cfg.x_values, cfg.star));
    return kExitOk;
  }

  if (cmd == "certify") {
    const BaseContext ctx(cfg.base);
    const auto c = certify_base(ctx, cfg.K, cfg.slack);
    emit(cfg, std::vector{c});
    return c.passed ? kExitOk : kExitFailure;
  }

  if (cmd == "certify-range") {
    if (cfg.b0 < 2 || cfg.b1 < cfg.b0) throw UsageError("need 2 <= --b0 <= --b1");
    if (cfg.b1 > BaseContext::kMaxBase) throw UsageError("--b1 too large");
    const auto t0 = std::chrono::steady_clock::now();
    const auto certs = certify_range(cfg.b0, cfg.b1, cfg.K, cfg.workers, cfg.slack);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    emit(cfg, certs);
    if (!cfg.summary.empty()) {
      std::ofstream os(cfg.summary, std::ios::trunc);
      if (!os) throw std::runtime_error("cannot write " + cfg.summary);
      os << "b0,b1,K,all_passed,seconds\n"
         << cfg.b0 << ',' << cfg.b1 << ',' << cfg.K << ',' << (all_passed(certs) ? "true" : "false") << ','
         << fmt12(secs) << '\n';
    }
    std::cerr << "certified " << certs.size() << " base(s) in " << fmt12(secs) << " s\n";
    return all_passed(certs) ? kExitOk : kExitFailure;
  }

  if (cmd == "find-min-k") {
    const BaseContext ctx(cfg.base);
    const auto k = find_min_K(ctx, cfg.K_max, cfg.slack);
    emit(cfg, std::vector{ValueRecord{{{"b", ctx.b()},
                                       {"K_max", cfg.K_max},
                                       {"min_K", k ? json(*k) : json(nullptr)},
                                       {"f_at_zero", round12(f_eval(ctx, 0.0))},
                                       {"threshold", round12(certification_threshold(ctx.b()))}}}});
    return k ? kExitOk : kExitFailure;
  }

  if (cmd == "f-eval") {
    const BaseContext ctx(cfg.base);
    emit(cfg, std::vector{ValueRecord{{{"b", ctx.b()},
                                       {"theta", round12(cfg.theta)},
                                       {"f", round12(f_eval(ctx, cfg.theta))},
                                       {"threshold", round12(certification_threshold(ctx.b()))},
                                       {"arch_length", round12(arch_length(ctx))}}}});
    return kExitOk;
  }

  if (cmd == "hcabdlog") {
    const BaseContext ctx(cfg.base);
    if (cfg.limit < 4) throw UsageError("--limit must be >= 4");
    const auto table = get_table(cfg, reverse_table_requirement(ctx, cfg.limit));
    emit(cfg, std::vector{scan_exceptions(ctx, cfg.limit, table, cfg.workers)});
    return kExitOk;
  }

  if (cmd == "estermann") {
    const BaseContext ctx(cfg.base);
    if (cfg.M < 1) throw UsageError("--M must be >= 1");
    const u64 need = cfg.M < 2 ? 2 : reverse_table_requirement(ctx, cfg.M - 1);
    const auto table = get_table(cfg, std::max(need, cfg.M));
    const u64 h = estermann_count(ctx, cfg.M, table);
    const u64 reps = cfg.M < 2 ? 0 : representations(ctx, cfg.M, table);
    emit(cfg, std::vector{ValueRecord{{{"b", ctx.b()}, {"M", cfg.M}, {"h", h}, {"representations", reps}}}});
    return kExitOk;
  }

  if (cmd == "main-term") {
    const BaseContext ctx(cfg.base);
    ValueRecord r{{{"kind", cfg.kind}, {"b", ctx.b()}}};
    if (cfg.kind == "rev-kfree") {
      const auto mt = rev_kfree_main_term(ctx, cfg.k, cfg.N);
      r.fields.insert(r.fields.end(), {{"k", cfg.k}, {"N", cfg.N}, {"value", mt.str()},
                                       {"log_value", round12(mt.log_value)}});
    } else if (cfg.kind == "rev-pi") {
      const auto mt = rev_pi_main_term(ctx, cfg.d, cfg.N);
      r.fields.insert(r.fields.end(), {{"d", cfg.d}, {"N", cfg.N}, {"value", mt.str()},
                                       {"log_value", round12(mt.log_value)}});
    } else if (cfg.kind == "palin-kfree") {
      r.fields.insert(r.fields.end(), {{"k", cfg.k}, {"pstar", cfg.pstar},
                                       {"value", round12(palin_kfree_main_term(ctx, cfg.k, cfg.pstar))}});
    } else if (cfg.kind == "kfree-density") {
      r.fields.insert(r.fields.end(), {{"k", cfg.k}, {"value", round12(kfree_density(ctx, cfg.k))}});
    } else {
      throw UsageError("unknown --kind " + cfg.kind);
    }
    emit(cfg, std::vector{r});
    return kExitOk;
  }

  throw UsageError("unknown subcommand " + cmd);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"revpal: digital reverses, power-free palindromes and exponential-sum certification"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "json | csv | human")
        ->check(CLI::IsMember({"json", "csv", "human"}));
    sub->add_option("--output,-o", cfg.output, "write results to this file instead of stdout");
    sub->add_option("--workers", cfg.workers, "worker threads")->check(CLI::PositiveNumber);
  };
  auto base = [&](CLI::App* sub, bool required = true) {
    auto* o = sub->add_option("--base,--b", cfg.base, "number base b >= 2")->check(CLI::Range(u64{2}, BaseContext::kMaxBase));
    if (required) o->required();
  };
  auto sieve = [&](CLI::App* sub) {
    sub->add_option("--cache-dir", cfg.cache_dir, "factor table cache directory (default $REVPAL_CACHE_DIR)");
    sub->add_option("--sieve-budget", cfg.sieve_budget, "largest factor table allowed");
  };

  auto* s_reverse = app.add_subcommand("reverse", "digital reverse of n");
  base(s_reverse);
  s_reverse->add_option("--n", cfg.n, "positive integer")->required();
  common(s_reverse);

  auto* s_pal = app.add_subcommand("palindromes", "list palindromes <= x");
  base(s_pal);
  s_pal->add_option("--x", cfg.x)->required();
  s_pal->add_flag("--star", cfg.star, "only those coprime to b^3-b");
  common(s_pal);

  auto* s_crk = app.add_subcommand("count-rev-kfree", "primes in B_N whose reverse is in B*_N and k-free");
  base(s_crk);
  s_crk->add_option("--k", cfg.k)->required();
  s_crk->add_option("--N", cfg.N, "digit count")->required()->check(CLI::Range(1u, 64u));
  common(s_crk);
  sieve(s_crk);

  auto* s_cpk = app.add_subcommand("count-palin-kfree", "k-free palindromes coprime to b^3-b up to x");
  base(s_cpk);
  s_cpk->add_option("--k", cfg.k)->required();
  s_cpk->add_option("--x", cfg.x)->required()->check(CLI::PositiveNumber);
  common(s_cpk);
  sieve(s_cpk);

  auto* s_rps = app.add_subcommand("rev-pi-star", "reversed primes in B*_N divisible by d");
  base(s_rps);
  s_rps->add_option("--N", cfg.N)->required()->check(CLI::Range(1u, 64u));
  s_rps->add_option("--d", cfg.d)->required()->check(CLI::PositiveNumber);
  common(s_rps);
  sieve(s_rps);

  auto* s_pd = app.add_subcommand("palin-div", "palindromes <= x divisible by d, or a sweep over d <= d-max");
  base(s_pd);
  s_pd->add_option("--x", cfg.x)->required();
  s_pd->add_option("--d", cfg.d);
  s_pd->add_option("--d-max", cfg.d_max, "sweep sup count(d) sqrt(d) / total over d <= d-max");
  s_pd->add_flag("--star", cfg.star);
  common(s_pd);

  auto* s_ap = app.add_subcommand("almost-prime", "palindromes with few prime factors");
  base(s_ap);
  s_ap->add_option("--x", cfg.x)->required()->check(CLI::PositiveNumber);
  s_ap->add_option("--omega-max", cfg.omega_max);
  s_ap->add_option("--kfree-k", cfg.kfree_k);
  s_ap->add_option("--rough", cfg.rough, "require smallest prime factor >= x^(p/q), e.g. 1/21");
  common(s_ap);
  sieve(s_ap);

  auto* s_sq = app.add_subcommand("sqrt-law", "palindrome counts normalized by sqrt(x)");
  base(s_sq);
  s_sq->add_option("--x-values", cfg.x_values, "ascending list")->required()->delimiter(',');
  s_sq->add_flag("--star", cfg.star);
  common(s_sq);

  auto* s_cert = app.add_subcommand("certify", "certify f(theta) < b^(6/5) with K segments");
  base(s_cert);
  s_cert->add_option("--K", cfg.K)->required()->check(CLI::Range(u64{2}, u64{1} << 24));
  s_cert->add_option("--slack", cfg.slack)->check(CLI::NonNegativeNumber);
  common(s_cert);

  auto* s_cr = app.add_subcommand("certify-range", "certify every base in [b0, b1]");
  s_cr->add_option("--b0", cfg.b0)->required();
  s_cr->add_option("--b1", cfg.b1)->required();
  s_cr->add_option("--K", cfg.K)->required()->check(CLI::Range(u64{2}, u64{1} << 24));
  s_cr->add_option("--slack", cfg.slack)->check(CLI::NonNegativeNumber);
  s_cr->add_option("--summary", cfg.summary, "CSV with b0,b1,K,all_passed,seconds");
  common(s_cr);

  auto* s_fk = app.add_subcommand("find-min-k", "smallest passing K in [2, K-max]");
  base(s_fk);
  s_fk->add_option("--K-max", cfg.K_max);
  s_fk->add_option("--slack", cfg.slack)->check(CLI::NonNegativeNumber);
  common(s_fk);

  auto* s_fe = app.add_subcommand("f-eval", "evaluate f(theta)");
  base(s_fe);
  s_fe->add_option("--theta", cfg.theta);
  common(s_fe);

  auto* s_hc = app.add_subcommand("hcabdlog", "targets in [4, limit] not of the form rev(p1) + p2");
  base(s_hc);
  s_hc->add_option("--limit", cfg.limit)->required();
  common(s_hc);
  sieve(s_hc);

  auto* s_es = app.add_subcommand("estermann", "h_b(M): primes p with M - rev(p) square-free");
  base(s_es);
  s_es->add_option("--M", cfg.M)->required();
  common(s_es);
  sieve(s_es);

  auto* s_mt = app.add_subcommand("main-term", "evaluate a predicted main term");
  base(s_mt);
  s_mt->add_option("--kind", cfg.kind)->check(CLI::IsMember({"rev-kfree", "rev-pi", "palin-kfree", "kfree-density"}));
  s_mt->add_option("--k", cfg.k);
  s_mt->add_option("--N", cfg.N)->check(CLI::Range(1u, 1000000u));
  s_mt->add_option("--d", cfg.d);
  s_mt->add_option("--pstar", cfg.pstar);
  common(s_mt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    return run(cmd, cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::length_error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::overflow_error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}
