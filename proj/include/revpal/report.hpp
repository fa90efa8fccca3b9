#pragma once

// Serialization of result records: JSON lines, CSV and a human-readable
// form. Reals are written with 12 significant digits so that identical
// inputs give byte-identical output.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "revpal/experiments.hpp"
#include "revpal/revgoldbach.hpp"
#include "revpal/verifier.hpp"

namespace revpal {

using json = nlohmann::json;

enum class OutputFormat { Json, Csv, Human };

inline OutputFormat parse_format(const std::string& s) {
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  if (s == "human") return OutputFormat::Human;
  throw std::invalid_argument("unknown output format: " + s);
}

inline std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

/// v rounded to 12 significant digits.
inline double round12(double v) { return std::stod(fmt12(v)); }

// CountReport

inline void to_json(json& j, const CountReport& r) {
  const auto ratio = r.ratio();
  j = json{{"label", r.label},       {"b", r.b},
           {"k", r.k},               {"N_or_x", r.n_or_x},
           {"d", r.d},               {"empirical", r.empirical},
           {"main_term", round12(r.main_term)},
           {"ratio", ratio ? json(round12(*ratio)) : json(nullptr)}};
}

inline void from_json(const json& j, CountReport& r) {
  j.at("label").get_to(r.label);
  j.at("b").get_to(r.b);
  j.at("k").get_to(r.k);
  j.at("N_or_x").get_to(r.n_or_x);
  j.at("d").get_to(r.d);
  j.at("empirical").get_to(r.empirical);
  j.at("main_term").get_to(r.main_term);
}

inline std::string csv_header(const CountReport*) {
  return "label,b,k,N_or_x,d,empirical,main_term,ratio";
}

inline std::string csv_row(const CountReport& r) {
  const auto ratio = r.ratio();
  std::ostringstream os;
  os << r.label << ',' << r.b << ',' << (r.k ? std::to_string(r.k) : "") << ',' << r.n_or_x << ','
     << (r.d ? std::to_string(r.d) : "") << ',' << r.empirical << ',' << fmt12(r.main_term) << ','
     << (ratio ? fmt12(*ratio) : "");
  return os.str();
}

inline std::string human(const CountReport& r) {
  const auto ratio = r.ratio();
  std::ostringstream os;
  os << r.label << ": b=" << r.b;
  if (r.k) os << " k=" << r.k;
  os << " N_or_x=" << r.n_or_x;
  if (r.d) os << " d=" << r.d;
  os << " empirical=" << r.empirical << " main_term=" << fmt12(r.main_term)
     << " ratio=" << (ratio ? fmt12(*ratio) : "n/a");
  return os.str();
}

// Certificate

inline void to_json(json& j, const Certificate& c) {
  j = json{{"b", c.b},
           {"K", c.K},
           {"max_bound", round12(c.max_bound)},
           {"threshold", round12(c.threshold)},
           {"slack", round12(c.slack)},
           {"passed", c.passed},
           {"cb_estimate", round12(c.cb_estimate)},
           {"alpha_estimate", round12(c.alpha_estimate)},
           {"worst_segment", c.worst_segment}};
}

inline void from_json(const json& j, Certificate& c) {
  j.at("b").get_to(c.b);
  j.at("K").get_to(c.K);
  j.at("max_bound").get_to(c.max_bound);
  j.at("threshold").get_to(c.threshold);
  j.at("slack").get_to(c.slack);
  j.at("passed").get_to(c.passed);
  j.at("cb_estimate").get_to(c.cb_estimate);
  j.at("alpha_estimate").get_to(c.alpha_estimate);
  j.at("worst_segment").get_to(c.worst_segment);
}

inline std::string csv_header(const Certificate*) {
  return "b,K,max_bound,threshold,slack,passed,cb_estimate,alpha_estimate,worst_segment";
}

inline std::string csv_row(const Certificate& c) {
  std::ostringstream os;
  os << c.b << ',' << c.K << ',' << fmt12(c.max_bound) << ',' << fmt12(c.threshold) << ','
     << fmt12(c.slack) << ',' << (c.passed ? "true" : "false") << ',' << fmt12(c.cb_estimate) << ','
     << fmt12(c.alpha_estimate) << ',' << c.worst_segment;
  return os.str();
}

inline std::string human(const Certificate& c) {
  std::ostringstream os;
  os << "b=" << c.b << " K=" << c.K << (c.passed ? " PASSED" : " FAILED")
     << " max_bound=" << fmt12(c.max_bound) << " threshold=" << fmt12(c.threshold)
     << " C_b~" << fmt12(c.cb_estimate) << " alpha_b~" << fmt12(c.alpha_estimate)
     << " worst_segment=" << c.worst_segment;
  return os.str();
}

// ScanResult

inline void to_json(json& j, const ScanResult& s) {
  j = json{{"base", s.base},
           {"limit", s.limit},
           {"scanned_from", s.scanned_from},
           {"parity_class", to_string(s.parity)},
           {"exceptions", s.exceptions}};
}

inline void from_json(const json& j, ScanResult& s) {
  j.at("base").get_to(s.base);
  j.at("limit").get_to(s.limit);
  j.at("scanned_from").get_to(s.scanned_from);
  s.parity = parity_class_from_string(j.at("parity_class").get<std::string>());
  j.at("exceptions").get_to(s.exceptions);
}

inline std::string csv_header(const ScanResult*) { return "base,limit,scanned_from,parity_class,exceptions"; }

inline std::string csv_row(const ScanResult& s) {
  std::ostringstream os;
  os << s.base << ',' << s.limit << ',' << s.scanned_from << ',' << to_string(s.parity) << ',';
  for (std::size_t i = 0; i < s.exceptions.size(); ++i) os << (i ? ";" : "") << s.exceptions[i];
  return os.str();
}

inline std::string human(const ScanResult& s) {
  std::ostringstream os;
  os << "base " << s.base << " (" << to_string(s.parity) << "), targets " << s.scanned_from << ".."
     << s.limit << ": " << s.exceptions.size() << " exception(s)";
  for (std::size_t i = 0; i < s.exceptions.size(); ++i) os << (i ? ", " : " [") << s.exceptions[i];
  if (!s.exceptions.empty()) os << ']';
  return os.str();
}

// SqrtLawPoint

inline void to_json(json& j, const SqrtLawPoint& p) {
  j = json{{"x", p.x}, {"count", p.count}, {"normalized", round12(p.normalized)}};
}

inline void from_json(const json& j, SqrtLawPoint& p) {
  j.at("x").get_to(p.x);
  j.at("count").get_to(p.count);
  j.at("normalized").get_to(p.normalized);
}

inline std::string csv_header(const SqrtLawPoint*) { return "x,count,count_over_sqrt_x"; }

inline std::string csv_row(const SqrtLawPoint& p) {
  return std::to_string(p.x) + ',' + std::to_string(p.count) + ',' + fmt12(p.normalized);
}

inline std::string human(const SqrtLawPoint& p) {
  return "x=" + std::to_string(p.x) + " count=" + std::to_string(p.count) +
         " count/sqrt(x)=" + fmt12(p.normalized);
}

/// Generic key/value record for scalar results (reverse, f-eval, ...).
/// Values are kept as already-formatted strings or JSON scalars.
struct ValueRecord {
  std::vector<std::pair<std::string, json>> fields;

  friend bool operator==(const ValueRecord&, const ValueRecord&) = default;
};

inline void to_json(json& j, const ValueRecord& r) {
  j = json::object();
  for (const auto& [k, v] : r.fields) j[k] = v;
}

inline std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return fmt12(v.get<double>());
  return v.dump();
}

inline std::string csv_header(const ValueRecord* r) {
  std::string s;
  for (std::size_t i = 0; i < r->fields.size(); ++i) s += (i ? "," : "") + r->fields[i].first;
  return s;
}

inline std::string csv_row(const ValueRecord& r) {
  std::string s;
  for (std::size_t i = 0; i < r.fields.size(); ++i) s += (i ? "," : "") + scalar_text(r.fields[i].second);
  return s;
}

inline std::string human(const ValueRecord& r) {
  std::string s;
  for (std::size_t i = 0; i < r.fields.size(); ++i)
    s += (i ? " " : "") + r.fields[i].first + "=" + scalar_text(r.fields[i].second);
  return s;
}

/// JSON lines / CSV (one header) / human lines for a non-empty list.
template <class Record>
void write_report(std::ostream& os, const std::vector<Record>& records, OutputFormat format) {
  if (records.empty()) throw std::invalid_argument("emit_report: nothing to write");
  switch (format) {
    case OutputFormat::Json:
      for (const auto& r : records) os << json(r).dump() << '\n';
      break;
    case OutputFormat::Csv:
      os << csv_header(&records.front()) << '\n';
      for (const auto& r : records) os << csv_row(r) << '\n';
      break;
    case OutputFormat::Human:
      for (const auto& r : records) os << human(r) << '\n';
      break;
  }
}

/// Writes to `path`, or stdout when no path is given.
template <class Record>
void emit_report(const std::vector<Record>& records, OutputFormat format,
                 const std::optional<std::string>& path = std::nullopt) {
  if (records.empty()) throw std::invalid_argument("emit_report: nothing to write");
  if (!path) {
    write_report(std::cout, records, format);
    std::cout.flush();
    return;
  }
  std::ofstream os(*path, std::ios::trunc);
  if (!os) throw std::runtime_error("cannot write " + *path);
  write_report(os, records, format);
  if (!os) throw std::runtime_error("write failed: " + *path);
}

}  // namespace revpal
