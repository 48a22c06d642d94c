#pragma once

// Run configuration and report writers shared by the wolst tool and its tests.

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "catalog.hpp"
#include "hunter.hpp"

namespace wolst {

enum ExitCode { kExitOk = 0, kExitFailure = 1, kExitUsage = 2, kExitInternal = 3 };

using Json = nlohmann::ordered_json;

struct RunConfig {
  std::vector<std::string> checks{"*"};
  std::uint64_t primes_lo = 5;
  std::uint64_t primes_hi = 499;
  std::string method = "harmonic";
  unsigned jobs = 1;
  std::string format = "table";
  std::string checkpoint;  // empty: none
  std::string resume;      // empty: fresh run
  std::uint64_t seed = 20240601;
  std::uint64_t segment = std::uint64_t{1} << 16;
  bool allow_experimental_fast = false;
  bool allow_slow = false;
  bool w5 = false;
  bool timing = true;

  bool operator==(const RunConfig&) const = default;
};

/// "A..B" -> (A, B).
inline std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& s) {
  const auto dots = s.find("..");
  if (dots == std::string::npos) throw ConfigError("range must look like A..B: " + s);
  try {
    std::size_t used = 0;
    const std::string a = s.substr(0, dots), b = s.substr(dots + 2);
    if (a.empty() || b.empty() || a[0] == '-' || b[0] == '-') throw ConfigError("bad range " + s);
    const std::uint64_t lo = std::stoull(a, &used);
    if (used != a.size()) throw ConfigError("bad range " + s);
    const std::uint64_t hi = std::stoull(b, &used);
    if (used != b.size()) throw ConfigError("bad range " + s);
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw ConfigError("bad range " + s);
  }
}

inline void check_format(const std::string& f) {
  if (f != "table" && f != "json" && f != "csv") throw ConfigError("format must be table, json or csv");
}

inline Json to_json(const RunConfig& c) {
  Json j;
  j["checks"] = c.checks;
  j["primes"] = std::to_string(c.primes_lo) + ".." + std::to_string(c.primes_hi);
  j["method"] = c.method;
  j["jobs"] = c.jobs;
  j["format"] = c.format;
  j["checkpoint"] = c.checkpoint;
  j["resume"] = c.resume;
  j["seed"] = c.seed;
  j["segment"] = c.segment;
  j["allow_experimental_fast"] = c.allow_experimental_fast;
  j["allow_slow"] = c.allow_slow;
  j["w5"] = c.w5;
  j["timing"] = c.timing;
  return j;
}

/// Fields present in `j` override `base`; unknown keys are an error.
inline RunConfig from_json(const Json& j, RunConfig base = {}) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "checks") {
        base.checks = v.is_string() ? std::vector<std::string>{v.get<std::string>()} : v.get<std::vector<std::string>>();
      } else if (key == "primes") {
        std::tie(base.primes_lo, base.primes_hi) = parse_range(v.get<std::string>());
      } else if (key == "method") {
        base.method = v.get<std::string>();
        parse_method(base.method);
      } else if (key == "jobs") {
        base.jobs = v.get<unsigned>();
      } else if (key == "format") {
        base.format = v.get<std::string>();
        check_format(base.format);
      } else if (key == "checkpoint") {
        base.checkpoint = v.get<std::string>();
      } else if (key == "resume") {
        base.resume = v.get<std::string>();
      } else if (key == "seed") {
        base.seed = v.get<std::uint64_t>();
      } else if (key == "segment") {
        base.segment = v.get<std::uint64_t>();
      } else if (key == "allow_experimental_fast") {
        base.allow_experimental_fast = v.get<bool>();
      } else if (key == "allow_slow") {
        base.allow_slow = v.get<bool>();
      } else if (key == "w5") {
        base.w5 = v.get<bool>();
      } else if (key == "timing") {
        base.timing = v.get<bool>();
      } else {
        throw ConfigError("unknown config key: " + key);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  return base;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path);
  try {
    return from_json(Json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config is not JSON: ") + e.what());
  }
}

// ---- reports -------------------------------------------------------------

inline Json params_json(const Params& ps) {
  Json j = Json::object();
  for (const auto& [k, v] : ps) j[k] = v;
  return j;
}

inline Json result_json(const CheckResult& r, bool timing) {
  Json j;
  j["check_id"] = r.id;
  j["params"] = params_json(r.params);
  j["modulus"] = r.modulus;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["pass"] = r.pass;
  j["micros"] = timing ? r.micros : 0;
  j["asserted"] = r.asserted;
  return j;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline void write_summary(std::ostream& out, const SweepSummary& s) {
  out << "total " << s.total << ", passed " << s.passed << ", failed " << s.failed << ", informative "
      << s.informative_agree << " agree / " << s.informative_disagree << " disagree, errors " << s.errors
      << ", skipped below floor " << s.skipped_below_floor << ", above cap " << s.skipped_above_cap << ", gated "
      << s.gated << "\n";
}

/// JSON-lines and CSV carry the same fields, one record per result.
inline void write_report(std::ostream& out, const SweepReport& report, const std::string& format, bool timing) {
  if (format == "json") {
    for (const auto& r : report.results) out << result_json(r, timing).dump() << "\n";
    return;
  }
  if (format == "csv") {
    out << "check_id,params,modulus,lhs,rhs,pass,micros,asserted\n";
    for (const auto& r : report.results) {
      out << csv_field(r.id) << ',' << csv_field(params_str(r.params)) << ',' << csv_field(r.modulus) << ','
          << csv_field(r.lhs) << ',' << csv_field(r.rhs) << ',' << (r.pass ? "true" : "false") << ','
          << (timing ? r.micros : 0) << ',' << (r.asserted ? "true" : "false") << "\n";
    }
    return;
  }
  auto row = [&](const CheckResult& r) {
    out << (r.pass ? "ok   " : "FAIL ") << r.id << " [" << params_str(r.params) << "] " << r.lhs << " vs " << r.rhs
        << " mod " << r.modulus;
    if (timing) out << " (" << r.micros << " us)";
    out << "\n";
  };
  for (const auto& r : report.results) {
    if (r.asserted) row(r);
  }
  bool header = false;
  for (const auto& r : report.results) {
    if (r.asserted) continue;
    if (!header) {
      out << "-- informative comparisons (never fail the run) --\n";
      header = true;
    }
    out << (r.pass ? "agree    " : "disagree ") << r.id << " [" << params_str(r.params) << "] " << r.lhs << " vs "
        << r.rhs << " mod " << r.modulus << "\n";
  }
  write_summary(out, report.summary);
}

inline Json hit_json(const WolstenholmeHit& h) {
  Json j;
  j["p"] = h.p;
  j["harmonic_mod_p3"] = to_string(h.harmonic_mod_p3);
  j["binomial_mod_p4"] = to_string(h.binomial_mod_p4);
  return j;
}

inline Json segment_json(const SegmentStatus& s) {
  Json j;
  j["segment"] = s.index;
  j["lo"] = s.lo;
  j["hi"] = s.hi;
  j["primes"] = s.primes;
  j["hits"] = s.hits;
  j["done_hi"] = s.done_hi;
  return j;
}

}  // namespace wolst
