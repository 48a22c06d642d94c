#pragma once

// Searches: Wolstenholme primes, the irregular pair (p, p-3), and composites
// satisfying the converse of Wolstenholme's theorem. Segmented, threaded,
// checkpointed.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "bernoulli.hpp"
#include "combinatorics.hpp"

namespace wolst {

namespace detail {

/// Montgomery arithmetic for an odd modulus below 2^63.
struct Mont64 {
  std::uint64_t n;
  std::uint64_t ninv;  // -n^-1 mod 2^64

  explicit Mont64(std::uint64_t modulus) : n(modulus) {
    std::uint64_t x = modulus;  // Newton iteration for n^-1 mod 2^64
    for (int i = 0; i < 6; ++i) x *= 2 - modulus * x;
    ninv = 0 - x;
  }

  std::uint64_t redc(unsigned __int128 t) const {
    const std::uint64_t m = static_cast<std::uint64_t>(t) * ninv;
    const std::uint64_t u = static_cast<std::uint64_t>((t + static_cast<unsigned __int128>(m) * n) >> 64);
    return u >= n ? u - n : u;
  }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return redc(static_cast<unsigned __int128>(a) * b); }
};

/// (num / den) mod m for a unit den, plain residues.
inline std::uint64_t divide_mod(std::uint64_t num, std::uint64_t den, std::uint64_t m) {
  NativeRing ring(m);
  std::uint64_t inv = 0;
  if (ring.inverse(den % m, inv) != 1) throw Error("denominator is not a unit");
  return ring.mul(num % m, inv);
}

}  // namespace detail

/// sum_{k=1}^{(p-1)/2} 1/(k(p-k)) mod p^2. Pairing k with p-k gives
/// H_{p-1} = p * this sum, so H_{p-1} mod p^3 is p times the result.
/// The sum is carried as a fraction num/den; each Montgomery step scales both
/// by the same R^-1, which cancels in the quotient.
inline std::uint64_t paired_harmonic_mod_p2(std::uint64_t p) {
  const std::uint64_t m = p * p;
  detail::Mont64 mont(m);
  std::uint64_t num = 0, den = 1;
  for (std::uint64_t k = 1; 2 * k < p; ++k) {
    const std::uint64_t t = k * (p - k);  // < p^2 / 4, already reduced
    num = mont.mul(num, t) + mont.redc(den);
    if (num >= m) num -= m;
    den = mont.mul(den, t);
  }
  return detail::divide_mod(num, den, m);
}

/// H_{p-1} mod p^3 for a prime p >= 5 with p^2 < 2^63.
inline BigInt harmonic_p3(std::uint64_t p) { return big_u(paired_harmonic_mod_p2(p)) * big_u(p); }

/// C(2p-1, p-1) = prod (p+k)/k mod p^4; Montgomery while p^4 < 2^63.
inline BigInt central_binomial_p4(std::uint64_t p) {
  if (p >= 55108) return central_shifted_binomial_mod(p, 4).value();
  const std::uint64_t m = p * p * p * p;
  detail::Mont64 mont(m);
  std::uint64_t num = 1, den = 1;
  for (std::uint64_t k = 1; k < p; ++k) {
    num = mont.mul(num, p + k);
    den = mont.mul(den, k);
  }
  return big_u(detail::divide_mod(num, den, m));
}

enum class HuntMethod { kHarmonic, kDirect, kFast };

inline std::string method_name(HuntMethod m) {
  switch (m) {
    case HuntMethod::kHarmonic: return "harmonic";
    case HuntMethod::kDirect: return "direct";
    case HuntMethod::kFast: return "fast";
  }
  return "?";
}

inline HuntMethod parse_method(const std::string& s) {
  if (s == "harmonic") return HuntMethod::kHarmonic;
  if (s == "direct") return HuntMethod::kDirect;
  if (s == "fast") return HuntMethod::kFast;
  throw ConfigError("unknown method: " + s);
}

/// A prime that passed the scan, with both witnesses.
struct WolstenholmeHit {
  std::uint64_t p = 0;
  BigInt harmonic_mod_p3;  // H_{p-1} mod p^3
  BigInt binomial_mod_p4;  // C(2p-1, p-1) mod p^4
  bool operator==(const WolstenholmeHit&) const = default;
};

inline WolstenholmeHit make_hit(std::uint64_t p) { return {p, harmonic_p3(p), central_binomial_p4(p)}; }

/// FNV-1a, 64 bit.
inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

struct HuntCheckpoint {
  static constexpr int kVersion = 1;
  int version = kVersion;
  std::string kind = "wolstenholme";  // or "w5"
  std::string method = "harmonic";
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::uint64_t done_hi = 0;  // everything in [lo, done_hi] is scanned
  std::vector<WolstenholmeHit> hits;
  double elapsed_seconds = 0;

  std::string payload() const {
    std::ostringstream o;
    o << "version " << version << "\n"
      << "kind " << kind << "\n"
      << "method " << method << "\n"
      << "lo " << lo << "\n"
      << "hi " << hi << "\n"
      << "done_hi " << done_hi << "\n";
    for (const auto& h : hits) {
      o << "hit " << h.p << " " << to_string(h.harmonic_mod_p3) << " " << to_string(h.binomial_mod_p4) << "\n";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", elapsed_seconds);
    o << "elapsed " << buf << "\n";
    return o.str();
  }

  std::string serialize() const {
    const std::string body = payload();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(body)));
    return "# wolst checkpoint\n" + body + "digest " + buf + "\n";
  }

  static HuntCheckpoint parse(const std::string& text) {
    std::istringstream in(text);
    std::string line, body, digest;
    HuntCheckpoint c;
    bool seen_version = false;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::istringstream ls(line);
      std::string key;
      ls >> key;
      if (key == "digest") {
        ls >> digest;
        break;
      }
      body += line + "\n";
      if (key == "version") {
        ls >> c.version;
        seen_version = true;
      } else if (key == "kind") {
        ls >> c.kind;
      } else if (key == "method") {
        ls >> c.method;
      } else if (key == "lo") {
        ls >> c.lo;
      } else if (key == "hi") {
        ls >> c.hi;
      } else if (key == "done_hi") {
        ls >> c.done_hi;
      } else if (key == "elapsed") {
        ls >> c.elapsed_seconds;
      } else if (key == "hit") {
        WolstenholmeHit h;
        std::string a, b;
        ls >> h.p >> a >> b;
        try {
          h.harmonic_mod_p3 = BigInt(a);
          h.binomial_mod_p4 = BigInt(b);
        } catch (const std::invalid_argument&) {
          throw CheckpointCorrupt("malformed hit: " + line);
        }
        c.hits.push_back(h);
      } else {
        throw CheckpointCorrupt("unknown checkpoint field: " + key);
      }
      if (ls.fail()) throw CheckpointCorrupt("malformed line: " + line);
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(body)));
    if (!seen_version || digest != buf) throw CheckpointCorrupt("checkpoint digest mismatch");
    if (c.version != kVersion) throw CheckpointCorrupt("unsupported checkpoint version " + std::to_string(c.version));
    return c;
  }

  /// Write-new-then-rename, so a crash never leaves a torn file.
  void save(const std::string& path) const {
    const std::string tmp = path + ".tmp";
    {
      std::ofstream out(tmp, std::ios::trunc);
      if (!out) throw Error("cannot write checkpoint " + tmp);
      out << serialize();
      if (!out.flush()) throw Error("cannot write checkpoint " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) throw Error("cannot rename checkpoint to " + path);
  }

  static HuntCheckpoint load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CheckpointCorrupt("cannot read checkpoint " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return parse(s.str());
  }
};

/// One record per committed segment, for progress streams.
struct SegmentStatus {
  std::size_t index = 0;
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::size_t primes = 0;
  std::size_t hits = 0;
  std::uint64_t done_hi = 0;
};

struct HuntOptions {
  HuntMethod method = HuntMethod::kHarmonic;
  unsigned jobs = 1;
  std::uint64_t segment = std::uint64_t{1} << 16;
  bool w5 = false;  // look for C(2p-1, p-1) = 1 mod p^5 instead
  bool allow_experimental_fast = false;
  std::optional<std::string> checkpoint_path;
  std::optional<HuntCheckpoint> resume;
  std::size_t max_segments = 0;  // stop after this many commits (0: no limit); fault injection
  std::function<void(const SegmentStatus&)> on_segment;
};

struct HuntResult {
  std::vector<WolstenholmeHit> hits;
  HuntCheckpoint checkpoint;
  bool complete = false;
};

struct FastGateReport {
  bool passed = true;
  std::vector<std::uint64_t> disagreements;
};

/// Compares the short-sum B_{p-3} formula with the oracle for 11 <= p <= 499.
/// A disagreement anywhere in that window closes the gate.
inline FastGateReport validate_fast_method(std::uint64_t upto = 499) {
  FastGateReport r;
  for (auto p : primes_in_range(11, upto)) {
    if (b_pminus3_fast(p) != bernoulli_residue(p - 3, p, 0, 1)) {
      r.passed = false;
      r.disagreements.push_back(p);
    }
  }
  return r;
}

namespace detail {

inline bool wolstenholme_candidate(std::uint64_t p, HuntMethod method) {
  switch (method) {
    case HuntMethod::kHarmonic: return paired_harmonic_mod_p2(p) == 0;
    case HuntMethod::kDirect: return central_binomial_p4(p) == 1;
    case HuntMethod::kFast:
      // pre-filter only: every positive is confirmed by the harmonic criterion
      if (p >= 11 && b_pminus3_fast(p).value() != 0) return false;
      return paired_harmonic_mod_p2(p) == 0;
  }
  return false;
}

inline std::vector<WolstenholmeHit> scan_segment(std::uint64_t lo, std::uint64_t hi, const HuntOptions& opts,
                                                 std::size_t& primes) {
  std::vector<WolstenholmeHit> hits;
  const auto ps = primes_in_range(lo, hi);
  primes = ps.size();
  for (std::uint64_t p : ps) {
    if (!wolstenholme_candidate(p, opts.method)) continue;
    // mod p^5 implies mod p^4, so only the mod p^4 hits can be W5 members
    if (opts.w5 && central_shifted_binomial_mod(p, 5).value() != 1) continue;
    hits.push_back(make_hit(p));
  }
  return hits;
}

}  // namespace detail

/// Primes p in [lo, hi] with H_{p-1} = 0 mod p^3 (equivalently C(2p-1,p-1) = 1
/// mod p^4), or with the mod p^5 condition when opts.w5 is set.
inline HuntResult wolstenholme_scan(std::uint64_t lo, std::uint64_t hi, const HuntOptions& opts = {}) {
  if (lo < 5 || hi < lo) throw InvalidRange("need 5 <= lo <= hi");
  if (hi >= (std::uint64_t{1} << 31)) throw InvalidRange("hi must stay below 2^31");
  if (opts.segment == 0) throw InvalidRange("segment size must be positive");
  if (opts.method == HuntMethod::kFast) {
    if (!opts.allow_experimental_fast) throw FastMethodNotValidated("the fast method needs explicit opt-in");
    auto gate = validate_fast_method();
    if (!gate.passed) {
      std::string bad;
      for (auto p : gate.disagreements) bad += " " + std::to_string(p);
      throw FastMethodNotValidated("fast formula disagrees with the oracle at p =" + bad);
    }
  }

  const auto start_clock = std::chrono::steady_clock::now();
  HuntCheckpoint ck;
  ck.kind = opts.w5 ? "w5" : "wolstenholme";
  ck.method = method_name(opts.method);
  ck.lo = lo;
  ck.hi = hi;
  ck.done_hi = lo - 1;
  double prior_elapsed = 0;
  if (opts.resume) {
    const auto& r = *opts.resume;
    if (r.kind != ck.kind || r.method != ck.method || r.lo != lo || r.done_hi > hi) {
      throw ResumeMismatch("checkpoint (" + r.kind + ", " + r.method + ", lo " + std::to_string(r.lo) +
                           ", done " + std::to_string(r.done_hi) + ") does not match this run");
    }
    ck.done_hi = r.done_hi;
    ck.hits = r.hits;
    prior_elapsed = r.elapsed_seconds;
  }

  std::vector<std::pair<std::uint64_t, std::uint64_t>> segments;
  for (std::uint64_t s = ck.done_hi + 1; s <= hi;) {
    const std::uint64_t e = std::min(hi, s + opts.segment - 1);
    segments.emplace_back(s, e);
    if (e == hi) break;
    s = e + 1;
  }

  struct Slot {
    bool done = false;
    std::size_t primes = 0;
    std::vector<WolstenholmeHit> hits;
    std::exception_ptr error;
  };
  std::vector<Slot> slots(segments.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::mutex mu;
  std::size_t committed = 0;
  std::exception_ptr failure;

  auto commit_ready = [&]() {  // caller holds mu; the single checkpoint writer
    while (committed < slots.size() && slots[committed].done && !stop) {
      auto& slot = slots[committed];
      if (slot.error) {
        failure = slot.error;
        stop = true;
        return;
      }
      ck.hits.insert(ck.hits.end(), slot.hits.begin(), slot.hits.end());
      ck.done_hi = segments[committed].second;
      ck.elapsed_seconds =
          prior_elapsed + std::chrono::duration<double>(std::chrono::steady_clock::now() - start_clock).count();
      if (opts.checkpoint_path) ck.save(*opts.checkpoint_path);
      if (opts.on_segment) {
        opts.on_segment({committed, segments[committed].first, segments[committed].second, slot.primes,
                         slot.hits.size(), ck.done_hi});
      }
      ++committed;
      if (opts.max_segments != 0 && committed >= opts.max_segments) stop = true;
    }
  };

  auto worker = [&]() {
    while (!stop) {
      const std::size_t i = next.fetch_add(1);
      if (i >= segments.size()) return;
      Slot local;
      try {
        local.hits = detail::scan_segment(segments[i].first, segments[i].second, opts, local.primes);
      } catch (...) {
        local.error = std::current_exception();
      }
      local.done = true;
      std::lock_guard<std::mutex> lock(mu);
      slots[i] = std::move(local);
      commit_ready();
    }
  };

  const unsigned jobs = std::max(1u, opts.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  HuntResult out;
  out.complete = ck.done_hi == hi;
  out.hits = ck.hits;
  out.checkpoint = ck;
  return out;
}

/// True iff p divides the numerator of B_{p-3}.
inline bool irregular_pair_check(std::uint64_t p) {
  if (!is_prime_u64(p)) throw NotPrime(std::to_string(p) + " is not prime");
  if (p < 7) throw ParamsOutOfDomain("irregular_pair_check needs p >= 7");
  return bernoulli_residue(p - 3, p, 0, 1).value() == 0;
}

// ---- converse scan ------------------------------------------------------

enum class ConverseClass { kOddComposite, kEven, kPrimePower, kPrime, kAll };
enum class NumberKind { kPrime, kPrimePower, kComposite };

inline std::string kind_name(NumberKind k) {
  switch (k) {
    case NumberKind::kPrime: return "prime";
    case NumberKind::kPrimePower: return "prime-power";
    case NumberKind::kComposite: return "composite";
  }
  return "?";
}

inline NumberKind classify(std::uint64_t n) {
  const auto f = factorize_u64(n);
  if (f.size() == 1) return f[0].second == 1 ? NumberKind::kPrime : NumberKind::kPrimePower;
  return NumberKind::kComposite;
}

inline bool in_class(std::uint64_t n, ConverseClass c) {
  const auto kind = classify(n);
  switch (c) {
    case ConverseClass::kOddComposite: return n % 2 == 1 && kind == NumberKind::kComposite;
    case ConverseClass::kEven: return n % 2 == 0;
    case ConverseClass::kPrimePower: return kind == NumberKind::kPrimePower;
    case ConverseClass::kPrime: return kind == NumberKind::kPrime;
    case ConverseClass::kAll: return true;
  }
  return false;
}

inline ConverseClass parse_converse_class(const std::string& s) {
  if (s == "odd-composite") return ConverseClass::kOddComposite;
  if (s == "even") return ConverseClass::kEven;
  if (s == "prime-power") return ConverseClass::kPrimePower;
  if (s == "prime") return ConverseClass::kPrime;
  if (s == "all") return ConverseClass::kAll;
  throw ConfigError("unknown class: " + s);
}

/// A(n) = C(2n-1, n-1) mod n^k, by CRT over the prime powers of n.
inline ResidueClass converse_residue(std::uint64_t n, int k) {
  if (n < 2 || k < 1) throw ParamsOutOfDomain("need n >= 2 and k >= 1");
  std::vector<ResidueClass> parts;
  for (const auto& [q, a] : factorize_u64(n)) {
    parts.push_back(binomial_mod_prime_power(2 * n - 1, static_cast<std::int64_t>(n - 1), to_u64(q), a * k));
  }
  if (parts.size() == 1) return parts.front();
  return crt_combine(std::span<const ResidueClass>(parts));
}

/// Largest j <= k with A(n) = 1 mod n^j (0 if none).
inline int converse_depth(std::uint64_t n, int k) {
  const ResidueClass r = converse_residue(n, k);
  int depth = 0;
  BigInt nj = 1;
  for (int j = 1; j <= k; ++j) {
    nj *= big_u(n);
    if (mod_floor(r.value() - 1, nj) != 0) break;
    depth = j;
  }
  return depth;
}

struct ConverseHit {
  std::uint64_t n = 0;
  NumberKind kind = NumberKind::kComposite;
  bool operator==(const ConverseHit&) const = default;
};

struct ConverseResult {
  std::vector<ConverseHit> hits;            // A(n) = 1 mod n^k
  std::vector<std::vector<std::uint64_t>> levels;  // levels[j-1]: members of W_j in the class, j <= k
  std::size_t tested = 0;
  bool chain_holds = true;                  // W_{j+1} inside W_j on this range
};

inline constexpr std::uint64_t kConverseBudget = 2000000;

inline ConverseResult converse_scan(std::uint64_t lo, std::uint64_t hi, int k, ConverseClass cls, unsigned jobs = 1) {
  if (k < 1 || k > 4) throw InvalidRange("k must be in 1..4");
  if (lo < 2 || hi < lo) throw InvalidRange("need 2 <= lo <= hi");
  if (hi > kConverseBudget) throw InvalidRange("hi exceeds the converse-scan budget of " + std::to_string(kConverseBudget));
  std::vector<std::uint64_t> cands;
  for (std::uint64_t n = lo; n <= hi; ++n) {
    if (in_class(n, cls)) cands.push_back(n);
  }
  std::vector<int> depth(cands.size(), 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cands.size()) return;
      depth[i] = converse_depth(cands[i], k);
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  ConverseResult out;
  out.tested = cands.size();
  out.levels.resize(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < cands.size(); ++i) {
    for (int j = 1; j <= depth[i]; ++j) out.levels[static_cast<std::size_t>(j - 1)].push_back(cands[i]);
    if (depth[i] == k) out.hits.push_back({cands[i], classify(cands[i])});
  }
  // the chain is re-derived independently: a member at depth j is recomputed
  // modulo n^(j-1) and must still be 1 there
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (depth[i] >= 2 && converse_residue(cands[i], depth[i] - 1).value() != 1) out.chain_holds = false;
  }
  return out;
}

}  // namespace wolst
