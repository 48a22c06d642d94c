#pragma once

// Registry of the congruences as named, parameterized checks, and the sweep
// engine that runs them over prime and parameter grids.

#include <fnmatch.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "bernoulli.hpp"
#include "combinatorics.hpp"
#include "qring.hpp"

namespace wolst {

/// Ordered parameter binding, e.g. {{"p", 7}, {"n", 3}}.
using Params = std::vector<std::pair<std::string, std::int64_t>>;

inline std::string params_str(const Params& ps) {
  std::string out;
  for (const auto& [k, v] : ps) {
    if (!out.empty()) out += ',';
    out += k + "=" + std::to_string(v);
  }
  return out;
}

inline std::optional<std::int64_t> find_param(const Params& ps, const std::string& name) {
  for (const auto& [k, v] : ps) {
    if (k == name) return v;
  }
  return std::nullopt;
}

struct Evaluation {
  bool pass = false;
  std::string lhs;
  std::string rhs;
  std::string modulus;
};

struct CheckResult {
  std::string id;
  Params params;
  bool pass = false;
  bool asserted = true;
  std::string lhs;
  std::string rhs;
  std::string modulus;
  std::int64_t micros = 0;
};

struct SweepOptions {
  std::uint64_t p_lo = 5;
  std::uint64_t p_hi = 499;
  bool allow_slow = false;  // conditional checks at known Wolstenholme primes
  unsigned jobs = 1;
};

/// Parameter bindings a check contributes to a sweep, plus what it skipped.
struct Expansion {
  std::vector<Params> items;
  std::size_t below_floor = 0;
  std::size_t above_cap = 0;
  std::size_t gated = 0;
};

struct CongruenceCheck {
  std::string id;
  std::string statement;
  std::string floor;
  std::vector<std::string> parameters;
  bool asserted = true;
  std::function<Expansion(const SweepOptions&)> expand;
  std::function<Evaluation(const Params&)> evaluate;
};

namespace cat {

using u64 = std::uint64_t;

inline std::int64_t get(const Params& ps, const char* name) {
  auto v = find_param(ps, name);
  if (!v) throw ParamsOutOfDomain(std::string("missing parameter ") + name);
  return *v;
}

inline u64 getu(const Params& ps, const char* name) {
  auto v = get(ps, name);
  if (v < 0) throw ParamsOutOfDomain(std::string(name) + " must be nonnegative");
  return static_cast<u64>(v);
}

inline u64 prime(const Params& ps, u64 floor) {
  const u64 p = getu(ps, "p");
  if (!is_prime_u64(p)) throw ParamsOutOfDomain(std::to_string(p) + " is not prime");
  if (p < floor) throw ParamsOutOfDomain("p = " + std::to_string(p) + " below floor " + std::to_string(floor));
  return p;
}

inline void require(bool ok, const std::string& what) {
  if (!ok) throw ParamsOutOfDomain(what);
}

inline Evaluation compare(const ResidueClass& lhs, const ResidueClass& rhs) {
  return {lhs == rhs, lhs.str(), rhs.str(), to_string(lhs.modulus())};
}

inline ResidueClass zero(const BigInt& m) { return ResidueClass(BigInt(0), m); }
inline ResidueClass one(const BigInt& m) { return ResidueClass(BigInt(1), m); }
inline ResidueClass num(const BigRational& x, const BigInt& m) { return make_residue(x, m); }
inline ResidueClass num(std::int64_t a, std::int64_t b, const BigInt& m) { return make_residue(rat(a, b), m); }

/// x * p^j, where x is already reduced modulo the target.
inline ResidueClass pshift(const ResidueClass& x, u64 p, int j) {
  return ResidueClass(x.value() * ipow(p, static_cast<unsigned long>(j)), x.modulus());
}

/// Memo for c * p^shift * B_n residues; the Bernoulli-form checks revisit
/// the same few indices for every (n, m) pair.
class BernoulliMemo {
 public:
  ResidueClass get(u64 n, u64 p, int shift, int target) {
    const auto key = std::make_tuple(n, p, shift, target);
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = memo_.find(key);
      if (it != memo_.end()) return it->second;
    }
    ResidueClass r = compute(n, p, shift, target);
    std::lock_guard<std::mutex> lock(mu_);
    memo_.emplace(key, r);
    return r;
  }

 private:
  static ResidueClass compute(u64 n, u64 p, int shift, int target) {
    if (n <= 1) return scaled_rational(bernoulli_exact(n), shift, big_u(p), target);
    return bernoulli_residue(n, p, shift, target);
  }

  std::mutex mu_;
  std::map<std::tuple<u64, u64, int, int>, ResidueClass> memo_;
};

inline BernoulliMemo& bmemo() {
  static BernoulliMemo memo;
  return memo;
}

/// c * p^shift * B_n modulo p^target.
inline ResidueClass bern(const BigRational& c, u64 n, u64 p, int shift, int target) {
  const BigInt bp = big_u(p);
  const BigInt modulus = ipow(p, static_cast<unsigned long>(target));
  if (c == 0) return zero(modulus);
  const int vc = valuation(c, bp);
  BigRational unit = c;
  if (vc > 0) unit /= BigRational(ipow(bp, static_cast<unsigned long>(vc)));
  if (vc < 0) unit *= BigRational(ipow(bp, static_cast<unsigned long>(-vc)));
  unit.canonicalize();
  const int s = shift + vc;
  if (s < 0) throw ValuationTooNegative("coefficient pole too deep");
  if (s > target) return zero(modulus);
  return make_residue(unit, modulus) * bmemo().get(n, p, s, target);
}

/// h[j] = sum_{k=1}^{p-1} 1/k^j mod p^e for j = 1..k (h[0] unused).
inline std::vector<ResidueClass> hsums(u64 p, int e, int k) {
  const BigInt m = ipow(p, static_cast<unsigned long>(e));
  auto v = harmonic_power_sums(HarmonicSpec::plain(1, p, m), k);
  v.insert(v.begin(), zero(m));
  return v;
}

inline BigRational exact_harmonic(u64 n, unsigned power) {
  BigRational s = 0;
  for (u64 k = 1; k <= n; ++k) s += BigRational(BigInt(1), ipow(k, power));
  s.canonicalize();
  return s;
}

inline ResidueClass pow2(std::int64_t e, const BigInt& m) {
  ResidueClass two(BigInt(2), m);
  if (e >= 0) return pow_mod(two, big(e));
  return inverse(pow_mod(two, big(-e)));
}

/// C(n p, m p) / C(n, m) as a residue modulo p^e; the upper binomial through
/// stripped factorials, the lower one exactly.
inline ResidueClass binomial_ratio(u64 np, u64 mp, u64 n, u64 m, u64 p, int e) {
  const BigInt bp = big_u(p);
  const BigInt modulus = ipow(p, static_cast<unsigned long>(e));
  PadicValue top = binomial_padic(np, mp, p, e);
  BigInt low = binomial_exact(n, static_cast<std::int64_t>(m));
  const int vlow = valuation(low, bp);
  if (top.valuation() != vlow) throw Error("binomial valuations differ");
  low /= ipow(bp, static_cast<unsigned long>(vlow));
  return top.unit() * inverse(ResidueClass(low, modulus));
}

template <class F>
Expansion over_primes(const SweepOptions& o, u64 floor, u64 cap, F per_prime) {
  Expansion x;
  if (o.p_hi < 2 || o.p_hi < o.p_lo) return x;
  for (u64 p : primes_in_range(std::max<u64>(o.p_lo, 2), o.p_hi)) {
    if (p < floor) {
      ++x.below_floor;
      continue;
    }
    if (cap != 0 && p > cap) {
      ++x.above_cap;
      continue;
    }
    per_prime(p, x.items);
  }
  return x;
}

inline Expansion just_primes(const SweepOptions& o, u64 floor, u64 cap = 0) {
  return over_primes(o, floor, cap, [](u64 p, std::vector<Params>& out) {
    out.push_back({{"p", static_cast<std::int64_t>(p)}});
  });
}

inline std::int64_t i64(u64 v) { return static_cast<std::int64_t>(v); }

/// The epsilon_n of the modified-binomial congruence.
inline BigRational mcintosh_epsilon(u64 n) {
  if ((n & (n - 1)) == 0) return BigRational(big_u(n / 2));
  auto f = factorize_u64(n);
  if (n % 3 == 0) {
    bool all = true;
    for (const auto& [q, k] : f) {
      if (to_u64(q) % 6 == 1) all = false;
    }
    if (all) {
      const BigRational third(big_u(n / 3));
      return f.size() % 2 == 1 ? third : BigRational(-third);
    }
  }
  return BigRational(0);
}

inline std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> out;
  for (const auto& [q, k] : factorize_u64(n)) out.push_back(to_u64(q));
  return out;
}

inline u64 totient(u64 n) {
  u64 r = n;
  for (u64 q : prime_factors(n)) r = r / q * (q - 1);
  return r;
}

/// Right side of the Slavutskii Bernoulli congruence for general n, via CRT
/// over the prime powers of n^2.
inline ResidueClass slavutskii_rhs(u64 n, u64 s) {
  const u64 t = (n * totient(n) - 1) * s;
  std::vector<ResidueClass> parts;
  const auto primes = prime_factors(n);
  for (const auto& [bq, l] : factorize_u64(n)) {
    const u64 q = to_u64(bq);
    const int target = 2 * l;
    const BigInt mod = ipow(q, static_cast<unsigned long>(target));
    const u64 ql = to_u64(ipow(q, static_cast<unsigned long>(l)));
    const u64 cof = n / ql;
    ResidueClass prod = one(mod);
    const u64 shiftexp = (s % 2 == 0) ? t - 1 : t - 2;
    for (u64 r : primes) {
      if (r == q) continue;  // q^(t-1) vanishes modulo q^(2l)
      prod = prod * (one(mod) - pow_mod(ResidueClass(big_u(r), mod), big_u(shiftexp)));
    }
    if (s % 2 == 0) {
      parts.push_back(prod * ResidueClass(big_u(cof), mod) * bern(BigRational(1), t, q, l, target));
    } else {
      BigRational c(big_u(t) * big_u(cof) * big_u(cof), BigInt(2));
      c.canonicalize();
      parts.push_back(prod * bern(c, t - 1, q, target, target));
    }
  }
  if (parts.size() == 1) return parts.front();
  return crt_combine(std::span<const ResidueClass>(parts));
}

inline bool known_wolstenholme_prime(u64 p) {
  return p >= 7 && is_prime_u64(p) && wolstenholme_quotient_mod_p(p).value() == 0;
}

inline Evaluation q_eval(const std::string& id, const Params& ps, u64 floor) {
  const u64 p = prime(ps, floor);
  const u64 n = find_param(ps, "n") ? getu(ps, "n") : 0;
  const u64 m = find_param(ps, "m") ? getu(ps, "m") : 0;
  auto out = q_congruence_check(id, p, n, m);
  return {out.pass, out.lhs, out.rhs, out.modulus};
}

// ---- binomial tower ------------------------------------------------------

inline Evaluation w_central(const Params& ps, u64 floor, int e) {
  const u64 p = prime(ps, floor);
  return compare(binomial_mod_prime_power(2 * p - 1, i64(p - 1), p, e), one(ipow(p, static_cast<unsigned long>(e))));
}

inline Evaluation w_glaisher_p4(const Params& ps, int sign) {
  const u64 p = prime(ps, 5);
  const BigInt M = ipow(p, 4);
  auto h = hsums(p, 4, 1);
  auto rhs = one(M) + ResidueClass(big(2 * sign), M) * pshift(h[1], p, 1);
  return compare(central_shifted_binomial_mod(p, 4), rhs);
}

inline Evaluation w_mcintosh_p5(const Params& ps) {
  const u64 p = prime(ps, 7);
  const BigInt M = ipow(p, 5);
  auto h = hsums(p, 5, 2);
  return compare(central_shifted_binomial_mod(p, 5), one(M) - pshift(h[2], p, 2));
}

inline Evaluation w_zhao_p5(const Params& ps) {
  const u64 p = prime(ps, 7);
  const BigInt M = ipow(p, 5);
  auto h = hsums(p, 5, 1);
  return compare(binomial_mod_prime_power(2 * p - 1, i64(p - 1), p, 5),
                 one(M) + ResidueClass(BigInt(2), M) * pshift(h[1], p, 1));
}

inline Evaluation w_tauraso_p6(const Params& ps) {
  const u64 p = prime(ps, 7);
  const BigInt M = ipow(p, 6);
  auto h = hsums(p, 6, 3);
  auto rhs = one(M) + ResidueClass(BigInt(2), M) * pshift(h[1], p, 1) + num(2, 3, M) * pshift(h[3], p, 3);
  return compare(central_shifted_binomial_mod(p, 6), rhs);
}

inline Evaluation w_mestrovic_p6(const Params& ps) {
  const u64 p = prime(ps, 7);
  const BigInt M = ipow(p, 6);
  auto h = hsums(p, 6, 2);
  const ResidueClass two(BigInt(2), M);
  auto rhs = one(M) - two * pshift(h[1], p, 1) - two * pshift(h[2], p, 2);
  return compare(binomial_mod_prime_power(2 * p - 1, i64(p - 1), p, 6), rhs);
}

inline Evaluation w_mestrovic_p7(const Params& ps) {
  const u64 p = prime(ps, 7);
  const int form = static_cast<int>(get(ps, "form"));
  require(form == 0 || form == 1, "form must be 0 or 1");
  const int e = p == 7 ? 6 : 7;
  const BigInt M = ipow(p, static_cast<unsigned long>(e));
  auto h = hsums(p, e, 2);
  ResidueClass rhs = one(M) - ResidueClass(BigInt(2), M) * pshift(h[1], p, 1);
  if (form == 0) {
    rhs = rhs + ResidueClass(BigInt(4), M) * pshift(multiple_harmonic_prefix_mod(p, e), p, 2);
  } else {
    rhs = rhs + ResidueClass(BigInt(2), M) * pshift(h[1] * h[1] - h[2], p, 2);
  }
  return compare(binomial_mod_prime_power(2 * p - 1, i64(p - 1), p, e), rhs);
}

inline Evaluation w_tauraso_p9(const Params& ps) {
  const u64 p = prime(ps, 7);
  const BigInt M = ipow(p, 9);
  auto h = hsums(p, 9, 5);
  auto rhs = one(M) + num(2, 1, M) * pshift(h[1], p, 1) + num(2, 3, M) * pshift(h[3], p, 3) +
             num(2, 1, M) * pshift(h[1] * h[1], p, 2) + num(2, 5, M) * pshift(h[5], p, 5) +
             num(4, 3, M) * pshift(h[1] * h[3], p, 4);
  return compare(central_shifted_binomial_mod(p, 9), rhs);
}

inline Evaluation w_mestrovic_p9(const Params& ps) {
  const u64 p = prime(ps, 7);
  const BigInt M = ipow(p, 9);
  auto h = hsums(p, 9, 4);
  auto rhs = one(M) + pshift(h[1], p, 1) - num(1, 2, M) * pshift(num(5, 1, M) * h[1] * h[1] + h[2], p, 2) -
             num(1, 30, M) * pshift(num(15, 1, M) * h[1] * h[2] - num(2, 1, M) * h[3], p, 3) +
             num(1, 40, M) * pshift(num(35, 1, M) * h[2] * h[2] - num(26, 1, M) * h[4], p, 4);
  return compare(binomial_mod_prime_power(2 * p - 1, i64(p - 1), p, 9), rhs);
}

inline Evaluation w_glaisher_np(const Params& ps) {
  const u64 p = prime(ps, 5);
  const u64 n = getu(ps, "n");
  require(n >= 1, "n >= 1");
  const BigInt M = ipow(p, 4);
  auto rhs = one(M) - bern(BigRational(big_u(n * (n - 1)), BigInt(3)), p - 3, p, 3, 4);
  return compare(binomial_mod_prime_power(n * p - 1, i64(p - 1), p, 4), rhs);
}

inline Evaluation w_glaisher_bern(const Params& ps) {
  const u64 p = prime(ps, 7);
  return compare(central_shifted_binomial_mod(p, 4), one(ipow(p, 4)) - bern(rat(2, 3), p - 3, p, 3, 4));
}

inline Evaluation w_mcintosh_bern(const Params& ps) {
  const u64 p = prime(ps, 7);
  return compare(central_shifted_binomial_mod(p, 5), one(ipow(p, 5)) - bern(rat(1), p * p * p - p * p - 2, p, 3, 5));
}

inline Evaluation w_helou_p6(const Params& ps) {
  const u64 p = prime(ps, 5);
  auto rhs = one(ipow(p, 6)) - bern(rat(1), p * p * p - p * p - 2, p, 3, 6) + bern(rat(1, 3), p - 3, p, 5, 6) -
             bern(rat(6, 5), p - 5, p, 5, 6);
  return compare(binomial_mod_prime_power(2 * p - 1, i64(p - 1), p, 6), rhs);
}

inline Evaluation w_mestrovic_bern_p7(const Params& ps, int linear_sign) {
  const u64 p = prime(ps, 11);
  const BigInt M = ipow(p, 7);
  const u64 p4 = p * p * p * p, p3 = p * p * p;
  const BigInt b = bern(rat(1), p - 3, p, 0, 1).value();
  auto rhs = one(M) - bern(rat(1), p4 - p3 - 2, p, 3, 7) + bern(rat(1, 2), p * p - p - 4, p, 5, 7) -
             bern(rat(2), p4 - p3 - 4, p, 5, 7) + num(2, 9, M) * ResidueClass(b * b * ipow(p, 6), M) +
             bern(rat(linear_sign, 3), p - 3, p, 6, 7) - bern(rat(1, 10), p - 5, p, 6, 7);
  return compare(central_shifted_binomial_mod(p, 7), rhs);
}

// ---- harmonic sums -------------------------------------------------------

inline ResidueClass exact_or_modular_harmonic(u64 p, unsigned power, int e) {
  const BigInt M = ipow(p, static_cast<unsigned long>(e));
  if (p <= 5000) return make_residue(exact_harmonic(p - 1, power), M);
  return harmonic_sum_mod(HarmonicSpec::plain(static_cast<int>(power), p, M));
}

inline Evaluation h_power_sum(const Params& ps, unsigned power, int e) {
  const u64 p = prime(ps, 5);
  return compare(exact_or_modular_harmonic(p, power, e), zero(ipow(p, static_cast<unsigned long>(e))));
}

inline Evaluation h_alkan(const Params& ps) {
  const u64 p = prime(ps, 5);
  return compare(alkan_sum_mod(p), zero(big_u(p)));
}

inline Evaluation h_bayat(const Params& ps) {
  const u64 m = getu(ps, "m");
  require(m >= 1, "m >= 1");
  const u64 p = prime(ps, m + 3);
  const int e = m % 2 == 0 ? 1 : 2;
  const BigInt M = ipow(p, static_cast<unsigned long>(e));
  return compare(harmonic_sum_mod(HarmonicSpec::plain(static_cast<int>(m), p, M)), zero(M));
}

inline Evaluation h_glaisher_gen(const Params& ps) {
  const u64 m = getu(ps, "m");
  require(m >= 1, "m >= 1");
  const u64 p = prime(ps, m + 3);
  if (m % 2 == 0) {
    const BigInt M = ipow(p, 2);
    auto rhs = bern(BigRational(big_u(m), big_u(m + 1)), p - 1 - m, p, 1, 2);
    return compare(harmonic_sum_mod(HarmonicSpec::plain(static_cast<int>(m), p, M)), rhs);
  }
  const BigInt M = ipow(p, 3);
  auto rhs = -bern(BigRational(big_u(m * (m + 1)), big_u(2 * (m + 2))), p - 2 - m, p, 2, 3);
  return compare(harmonic_sum_mod(HarmonicSpec::plain(static_cast<int>(m), p, M)), rhs);
}

inline Evaluation h_glaisher_m123(const Params& ps) {
  const u64 m = getu(ps, "m");
  require(m >= 1 && m <= 3, "m in 1..3");
  const u64 p = prime(ps, m == 3 ? 7 : 5);
  if (m == 1) {
    return compare(harmonic_sum_mod(HarmonicSpec::plain(1, p, ipow(p, 3))), -bern(rat(1, 3), p - 3, p, 2, 3));
  }
  if (m == 2) {
    return compare(harmonic_sum_mod(HarmonicSpec::plain(2, p, ipow(p, 2))), bern(rat(2, 3), p - 3, p, 1, 2));
  }
  return compare(harmonic_sum_mod(HarmonicSpec::plain(3, p, ipow(p, 3))), -bern(rat(6, 5), p - 5, p, 2, 3));
}

inline Evaluation h_carlitz(const Params& ps) {
  const u64 p = prime(ps, 5);
  const std::int64_t m = get(ps, "m");
  const BigInt M = ipow(p, 2);
  return compare(harmonic_sum_mod(HarmonicSpec(1, big(m) * big_u(p), p, std::nullopt, M)), zero(M));
}

/// Which case of the shifted power-sum congruence applies, if any.
enum class ShiftedCase { kNone, kOdd, kEven, kPMinus2 };

inline ShiftedCase shifted_case(u64 p, u64 r) {
  if (r + 2 == p) return ShiftedCase::kPMinus2;
  if (r % 2 == 1 && p >= r + 4) return ShiftedCase::kOdd;
  if (r % 2 == 0 && p >= r + 3) return ShiftedCase::kEven;
  return ShiftedCase::kNone;
}

/// sum over k < p^l, (k, p) = 1, of 1/(n p^l + k)^r.
inline Evaluation h_shifted(const Params& ps, u64 l) {
  const u64 p = prime(ps, 3);
  const u64 n = getu(ps, "n"), r = getu(ps, "r");
  require(n >= 1 && r >= 1 && l >= 1, "n, r, l >= 1");
  const auto kind = shifted_case(p, r);
  require(kind != ShiftedCase::kNone, "no case applies at this (p, r)");
  const u64 pl = to_u64(ipow(p, static_cast<unsigned long>(l)));
  const u64 pl1 = pl / p;
  const int L = static_cast<int>(l);
  const int e = kind == ShiftedCase::kOdd ? 3 * L : kind == ShiftedCase::kEven ? 3 * L - 1 : 2 * L;
  const BigInt M = ipow(p, static_cast<unsigned long>(e));
  HarmonicSpec spec(static_cast<int>(r), big_u(n) * big_u(pl), pl,
                    l == 1 ? std::nullopt : std::optional<u64>(p), M);
  ResidueClass rhs = zero(M);
  if (kind == ShiftedCase::kOdd) {
    BigRational c(big_u((2 * n + 1) * r * (r + 1)), big_u(2 * (pl1 + r + 1)));
    c.canonicalize();
    rhs = -bern(c, pl - pl1 - r - 1, p, 2 * L, e);
  } else if (kind == ShiftedCase::kEven) {
    const u64 a = to_u64(ipow(p, static_cast<unsigned long>(2 * L - 1)));
    const u64 b = to_u64(ipow(p, static_cast<unsigned long>(2 * L - 2)));
    BigRational c(big_u(r), big_u(b + r));
    c.canonicalize();
    rhs = bern(c, a - b - r, p, L, e);
  } else {
    rhs = -ResidueClass(big_u(2 * n + 1) * ipow(p, static_cast<unsigned long>(2 * L - 1)), M);
  }
  return compare(harmonic_sum_mod(spec), rhs);
}

inline Evaluation h_su_yang_li(const Params& ps) {
  const u64 p = prime(ps, 5);
  const std::int64_t m = get(ps, "m");
  const u64 r = getu(ps, "r");
  const BigInt pr = ipow(p, static_cast<unsigned long>(r));
  require(mpz_divisible_p(BigInt(big(2 * m + 1)).get_mpz_t(), pr.get_mpz_t()) != 0, "p^r must divide 2m+1");
  const BigInt M = ipow(p, static_cast<unsigned long>(r + 2));
  return compare(harmonic_sum_mod(HarmonicSpec(1, big(m) * big_u(p), p, std::nullopt, M)), zero(M));
}

// ---- supercongruences ----------------------------------------------------

inline Evaluation s_granville(const Params& ps, bool printed) {
  const u64 p = prime(ps, printed ? 5 : 7);
  const BigInt M = ipow(p, 5);
  auto top = printed ? binomial_mod_prime_power(2 * p - 1, i64(p - 1), p, 5)
                     : binomial_mod_prime_power(3 * p, i64(2 * p), p, 5);
  auto c = binomial_mod_prime_power(2 * p, i64(p), p, 5);
  return compare(top * inverse(c * c * c), num(3, 8, M));
}

inline Evaluation s_sun_wan(const Params& ps) {
  const u64 p = prime(ps, 7);
  return compare(binomial_mod_prime_power(4 * p - 1, i64(2 * p - 1), p, 5),
                 ResidueClass(binomial_exact(4 * p, i64(p)) - 1, ipow(p, 5)));
}

inline Evaluation s_squares(const Params& ps) {
  const u64 p = prime(ps, 5);
  const int form = static_cast<int>(get(ps, "form"));
  require(form == 0 || form == 1, "form must be 0 or 1");
  if (form == 0) {
    return compare(binomial_mod_prime_power(2 * p * p, i64(p * p), p, 6),
                   ResidueClass(binomial_exact(2 * p, i64(p)), ipow(p, 6)));
  }
  require(p <= 13, "the cube form is limited to p <= 13");
  return compare(binomial_mod_prime_power(2 * p * p * p, i64(p * p * p), p, 9),
                 ResidueClass(binomial_exact(2 * p * p, i64(p * p)), ipow(p, 9)));
}

inline Evaluation s_integerpart(const Params& ps) {
  const u64 p = prime(ps, 2);
  const u64 n = getu(ps, "n"), m = getu(ps, "m"), k = getu(ps, "k");
  require(k >= 1 && m <= n, "k >= 1 and m <= n");
  const BigInt pk = ipow(p, static_cast<unsigned long>(k));
  require(mpz_divisible_p(BigInt(big_u(n - m)).get_mpz_t(), pk.get_mpz_t()) != 0, "need m = n mod p^k");
  require(kummer_valuation(n, m, p) == 0, "p must not divide C(n, m)");
  return compare(binomial_mod_prime_power(n, i64(m), p, static_cast<int>(k)),
                 ResidueClass(binomial_exact(n / p, i64(m / p)), pk));
}

// ---- Ljunggren family ----------------------------------------------------

inline Evaluation l_ljunggren(const Params& ps) {
  const u64 p = prime(ps, 5);
  const u64 n = getu(ps, "n"), m = getu(ps, "m");
  require(m >= 1 && m <= n, "1 <= m <= n");
  return compare(binomial_mod_prime_power(n * p, i64(m * p), p, 3), ResidueClass(binomial_exact(n, i64(m)), ipow(p, 3)));
}

inline Evaluation l_glaisher_np3(const Params& ps) {
  const u64 p = prime(ps, 5);
  const u64 n = getu(ps, "n");
  require(n >= 1, "n >= 1");
  return compare(binomial_mod_prime_power(n * p, i64(p), p, 3), ResidueClass(big_u(n), ipow(p, 3)));
}

inline Evaluation l_jacobsthal(const Params& ps) {
  const u64 p = prime(ps, 5);
  const int form = static_cast<int>(get(ps, "form"));
  const u64 n = getu(ps, "n"), m = getu(ps, "m");
  require(n >= 1 && m >= 1, "n, m >= 1");
  const BigInt bp = big_u(p);
  if (form == 0) {
    require(m < n, "m < n");
    const int t = 3 + valuation_u64(n, p) + valuation_u64(m, p) + valuation_u64(n - m, p);
    return compare(binomial_mod_prime_power(n * p, i64(m * p), p, t),
                   ResidueClass(binomial_exact(n, i64(m)), ipow(p, static_cast<unsigned long>(t))));
  }
  if (form == 1) {
    const u64 a = getu(ps, "a"), b = getu(ps, "b"), c = getu(ps, "c");
    require(c <= b && b <= a, "c <= b <= a");
    const int e = static_cast<int>(3 + a + 2 * b - 3 * c);
    const u64 top = n * to_u64(ipow(p, static_cast<unsigned long>(a)));
    const u64 bot = m * to_u64(ipow(p, static_cast<unsigned long>(b)));
    const u64 top2 = n * to_u64(ipow(p, static_cast<unsigned long>(a - c)));
    const u64 bot2 = m * to_u64(ipow(p, static_cast<unsigned long>(b - c)));
    return compare(binomial_mod_prime_power(top, i64(bot), p, e),
                   ResidueClass(binomial_exact(top2, i64(bot2)), ipow(p, static_cast<unsigned long>(e))));
  }
  require(form == 2, "form must be 0, 1 or 2");
  const u64 a = getu(ps, "a");
  require(a >= 1 && m <= n, "a >= 1 and m <= n");
  const u64 pa = to_u64(ipow(p, static_cast<unsigned long>(a)));
  const BigInt M = ipow(p, static_cast<unsigned long>(3 * a));
  return compare(binomial_mod_prime_power(n * pa, i64(m * pa), p, static_cast<int>(3 * a)),
                 ResidueClass(binomial_exact(n * pa / p, i64(m * pa / p)), M));
}

inline Evaluation l_robbins(const Params& ps) {
  const u64 p = prime(ps, 3);
  const u64 n = getu(ps, "n"), m = getu(ps, "m"), a = getu(ps, "a"), b = getu(ps, "b");
  require(a >= 1 && b <= a, "a >= 1 and b <= a");
  const u64 pab = to_u64(ipow(p, static_cast<unsigned long>(a - b)));
  require(m > 0 && m < n * pab, "0 < m < n p^(a-b)");
  require((n * m) % p != 0, "p must not divide nm");
  const u64 top = n * to_u64(ipow(p, static_cast<unsigned long>(a)));
  const u64 bot = m * to_u64(ipow(p, static_cast<unsigned long>(b)));
  const BigInt M = ipow(p, static_cast<unsigned long>(a));
  return compare(binomial_mod_prime_power(top, i64(bot), p, static_cast<int>(a)),
                 ResidueClass(binomial_exact(n * pab, i64(m)), M));
}

inline Evaluation l_helou_s(const Params& ps) {
  const u64 p = prime(ps, 5);
  const u64 n = getu(ps, "n"), m = getu(ps, "m");
  require(m >= 1 && m < n, "1 <= m < n");
  const BigInt c = binomial_exact(n, i64(m));
  const int s = 3 + valuation_u64(m, p) + valuation_u64(n - m, p) + valuation(c, big_u(p));
  const BigInt M = ipow(p, static_cast<unsigned long>(s));
  return compare(binomial_mod_prime_power(n * p, i64(m * p), p, s), ResidueClass(c, M));
}

inline std::pair<u64, u64> nm_params(const Params& ps) {
  const u64 n = getu(ps, "n"), m = getu(ps, "m");
  require(m >= 1 && m <= n, "1 <= m <= n");
  return {n, m};
}

inline Evaluation l_zhao_wp(const Params& ps) {
  const u64 p = prime(ps, 7);
  auto [n, m] = nm_params(ps);
  const BigInt M = ipow(p, 5);
  auto h = hsums(p, 4, 1);
  const BigInt w = mod_floor(h[1].value() / ipow(p, 2), ipow(p, 2));
  const BigInt k = big_u(n) * big_u(m) * big_u(n - m);
  return compare(binomial_ratio(n * p, m * p, n, m, p, 5), ResidueClass(1 + w * k * ipow(p, 3), M));
}

inline Evaluation l_helou_p6(const Params& ps) {
  const u64 p = prime(ps, 5);
  auto [n, m] = nm_params(ps);
  const BigInt M = ipow(p, 6);
  const BigInt k = big_u(n) * big_u(m) * big_u(n - m);
  const BigInt q = big_u(m * m + n * n) - big_u(m * n);
  auto inner = bern(rat(1, 2), p * p * p - p * p - 2, p, 3, 6) - bern(rat(1, 6), p - 3, p, 5, 6) +
               bern(BigRational(q, BigInt(5)), p - 5, p, 5, 6);
  return compare(binomial_ratio(n * p, m * p, n, m, p, 6), one(M) - ResidueClass(k, M) * inner);
}

inline Evaluation l_helou_p4(const Params& ps) {
  const u64 p = prime(ps, 5);
  auto [n, m] = nm_params(ps);
  const BigInt M = ipow(p, 4);
  const BigRational c(big_u(n) * big_u(m) * big_u(n - m), BigInt(3));
  return compare(binomial_ratio(n * p, m * p, n, m, p, 4), one(M) - bern(c, p - 3, p, 3, 4));
}

// ---- Wolstenholme primes -------------------------------------------------

inline Evaluation p_quotient(const Params& ps) {
  const u64 p = prime(ps, 7);
  ResidueClass lhs = p <= kExactQuotientLimit ? wolstenholme_quotient(p).mod_p : wolstenholme_quotient_mod_p(p);
  return compare(lhs, -bern(rat(2, 3), p - 3, p, 0, 1));
}

inline Evaluation p_stafford_vandiver(const Params& ps) {
  const u64 p = prime(ps, 11);
  return compare(b_pminus3_fast(p), bern(rat(1), p - 3, p, 0, 1));
}

inline u64 conditional_prime(const Params& ps) {
  const u64 p = prime(ps, 7);
  require(known_wolstenholme_prime(p), std::to_string(p) + " is not a Wolstenholme prime");
  return p;
}

inline Evaluation p_mestrovic_p8(const Params& ps) {
  const u64 p = conditional_prime(ps);
  const int form = static_cast<int>(get(ps, "form"));
  require(form == 0 || form == 1, "form must be 0 or 1");
  const BigInt M = ipow(p, 8);
  auto h = hsums(p, 8, 6);
  ResidueClass rhs = one(M);
  if (form == 0) {
    for (int j = 1; j <= 6; ++j) {
      auto term = num(1, j, M) * pshift(h[j], p, j);
      rhs = (j % 2 == 1) ? rhs + term : rhs - term;
    }
  } else {
    rhs = rhs + num(3, 2, M) * pshift(h[1], p, 1) - num(1, 4, M) * pshift(h[2], p, 2) +
          num(7, 12, M) * pshift(h[3], p, 3) + num(5, 12, M) * pshift(h[5], p, 5);
  }
  return compare(central_shifted_binomial_mod(p, 8), rhs);
}

inline Evaluation p_mestrovic_p7(const Params& ps) {
  const u64 p = conditional_prime(ps);
  const int form = static_cast<int>(get(ps, "form"));
  require(form == 0 || form == 1, "form must be 0 or 1");
  const BigInt M = ipow(p, 7);
  auto h = hsums(p, 7, 3);
  const ResidueClass two(BigInt(2), M);
  ResidueClass rhs = form == 0 ? one(M) - two * pshift(h[1], p, 1) - two * pshift(h[2], p, 2)
                               : one(M) + two * pshift(h[1], p, 1) + num(2, 3, M) * pshift(h[3], p, 3);
  return compare(binomial_mod_prime_power(2 * p - 1, i64(p - 1), p, 7), rhs);
}

inline Evaluation p_mestrovic_bern(const Params& ps) {
  const u64 p = conditional_prime(ps);
  const int form = static_cast<int>(get(ps, "form"));
  require(form == 0 || form == 1, "form must be 0 or 1");
  const BigInt M = ipow(p, 7);
  ResidueClass rhs = one(M);
  if (form == 0) {
    const u64 p3 = p * p * p, p4 = p3 * p;
    rhs = rhs - bern(rat(1), p4 - p3 - 2, p, 3, 7) - bern(rat(3, 2), p * p - p - 4, p, 5, 7) +
          bern(rat(3, 10), p - 5, p, 6, 7);
  } else {
    auto group = [&](int shift, BigRational a, BigRational b, BigRational c, BigRational d) {
      return bern(a, p - 3, p, shift, 7) - bern(b, 2 * p - 4, p, shift, 7) + bern(c, 3 * p - 5, p, shift, 7) -
             bern(d, 4 * p - 6, p, shift, 7);
    };
    rhs = rhs - group(3, rat(8, 3), rat(3), rat(8, 5), rat(1, 3)) - group(4, rat(8, 9), rat(3, 2), rat(24, 25), rat(2, 9)) -
          group(5, rat(8, 27), rat(3, 4), rat(72, 125), rat(4, 27)) - bern(rat(12, 5), p - 5, p, 5, 7) +
          bern(rat(1), 2 * p - 6, p, 5, 7) - bern(rat(2, 25), p - 5, p, 6, 7);
  }
  return compare(central_shifted_binomial_mod(p, 7), rhs);
}

// ---- composite moduli ----------------------------------------------------

inline Evaluation c_leudesdorf(const Params& ps) {
  const u64 n = getu(ps, "n");
  require(n >= 5 && std::gcd(n, u64{6}) == 1, "n >= 5 with (n, 6) = 1");
  const BigInt M = big_u(n) * big_u(n);
  return compare(harmonic_sum_mod(HarmonicSpec(1, BigInt(0), n, n, M)), zero(M));
}

inline Evaluation c_mcintosh_modified(const Params& ps) {
  const u64 n = getu(ps, "n");
  require(n >= 3, "n >= 3");
  const BigInt M = ipow(n, 3);
  const BigRational rhs = BigRational(1) + BigRational(big_u(n) * big_u(n)) * mcintosh_epsilon(n);
  return compare(modified_binomial(n, 3), make_residue(rhs, M));
}

inline bool slavutskii_even_hypothesis(u64 n, u64 s) {
  for (u64 q : prime_factors(n)) {
    if (s % (q - 1) == 0) return false;
  }
  return true;
}

inline bool slavutskii_odd_hypothesis(u64 n, u64 s) {
  bool first = true, second = true;
  for (u64 q : prime_factors(n)) {
    if ((s + 1) % (q - 1) == 0) {
      first = false;
      if (s % q != 0) second = false;
    }
  }
  return first || second;
}

inline Evaluation c_slavutskii(const Params& ps, bool even) {
  const u64 n = getu(ps, "n"), s = getu(ps, "s");
  require(n >= 2 && s >= 1 && (s % 2 == 0) == even, "n >= 2 and s of the right parity");
  require(even ? slavutskii_even_hypothesis(n, s) : slavutskii_odd_hypothesis(n, s), "hypothesis fails");
  const BigInt M = even ? big_u(n) : big_u(n) * big_u(n);
  return compare(harmonic_sum_mod(HarmonicSpec(static_cast<int>(s), BigInt(0), n, n, M)), zero(M));
}

inline Evaluation c_slavutskii_bern(const Params& ps) {
  const u64 s = getu(ps, "s");
  require(s >= 1, "s >= 1");
  if (find_param(ps, "l")) {
    const u64 p = prime(ps, 5);
    const u64 l = getu(ps, "l");
    require(l >= 1, "l >= 1");
    const u64 pl = to_u64(ipow(p, static_cast<unsigned long>(l)));
    const int L = static_cast<int>(l);
    const BigInt M = ipow(p, static_cast<unsigned long>(2 * L));
    const u64 t = (pl * pl / p * (p - 1) - 1) * s;
    ResidueClass rhs = s % 2 == 0 ? bern(rat(1), t, p, L, 2 * L)
                                  : bern(BigRational(big_u(t), BigInt(2)), t - 1, p, 2 * L, 2 * L);
    return compare(harmonic_sum_mod(HarmonicSpec(static_cast<int>(s), BigInt(0), pl, p, M)), rhs);
  }
  const u64 n = getu(ps, "n");
  require(n >= 5 && std::gcd(n, u64{6}) == 1, "n >= 5 with (n, 6) = 1");
  const BigInt M = big_u(n) * big_u(n);
  return compare(harmonic_sum_mod(HarmonicSpec(static_cast<int>(s), BigInt(0), n, n, M)), slavutskii_rhs(n, s));
}

inline int duparc_exponent(u64 p, u64 l, u64 s) {
  const int L = static_cast<int>(l);
  if (s % 2 == 1) return ((s + 1) % (p - 1) == 0 && s % p != 0) ? 2 * L - 1 : 2 * L;
  return s % (p - 1) == 0 ? L - 1 : L;
}

inline Evaluation c_duparc(const Params& ps) {
  const u64 p = prime(ps, 3);
  const u64 l = getu(ps, "l"), s = getu(ps, "s");
  require(l >= 1 && s >= 1, "l, s >= 1");
  const int e = duparc_exponent(p, l, s);
  require(e >= 1, "trivial modulus");
  const BigInt M = ipow(p, static_cast<unsigned long>(e));
  const u64 pl = to_u64(ipow(p, static_cast<unsigned long>(l)));
  return compare(harmonic_sum_mod(HarmonicSpec(static_cast<int>(s), BigInt(0), pl, p, M)), zero(M));
}

inline Evaluation c_hong_multiprime(const Params& ps) {
  u64 P = 1;
  std::vector<u64> seen;
  for (const char* key : {"p1", "p2", "p3"}) {
    if (!find_param(ps, key)) continue;
    const u64 q = getu(ps, key);
    require(is_prime_u64(q) && q > 3, "primes must exceed 3");
    require(std::find(seen.begin(), seen.end(), q) == seen.end(), "primes must be distinct");
    seen.push_back(q);
    P *= q;
  }
  require(!seen.empty(), "need at least one prime");
  const u64 m = getu(ps, "m");
  const BigInt M = big_u(P) * big_u(P);
  return compare(harmonic_sum_mod(HarmonicSpec(1, big_u(m) * big_u(P), P + 1, P, M)), zero(M));
}

// ---- binomial sums -------------------------------------------------------

inline bool chamberland_degenerate(u64 eps, u64 a, u64 b) {
  return eps == 0 && a + b <= 1;
}

inline Evaluation b_chamberland(const Params& ps, bool degenerate) {
  const u64 p = prime(ps, 5);
  const BigInt M = ipow(p, 3);
  if (find_param(ps, "m")) {
    const u64 m = getu(ps, "m");
    require(m >= 1, "m >= 1");
    return compare(binomial_sum_u(1, 1, 1, m * p, M), binomial_sum_u(1, 1, 1, m, M));
  }
  const u64 eps = getu(ps, "eps"), a = getu(ps, "a"), b = getu(ps, "b");
  require(eps <= 1, "eps in {0, 1}");
  require(chamberland_degenerate(eps, a, b) == degenerate, degenerate ? "not a degenerate triple" : "degenerate triple");
  const BigInt rhs = eps == 0 ? BigInt(1 + ipow(2, static_cast<unsigned long>(b))) : BigInt(1 - ipow(2, static_cast<unsigned long>(b)));
  return compare(binomial_sum_u(static_cast<unsigned>(a), static_cast<unsigned>(b), static_cast<int>(eps), p, M),
                 ResidueClass(rhs, M));
}

inline Evaluation b_cai_granville(const Params& ps) {
  const u64 p = prime(ps, 5);
  const u64 n = getu(ps, "n"), alt = getu(ps, "alt");
  require(n >= 1 && alt <= 1, "n >= 1, alt in {0, 1}");
  const bool binomial_case = (alt == 1) == (n % 2 == 1);
  const int e = binomial_case ? 4 : 3;
  auto lhs = power_binomial_sum(static_cast<unsigned>(n), alt ? SignPattern::kAlternating : SignPattern::kPlus, p, e);
  const BigInt M = ipow(p, static_cast<unsigned long>(e));
  if (binomial_case) return compare(lhs, binomial_mod_prime_power(n * p - 2, i64(p - 1), p, 4));
  return compare(lhs, pow2(i64(n * (p - 1)), M));
}

inline Evaluation b_pan(const Params& ps) {
  const u64 p = prime(ps, 3);
  const u64 n = getu(ps, "n");
  require(n >= 1, "n >= 1");
  const BigInt M = ipow(p, 4);
  const BigRational c(big(static_cast<std::int64_t>(n * (n - 1))) * big(3 * i64(n) - 4), BigInt(48));
  return compare(power_binomial_sum(static_cast<unsigned>(n), SignPattern::kPan, p, 4),
                 pow2(i64(n * (p - 1)), M) + bern(c, p - 3, p, 3, 4));
}

inline Evaluation b_mestrovic_recip(const Params& ps, u64 floor_p3) {
  const int form = static_cast<int>(get(ps, "form"));
  require(form == 0 || form == 1, "form must be 0 or 1");
  const u64 p = prime(ps, form == 0 ? 3 : floor_p3);
  if (form == 0) {
    const BigInt M = ipow(p, 4);
    return compare(reciprocal_binomial_sum(p, 4), pow2(1 - i64(p), M) - bern(rat(7, 24), p - 3, p, 3, 4));
  }
  return compare(reciprocal_binomial_sum(p, 3), pow2(1 - i64(p), ipow(p, 3)));
}

inline Evaluation b_apery(const Params& ps) {
  const u64 p = prime(ps, 5);
  const u64 n = getu(ps, "n");
  const BigInt M = ipow(p, 3);
  return compare(ResidueClass(apery_number(p * n), M), ResidueClass(apery_number_central_form(n), M));
}

inline Evaluation b_putnam(const Params& ps) {
  const u64 p = prime(ps, 5);
  return compare(putnam_sum(p), zero(ipow(p, 2)));
}

// ---- classical -----------------------------------------------------------

inline Evaluation x_lucas(const Params& ps) {
  const u64 p = prime(ps, 2);
  const u64 n = getu(ps, "n"), m = getu(ps, "m");
  return compare(ResidueClass(binomial_exact(n, i64(m)), big_u(p)), lucas_binomial_mod_p(n, i64(m), p));
}

inline Evaluation x_kummer(const Params& ps) {
  const u64 p = prime(ps, 2);
  const u64 n = getu(ps, "n"), m = getu(ps, "m");
  require(m <= n, "m <= n");
  const int lhs = valuation(binomial_exact(n, i64(m)), big_u(p));
  const int rhs = kummer_valuation(n, m, p);
  return {lhs == rhs, std::to_string(lhs), std::to_string(rhs), "v_" + std::to_string(p)};
}

// ---- grids ---------------------------------------------------------------

inline Params P1(u64 p) { return {{"p", i64(p)}}; }

inline std::vector<std::pair<u64, u64>> extra_pairs(u64 p) {
  if (p > 31) return {};
  return {{p + 1, 1}, {p + 1, p}, {2 * p, 1}, {2 * p, p}, {p * p, p}};
}

inline std::vector<CongruenceCheck> build_registry() {
  std::vector<CongruenceCheck> r;
  auto add = [&](std::string id, std::string statement, std::string floor, std::vector<std::string> params,
                 bool asserted, std::function<Expansion(const SweepOptions&)> expand,
                 std::function<Evaluation(const Params&)> eval) {
    r.push_back({std::move(id), std::move(statement), std::move(floor), std::move(params), asserted,
                 std::move(expand), std::move(eval)});
  };
  auto primes_from = [](u64 floor, u64 cap = 0) {
    return [floor, cap](const SweepOptions& o) { return just_primes(o, floor, cap); };
  };
  auto forms = [](u64 floor, std::vector<int> fs, u64 cap = 0) {
    return [floor, fs, cap](const SweepOptions& o) {
      return over_primes(o, floor, cap, [&](u64 p, std::vector<Params>& out) {
        for (int f : fs) out.push_back({{"p", i64(p)}, {"form", f}});
      });
    };
  };
  auto n_range = [](u64 floor, u64 lo, u64 hi) {
    return [floor, lo, hi](const SweepOptions& o) {
      return over_primes(o, floor, 0, [&](u64 p, std::vector<Params>& out) {
        for (u64 n = lo; n <= hi; ++n) out.push_back({{"p", i64(p)}, {"n", i64(n)}});
      });
    };
  };
  auto nm_grid = [](u64 floor, u64 nmax, bool with_extras) {
    return [floor, nmax, with_extras](const SweepOptions& o) {
      return over_primes(o, floor, 0, [&](u64 p, std::vector<Params>& out) {
        for (u64 n = 1; n <= nmax; ++n) {
          for (u64 m = 1; m <= n; ++m) out.push_back({{"p", i64(p)}, {"n", i64(n)}, {"m", i64(m)}});
        }
        if (with_extras) {
          for (auto [n, m] : extra_pairs(p)) out.push_back({{"p", i64(p)}, {"n", i64(n)}, {"m", i64(m)}});
        }
      });
    };
  };
  auto gated = [](const SweepOptions& o) {
    Expansion x;
    const u64 p = 16843;
    if (p < o.p_lo || p > o.p_hi) return x;
    if (!o.allow_slow) {
      x.gated = 1;
      return x;
    }
    x.items.push_back(P1(p));
    return x;
  };
  auto gated_forms = [gated](const SweepOptions& o) {
    Expansion x = gated(o);
    std::vector<Params> items;
    for (auto& ps : x.items) {
      for (int f : {0, 1}) {
        Params q = ps;
        q.emplace_back("form", f);
        items.push_back(q);
      }
    }
    x.items = std::move(items);
    return x;
  };

  add("W.babbage", "C(2p-1,p-1) = 1 mod p^2", "p >= 3", {"p"}, true, primes_from(3),
      [](const Params& ps) { return w_central(ps, 3, 2); });
  add("W.wolstenholme.binom", "C(2p-1,p-1) = 1 mod p^3", "p >= 5", {"p"}, true, primes_from(5),
      [](const Params& ps) { return w_central(ps, 5, 3); });
  add("W.glaisher.p4", "C(2p-1,p-1) = 1 + 2p H(1) mod p^4", "p >= 5", {"p"}, true, primes_from(5),
      [](const Params& ps) { return w_glaisher_p4(ps, 1); });
  add("W.glaisher.p4.printed", "C(2p-1,p-1) = 1 - 2p H(1) mod p^4 (sign as printed)", "p >= 5", {"p"}, false,
      primes_from(5), [](const Params& ps) { return w_glaisher_p4(ps, -1); });
  add("W.mcintosh.p5", "C(2p-1,p-1) = 1 - p^2 H(2) mod p^5", "p >= 7", {"p"}, true, primes_from(7), w_mcintosh_p5);
  add("W.zhao.p5", "C(2p-1,p-1) = 1 + 2p H(1) mod p^5", "p >= 7", {"p"}, true, primes_from(7), w_zhao_p5);
  add("W.tauraso.p6", "C(2p-1,p-1) = 1 + 2p H(1) + (2/3) p^3 H(3) mod p^6", "p >= 7", {"p"}, true, primes_from(7),
      w_tauraso_p6);
  add("W.mestrovic.p6", "C(2p-1,p-1) = 1 - 2p H(1) - 2p^2 H(2) mod p^6", "p >= 7", {"p"}, true, primes_from(7),
      w_mestrovic_p6);
  add("W.mestrovic.p7",
      "C(2p-1,p-1) = 1 - 2p H(1) + 4p^2 sum_{i<j} 1/(ij) = 1 - 2p H(1) + 2p^2 (H(1)^2 - H(2)) mod p^7",
      "p >= 11; p = 7 modulo 7^6", {"p", "form"}, true, forms(7, {0, 1}), w_mestrovic_p7);
  add("W.tauraso.p9",
      "C(2p-1,p-1) = 1 + 2p H(1) + (2/3) p^3 H(3) + 2p^2 H(1)^2 + (2/5) p^5 H(5) + (4/3) p^4 H(1) H(3) mod p^9",
      "p >= 7", {"p"}, true, primes_from(7), w_tauraso_p9);
  add("W.mestrovic.p9",
      "C(2p-1,p-1) = 1 + p H(1) - (p^2/2)(5 H(1)^2 + H(2)) - (p^3/30)(15 H(1) H(2) - 2 H(3)) + (p^4/40)(35 H(2)^2 - "
      "26 H(4)) mod p^9",
      "p >= 7", {"p"}, true, primes_from(7), w_mestrovic_p9);
  add("W.glaisher.np", "C(np-1,p-1) = 1 - (1/3) n(n-1) p^3 B(p-3) mod p^4", "p >= 5, 1 <= n <= 12", {"p", "n"}, true,
      n_range(5, 1, 12), w_glaisher_np);
  add("W.glaisher.bern", "C(2p-1,p-1) = 1 - (2/3) p^3 B(p-3) mod p^4", "p >= 7", {"p"}, true, primes_from(7),
      w_glaisher_bern);
  add("W.mcintosh.bern", "C(2p-1,p-1) = 1 - p^3 B(p^3-p^2-2) mod p^5", "p >= 7", {"p"}, true, primes_from(7),
      w_mcintosh_bern);
  add("W.helou.p6", "C(2p-1,p-1) = 1 - p^3 B(p^3-p^2-2) + (1/3) p^5 B(p-3) - (6/5) p^5 B(p-5) mod p^6", "p >= 5",
      {"p"}, true, primes_from(5), w_helou_p6);
  add("W.mestrovic.bern.p7",
      "C(2p-1,p-1) = 1 - p^3 B(p^4-p^3-2) + p^5 ((1/2) B(p^2-p-4) - 2 B(p^4-p^3-4)) + p^6 ((2/9) B(p-3)^2 + (1/3) "
      "B(p-3) - (1/10) B(p-5)) mod p^7",
      "p >= 11", {"p"}, true, primes_from(11), [](const Params& ps) { return w_mestrovic_bern_p7(ps, 1); });
  add("W.mestrovic.bern.p7.printed",
      "C(2p-1,p-1) = 1 - p^3 B(p^4-p^3-2) + p^5 ((1/2) B(p^2-p-4) - 2 B(p^4-p^3-4)) + p^6 ((2/9) B(p-3)^2 - (1/3) "
      "B(p-3) - (1/10) B(p-5)) mod p^7 (sign as printed)",
      "p >= 11", {"p"}, false, primes_from(11), [](const Params& ps) { return w_mestrovic_bern_p7(ps, -1); });

  add("H.wolstenholme.h1", "H(1) = 0 mod p^2", "p >= 5", {"p"}, true, primes_from(5),
      [](const Params& ps) { return h_power_sum(ps, 1, 2); });
  add("H.wolstenholme.h2", "H(2) = 0 mod p", "p >= 5", {"p"}, true, primes_from(5),
      [](const Params& ps) { return h_power_sum(ps, 2, 1); });
  add("H.alkan", "sum_{k<=(p-1)/2} 1/(k(p-k)) = 0 mod p", "p >= 5", {"p"}, true, primes_from(5), h_alkan);
  add("H.bayat", "H(m) = 0 mod p (m even), mod p^2 (m odd)", "p >= m+3, m <= 8", {"p", "m"}, true,
      [](const SweepOptions& o) {
        return over_primes(o, 5, 0, [](u64 p, std::vector<Params>& out) {
          for (u64 m = 1; m <= 8 && p >= m + 3; ++m) out.push_back({{"p", i64(p)}, {"m", i64(m)}});
        });
      },
      h_bayat);
  add("H.glaisher.gen",
      "H(m) = (m/(m+1)) p B(p-1-m) mod p^2 (m even); -(m(m+1)/(2(m+2))) p^2 B(p-2-m) mod p^3 (m odd)",
      "p >= m+3, m <= 8", {"p", "m"}, true,
      [](const SweepOptions& o) {
        return over_primes(o, 5, 0, [](u64 p, std::vector<Params>& out) {
          for (u64 m = 1; m <= 8 && p >= m + 3; ++m) out.push_back({{"p", i64(p)}, {"m", i64(m)}});
        });
      },
      h_glaisher_gen);
  add("H.glaisher.m123",
      "H(1) = -(1/3) p^2 B(p-3) mod p^3; H(2) = (2/3) p B(p-3) mod p^2; H(3) = -(6/5) p^2 B(p-5) mod p^3",
      "p >= 5 / 5 / 7", {"p", "m"}, true,
      [](const SweepOptions& o) {
        return over_primes(o, 5, 0, [](u64 p, std::vector<Params>& out) {
          for (u64 m = 1; m <= 3; ++m) {
            if (m == 3 && p < 7) continue;
            out.push_back({{"p", i64(p)}, {"m", i64(m)}});
          }
        });
      },
      h_glaisher_m123);
  add("H.carlitz", "sum_{k=1}^{p-1} 1/(mp+k) = 0 mod p^2", "p >= 5, |m| <= 8", {"p", "m"}, true,
      [](const SweepOptions& o) {
        return over_primes(o, 5, 0, [](u64 p, std::vector<Params>& out) {
          for (std::int64_t m = -8; m <= 8; ++m) out.push_back({{"p", i64(p)}, {"m", m}});
        });
      },
      h_carlitz);
  add("H.hong",
      "sum_{k=1}^{p-1} 1/(np+k)^r: -((2n+1)r(r+1)/(2(r+2))) p^2 B(p-r-2) mod p^3 (r odd, p >= r+4); (r/(r+1)) p "
      "B(p-r-1) mod p^2 (r even, p >= r+3); -(2n+1) p mod p^2 (r = p-2)",
      "p odd, n <= 6, r <= 6, per case", {"p", "n", "r"}, true,
      [](const SweepOptions& o) {
        return over_primes(o, 3, 0, [](u64 p, std::vector<Params>& out) {
          for (u64 n = 1; n <= 6; ++n) {
            for (u64 r = 1; r <= 6; ++r) {
              if (shifted_case(p, r) != ShiftedCase::kNone) out.push_back({{"p", i64(p)}, {"n", i64(n)}, {"r", i64(r)}});
            }
          }
        });
      },
      [](const Params& ps) { return h_shifted(ps, 1); });
  add("H.slavutskii",
      "sum_{k<p^l,(k,p)=1} 1/(np^l+k)^r: -((2n+1)r(r+1)/(2(p^(l-1)+r+1))) p^(2l) B(p^l-p^(l-1)-r-1) mod p^(3l) (r "
      "odd); (r/(p^(2l-2)+r)) p^l B(p^(2l-1)-p^(2l-2)-r) mod p^(3l-1) (r even); -(2n+1) p^(2l-1) mod p^(2l) (r = "
      "p-2)",
      "p odd, l <= 2, n <= 4, r <= 5, p^l <= 2e6", {"p", "l", "n", "r"}, true,
      [](const SweepOptions& o) {
        return over_primes(o, 3, 0, [](u64 p, std::vector<Params>& out) {
          for (u64 l = 1; l <= 2; ++l) {
            if (l == 2 && p * p > 2000000) continue;
            for (u64 n = 1; n <= 4; ++n) {
              for (u64 r = 1; r <= 5; ++r) {
                if (shifted_case(p, r) == ShiftedCase::kNone) continue;
                out.push_back({{"p", i64(p)}, {"l", i64(l)}, {"n", i64(n)}, {"r", i64(r)}});
              }
            }
          }
        });
      },
      [](const Params& ps) { return h_shifted(ps, getu(ps, "l")); });
  add("H.su-yang-li", "sum_{k=1}^{p-1} 1/(mp+k) = 0 mod p^(r+2) when p^r | 2m+1", "p >= 5, r <= 2",
      {"p", "r", "m"}, true,
      [](const SweepOptions& o) {
        return over_primes(o, 5, 0, [](u64 p, std::vector<Params>& out) {
          for (u64 r = 0; r <= 2; ++r) {
            const std::int64_t pr = i64(to_u64(ipow(p, static_cast<unsigned long>(r))));
            for (std::int64_t j : {1, 3, 5}) {
              out.push_back({{"p", i64(p)}, {"r", i64(r)}, {"m", (j * pr - 1) / 2}});
              out.push_back({{"p", i64(p)}, {"r", i64(r)}, {"m", -(j * pr + 1) / 2}});
            }
          }
        });
      },
      h_su_yang_li);

  add("S.granville", "C(3p,2p)/C(2p,p)^3 = C(3,2)/C(2,1)^3 mod p^5", "p >= 7", {"p"}, true, primes_from(7),
      [](const Params& ps) { return s_granville(ps, false); });
  add("S.granville.printed", "C(2p-1,p-1)/C(2p,p)^3 = 3/8 mod p^5 (as printed)", "p >= 5", {"p"}, false,
      primes_from(5), [](const Params& ps) { return s_granville(ps, true); });
  add("S.sun-wan", "C(4p-1,2p-1) = C(4p,p) - 1 mod p^5", "p >= 7", {"p"}, true, primes_from(7), s_sun_wan);
  add("S.squares", "C(2p^2,p^2) = C(2p,p) mod p^6; C(2p^3,p^3) = C(2p^2,p^2) mod p^9", "p >= 5; cube form p <= 13",
      {"p", "form"}, true,
      [](const SweepOptions& o) {
        return over_primes(o, 5, 0, [](u64 p, std::vector<Params>& out) {
          out.push_back({{"p", i64(p)}, {"form", 0}});
          if (p <= 13) out.push_back({{"p", i64(p)}, {"form", 1}});
        });
      },
      s_squares);
  add("S.integerpart", "C(n,m) = C([n/p],[m/p]) mod p^k when p does not divide C(n,m) and m = n mod p^k",
      "k <= 3, p^k <= 20000", {"p", "k", "n", "m"}, true,
      [](const SweepOptions& o) {
        return over_primes(o, 2, 0, [](u64 p, std::vector<Params>& out) {
          for (u64 k = 1; k <= 3; ++k) {
            const u64 pk = to_u64(ipow(p, static_cast<unsigned long>(k)));
            if (pk > 20000) break;
            for (u64 m : {u64{1}, u64{2}, p - 1, p + 1, 2 * p + 3}) {
              for (u64 j : {1, 2}) {
                const u64 n = m + j * pk;
                if (kummer_valuation(n, m, p) != 0) continue;
                out.push_back({{"p", i64(p)}, {"k", i64(k)}, {"n", i64(n)}, {"m", i64(m)}});
              }
            }
          }
        });
      },
      s_integerpart);

  add("L.ljunggren", "C(np,mp) = C(n,m) mod p^3", "p >= 5, 1 <= m <= n <= 10", {"p", "n", "m"}, true,
      nm_grid(5, 10, false), l_ljunggren);
  add("L.glaisher.np3", "C(np,p) = n mod p^3", "p >= 5, n <= 12", {"p", "n"}, true, n_range(5, 1, 12),
      l_glaisher_np3);
  add("L.jacobsthal",
      "C(np,mp) = C(n,m) mod p^t, t = v_p(p^3 nm(n-m)); C(np^a,mp^b) = C(np^(a-c),mp^(b-c)) mod p^(3+a+2b-3c); "
      "C(np^a,mp^a) = C(np^(a-1),mp^(a-1)) mod p^(3a)",
      "p >= 5; a = 2 only for p <= 97", {"p", "form", "n", "m", "a", "b", "c"}, true,
      [](const SweepOptions& o) {
        return over_primes(o, 5, 0, [](u64 p, std::vector<Params>& out) {
          const std::int64_t P = i64(p);
          for (u64 n = 2; n <= 6; ++n) {
            for (u64 m = 1; m < n; ++m) out.push_back({{"p", P}, {"form", 0}, {"n", i64(n)}, {"m", i64(m)}});
          }
          for (auto [n, m] : extra_pairs(p)) {
            out.push_back({{"p", P}, {"form", 0}, {"n", i64(n)}, {"m", i64(m)}});
          }
          for (auto [a, b, c] : std::vector<std::tuple<u64, u64, u64>>{{1, 1, 1}, {2, 1, 1}, {2, 2, 1}, {2, 2, 2}}) {
            if (a == 2 && p > 97) continue;
            for (u64 n = 1; n <= 3; ++n) {
              for (u64 m = 1; m <= 3; ++m) {
                if (m * to_u64(ipow(p, static_cast<unsigned long>(b))) > n * to_u64(ipow(p, static_cast<unsigned long>(a)))) continue;
                out.push_back({{"p", P}, {"form", 1}, {"n", i64(n)}, {"m", i64(m)}, {"a", i64(a)}, {"b", i64(b)}, {"c", i64(c)}});
              }
            }
          }
          for (u64 a = 1; a <= 2; ++a) {
            if (a == 2 && p > 97) continue;
            for (u64 n = 1; n <= 4; ++n) {
              for (u64 m = 1; m <= n; ++m) {
                out.push_back({{"p", P}, {"form", 2}, {"n", i64(n)}, {"m", i64(m)}, {"a", i64(a)}});
              }
            }
          }
        });
      },
      l_jacobsthal);
  add("L.robbins", "C(np^a,mp^b) = C(np^(a-b),m) mod p^a for 0 < m < np^(a-b), p not dividing nm",
      "p >= 3; a = 2 only for p <= 97", {"p", "n", "m", "a", "b"}, true,
      [](const SweepOptions& o) {
        return over_primes(o, 3, 0, [](u64 p, std::vector<Params>& out) {
          for (u64 a = 1; a <= 2; ++a) {
            if (a == 2 && p > 97) continue;
            for (u64 b = 0; b <= a; ++b) {
              const u64 pab = to_u64(ipow(p, static_cast<unsigned long>(a - b)));
              for (u64 n = 1; n <= 3; ++n) {
                if (n % p == 0) continue;
                for (u64 m : {u64{1}, u64{2}, p + 1, 2 * p - 1}) {
                  if (m % p == 0 || m >= n * pab) continue;
                  out.push_back({{"p", i64(p)}, {"n", i64(n)}, {"m", i64(m)}, {"a", i64(a)}, {"b", i64(b)}});
                }
              }
            }
          }
        });
      },
      l_robbins);
  add("L.helou.s", "C(np,mp) = C(n,m) mod p^s, s = v_p(p^3 m(n-m) C(n,m))", "p >= 5", {"p", "n", "m"}, true,
      [](const SweepOptions& o) {
        return over_primes(o, 5, 0, [](u64 p, std::vector<Params>& out) {
          for (u64 n = 2; n <= 6; ++n) {
            for (u64 m = 1; m < n; ++m) out.push_back({{"p", i64(p)}, {"n", i64(n)}, {"m", i64(m)}});
          }
          for (auto [n, m] : extra_pairs(p)) out.push_back({{"p", i64(p)}, {"n", i64(n)}, {"m", i64(m)}});
        });
      },
      l_helou_s);
  add("L.zhao.wp", "C(np,mp)/C(n,m) = 1 + w_p nm(n-m) p^3 mod p^5, w_p = H(1)/p^2 mod p^2", "p >= 7, n <= 6",
      {"p", "n", "m"}, true, nm_grid(7, 6, true), l_zhao_wp);
  add("L.helou.p6",
      "C(np,mp)/C(n,m) = 1 - mn(n-m)((p^3/2) B(p^3-p^2-2) - (p^5/6) B(p-3) + (1/5)(m^2-mn+n^2) p^5 B(p-5)) mod p^6",
      "p >= 5, n <= 6", {"p", "n", "m"}, true, nm_grid(5, 6, true), l_helou_p6);
  add("L.helou.p4", "C(np,mp)/C(n,m) = 1 - (1/3) mn(n-m) p^3 B(p-3) mod p^4", "p >= 5, n <= 6", {"p", "n", "m"}, true,
      nm_grid(5, 6, true), l_helou_p4);

  add("P.quotient", "W_p = -(2/3) B(p-3) mod p", "p >= 7", {"p"}, true, primes_from(7), p_quotient);
  add("P.stafford-vandiver", "B(p-3) = (1/21) sum_{[p/6] < k <= [p/4]} 1/k^3 mod p (comparison only)", "p >= 11",
      {"p"}, false, primes_from(11), p_stafford_vandiver);
  add("P.mestrovic.p8",
      "Wolstenholme prime p: C(2p-1,p-1) = 1 + sum_{j<=6} (-1)^(j+1) (p^j/j) H(j) = 1 + (3p/2) H(1) - (p^2/4) H(2) + "
      "(7p^3/12) H(3) + (5p^5/12) H(5) mod p^8",
      "Wolstenholme primes; p = 16843 behind the slow flag", {"p", "form"}, true, gated_forms, p_mestrovic_p8);
  add("P.mestrovic.p7",
      "Wolstenholme prime p: C(2p-1,p-1) = 1 - 2p H(1) - 2p^2 H(2) = 1 + 2p H(1) + (2p^3/3) H(3) mod p^7",
      "Wolstenholme primes; p = 16843 behind the slow flag", {"p", "form"}, true, gated_forms, p_mestrovic_p7);
  add("P.mestrovic.bern",
      "Wolstenholme prime p: C(2p-1,p-1) = 1 - p^3 B(p^4-p^3-2) - (3/2) p^5 B(p^2-p-4) + (3/10) p^6 B(p-5) mod p^7, "
      "and the lower-index form",
      "Wolstenholme primes; p = 16843 behind the slow flag", {"p", "form"}, true, gated_forms, p_mestrovic_bern);

  add("C.leudesdorf", "sum_{k<n,(k,n)=1} 1/k = 0 mod n^2", "(n,6) = 1, 5 <= n <= 1000", {"n"}, true,
      [](const SweepOptions&) {
        Expansion x;
        for (u64 n = 5; n <= 1000; ++n) {
          if (std::gcd(n, u64{6}) == 1) x.items.push_back({{"n", i64(n)}});
        }
        return x;
      },
      c_leudesdorf);
  add("C.mcintosh.modified", "prod_{k<=n,(k,n)=1} (2n-k)/k = 1 + n^2 eps_n mod n^3", "3 <= n <= 2000", {"n"}, true,
      [](const SweepOptions&) {
        Expansion x;
        for (u64 n = 3; n <= 2000; ++n) x.items.push_back({{"n", i64(n)}});
        return x;
      },
      c_mcintosh_modified);
  add("C.slavutskii.even", "sum_{k<n,(k,n)=1} 1/k^s = 0 mod n (s even, (p-1) | s implies p not dividing n)",
      "s <= 8, n <= 500", {"n", "s"}, true,
      [](const SweepOptions&) {
        Expansion x;
        for (u64 s = 2; s <= 8; s += 2) {
          for (u64 n = 2; n <= 500; ++n) {
            if (slavutskii_even_hypothesis(n, s)) x.items.push_back({{"n", i64(n)}, {"s", i64(s)}});
          }
        }
        return x;
      },
      [](const Params& ps) { return c_slavutskii(ps, true); });
  add("C.slavutskii.odd", "sum_{k<n,(k,n)=1} 1/k^s = 0 mod n^2 (s odd, under either hypothesis)", "s <= 7, n <= 500",
      {"n", "s"}, true,
      [](const SweepOptions&) {
        Expansion x;
        for (u64 s = 1; s <= 7; s += 2) {
          for (u64 n = 2; n <= 500; ++n) {
            if (slavutskii_odd_hypothesis(n, s)) x.items.push_back({{"n", i64(n)}, {"s", i64(s)}});
          }
        }
        return x;
      },
      [](const Params& ps) { return c_slavutskii(ps, false); });
  add("C.slavutskii.bern",
      "sum_{k<n,(k,n)=1} 1/k^s = n prod(1-p^(t-1)) B(t) (s even), (t/2) n^2 prod(1-p^(t-2)) B(t-1) (s odd) mod n^2, "
      "t = (phi(n^2)-1)s",
      "(n,6) = 1, n <= 200, s <= 4; prime powers p^l, l <= 2", {"n", "p", "l", "s"}, true,
      [](const SweepOptions& o) {
        Expansion x = over_primes(o, 5, 0, [](u64 p, std::vector<Params>& out) {
          for (u64 l = 1; l <= 2; ++l) {
            for (u64 s = 1; s <= 4; ++s) out.push_back({{"p", i64(p)}, {"l", i64(l)}, {"s", i64(s)}});
          }
        });
        for (u64 n = 5; n <= 200; ++n) {
          if (std::gcd(n, u64{6}) != 1) continue;
          for (u64 s = 1; s <= 4; ++s) x.items.push_back({{"n", i64(n)}, {"s", i64(s)}});
        }
        return x;
      },
      c_slavutskii_bern);
  add("C.duparc", "sum_{k<p^l,(k,p)=1} 1/k^s = 0 mod p^(2l-1), p^(2l), p^(l-1) or p^l by case", "p >= 3, l <= 3, s <= 8, p^l <= 1e6",
      {"p", "l", "s"}, true,
      [](const SweepOptions& o) {
        return over_primes(o, 3, 0, [](u64 p, std::vector<Params>& out) {
          for (u64 l = 1; l <= 3; ++l) {
            if (to_u64(ipow(p, static_cast<unsigned long>(l))) > 1000000) break;
            for (u64 s = 1; s <= 8; ++s) {
              if (duparc_exponent(p, l, s) >= 1) out.push_back({{"p", i64(p)}, {"l", i64(l)}, {"s", i64(s)}});
            }
          }
        });
      },
      c_duparc);
  add("C.hong.multiprime", "sum_{k<=P,(k,P)=1} 1/(mP+k) = 0 mod P^2, P a product of distinct primes > 3",
      "pairs and triples of primes in (3, 30), m <= 3", {"p1", "p2", "p3", "m"}, true,
      [](const SweepOptions&) {
        Expansion x;
        const std::vector<u64> ps{5, 7, 11, 13, 17, 19, 23, 29};
        for (std::size_t i = 0; i < ps.size(); ++i) {
          for (std::size_t j = i + 1; j < ps.size(); ++j) {
            for (u64 m = 0; m <= 3; ++m) x.items.push_back({{"p1", i64(ps[i])}, {"p2", i64(ps[j])}, {"m", i64(m)}});
            for (std::size_t k = j + 1; k < ps.size(); ++k) {
              for (u64 m = 0; m <= 3; ++m) {
                x.items.push_back({{"p1", i64(ps[i])}, {"p2", i64(ps[j])}, {"p3", i64(ps[k])}, {"m", i64(m)}});
              }
            }
          }
        }
        return x;
      },
      c_hong_multiprime);

  add("B.chamberland", "sum_k (-1)^(eps k) C(p,k)^a C(2p,k)^b = 1 + (-1)^eps 2^b mod p^3; u(mp) = u(m) mod p^3",
      "p >= 5, a, b <= 3, m <= 5", {"p", "eps", "a", "b", "m"}, true,
      [](const SweepOptions& o) {
        return over_primes(o, 5, 0, [](u64 p, std::vector<Params>& out) {
          for (u64 eps = 0; eps <= 1; ++eps) {
            for (u64 a = 0; a <= 3; ++a) {
              for (u64 b = 0; b <= 3; ++b) {
                if (chamberland_degenerate(eps, a, b)) continue;
                out.push_back({{"p", i64(p)}, {"eps", i64(eps)}, {"a", i64(a)}, {"b", i64(b)}});
              }
            }
          }
          for (u64 m = 1; m <= 5; ++m) out.push_back({{"p", i64(p)}, {"m", i64(m)}});
        });
      },
      [](const Params& ps) { return b_chamberland(ps, false); });
  add("B.chamberland.degenerate", "the triples (eps,a,b) in {(0,0,0),(0,1,0),(0,0,1)}", "p >= 5",
      {"p", "eps", "a", "b"}, false,
      [](const SweepOptions& o) {
        return over_primes(o, 5, 0, [](u64 p, std::vector<Params>& out) {
          for (auto [a, b] : std::vector<std::pair<int, int>>{{0, 0}, {1, 0}, {0, 1}}) {
            out.push_back({{"p", i64(p)}, {"eps", 0}, {"a", a}, {"b", b}});
          }
        });
      },
      [](const Params& ps) { return b_chamberland(ps, true); });
  add("B.cai-granville",
      "sum_k (-1)^k C(p-1,k)^n = C(np-2,p-1) mod p^4 (n odd), 2^(n(p-1)) mod p^3 (n even); sum_k C(p-1,k)^n the "
      "other way round",
      "p >= 5, n <= 6", {"p", "alt", "n"}, true,
      [](const SweepOptions& o) {
        return over_primes(o, 5, 0, [](u64 p, std::vector<Params>& out) {
          for (u64 alt = 0; alt <= 1; ++alt) {
            for (u64 n = 1; n <= 6; ++n) out.push_back({{"p", i64(p)}, {"alt", i64(alt)}, {"n", i64(n)}});
          }
        });
      },
      b_cai_granville);
  add("B.pan", "sum_k (-1)^((n-1)k) C(p-1,k)^n = 2^(n(p-1)) + (n(n-1)(3n-4)/48) p^3 B(p-3) mod p^4", "p >= 3, n <= 6",
      {"p", "n"}, true, n_range(3, 1, 6), b_pan);
  add("B.mestrovic.recip", "sum_k 1/C(p-1,k) = 2^(1-p) - (7/24) p^3 B(p-3) mod p^4; = 2^(1-p) mod p^3",
      "p >= 3; mod p^3 form p >= 5", {"p", "form"}, true,
      [](const SweepOptions& o) {
        return over_primes(o, 3, 0, [](u64 p, std::vector<Params>& out) {
          out.push_back({{"p", i64(p)}, {"form", 0}});
          if (p >= 5) out.push_back({{"p", i64(p)}, {"form", 1}});
        });
      },
      [](const Params& ps) { return b_mestrovic_recip(ps, 5); });
  add("B.mestrovic.recip.floor", "sum_k 1/C(p-1,k) = 2^(1-p) mod p^3 at the printed floor p = 3", "p = 3",
      {"p", "form"}, false,
      [](const SweepOptions& o) {
        Expansion x;
        if (o.p_lo <= 3 && 3 <= o.p_hi) x.items.push_back({{"p", 3}, {"form", 1}});
        return x;
      },
      [](const Params& ps) {
        require(getu(ps, "p") == 3, "only p = 3");
        return b_mestrovic_recip(ps, 3);
      });
  add("B.apery", "A(pn) = A(n) mod p^3", "p in {5,7,11,13}, n <= 30", {"p", "n"}, true,
      [](const SweepOptions& o) {
        return over_primes(o, 5, 13, [](u64 p, std::vector<Params>& out) {
          for (u64 n = 0; n <= 30; ++n) out.push_back({{"p", i64(p)}, {"n", i64(n)}});
        });
      },
      b_apery);
  add("B.putnam", "sum_{j=1}^{[2p/3]} C(p,j) = 0 mod p^2", "p >= 5", {"p"}, true, primes_from(5), b_putnam);

  auto lucas_grid = [](const SweepOptions& o) {
    return over_primes(o, 2, 0, [](u64 p, std::vector<Params>& out) {
      std::vector<u64> ns{p + 1, 2 * p + 3, 3 * p - 1, 4 * p + 7};
      if (p <= 50) ns.push_back(p * p + 2 * p + 1);
      for (u64 n : ns) {
        for (u64 m : {u64{1}, u64{2}, p - 1, p + 2, n / 2}) {
          if (m <= n) out.push_back({{"p", i64(p)}, {"n", i64(n)}, {"m", i64(m)}});
        }
      }
    });
  };
  add("X.lucas", "C(n,m) = prod C(n_i,m_i) mod p over base-p digits", "any prime", {"p", "n", "m"}, true, lucas_grid,
      x_lucas);
  add("X.kummer", "v_p(C(n,m)) = number of carries adding m and n-m in base p", "any prime", {"p", "n", "m"}, true,
      lucas_grid, x_kummer);

  for (const auto& qid : q_check_ids()) {
    const bool binom = qid == "Q.straub" || qid == "Q.clark" || qid == "Q.andrews.binom";
    const u64 floor = (qid == "Q.andrews" || qid == "Q.andrews.tilde") ? 3 : 5;
    add(qid, "q-analogue modulo a power of the p-th cyclotomic polynomial", "p >= " + std::to_string(floor) + ", p <= 13",
        binom ? std::vector<std::string>{"p", "n", "m"} : std::vector<std::string>{"p"}, true,
        [floor, binom](const SweepOptions& o) {
          return over_primes(o, floor, 13, [binom](u64 p, std::vector<Params>& out) {
            if (!binom) {
              out.push_back(P1(p));
              return;
            }
            for (u64 n = 0; n <= 3; ++n) {
              for (u64 m = 0; m <= n; ++m) out.push_back({{"p", i64(p)}, {"n", i64(n)}, {"m", i64(m)}});
            }
          });
        },
        [qid, floor](const Params& ps) { return q_eval(qid, ps, floor); });
  }
  return r;
}

}  // namespace cat

using cat::mcintosh_epsilon;

inline const std::vector<CongruenceCheck>& registry() {
  static const std::vector<CongruenceCheck> r = cat::build_registry();
  return r;
}

inline const CongruenceCheck& find_check(const std::string& id) {
  for (const auto& c : registry()) {
    if (c.id == id) return c;
  }
  throw UnknownCheckId("unknown check id: " + id);
}

/// Ids matching any of the glob patterns, in registry order. A pattern that
/// matches nothing is an error.
inline std::vector<std::string> resolve_ids(const std::vector<std::string>& patterns) {
  std::vector<bool> take(registry().size(), false);
  for (const auto& pat : patterns) {
    bool hit = false;
    for (std::size_t i = 0; i < registry().size(); ++i) {
      if (fnmatch(pat.c_str(), registry()[i].id.c_str(), 0) == 0) {
        take[i] = true;
        hit = true;
      }
    }
    if (!hit) throw UnknownCheckId("no check matches " + pat);
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i < take.size(); ++i) {
    if (take[i]) out.push_back(registry()[i].id);
  }
  return out;
}

inline CheckResult run_check(const std::string& id, const Params& params) {
  const auto& check = find_check(id);
  const auto start = std::chrono::steady_clock::now();
  Evaluation ev = check.evaluate(params);
  const auto stop = std::chrono::steady_clock::now();
  CheckResult r;
  r.id = id;
  r.params = params;
  r.pass = ev.pass;
  r.asserted = check.asserted;
  r.lhs = std::move(ev.lhs);
  r.rhs = std::move(ev.rhs);
  r.modulus = std::move(ev.modulus);
  r.micros = std::chrono::duration_cast<std::chrono::microseconds>(stop - start).count();
  return r;
}

struct SweepSummary {
  std::size_t total = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;               // asserted checks only
  std::size_t informative_agree = 0;
  std::size_t informative_disagree = 0;
  std::size_t errors = 0;               // evaluator raised; counted in failed when asserted
  std::size_t skipped_below_floor = 0;
  std::size_t skipped_above_cap = 0;
  std::size_t gated = 0;
};

struct SweepReport {
  std::vector<CheckResult> results;
  SweepSummary summary;
};

/// Runs every binding of the selected checks. Results come back in registry
/// order, then grid order, whatever the thread count.
inline SweepReport sweep(const std::vector<std::string>& patterns, const SweepOptions& opts) {
  SweepReport report;
  if (patterns.empty()) return report;
  struct Task {
    const CongruenceCheck* check;
    Params params;
  };
  std::vector<Task> tasks;
  for (const auto& id : resolve_ids(patterns)) {
    const auto& check = find_check(id);
    Expansion x = check.expand(opts);
    report.summary.skipped_below_floor += x.below_floor;
    report.summary.skipped_above_cap += x.above_cap;
    report.summary.gated += x.gated;
    for (auto& ps : x.items) tasks.push_back({&check, std::move(ps)});
  }
  report.results.resize(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      const auto& t = tasks[i];
      CheckResult r;
      try {
        r = run_check(t.check->id, t.params);
      } catch (const std::exception& e) {
        r.id = t.check->id;
        r.params = t.params;
        r.asserted = t.check->asserted;
        r.pass = false;
        r.lhs = "error";
        r.rhs = e.what();
        r.modulus = "-";
      }
      report.results[i] = std::move(r);
    }
  };
  const unsigned jobs = std::max(1u, opts.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& r : report.results) {
    ++report.summary.total;
    if (r.lhs == "error") ++report.summary.errors;
    if (r.asserted) {
      if (r.pass) {
        ++report.summary.passed;
      } else {
        ++report.summary.failed;
      }
    } else if (r.pass) {
      ++report.summary.informative_agree;
    } else {
      ++report.summary.informative_disagree;
    }
  }
  return report;
}

}  // namespace wolst
