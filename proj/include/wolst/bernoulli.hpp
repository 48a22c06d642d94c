#pragma once

// Bernoulli numbers: exact rationals from the convolution recurrence, and
// residues modulo p^e for indices far out of exact reach.
//
// bernoulli_mod evaluates the power sum S_n(p^w) = sum_{x < p^w} x^n, which
// equals p^w * B_n up to terms divisible by p^(2w-2). Writing x = a + p t
// splits it into p short inner sums and closed-form sums over t, so the cost
// is O(p * w) exponentiations instead of p^w.

#include <cstdint>
#include <mutex>
#include <shared_mutex>
#include <vector>

#include "wolst/bigint.hpp"
#include "wolst/combinatorics.hpp"
#include "wolst/errors.hpp"
#include "wolst/primes.hpp"
#include "wolst/residues.hpp"

namespace wolst {

/// Exact B_0..B_N, append-only. Readers share a lock; growth takes it
/// exclusively.
class BernoulliCache {
 public:
  static constexpr std::uint64_t kDefaultCap = 400;

  explicit BernoulliCache(std::uint64_t cap = kDefaultCap) : cap_(cap) { values_.push_back(BigRational(1)); }

  std::uint64_t cap() const {
    std::shared_lock lock(mutex_);
    return cap_;
  }

  void raise_cap(std::uint64_t cap) {
    std::unique_lock lock(mutex_);
    if (cap > cap_) cap_ = cap;
  }

  std::uint64_t size() const {
    std::shared_lock lock(mutex_);
    return values_.size();
  }

  BigRational get(std::uint64_t n) {
    {
      std::shared_lock lock(mutex_);
      if (n > cap_) {
        throw CapExceeded("B_" + std::to_string(n) + " is past the cache cap " + std::to_string(cap_));
      }
      if (n < values_.size()) return values_[n];
    }
    std::unique_lock lock(mutex_);
    while (values_.size() <= n) extend();
    return values_[n];
  }

 private:
  // sum_{k=0}^{m} C(m+1, k) B_k = 0
  void extend() {
    const std::uint64_t m = values_.size();
    if (m >= 3 && m % 2 == 1) {
      values_.push_back(BigRational(0));
      return;
    }
    BigRational acc = 0;
    BigInt c = 1;  // C(m+1, k)
    for (std::uint64_t k = 0; k < m; ++k) {
      if (values_[k] != 0) acc += BigRational(c) * values_[k];
      c *= big_u(m + 1 - k);
      mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), k + 1);
    }
    BigRational b = -acc / BigRational(big_u(m + 1));
    b.canonicalize();
    if (m >= 2 && m % 2 == 0) check_staudt_clausen(m, b);
    values_.push_back(b);
  }

  static void check_staudt_clausen(std::uint64_t m, const BigRational& b) {
    BigInt expected = 1;
    for (std::uint64_t d = 1; d * d <= m; ++d) {
      if (m % d != 0) continue;
      if (is_prime_u64(d + 1)) expected *= big_u(d + 1);
      const std::uint64_t q = m / d;
      if (q != d && is_prime_u64(q + 1)) expected *= big_u(q + 1);
    }
    if (b.get_den() != expected) {
      throw Error("von Staudt-Clausen check failed at B_" + std::to_string(m) + ": denominator " +
                  to_string(BigInt(b.get_den())) + ", expected " + to_string(expected));
    }
    const bool positive = (m / 2) % 2 == 1;
    if ((sgn(b) > 0) != positive) throw Error("sign check failed at B_" + std::to_string(m));
  }

  mutable std::shared_mutex mutex_;
  std::uint64_t cap_;
  std::vector<BigRational> values_;
};

inline BernoulliCache& bernoulli_cache() {
  static BernoulliCache cache;
  return cache;
}

inline BigRational bernoulli_exact(std::uint64_t n) { return bernoulli_cache().get(n); }

namespace detail {

/// sum_{t=0}^{M-1} t^i for i = 0..imax, exactly, via Stirling numbers of the
/// second kind: sum_j S(i,j) j! C(M, j+1).
inline std::vector<BigInt> power_sums_to(const BigInt& M, int imax) {
  std::vector<std::vector<BigInt>> s2(imax + 1, std::vector<BigInt>(imax + 2, 0));
  s2[0][0] = 1;
  for (int i = 1; i <= imax; ++i) {
    for (int j = 1; j <= i; ++j) s2[i][j] = BigInt(j) * s2[i - 1][j] + s2[i - 1][j - 1];
  }
  // falling[j] = j! * C(M, j+1) = M (M-1) ... (M-j) / (j+1)
  std::vector<BigInt> falling(imax + 1);
  BigInt prod = M;
  for (int j = 0; j <= imax; ++j) {
    if (j > 0) prod *= (M - j);
    BigInt f = prod;
    mpz_divexact_ui(f.get_mpz_t(), f.get_mpz_t(), static_cast<unsigned long>(j + 1));
    falling[j] = f;
  }
  std::vector<BigInt> sums(imax + 1);
  for (int i = 0; i <= imax; ++i) {
    BigInt s = 0;
    for (int j = 0; j <= i; ++j) s += s2[i][j] * falling[j];
    sums[i] = s;
  }
  return sums;
}

/// Residue of S_n(p^w) = sum_{x=0}^{p^w - 1} x^n modulo p^K.
inline BigInt power_sum_mod(std::uint64_t n, std::uint64_t p, int w, int K) {
  const BigInt modulus = ipow(p, K);
  const int imax = static_cast<int>(std::min<std::uint64_t>(n, static_cast<std::uint64_t>(K - 1)));
  const std::vector<BigInt> inner = power_sums_to(ipow(p, w - 1), imax);
  return with_ring(modulus, [&](const auto& ring) {
    using Elem = typename std::decay_t<decltype(ring)>::Elem;
    // A[i] = sum_{a=0}^{p-1} a^(n-i), with 0^0 = 1
    std::vector<Elem> A(imax + 1, ring.zero());
    for (std::uint64_t a = 0; a < p; ++a) {
      const Elem base = ring.from_u64(a);
      Elem pw = ring.pow(base, n - static_cast<std::uint64_t>(imax));
      for (int i = imax; i >= 0; --i) {
        A[i] = ring.add(A[i], pw);
        if (i > 0) pw = ring.mul(pw, base);
      }
    }
    Elem total = ring.zero();
    BigInt binom = 1;  // C(n, i)
    Elem p_pow = ring.one();
    const Elem pe = ring.from_u64(p);
    for (int i = 0; i <= imax; ++i) {
      Elem term = ring.mul(ring.mul(ring.reduce(binom), p_pow), ring.mul(ring.reduce(inner[i]), A[i]));
      total = ring.add(total, term);
      binom *= big_u(n - static_cast<std::uint64_t>(i));
      mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(), static_cast<unsigned long>(i + 1));
      p_pow = ring.mul(p_pow, pe);
    }
    return ring.lift(total);
  });
}

/// p * B_n modulo p^(abs + 1), for even n >= 2 and odd p.
inline BigInt p_times_bernoulli(std::uint64_t n, std::uint64_t p, int abs, int guard) {
  const int w = abs + 2 + guard;
  const int K = w + abs;
  BigInt T = power_sum_mod(n, p, w, K);
  const BigInt scale = ipow(p, w - 1);
  if (!mpz_divisible_p(T.get_mpz_t(), scale.get_mpz_t())) {
    throw Error("power sum for B_" + std::to_string(n) + " not divisible by p^(w-1)");
  }
  T /= scale;
  return mod_floor(T, ipow(p, abs + 1));
}

/// Maximum absolute precision the valuation search may climb to.
inline constexpr int kMaxInternalPrecision = 40;

}  // namespace detail

/// p * B_n mod p^(abs+1); cross-checked against a run with one more guard digit.
inline BigInt p_times_bernoulli_mod(std::uint64_t n, std::uint64_t p, int abs) {
  if (n % 2 == 1 && n != 1) throw OddIndex("B_" + std::to_string(n) + " is zero");
  if (p < 3 || !is_prime_u64(p)) throw ParamsOutOfDomain("bernoulli_mod needs an odd prime");
  if (abs < 0 || abs > detail::kMaxInternalPrecision) throw PrecisionUnreachable("precision out of range");
  const BigInt top = ipow(p, abs + 1);
  if (n == 0) return mod_floor(big_u(p), top);
  if (n == 1) return make_residue(-big_u(p), BigInt(2), top).value();
  BigInt x = detail::p_times_bernoulli(n, p, abs, 0);
  BigInt check = detail::p_times_bernoulli(n, p, abs, 1);
  if (x != check) {
    throw Error("B_" + std::to_string(n) + " mod " + std::to_string(p) + " unstable under extra guard digit");
  }
  return x;
}

/// B_n modulo p^e as a p-adic value with relative precision e. Valuation -1
/// appears exactly when (p-1) | n.
inline PadicValue bernoulli_mod(std::uint64_t n, std::uint64_t p, int e) {
  if (e < 1 || e > 9) throw PrecisionUnreachable("bernoulli_mod supports 1 <= e <= 9");
  if (n % 2 == 1 && n != 1) throw OddIndex("B_" + std::to_string(n) + " is zero");
  const BigInt bp = big_u(p);
  int abs = e;
  while (true) {
    BigInt x = p_times_bernoulli_mod(n, p, abs);
    if (x != 0) {
      const int vx = valuation(x, bp);
      const int have = abs + 1 - vx;
      if (have >= e) {
        BigInt unit = x / ipow(p, vx);
        return PadicValue(bp, vx - 1, ResidueClass(unit, ipow(p, e)), e);
      }
      abs += e - have;
    } else {
      abs += e;
    }
    if (abs > detail::kMaxInternalPrecision) {
      throw PrecisionUnreachable("B_" + std::to_string(n) + " vanishes to high order at " + std::to_string(p));
    }
  }
}

/// Residue of p^shift * B_n modulo p^target; shift may be 0 only when
/// (p-1) does not divide n.
inline ResidueClass bernoulli_residue(std::uint64_t n, std::uint64_t p, int shift, int target) {
  const BigInt modulus = ipow(p, target);
  if (n % 2 == 1 && n != 1) return ResidueClass(BigInt(0), modulus);
  if (shift >= target + 1) return ResidueClass(BigInt(0), modulus);
  const int abs = std::max(target - shift, 0);
  BigInt x = p_times_bernoulli_mod(n, p, abs);  // p B_n mod p^(abs+1)
  if (shift == 0) {
    if (mpz_divisible_ui_p(x.get_mpz_t(), p) == 0) throw ValuationTooNegative("B_n has a pole at p");
    x /= big_u(p);
    return ResidueClass(x, modulus);
  }
  return ResidueClass(x * ipow(p, shift - 1), modulus);
}

/// Residue of the rational c * p^shift * B_n modulo p^target.
inline ResidueClass bernoulli_term(const BigRational& c, std::uint64_t n, std::uint64_t p, int shift, int target) {
  const BigInt bp = big_u(p);
  const BigInt modulus = ipow(p, target);
  if (c == 0) return ResidueClass(BigInt(0), modulus);
  const int vc = valuation(c, bp);
  BigRational unit_c = c;
  if (vc > 0) unit_c /= BigRational(ipow(p, vc));
  if (vc < 0) unit_c *= BigRational(ipow(p, -vc));
  unit_c.canonicalize();
  const int s = shift + vc;
  if (s < 0) throw ValuationTooNegative("coefficient pole too deep");
  return make_residue(unit_c, modulus) * bernoulli_residue(n, p, s, target);
}

/// Short sum for B(p-3): (1/21) sum_{p/6 < k <= p/4} 1/k^3 mod p. Experimental; the
/// hunter gates it behind a comparison against bernoulli_mod.
inline ResidueClass b_pminus3_fast(std::uint64_t p) {
  if (p < 11 || !is_prime_u64(p)) throw ParamsOutOfDomain("b_pminus3_fast needs a prime p >= 11");
  NativeRing ring(p);
  std::vector<std::uint64_t> ks;
  for (std::uint64_t k = p / 6 + 1; k <= p / 4; ++k) ks.push_back(k);
  batch_invert(ring, std::span<std::uint64_t>(ks));
  std::uint64_t acc = 0;
  for (auto inv : ks) acc = ring.add(acc, ring.mul(inv, ring.mul(inv, inv)));
  std::uint64_t inv21 = 0;
  ring.inverse(21 % p, inv21);
  return ResidueClass(big_u(ring.mul(acc, inv21)), big_u(p));
}

struct WolstenholmeQuotient {
  BigInt exact;
  ResidueClass mod_p;
};

inline constexpr std::uint64_t kExactQuotientLimit = 100000;

/// W_p = (C(2p-1, p-1) - 1) / p^3.
inline WolstenholmeQuotient wolstenholme_quotient(std::uint64_t p) {
  if (!is_prime_u64(p)) throw NotPrime(std::to_string(p) + " is not prime");
  if (p < 5) throw ParamsOutOfDomain("Wolstenholme quotient needs p >= 5");
  if (p > kExactQuotientLimit) throw ParamsOutOfDomain("exact quotient limited to p <= 100000");
  BigInt c = binomial_exact(2 * p - 1, static_cast<std::int64_t>(p - 1)) - 1;
  const BigInt p3 = ipow(p, 3);
  if (!mpz_divisible_p(c.get_mpz_t(), p3.get_mpz_t())) throw Error("p^3 does not divide C(2p-1,p-1) - 1");
  c /= p3;
  return {c, ResidueClass(c, big_u(p))};
}

/// W_p mod p from C(2p-1, p-1) mod p^4; no size limit.
inline ResidueClass wolstenholme_quotient_mod_p(std::uint64_t p) {
  if (!is_prime_u64(p)) throw NotPrime(std::to_string(p) + " is not prime");
  if (p < 5) throw ParamsOutOfDomain("Wolstenholme quotient needs p >= 5");
  BigInt c = central_shifted_binomial_mod(p, 4).value() - 1;
  return ResidueClass(c / ipow(p, 3), big_u(p));
}

}  // namespace wolst
