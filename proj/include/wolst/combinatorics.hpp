#pragma once

// Binomial coefficients (exact, modular, Lucas/Kummer), harmonic-type sums,
// Apery numbers and the binomial sums that sit next to Wolstenholme's theorem.
//
// Every fast path here has a slow exact twin (binomial_exact, exact rational
// sums) and the tests pin them together.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "wolst/bigint.hpp"
#include "wolst/errors.hpp"
#include "wolst/primes.hpp"
#include "wolst/residues.hpp"

namespace wolst {

/// C(n, m) by the multiplicative formula; 0 outside 0 <= m <= n.
inline BigInt binomial_exact(std::uint64_t n, std::int64_t m) {
  if (m < 0 || static_cast<std::uint64_t>(m) > n) return BigInt(0);
  std::uint64_t k = std::min<std::uint64_t>(static_cast<std::uint64_t>(m), n - static_cast<std::uint64_t>(m));
  BigInt r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r *= big_u(n - k + i);
    mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), i);
  }
  return r;
}

/// Number of carries when adding m and n - m in base p (Kummer).
inline int kummer_valuation(std::uint64_t n, std::uint64_t m, std::uint64_t p) {
  if (m > n) throw ParamsOutOfDomain("kummer_valuation needs m <= n");
  std::uint64_t a = m, b = n - m;
  int carries = 0, carry = 0;
  while (a != 0 || b != 0 || carry != 0) {
    std::uint64_t s = a % p + b % p + static_cast<std::uint64_t>(carry);
    carry = s >= p ? 1 : 0;
    carries += carry;
    a /= p;
    b /= p;
  }
  return carries;
}

/// Lucas's theorem: product of digitwise binomials in base p, mod p.
inline ResidueClass lucas_binomial_mod_p(std::uint64_t n, std::int64_t m, std::uint64_t p) {
  const BigInt bp = big_u(p);
  if (m < 0 || static_cast<std::uint64_t>(m) > n) return ResidueClass(BigInt(0), bp);
  NativeRing ring(p);
  std::uint64_t acc = ring.one();
  std::uint64_t a = n, b = static_cast<std::uint64_t>(m);
  while (a != 0 || b != 0) {
    std::uint64_t ai = a % p, bi = b % p;
    if (bi > ai) return ResidueClass(BigInt(0), bp);
    std::uint64_t num = 1, den = 1;
    for (std::uint64_t i = 1; i <= bi; ++i) {
      num = ring.mul(num, ai - bi + i);
      den = ring.mul(den, i);
    }
    std::uint64_t inv = 0;
    ring.inverse(den, inv);
    acc = ring.mul(acc, ring.mul(num, inv));
    a /= p;
    b /= p;
  }
  return ResidueClass(big_u(acc), bp);
}

namespace detail {

/// Product of 1..y with multiples of p removed, in `ring` (modulus p^e = period).
template <class Ring>
typename Ring::Elem stripped_partial(const Ring& ring, std::uint64_t y, std::uint64_t p,
                                     std::optional<std::uint64_t> period) {
  using Elem = typename Ring::Elem;
  auto direct = [&](std::uint64_t upto) {
    Elem acc = ring.one();
    for (std::uint64_t j = 1; j <= upto; ++j) {
      if (j % p != 0) acc = ring.mul(acc, ring.from_u64(j));
    }
    return acc;
  };
  if (!period || y < *period) return direct(y);
  Elem full = direct(*period);
  return ring.mul(ring.pow(full, y / *period), direct(y % *period));
}

/// x! with every factor p removed, modulo the ring's p^e.
template <class Ring>
typename Ring::Elem stripped_factorial(const Ring& ring, std::uint64_t x, std::uint64_t p,
                                       std::optional<std::uint64_t> period) {
  auto acc = ring.one();
  while (x != 0) {
    acc = ring.mul(acc, stripped_partial(ring, x, p, period));
    x /= p;
  }
  return acc;
}

}  // namespace detail

/// C(n, m) = p^v * u with the unit u modulo p^e, via p-stripped factorials.
inline PadicValue binomial_padic(std::uint64_t n, std::uint64_t m, std::uint64_t p, int e) {
  if (m > n) return PadicValue::zero(big_u(p), e);
  const int v = kummer_valuation(n, m, p);
  const BigInt modulus = ipow(p, e);
  std::optional<std::uint64_t> period;
  if (fits_u64(modulus)) period = to_u64(modulus);
  return with_ring(modulus, [&](const auto& ring) {
    using Elem = typename std::decay_t<decltype(ring)>::Elem;
    Elem num = detail::stripped_factorial(ring, n, p, period);
    Elem den = ring.mul(detail::stripped_factorial(ring, m, p, period),
                        detail::stripped_factorial(ring, n - m, p, period));
    Elem inv{};
    ring.inverse(den, inv);
    return PadicValue(big_u(p), v, ResidueClass(ring.lift(ring.mul(num, inv)), modulus), e);
  });
}

inline ResidueClass binomial_mod_prime_power(std::uint64_t n, std::int64_t m, std::uint64_t p, int e) {
  const BigInt modulus = ipow(p, e);
  if (m < 0 || static_cast<std::uint64_t>(m) > n) return ResidueClass(BigInt(0), modulus);
  return binomial_padic(n, static_cast<std::uint64_t>(m), p, e).scaled_residue(0, e);
}

/// Below this upper index the composite path reduces the exact binomial.
inline constexpr std::uint64_t kExactBinomialThreshold = 128;

/// C(n, m) modulo a modulus with supplied factorization, by CRT over the
/// prime-power components.
inline ResidueClass binomial_mod_composite(std::uint64_t n, std::int64_t m, const BigInt& modulus,
                                           const Factorization& factors) {
  BigInt product = 1;
  for (const auto& [p, k] : factors) {
    if (k < 1 || !is_prime(p)) throw BadFactorization("bad factor " + to_string(p) + "^" + std::to_string(k));
    product *= ipow(p, k);
  }
  if (product != modulus) {
    throw BadFactorization("factors multiply to " + to_string(product) + ", not " + to_string(modulus));
  }
  if (modulus < 2) throw InvalidModulus("modulus must be >= 2");
  if (m < 0 || static_cast<std::uint64_t>(m) > n) return ResidueClass(BigInt(0), modulus);
  if (n < kExactBinomialThreshold) return ResidueClass(binomial_exact(n, m), modulus);
  std::vector<ResidueClass> parts;
  parts.reserve(factors.size());
  for (const auto& [p, k] : factors) {
    if (!fits_u64(p)) throw BadFactorization("prime factor too large: " + to_string(p));
    parts.push_back(binomial_mod_prime_power(n, m, to_u64(p), k));
  }
  if (parts.size() == 1) return parts.front();
  return crt_combine(std::span<const ResidueClass>(parts));
}

/// C(n, m) mod modulus. Factors the modulus and uses the prime-power path;
/// falls back to exact reduction if the modulus resists trial division.
inline ResidueClass binomial_mod(std::uint64_t n, std::int64_t m, const BigInt& modulus) {
  if (modulus < 2) throw InvalidModulus("modulus must be >= 2");
  if (m < 0 || static_cast<std::uint64_t>(m) > n) return ResidueClass(BigInt(0), modulus);
  Factorization f;
  if (try_factorize(modulus, f)) return binomial_mod_composite(n, m, modulus, f);
  return ResidueClass(binomial_exact(n, m), modulus);
}

/// C(2p-1, p-1) mod p^e as prod (p+k)/k, k = 1..p-1, with batched inverses.
inline ResidueClass central_shifted_binomial_mod(std::uint64_t p, int e) {
  const BigInt modulus = ipow(p, e);
  return with_ring(modulus, [&](const auto& ring) {
    using Elem = typename std::decay_t<decltype(ring)>::Elem;
    std::vector<Elem> ks;
    ks.reserve(p - 1);
    for (std::uint64_t k = 1; k < p; ++k) ks.push_back(ring.from_u64(k));
    batch_invert(ring, std::span<Elem>(ks));
    Elem acc = ring.one();
    for (std::uint64_t k = 1; k < p; ++k) {
      acc = ring.mul(acc, ring.mul(ring.add(ring.from_u64(p), ring.from_u64(k)), ks[k - 1]));
    }
    return ResidueClass(ring.lift(acc), modulus);
  });
}

/// McIntosh's modified binomial: prod over k <= n with (k, n) = 1 of (2n-k)/k, mod n^e.
inline ResidueClass modified_binomial(std::uint64_t n, int e) {
  if (n < 3) throw ParamsOutOfDomain("modified_binomial needs n >= 3");
  const BigInt modulus = ipow(n, e);
  return with_ring(modulus, [&](const auto& ring) {
    using Elem = typename std::decay_t<decltype(ring)>::Elem;
    std::vector<Elem> ks, tops;
    for (std::uint64_t k = 1; k <= n; ++k) {
      if (std::gcd(k, n) != 1) continue;
      ks.push_back(ring.from_u64(k));
      tops.push_back(ring.from_u64(2 * n - k));
    }
    batch_invert(ring, std::span<Elem>(ks));
    Elem acc = ring.one();
    for (std::size_t i = 0; i < ks.size(); ++i) acc = ring.mul(acc, ring.mul(tops[i], ks[i]));
    return ResidueClass(ring.lift(acc), modulus);
  });
}

/// The summation shape sum_{k=1, (k,c)=1}^{L-1} 1/(offset + k)^power,
/// evaluated modulo `modulus`.
class HarmonicSpec {
 public:
  HarmonicSpec(int power, BigInt offset, std::uint64_t length, std::optional<std::uint64_t> coprime_to,
               BigInt modulus)
      : power_(power),
        offset_(std::move(offset)),
        length_(length),
        coprime_to_(coprime_to),
        modulus_(std::move(modulus)) {
    if (power_ < 1) throw ParamsOutOfDomain("harmonic power must be >= 1");
    if (modulus_ < 2) throw InvalidModulus("modulus must be >= 2");
    validate();
  }

  /// sum_{k=1}^{p-1} 1/k^power mod modulus.
  static HarmonicSpec plain(int power, std::uint64_t upper_exclusive, const BigInt& modulus) {
    return HarmonicSpec(power, BigInt(0), upper_exclusive, std::nullopt, modulus);
  }

  int power() const { return power_; }
  const BigInt& offset() const { return offset_; }
  std::uint64_t length() const { return length_; }
  const std::optional<std::uint64_t>& coprime_to() const { return coprime_to_; }
  const BigInt& modulus() const { return modulus_; }

  bool includes(std::uint64_t k) const { return !coprime_to_ || std::gcd(k, *coprime_to_) == 1; }

  /// Visits (offset + k) reduced into the ring, for every included k.
  template <class Ring, class F>
  void for_each_denominator(const Ring& ring, F&& f) const {
    const auto base = ring.reduce(offset_);
    for (std::uint64_t k = 1; k < length_; ++k) {
      if (includes(k)) f(ring.add(base, ring.from_u64(k)));
    }
  }

 private:
  void validate() const {
    with_ring(modulus_, [&](const auto& ring) {
      auto acc = ring.one();
      std::size_t count = 0;
      for_each_denominator(ring, [&](const auto& d) {
        acc = ring.mul(acc, d);
        ++count;
      });
      if (count == 0 || gcd(ring.lift(acc), ring.modulus()) == 1) return 0;
      std::size_t index = 0;
      for_each_denominator(ring, [&](const auto& d) {
        BigInt g = gcd(ring.lift(d), ring.modulus());
        if (g != 1) throw NonInvertibleDenominator(to_string(g), index);
        ++index;
      });
      return 0;
    });
  }

  int power_;
  BigInt offset_;
  std::uint64_t length_;
  std::optional<std::uint64_t> coprime_to_;
  BigInt modulus_;
};

namespace detail {

/// Power sums of the inverted denominators for exponents 1..max_power.
template <class Ring>
std::vector<typename Ring::Elem> harmonic_power_sums_in(const Ring& ring, const HarmonicSpec& spec,
                                                        int max_power) {
  using Elem = typename Ring::Elem;
  constexpr std::size_t kChunk = 1 << 14;
  std::vector<Elem> sums(static_cast<std::size_t>(max_power) + 1, ring.zero());
  std::vector<Elem> chunk;
  chunk.reserve(kChunk);
  std::size_t seen = 0;
  auto flush = [&]() {
    BigInt g;
    if (auto bad = batch_invert(ring, std::span<Elem>(chunk), &g)) {
      throw NonInvertibleDenominator(to_string(g), seen + *bad);
    }
    for (const auto& inv : chunk) {
      Elem pw = inv;
      for (int j = 1; j <= max_power; ++j) {
        sums[j] = ring.add(sums[j], pw);
        if (j < max_power) pw = ring.mul(pw, inv);
      }
    }
    seen += chunk.size();
    chunk.clear();
  };
  spec.for_each_denominator(ring, [&](const Elem& d) {
    chunk.push_back(d);
    if (chunk.size() == kChunk) flush();
  });
  if (!chunk.empty()) flush();
  return sums;
}

}  // namespace detail

inline ResidueClass harmonic_sum_mod(const HarmonicSpec& spec) {
  return with_ring(spec.modulus(), [&](const auto& ring) {
    auto sums = detail::harmonic_power_sums_in(ring, spec, spec.power());
    return ResidueClass(ring.lift(sums[spec.power()]), spec.modulus());
  });
}

/// The sums for every exponent 1..max_power over the same range, sharing one
/// pass of batched inversions. `spec.power()` is ignored.
inline std::vector<ResidueClass> harmonic_power_sums(const HarmonicSpec& spec, int max_power) {
  return with_ring(spec.modulus(), [&](const auto& ring) {
    auto sums = detail::harmonic_power_sums_in(ring, spec, max_power);
    std::vector<ResidueClass> out;
    for (int j = 1; j <= max_power; ++j) out.emplace_back(ring.lift(sums[j]), spec.modulus());
    return out;
  });
}

/// sum_{k=1}^{(p-1)/2} 1/(k(p-k)) mod p.
inline ResidueClass alkan_sum_mod(std::uint64_t p) {
  if (p < 5 || !is_prime_u64(p)) throw ParamsOutOfDomain("alkan_sum_mod needs a prime p >= 5");
  NativeRing ring(p);
  std::vector<std::uint64_t> terms;
  for (std::uint64_t k = 1; k <= (p - 1) / 2; ++k) terms.push_back(ring.mul(k, p - k));
  batch_invert(ring, std::span<std::uint64_t>(terms));
  std::uint64_t acc = 0;
  for (auto t : terms) acc = ring.add(acc, t);
  return ResidueClass(big_u(acc), big_u(p));
}

/// sum_{1 <= i < j <= p-1} 1/(ij) mod p^e through the shuffle identity
/// 2 * sum_{i<j} = H1^2 - H2.
inline ResidueClass multiple_harmonic_mod(std::uint64_t p, int e) {
  const BigInt modulus = ipow(p, e);
  if (p == 2) return ResidueClass(BigInt(0), modulus);
  auto sums = harmonic_power_sums(HarmonicSpec::plain(1, p, modulus), 2);
  return (sums[0] * sums[0] - sums[1]) * make_residue(BigInt(1), BigInt(2), modulus);
}

/// Same sum by its definition, accumulated left to right: sum_j (1/j) * sum_{i<j} 1/i.
inline ResidueClass multiple_harmonic_prefix_mod(std::uint64_t p, int e) {
  const BigInt modulus = ipow(p, e);
  return with_ring(modulus, [&](const auto& ring) {
    using Elem = typename std::decay_t<decltype(ring)>::Elem;
    std::vector<Elem> inv;
    for (std::uint64_t k = 1; k < p; ++k) inv.push_back(ring.from_u64(k));
    batch_invert(ring, std::span<Elem>(inv));
    Elem prefix = ring.zero(), total = ring.zero();
    for (const auto& x : inv) {
      total = ring.add(total, ring.mul(x, prefix));
      prefix = ring.add(prefix, x);
    }
    return ResidueClass(ring.lift(total), modulus);
  });
}

/// A_n = sum_k C(n,k)^2 C(n+k,k)^2.
inline BigInt apery_number_binomial_form(std::uint64_t n) {
  BigInt total = 0, a = 1, b = 1;  // a = C(n,k), b = C(n+k,k)
  for (std::uint64_t k = 0; k <= n; ++k) {
    total += a * a * b * b;
    a *= big_u(n - k);
    mpz_divexact_ui(a.get_mpz_t(), a.get_mpz_t(), k + 1);
    b *= big_u(n + k + 1);
    mpz_divexact_ui(b.get_mpz_t(), b.get_mpz_t(), k + 1);
  }
  return total;
}

/// A_n = sum_k C(n+k,2k)^2 C(2k,k)^2.
inline BigInt apery_number_central_form(std::uint64_t n) {
  BigInt total = 0;
  for (std::uint64_t k = 0; k <= n; ++k) {
    BigInt t = binomial_exact(n + k, static_cast<std::int64_t>(2 * k)) * binomial_exact(2 * k, static_cast<std::int64_t>(k));
    total += t * t;
  }
  return total;
}

/// Apery number; both sum forms are evaluated and must agree.
inline BigInt apery_number(std::uint64_t n) {
  BigInt a = apery_number_binomial_form(n);
  if (a != apery_number_central_form(n)) throw Error("Apery sum forms disagree at n=" + std::to_string(n));
  return a;
}

/// u^eps_{a,b}(n) = sum_{k=0}^{n} (-1)^{eps k} C(n,k)^a C(2n,k)^b mod modulus.
inline ResidueClass binomial_sum_u(unsigned a, unsigned b, int eps, std::uint64_t n, const BigInt& modulus) {
  BigInt total = 0, c1 = 1, c2 = 1;
  for (std::uint64_t k = 0; k <= n; ++k) {
    BigInt term;
    BigInt t1, t2;
    mpz_pow_ui(t1.get_mpz_t(), c1.get_mpz_t(), a);
    mpz_pow_ui(t2.get_mpz_t(), c2.get_mpz_t(), b);
    term = t1 * t2;
    if (eps != 0 && (k & 1)) total -= term;
    else total += term;
    c1 *= big_u(n - k);
    mpz_divexact_ui(c1.get_mpz_t(), c1.get_mpz_t(), k + 1);
    c2 *= big_u(2 * n - k);
    mpz_divexact_ui(c2.get_mpz_t(), c2.get_mpz_t(), k + 1);
  }
  return ResidueClass(total, modulus);
}

enum class SignPattern {
  kPlus,         // +1 for every k
  kAlternating,  // (-1)^k
  kPan,          // (-1)^{(n-1)k}
};

/// sum_{k=0}^{p-1} sign_k * C(p-1,k)^n mod p^e.
inline ResidueClass power_binomial_sum(unsigned n, SignPattern sign, std::uint64_t p, int e) {
  const BigInt modulus = ipow(p, e);
  const bool alternate = sign == SignPattern::kAlternating || (sign == SignPattern::kPan && (n % 2 == 0));
  return with_ring(modulus, [&](const auto& ring) {
    using Elem = typename std::decay_t<decltype(ring)>::Elem;
    std::vector<Elem> inv;
    for (std::uint64_t k = 1; k < p; ++k) inv.push_back(ring.from_u64(k));
    batch_invert(ring, std::span<Elem>(inv));
    Elem c = ring.one(), total = ring.zero();
    for (std::uint64_t k = 0; k < p; ++k) {
      Elem term = ring.pow(c, static_cast<std::uint64_t>(n));
      total = (alternate && (k & 1)) ? ring.sub(total, term) : ring.add(total, term);
      if (k + 1 < p) c = ring.mul(ring.mul(c, ring.from_u64(p - 1 - k)), inv[k]);
    }
    return ResidueClass(ring.lift(total), modulus);
  });
}

/// sum_{k=0}^{p-1} 1/C(p-1,k) as an exact rational.
inline BigRational reciprocal_binomial_sum_exact(std::uint64_t p) {
  BigRational total = 0;
  BigInt c = 1;
  for (std::uint64_t k = 0; k < p; ++k) {
    total += BigRational(BigInt(1), c);
    c *= big_u(p - 1 - k);
    mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), k + 1);
  }
  total.canonicalize();
  return total;
}

inline ResidueClass reciprocal_binomial_sum(std::uint64_t p, int e) {
  return make_residue(reciprocal_binomial_sum_exact(p), ipow(p, e));
}

/// sum_{j=1}^{floor(2p/3)} C(p, j) mod p^2.
inline ResidueClass putnam_sum(std::uint64_t p) {
  if (p < 5 || !is_prime_u64(p)) throw ParamsOutOfDomain("putnam_sum needs a prime p >= 5");
  BigInt total = 0, c = 1;
  for (std::uint64_t j = 1; j <= 2 * p / 3; ++j) {
    c *= big_u(p - j + 1);
    mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), j);
    total += c;
  }
  return ResidueClass(total, ipow(p, 2));
}

}  // namespace wolst
