#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "wolst/bigint.hpp"

namespace wolst {

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e != 0) {
    if (e & 1) r = mulmod_u64(r, b, m);
    b = mulmod_u64(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace detail

/// Deterministic Miller-Rabin for 64-bit integers.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = detail::powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = detail::mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline bool is_prime(const BigInt& n) {
  if (fits_u64(n)) return is_prime_u64(to_u64(n));
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

/// All primes <= limit.
inline std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

/// Primes in [lo, hi] (inclusive) by a segmented sieve over base primes <= sqrt(hi).
inline std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  if (hi < 2 || hi < lo) return out;
  if (lo < 2) lo = 2;
  std::uint64_t root = 1;
  while ((root + 1) * (root + 1) <= hi) ++root;
  const auto base = primes_up_to(root);
  std::vector<bool> composite(hi - lo + 1, false);
  for (std::uint64_t q : base) {
    std::uint64_t start = std::max(q * q, (lo + q - 1) / q * q);
    for (std::uint64_t j = start; j <= hi; j += q) composite[j - lo] = true;
  }
  for (std::uint64_t i = lo; i <= hi; ++i) {
    if (!composite[i - lo]) out.push_back(i);
  }
  return out;
}

using Factorization = std::vector<std::pair<BigInt, int>>;

/// Trial-division factorization; intended for the moderate moduli used here.
inline Factorization factorize_u64(std::uint64_t n) {
  Factorization out;
  for (std::uint64_t q = 2; q * q <= n; q += (q == 2 ? 1 : 2)) {
    if (n % q != 0) continue;
    int e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    out.emplace_back(big_u(q), e);
  }
  if (n > 1) out.emplace_back(big_u(n), 1);
  return out;
}

/// Factor `n` when every prime factor but possibly the last is below `bound`.
/// Returns false when an unfactored composite cofactor remains.
inline bool try_factorize(const BigInt& n, Factorization& out, std::uint64_t bound = 1000000) {
  out.clear();
  if (fits_u64(n) && to_u64(n) < bound * bound) {
    out = factorize_u64(to_u64(n));
    return true;
  }
  BigInt rest = n;
  for (std::uint64_t q = 2; q < bound; q += (q == 2 ? 1 : 2)) {
    if (rest == 1) break;
    if (mpz_divisible_ui_p(rest.get_mpz_t(), q) == 0) continue;
    int e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), q) != 0) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), q);
      ++e;
    }
    out.emplace_back(big_u(q), e);
  }
  if (rest == 1) return true;
  if (is_prime(rest)) {
    out.emplace_back(rest, 1);
    return true;
  }
  return false;
}

/// Whether n > 1 is a power of a single prime; sets the prime when it is.
inline bool is_prime_power(std::uint64_t n, std::uint64_t* prime = nullptr) {
  if (n < 2) return false;
  auto f = factorize_u64(n);
  if (f.size() != 1) return false;
  if (prime != nullptr) *prime = to_u64(f.front().first);
  return true;
}

}  // namespace wolst
