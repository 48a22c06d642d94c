#pragma once

// Arbitrary-precision integer and rational aliases plus the handful of
// helpers the rest of the library leans on.

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <string>

namespace wolst {

using BigInt = mpz_class;
using BigRational = mpq_class;

inline std::string to_string(const BigInt& x) { return x.get_str(); }

inline std::string to_string(const BigRational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

inline BigInt big(std::int64_t v) {
  BigInt r;
  if (v >= std::numeric_limits<long>::min() && v <= std::numeric_limits<long>::max()) {
    r = static_cast<long>(v);
  } else {
    r = std::to_string(v);
  }
  return r;
}

inline BigInt big_u(std::uint64_t v) {
  BigInt r;
  mpz_import(r.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return r;
}

inline BigInt ipow(const BigInt& base, unsigned long exp) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

inline BigInt ipow(std::uint64_t base, unsigned long exp) { return ipow(big_u(base), exp); }

inline BigRational rat(std::int64_t num, std::int64_t den = 1) {
  BigRational r(big(num), big(den));
  r.canonicalize();
  return r;
}

/// Floor-mod into [0, m).
inline BigInt mod_floor(const BigInt& a, const BigInt& m) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline bool fits_u64(const BigInt& x) { return sgn(x) >= 0 && mpz_sizeinbase(x.get_mpz_t(), 2) <= 64; }

inline std::uint64_t to_u64(const BigInt& x) {
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, 1, sizeof(out), 0, 0, x.get_mpz_t());
  return out;
}

inline std::int64_t to_i64(const BigInt& x) {
  std::uint64_t mag = to_u64(abs(x));
  return sgn(x) < 0 ? -static_cast<std::int64_t>(mag) : static_cast<std::int64_t>(mag);
}

/// p-adic valuation of a nonzero integer.
inline int valuation(const BigInt& x, const BigInt& p) {
  if (x == 0) return std::numeric_limits<int>::max();
  BigInt tmp;
  return static_cast<int>(mpz_remove(tmp.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()));
}

inline int valuation(const BigRational& x, const BigInt& p) {
  if (x == 0) return std::numeric_limits<int>::max();
  return valuation(x.get_num(), p) - valuation(x.get_den(), p);
}

inline int valuation_u64(std::uint64_t x, std::uint64_t p) {
  int v = 0;
  while (x != 0 && x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

}  // namespace wolst
