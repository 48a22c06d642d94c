#pragma once

// Exact residue arithmetic over arbitrary moduli.
//
// Two ring backends share one interface: NativeRing for moduli below 2^63
// (64-bit limbs with 128-bit products) and BigRing for everything else.
// with_ring() picks one; both must produce bit-identical residues.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wolst/bigint.hpp"
#include "wolst/errors.hpp"

namespace wolst {

namespace detail {

inline thread_local bool force_big_path = false;
inline thread_local std::uint64_t egcd_calls = 0;

}  // namespace detail

/// Forces every with_ring() dispatch on this thread onto BigRing while alive.
class ScopedBigPath {
 public:
  ScopedBigPath() : previous_(detail::force_big_path) { detail::force_big_path = true; }
  ~ScopedBigPath() { detail::force_big_path = previous_; }
  ScopedBigPath(const ScopedBigPath&) = delete;
  ScopedBigPath& operator=(const ScopedBigPath&) = delete;

 private:
  bool previous_;
};

/// Number of extended-Euclid invocations made on this thread so far.
inline std::uint64_t extended_euclid_calls() { return detail::egcd_calls; }

inline constexpr std::uint64_t kNativeModulusLimit = std::uint64_t{1} << 63;

struct NativeRing {
  using Elem = std::uint64_t;
  static constexpr bool kNative = true;

  std::uint64_t m;

  explicit NativeRing(std::uint64_t modulus) : m(modulus) {}

  BigInt modulus() const { return big_u(m); }
  Elem zero() const { return 0; }
  Elem one() const { return 1 % m; }
  bool is_zero(Elem a) const { return a == 0; }

  Elem reduce(const BigInt& x) const {
    if (sgn(x) >= 0 && fits_u64(x)) return to_u64(x) % m;
    return to_u64(mod_floor(x, modulus()));
  }
  Elem from_i64(std::int64_t x) const {
    if (x >= 0) return static_cast<std::uint64_t>(x) % m;
    std::uint64_t r = (0 - static_cast<std::uint64_t>(x)) % m;
    return r == 0 ? 0 : m - r;
  }
  Elem from_u64(std::uint64_t x) const { return x % m; }
  BigInt lift(Elem a) const { return big_u(a); }

  Elem add(Elem a, Elem b) const {
    std::uint64_t s = a + b;
    return s >= m ? s - m : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + (m - b); }
  Elem neg(Elem a) const { return a == 0 ? 0 : m - a; }
  Elem mul(Elem a, Elem b) const {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
  }
  Elem pow(Elem b, const BigInt& e) const {
    Elem r = one();
    const std::size_t bits = e == 0 ? 0 : mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
      r = mul(r, r);
      if (mpz_tstbit(e.get_mpz_t(), i)) r = mul(r, b);
    }
    return r;
  }
  Elem pow(Elem b, std::uint64_t e) const {
    Elem r = one();
    while (e != 0) {
      if (e & 1) r = mul(r, b);
      b = mul(b, b);
      e >>= 1;
    }
    return r;
  }

  /// Sets `out` to a^-1 and returns 1, or returns gcd(a, m) > 1.
  BigInt inverse(Elem a, Elem& out) const {
    ++detail::egcd_calls;
    __int128 old_r = a, r = m, old_s = 1, s = 0;
    while (r != 0) {
      __int128 q = old_r / r;
      __int128 t = old_r - q * r;
      old_r = r;
      r = t;
      t = old_s - q * s;
      old_s = s;
      s = t;
    }
    if (old_r != 1) return big_u(static_cast<std::uint64_t>(old_r));
    __int128 v = old_s % static_cast<__int128>(m);
    if (v < 0) v += m;
    out = static_cast<std::uint64_t>(v);
    return BigInt(1);
  }
};

struct BigRing {
  using Elem = BigInt;
  static constexpr bool kNative = false;

  BigInt m;

  explicit BigRing(BigInt modulus) : m(std::move(modulus)) {}

  const BigInt& modulus() const { return m; }
  Elem zero() const { return BigInt(0); }
  Elem one() const { return mod_floor(BigInt(1), m); }
  bool is_zero(const Elem& a) const { return a == 0; }

  Elem reduce(const BigInt& x) const { return mod_floor(x, m); }
  Elem from_i64(std::int64_t x) const { return mod_floor(big(x), m); }
  Elem from_u64(std::uint64_t x) const { return mod_floor(big_u(x), m); }
  BigInt lift(const Elem& a) const { return a; }

  Elem add(const Elem& a, const Elem& b) const {
    BigInt s = a + b;
    if (s >= m) s -= m;
    return s;
  }
  Elem sub(const Elem& a, const Elem& b) const {
    BigInt s = a - b;
    if (sgn(s) < 0) s += m;
    return s;
  }
  Elem neg(const Elem& a) const { return a == 0 ? BigInt(0) : BigInt(m - a); }
  Elem mul(const Elem& a, const Elem& b) const {
    BigInt r = a * b;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
    return r;
  }
  Elem pow(const Elem& b, const BigInt& e) const {
    BigInt r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
  }
  Elem pow(const Elem& b, std::uint64_t e) const { return pow(b, big_u(e)); }

  BigInt inverse(const Elem& a, Elem& out) const {
    ++detail::egcd_calls;
    BigInt g, s;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), nullptr, a.get_mpz_t(), m.get_mpz_t());
    if (g != 1) return g;
    out = mod_floor(s, m);
    return BigInt(1);
  }
};

/// Invokes `f` with the ring backend suited to modulus `m` (m >= 2).
template <class F>
decltype(auto) with_ring(const BigInt& m, F&& f) {
  if (!detail::force_big_path && fits_u64(m) && to_u64(m) < kNativeModulusLimit) {
    return f(NativeRing(to_u64(m)));
  }
  return f(BigRing(m));
}

/// In-place Montgomery batch inversion: one extended-Euclid call for the
/// whole span. Returns the first index whose element is not a unit.
template <class Ring>
std::optional<std::size_t> batch_invert(const Ring& ring, std::span<typename Ring::Elem> xs,
                                        BigInt* bad_gcd = nullptr) {
  using Elem = typename Ring::Elem;
  if (xs.empty()) return std::nullopt;
  std::vector<Elem> prefix(xs.size());
  Elem acc = ring.one();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    acc = ring.mul(acc, xs[i]);
    prefix[i] = acc;
  }
  Elem inv_acc{};
  BigInt g = ring.inverse(acc, inv_acc);
  if (g != 1) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      BigInt gi = gcd(ring.lift(xs[i]), ring.modulus());
      if (gi != 1) {
        if (bad_gcd != nullptr) *bad_gcd = gi;
        return i;
      }
    }
    if (bad_gcd != nullptr) *bad_gcd = g;
    return 0;
  }
  for (std::size_t i = xs.size(); i-- > 0;) {
    Elem before = i == 0 ? ring.one() : prefix[i - 1];
    Elem inv_i = ring.mul(inv_acc, before);
    inv_acc = ring.mul(inv_acc, xs[i]);
    xs[i] = inv_i;
  }
  return std::nullopt;
}

/// An integer residue modulo m >= 2, always held as its canonical
/// representative in [0, m).
class ResidueClass {
 public:
  ResidueClass(const BigInt& value, const BigInt& modulus) : modulus_(modulus) {
    if (modulus_ < 2) throw InvalidModulus("modulus must be >= 2, got " + to_string(modulus_));
    value_ = mod_floor(value, modulus_);
  }
  ResidueClass(std::int64_t value, std::int64_t modulus) : ResidueClass(big(value), big(modulus)) {}

  const BigInt& value() const { return value_; }
  const BigInt& modulus() const { return modulus_; }
  std::string str() const { return to_string(value_); }

  friend bool operator==(const ResidueClass& a, const ResidueClass& b) {
    return a.modulus_ == b.modulus_ && a.value_ == b.value_;
  }

  friend ResidueClass operator+(const ResidueClass& a, const ResidueClass& b) {
    a.require_same(b);
    return ResidueClass(a.value_ + b.value_, a.modulus_);
  }
  friend ResidueClass operator-(const ResidueClass& a, const ResidueClass& b) {
    a.require_same(b);
    return ResidueClass(a.value_ - b.value_, a.modulus_);
  }
  friend ResidueClass operator*(const ResidueClass& a, const ResidueClass& b) {
    a.require_same(b);
    return with_ring(a.modulus_, [&](const auto& ring) {
      return ResidueClass(ring.lift(ring.mul(ring.reduce(a.value_), ring.reduce(b.value_))),
                          a.modulus_);
    });
  }
  ResidueClass operator-() const { return ResidueClass(-value_, modulus_); }

  /// Reduction to a divisor of the modulus.
  ResidueClass reduce_to(const BigInt& divisor) const {
    if (divisor < 2 || !mpz_divisible_p(modulus_.get_mpz_t(), divisor.get_mpz_t())) {
      throw InvalidModulus(to_string(divisor) + " does not divide " + to_string(modulus_));
    }
    return ResidueClass(value_, divisor);
  }

 private:
  void require_same(const ResidueClass& other) const {
    if (modulus_ != other.modulus_) {
      throw ModulusMismatch("moduli " + to_string(modulus_) + " and " + to_string(other.modulus_));
    }
  }

  BigInt value_;
  BigInt modulus_;
};

/// numer * denom^-1 mod modulus.
inline ResidueClass make_residue(const BigInt& numer, const BigInt& denom, const BigInt& modulus) {
  if (modulus < 2) throw InvalidModulus("modulus must be >= 2, got " + to_string(modulus));
  if (denom == 1) return ResidueClass(numer, modulus);
  BigInt g = gcd(denom, modulus);
  if (g != 1) throw NonInvertibleDenominator(to_string(g));
  return with_ring(modulus, [&](const auto& ring) {
    typename std::decay_t<decltype(ring)>::Elem inv{};
    ring.inverse(ring.reduce(denom), inv);
    return ResidueClass(ring.lift(ring.mul(ring.reduce(numer), inv)), modulus);
  });
}

inline ResidueClass make_residue(const BigRational& x, const BigInt& modulus) {
  return make_residue(x.get_num(), x.get_den(), modulus);
}

inline ResidueClass make_residue(std::int64_t numer, std::int64_t denom, std::int64_t modulus) {
  return make_residue(big(numer), big(denom), big(modulus));
}

inline ResidueClass inverse(const ResidueClass& x) {
  return with_ring(x.modulus(), [&](const auto& ring) {
    typename std::decay_t<decltype(ring)>::Elem inv{};
    BigInt g = ring.inverse(ring.reduce(x.value()), inv);
    if (g != 1) throw NonInvertible(to_string(g));
    return ResidueClass(ring.lift(inv), x.modulus());
  });
}

/// Elementwise inverses using a single extended-Euclid call.
inline std::vector<ResidueClass> batch_inverse(std::span<const ResidueClass> xs) {
  std::vector<ResidueClass> out;
  if (xs.empty()) return out;
  const BigInt& m = xs.front().modulus();
  for (const auto& x : xs) {
    if (x.modulus() != m) throw ModulusMismatch("batch_inverse needs a shared modulus");
  }
  return with_ring(m, [&](const auto& ring) {
    using Elem = typename std::decay_t<decltype(ring)>::Elem;
    std::vector<Elem> elems;
    elems.reserve(xs.size());
    for (const auto& x : xs) elems.push_back(ring.reduce(x.value()));
    BigInt g;
    if (auto bad = batch_invert(ring, std::span<Elem>(elems), &g)) {
      throw NonInvertible(to_string(g), *bad);
    }
    std::vector<ResidueClass> res;
    res.reserve(elems.size());
    for (const auto& e : elems) res.emplace_back(ring.lift(e), m);
    return res;
  });
}

/// Square-and-multiply; exponent 0 gives 1 even for base 0.
inline ResidueClass pow_mod(const ResidueClass& base, const BigInt& exponent) {
  if (sgn(exponent) < 0) throw Error("pow_mod: negative exponent");
  return with_ring(base.modulus(), [&](const auto& ring) {
    return ResidueClass(ring.lift(ring.pow(ring.reduce(base.value()), exponent)), base.modulus());
  });
}

inline ResidueClass crt_combine(std::span<const ResidueClass> parts) {
  if (parts.empty()) throw Error("crt_combine: no parts");
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      BigInt g = gcd(parts[i].modulus(), parts[j].modulus());
      if (g != 1) throw NonCoprimeModuli(i, j, to_string(g));
    }
  }
  BigInt x = parts.front().value();
  BigInt m = parts.front().modulus();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const auto& part = parts[i];
    ResidueClass step =
        make_residue(part.value() - x, BigInt(1), part.modulus()) * inverse(ResidueClass(m, part.modulus()));
    x += m * step.value();
    m *= part.modulus();
  }
  return ResidueClass(x, m);
}

inline ResidueClass crt_combine(std::initializer_list<ResidueClass> parts) {
  std::vector<ResidueClass> v(parts);
  return crt_combine(std::span<const ResidueClass>(v));
}

/// A p-adic number known to finite relative precision: p^valuation * unit,
/// with the unit known modulo p^precision. The canonical zero carries no unit.
class PadicValue {
 public:
  static PadicValue zero(const BigInt& p, int precision) {
    PadicValue z(p, 0, ResidueClass(BigInt(0), ipow(p, precision)), precision);
    z.zero_ = true;
    return z;
  }

  PadicValue(BigInt prime, int valuation, ResidueClass unit, int precision)
      : prime_(std::move(prime)), valuation_(valuation), unit_(std::move(unit)), precision_(precision) {
    if (precision_ < 1) throw InsufficientPrecision("precision must be >= 1");
  }

  const BigInt& prime() const { return prime_; }
  bool is_zero() const { return zero_; }
  int valuation() const { return valuation_; }
  const ResidueClass& unit() const { return unit_; }
  int precision() const { return precision_; }

  PadicValue with_precision(int e) const {
    if (e > precision_) {
      throw InsufficientPrecision("cannot raise precision " + std::to_string(precision_) + " to " +
                                  std::to_string(e));
    }
    if (zero_) return zero(prime_, e);
    return PadicValue(prime_, valuation_, unit_.reduce_to(ipow(prime_, e)), e);
  }

  /// Residue of value * p^shift modulo p^target.
  ResidueClass scaled_residue(int shift, int target) const {
    const BigInt modulus = ipow(prime_, target);
    if (zero_) return ResidueClass(BigInt(0), modulus);
    const int v = valuation_ + shift;
    if (v >= target) return ResidueClass(BigInt(0), modulus);
    if (v < 0) {
      throw ValuationTooNegative("value * p^" + std::to_string(shift) + " is not p-integral");
    }
    if (precision_ < target - v) {
      throw InsufficientPrecision("need relative precision " + std::to_string(target - v) + ", have " +
                                  std::to_string(precision_));
    }
    return ResidueClass(unit_.value() * ipow(prime_, v), modulus);
  }

  friend PadicValue operator*(const PadicValue& a, const PadicValue& b) {
    const int e = std::min(a.precision_, b.precision_);
    if (a.zero_ || b.zero_) return zero(a.prime_, e);
    const BigInt mod = ipow(a.prime_, e);
    return PadicValue(a.prime_, a.valuation_ + b.valuation_,
                      a.unit_.reduce_to(mod) * b.unit_.reduce_to(mod), e);
  }

  friend bool operator==(const PadicValue& a, const PadicValue& b) {
    if (a.prime_ != b.prime_ || a.precision_ != b.precision_ || a.zero_ != b.zero_) return false;
    if (a.zero_) return true;
    return a.valuation_ == b.valuation_ && a.unit_ == b.unit_;
  }

  std::string str() const {
    if (zero_) return "O(" + to_string(prime_) + "^" + std::to_string(precision_) + ")";
    return to_string(prime_) + "^" + std::to_string(valuation_) + "*" + unit_.str() + " (mod " +
           to_string(prime_) + "^" + std::to_string(precision_) + ")";
  }

 private:
  BigInt prime_;
  int valuation_ = 0;
  ResidueClass unit_;
  int precision_ = 1;
  bool zero_ = false;
};

/// Splits x = p^v * u and returns u modulo p^e. Valuations below -1 are
/// rejected: the only poles in scope are von Staudt-Clausen's.
inline PadicValue padic_normalize(const BigRational& x, const BigInt& p, int e) {
  if (x == 0) return PadicValue::zero(p, e);
  const int v = valuation(x, p);
  if (v < -1) throw ValuationTooNegative("valuation " + std::to_string(v) + " below -1");
  BigInt num = x.get_num();
  BigInt den = x.get_den();
  if (v > 0) num /= ipow(p, v);
  if (v < 0) den /= ipow(p, -v);
  return PadicValue(p, v, make_residue(num, den, ipow(p, e)), e);
}

/// Residue of the rational c * p^shift modulo p^target; c may carry powers
/// of p in its denominator as long as the product is p-integral.
inline ResidueClass scaled_rational(const BigRational& c, int shift, const BigInt& p, int target) {
  const BigInt modulus = ipow(p, target);
  if (c == 0) return ResidueClass(BigInt(0), modulus);
  BigRational x = c;
  if (shift >= 0) {
    x *= BigRational(ipow(p, shift));
  } else {
    x /= BigRational(ipow(p, -shift));
  }
  x.canonicalize();
  const int v = valuation(x, p);
  if (v < 0) throw ValuationTooNegative("c * p^shift is not p-integral");
  if (v >= target) return ResidueClass(BigInt(0), modulus);
  return make_residue(x, modulus);
}

}  // namespace wolst
