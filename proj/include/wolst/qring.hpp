#pragma once

// Polynomials in q over Q and the quotient rings Q[q]/Phi_p(q)^r, r <= 3,
// with Gaussian binomials and q-harmonic sums.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wolst/bigint.hpp"
#include "wolst/errors.hpp"

namespace wolst {

class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(std::vector<BigRational> coeffs) : c_(std::move(coeffs)) { trim(); }

  static QPoly constant(const BigRational& a) { return QPoly(std::vector<BigRational>{a}); }

  static QPoly monomial(std::size_t k, const BigRational& a = BigRational(1)) {
    std::vector<BigRational> c(k + 1, BigRational(0));
    c[k] = a;
    return QPoly(std::move(c));
  }

  /// [k]_q = 1 + q + ... + q^(k-1)
  static QPoly q_int(std::size_t k) { return QPoly(std::vector<BigRational>(k, BigRational(1))); }

  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<BigRational>& coeffs() const { return c_; }
  BigRational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : BigRational(0); }

  friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }

  friend QPoly operator+(const QPoly& a, const QPoly& b) {
    std::vector<BigRational> c(std::max(a.c_.size(), b.c_.size()), BigRational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return QPoly(std::move(c));
  }
  QPoly operator-() const {
    QPoly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  friend QPoly operator-(const QPoly& a, const QPoly& b) { return a + (-b); }

  friend QPoly operator*(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return QPoly();
    std::vector<BigRational> c(a.c_.size() + b.c_.size() - 1, BigRational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return QPoly(std::move(c));
  }
  friend QPoly operator*(const BigRational& s, const QPoly& a) { return QPoly::constant(s) * a; }

  QPoly pow(unsigned e) const {
    QPoly r = constant(BigRational(1)), b = *this;
    while (e != 0) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

  /// q -> q^k
  QPoly substitute_power(std::size_t k) const {
    if (is_zero()) return {};
    std::vector<BigRational> c((c_.size() - 1) * k + 1, BigRational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) c[i * k] = c_[i];
    return QPoly(std::move(c));
  }

  BigRational eval(const BigRational& x) const {
    BigRational acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  bool has_integer_coeffs() const {
    for (const auto& x : c_) {
      if (x.get_den() != 1) return false;
    }
    return true;
  }

  /// Quotient and remainder; `d` must be nonzero.
  static std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& d) {
    if (d.is_zero()) throw Error("polynomial division by zero");
    if (a.degree() < d.degree()) return {QPoly(), a};
    std::vector<BigRational> r = a.c_;
    std::vector<BigRational> quo(r.size() - d.c_.size() + 1, BigRational(0));
    const BigRational& lead = d.c_.back();
    const bool monic = lead == 1;
    for (std::size_t i = r.size(); i-- >= d.c_.size();) {
      if (r[i] == 0) continue;
      BigRational f = monic ? r[i] : BigRational(r[i] / lead);
      const std::size_t shift = i + 1 - d.c_.size();
      quo[shift] = f;
      for (std::size_t j = 0; j < d.c_.size(); ++j) r[shift + j] -= f * d.c_[j];
    }
    r.resize(d.c_.size() - 1);
    return {QPoly(std::move(quo)), QPoly(std::move(r))};
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      BigRational a = c_[i];
      const bool neg = sgn(a) < 0;
      if (neg) a = -a;
      if (out.empty()) {
        if (neg) out += "-";
      } else {
        out += neg ? " - " : " + ";
      }
      const bool unit = a == 1;
      if (i == 0 || !unit) out += to_string(a);
      if (i > 0) {
        out += "q";
        if (i > 1) out += "^" + std::to_string(i);
      }
    }
    return out;
  }

 private:
  void trim() {
    for (auto& x : c_) x.canonicalize();
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<BigRational> c_;
};

/// Phi_p(q)^r for prime p.
inline QPoly cyclotomic_power(std::uint64_t p, int r) { return QPoly::q_int(p).pow(static_cast<unsigned>(r)); }

class QRingElement {
 public:
  QRingElement(const QPoly& x, std::uint64_t p, int r) : p_(p), r_(r) {
    if (r < 1 || r > 3) throw ParamsOutOfDomain("cyclotomic power must be 1..3");
    if (p < 2) throw ParamsOutOfDomain("p must be prime");
    rep_ = QPoly::divmod(x, cyclotomic_power(p, r)).second;
  }

  const QPoly& rep() const { return rep_; }
  std::uint64_t prime() const { return p_; }
  int power() const { return r_; }
  std::string str() const { return rep_.str(); }

  bool is_unit() const { return !QPoly::divmod(rep_, QPoly::q_int(p_)).second.is_zero(); }

  friend bool operator==(const QRingElement& a, const QRingElement& b) {
    return a.p_ == b.p_ && a.r_ == b.r_ && a.rep_ == b.rep_;
  }
  friend QRingElement operator+(const QRingElement& a, const QRingElement& b) {
    a.require_same(b);
    return QRingElement(a.rep_ + b.rep_, a.p_, a.r_);
  }
  friend QRingElement operator-(const QRingElement& a, const QRingElement& b) {
    a.require_same(b);
    return QRingElement(a.rep_ - b.rep_, a.p_, a.r_);
  }
  friend QRingElement operator*(const QRingElement& a, const QRingElement& b) {
    a.require_same(b);
    return QRingElement(a.rep_ * b.rep_, a.p_, a.r_);
  }

  /// Reduction to a smaller cyclotomic power.
  QRingElement reduce_to(int r) const {
    if (r > r_) throw ParamsOutOfDomain("cannot lift to a larger cyclotomic power");
    return QRingElement(rep_, p_, r);
  }

 private:
  void require_same(const QRingElement& o) const {
    if (p_ != o.p_ || r_ != o.r_) throw ModulusMismatch("q-ring elements over different moduli");
  }

  QPoly rep_;
  std::uint64_t p_;
  int r_;
};

inline QRingElement reduce_mod_cyclotomic_power(const QPoly& x, std::uint64_t p, int r) { return {x, p, r}; }

/// Extended Euclid in Q[q] against Phi_p^r.
inline QRingElement q_ring_inverse(const QRingElement& x) {
  if (!x.is_unit()) throw NonUnit(x.str() + " is divisible by Phi_" + std::to_string(x.prime()));
  QPoly old_r = cyclotomic_power(x.prime(), x.power()), r = x.rep();
  QPoly old_s, s = QPoly::constant(BigRational(1));  // coefficients of x
  while (!r.is_zero()) {
    auto [quo, rem] = QPoly::divmod(old_r, r);
    old_r = std::move(r);
    r = std::move(rem);
    QPoly t = old_s - quo * s;
    old_s = std::move(s);
    s = std::move(t);
  }
  // old_r is a nonzero constant since gcd(x, Phi_p^r) = 1
  if (old_r.degree() != 0) throw NonUnit(x.str());
  BigRational scale = BigRational(1) / old_r.coeff(0);
  return QRingElement(scale * old_s, x.prime(), x.power());
}

/// Gaussian binomial via q-Pascal: C(n,m)_q = C(n-1,m-1)_q + q^m C(n-1,m)_q.
inline QPoly q_binomial(std::uint64_t n, std::uint64_t m) {
  if (m > n) return {};
  const std::uint64_t k = std::min(m, n - m);
  std::vector<QPoly> row(k + 1);
  row[0] = QPoly::constant(BigRational(1));
  for (std::uint64_t i = 1; i <= n; ++i) {
    for (std::uint64_t j = std::min(i, k); j >= 1; --j) {
      row[j] = row[j - 1] + QPoly::monomial(j) * row[j];
    }
  }
  if (!row[k].has_integer_coeffs()) throw Error("q-binomial with non-integer coefficient");
  return row[k];
}

/// [n]_q! as a polynomial.
inline QPoly q_factorial(std::uint64_t n) {
  QPoly acc = QPoly::constant(BigRational(1));
  for (std::uint64_t k = 2; k <= n; ++k) acc = acc * QPoly::q_int(k);
  return acc;
}

enum class QHarmonicVariant { kPlain, kTilde };

/// sum_{k=1}^{n} num_k / [k]_q^power in Q[q]/Phi_p^r, num_k = 1 (plain) or q^k (tilde).
inline QRingElement q_harmonic(std::uint64_t n, QHarmonicVariant variant, std::uint64_t p, int r,
                               unsigned power = 1) {
  QRingElement acc(QPoly(), p, r);
  for (std::uint64_t k = 1; k <= n; ++k) {
    if (k % p == 0) throw NonUnit("[" + std::to_string(k) + "]_q is divisible by Phi_" + std::to_string(p));
    QRingElement inv = q_ring_inverse(QRingElement(QPoly::q_int(k), p, r));
    QRingElement term = inv;
    for (unsigned j = 1; j < power; ++j) term = term * inv;
    if (variant == QHarmonicVariant::kTilde) term = term * QRingElement(QPoly::monomial(k), p, r);
    acc = acc + term;
  }
  return acc;
}

struct QCheckOutcome {
  bool pass = false;
  std::string lhs;
  std::string rhs;
  std::string modulus;
  std::string difference;
};

inline const std::vector<std::string>& q_check_ids() {
  static const std::vector<std::string> ids{"Q.andrews",       "Q.andrews.tilde", "Q.shi-pan",
                                            "Q.shi-pan.squares", "Q.straub",        "Q.clark",
                                            "Q.andrews.binom", "Q.wolstenholme"};
  return ids;
}

namespace detail {

inline QCheckOutcome q_compare(const QRingElement& lhs, const QRingElement& rhs) {
  QCheckOutcome out;
  out.pass = lhs == rhs;
  out.lhs = lhs.str();
  out.rhs = rhs.str();
  out.modulus = "Phi_" + std::to_string(lhs.prime()) + "(q)^" + std::to_string(lhs.power());
  out.difference = (lhs - rhs).str();
  return out;
}

inline QPoly one_minus_q() { return QPoly(std::vector<BigRational>{BigRational(1), BigRational(-1)}); }

}  // namespace detail

/// Evaluates one of the q-congruence checks at prime p (n, m only used by the
/// binomial ones). Both sides are reduced independently and compared.
inline QCheckOutcome q_congruence_check(const std::string& id, std::uint64_t p, std::uint64_t n = 0,
                                        std::uint64_t m = 0) {
  const BigRational half_pm1(big_u(p - 1), BigInt(2));
  const BigRational pp = BigRational(big_u(p * p));
  const QPoly omq = detail::one_minus_q();
  if (id == "Q.andrews") {
    auto lhs = q_harmonic(p - 1, QHarmonicVariant::kPlain, p, 1);
    return detail::q_compare(lhs, QRingElement(half_pm1 * omq, p, 1));
  }
  if (id == "Q.andrews.tilde") {
    auto lhs = q_harmonic(p - 1, QHarmonicVariant::kTilde, p, 1);
    return detail::q_compare(lhs, QRingElement(-half_pm1 * omq, p, 1));
  }
  if (id == "Q.shi-pan") {
    auto lhs = q_harmonic(p - 1, QHarmonicVariant::kPlain, p, 2);
    QPoly rhs = half_pm1 * omq + BigRational((pp - 1) / 24) * (omq * omq * QPoly::q_int(p));
    return detail::q_compare(lhs, QRingElement(rhs, p, 2));
  }
  if (id == "Q.shi-pan.squares") {
    auto a = q_harmonic(p - 1, QHarmonicVariant::kPlain, p, 1, 2);
    auto b = q_harmonic(p - 1, QHarmonicVariant::kTilde, p, 1, 2);
    const BigRational ca = -BigRational(big_u(p - 1) * (big(static_cast<std::int64_t>(p)) - 5)) / 12;
    const BigRational cb = -(pp - 1) / 12;
    auto ra = QRingElement(ca * (omq * omq), p, 1);
    auto rb = QRingElement(cb * (omq * omq), p, 1);
    auto first = detail::q_compare(a, ra), second = detail::q_compare(b, rb);
    QCheckOutcome out;
    out.pass = first.pass && second.pass;
    out.lhs = first.lhs + " ; " + second.lhs;
    out.rhs = first.rhs + " ; " + second.rhs;
    out.modulus = first.modulus;
    out.difference = first.difference + " ; " + second.difference;
    return out;
  }
  if (id == "Q.straub" || id == "Q.clark" || id == "Q.andrews.binom") {
    if (m > n) throw ParamsOutOfDomain("need m <= n");
    const int r = id == "Q.straub" ? 3 : 2;
    QRingElement lhs(q_binomial(n * p, m * p), p, r);
    QPoly rhs;
    if (id == "Q.andrews.binom") {
      const std::uint64_t shift = (n - m) * m * (p * (p - 1) / 2);
      rhs = QPoly::monomial(shift) * q_binomial(n, m).substitute_power(p);
    } else {
      rhs = q_binomial(n, m).substitute_power(p * p);
      if (id == "Q.straub") {
        BigInt cnm1 = 0;  // C(n, m+1)
        if (m + 1 <= n) {
          cnm1 = 1;
          for (std::uint64_t i = 1; i <= m + 1; ++i) {
            cnm1 *= big_u(n - (m + 1) + i);
            mpz_divexact_ui(cnm1.get_mpz_t(), cnm1.get_mpz_t(), i);
          }
        }
        const BigInt bm = big_u((m + 1) * m / 2);
        QPoly qp1 = QPoly::monomial(p) - QPoly::constant(BigRational(1));
        rhs = rhs - BigRational(BigRational(cnm1 * bm) * (pp - 1) / 12) * (qp1 * qp1);
      }
    }
    return detail::q_compare(lhs, QRingElement(rhs, p, r));
  }
  if (id == "Q.wolstenholme") {
    QRingElement lhs(q_binomial(2 * p, p), p, 3);
    QPoly qp1 = QPoly::monomial(p) - QPoly::constant(BigRational(1));
    QPoly rhs = QPoly::q_int(2).substitute_power(p * p) - BigRational((pp - 1) / 12) * (qp1 * qp1);
    return detail::q_compare(lhs, QRingElement(rhs, p, 3));
  }
  throw UnknownCheckId(id);
}

}  // namespace wolst
