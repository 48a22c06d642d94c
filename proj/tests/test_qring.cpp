#include <gtest/gtest.h>

#include <random>

#include "wolst/combinatorics.hpp"
#include "wolst/qring.hpp"

using namespace wolst;

namespace {

QPoly P(std::vector<long> c) {
  std::vector<BigRational> v;
  for (long x : c) v.emplace_back(x);
  return QPoly(std::move(v));
}

}  // namespace

TEST(QBinomial, KnownValues) {
  EXPECT_EQ(q_binomial(2, 1), P({1, 1}));
  EXPECT_EQ(q_binomial(2, 1).str(), "1 + q");
  EXPECT_EQ(q_binomial(4, 2), P({1, 1, 2, 1, 1}));
  EXPECT_EQ(q_binomial(9, 0), P({1}));
  EXPECT_TRUE(q_binomial(3, 5).is_zero());
}

TEST(QBinomial, DegeneratesToBinomialAtOne) {
  for (std::uint64_t n = 0; n <= 30; ++n) {
    for (std::uint64_t m = 0; m <= n; ++m) {
      EXPECT_EQ(q_binomial(n, m).eval(BigRational(1)), BigRational(binomial_exact(n, static_cast<std::int64_t>(m))));
    }
  }
}

TEST(QBinomial, FactorialQuotient) {
  for (std::uint64_t n = 0; n <= 20; ++n) {
    for (std::uint64_t m = 0; m <= n; ++m) {
      auto [quo, rem] = QPoly::divmod(q_factorial(n), q_factorial(m) * q_factorial(n - m));
      EXPECT_TRUE(rem.is_zero());
      EXPECT_EQ(quo, q_binomial(n, m));
    }
  }
}

TEST(QReduce, KnownValues) {
  EXPECT_EQ(reduce_mod_cyclotomic_power(QPoly::monomial(3), 3, 1).rep(), P({1}));
  EXPECT_EQ(reduce_mod_cyclotomic_power(P({5}), 7, 2).rep(), P({5}));
  for (std::uint64_t p : {3u, 5u, 7u}) {
    EXPECT_TRUE(reduce_mod_cyclotomic_power(QPoly::q_int(p), p, 1).rep().is_zero());
    EXPECT_TRUE(reduce_mod_cyclotomic_power(cyclotomic_power(p, 3), p, 3).rep().is_zero());
  }
}

TEST(QReduce, RingLaws) {
  std::mt19937_64 rng(3);
  auto random_poly = [&](int deg) {
    std::vector<BigRational> c;
    for (int i = 0; i <= deg; ++i) c.emplace_back(static_cast<long>(rng() % 21) - 10, static_cast<long>(rng() % 4) + 1);
    return QPoly(std::move(c));
  };
  for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u}) {
    for (int r = 1; r <= 3; ++r) {
      for (int t = 0; t < 4; ++t) {
        QPoly a = random_poly(static_cast<int>(rng() % 40)), b = random_poly(static_cast<int>(rng() % 40));
        QRingElement ra(a, p, r), rb(b, p, r);
        EXPECT_EQ(QRingElement(a * b, p, r), ra * rb);
        EXPECT_EQ(QRingElement(a + b, p, r), ra + rb);
        EXPECT_LT(ra.rep().degree(), static_cast<long>(r * (p - 1)));
      }
    }
  }
}

TEST(QInverse, KnownValues) {
  EXPECT_EQ(q_ring_inverse(QRingElement(P({1}), 5, 2)).rep(), P({1}));
  EXPECT_EQ(q_ring_inverse(QRingElement(QPoly::q_int(2), 3, 1)).rep(), P({0, -1}));
  EXPECT_THROW(q_ring_inverse(QRingElement(QPoly::q_int(5) * P({1, 1}), 5, 2)), NonUnit);
  EXPECT_THROW(q_ring_inverse(QRingElement(QPoly::q_int(7), 7, 1)), NonUnit);
}

TEST(QInverse, ProductIsOne) {
  for (std::uint64_t p : {3u, 5u, 7u, 13u}) {
    for (int r = 1; r <= 3; ++r) {
      for (std::uint64_t k = 1; k < 2 * p; ++k) {
        if (k % p == 0) continue;
        QRingElement x(QPoly::q_int(k), p, r);
        EXPECT_EQ((x * q_ring_inverse(x)).rep(), P({1}));
      }
    }
  }
}

TEST(QHarmonic, KnownValues) {
  EXPECT_EQ(q_harmonic(1, QHarmonicVariant::kPlain, 3, 1).rep(), P({1}));
  EXPECT_EQ(q_harmonic(2, QHarmonicVariant::kPlain, 3, 1).rep(), P({1, -1}));
  EXPECT_EQ(q_harmonic(2, QHarmonicVariant::kTilde, 3, 1).rep(), P({-1, 1}));
  EXPECT_THROW(q_harmonic(5, QHarmonicVariant::kPlain, 5, 1), NonUnit);
}

TEST(QChecks, KnownValues) {
  auto a = q_congruence_check("Q.andrews", 3);
  EXPECT_TRUE(a.pass);
  EXPECT_EQ(a.lhs, "1 - q");
  auto t = q_congruence_check("Q.andrews.tilde", 3);
  EXPECT_TRUE(t.pass);
  EXPECT_EQ(t.lhs, "-1 + q");
  EXPECT_TRUE(q_congruence_check("Q.wolstenholme", 5).pass);
  EXPECT_THROW(q_congruence_check("Q.nope", 5), UnknownCheckId);
}

TEST(QChecks, AllEightAtFloorsThrough13) {
  for (std::uint64_t p : {3u, 5u, 7u, 11u, 13u}) {
    EXPECT_TRUE(q_congruence_check("Q.andrews", p).pass) << p;
    EXPECT_TRUE(q_congruence_check("Q.andrews.tilde", p).pass) << p;
    if (p < 5) continue;
    EXPECT_TRUE(q_congruence_check("Q.shi-pan", p).pass) << p;
    EXPECT_TRUE(q_congruence_check("Q.shi-pan.squares", p).pass) << p;
    EXPECT_TRUE(q_congruence_check("Q.wolstenholme", p).pass) << p;
    for (std::uint64_t n = 0; n <= 3; ++n) {
      for (std::uint64_t m = 0; m <= n; ++m) {
        EXPECT_TRUE(q_congruence_check("Q.straub", p, n, m).pass) << p << " " << n << " " << m;
        EXPECT_TRUE(q_congruence_check("Q.clark", p, n, m).pass) << p << " " << n << " " << m;
        EXPECT_TRUE(q_congruence_check("Q.andrews.binom", p, n, m).pass) << p << " " << n << " " << m;
      }
    }
  }
}

TEST(QChecks, StraubImpliesClark) {
  // the difference of the two right-hand sides is a multiple of (q^p - 1)^2,
  // which vanishes modulo Phi_p^2; so Straub reduced to r = 2 is Clark.
  for (std::uint64_t p : {5u, 7u, 11u}) {
    for (std::uint64_t n = 0; n <= 3; ++n) {
      for (std::uint64_t m = 0; m <= n; ++m) {
        QRingElement straub_rhs(
            q_binomial(n, m).substitute_power(p * p) -
                BigRational(binomial_exact(n, static_cast<std::int64_t>(m + 1)) * big_u((m + 1) * m / 2) *
                            (BigRational(big_u(p * p)) - 1) / 12) *
                    (QPoly::monomial(p) - QPoly::constant(1)).pow(2),
            p, 3);
        QRingElement clark_rhs(q_binomial(n, m).substitute_power(p * p), p, 2);
        EXPECT_EQ(straub_rhs.reduce_to(2), clark_rhs);
        EXPECT_EQ(QRingElement(q_binomial(n * p, m * p), p, 3).reduce_to(2), QRingElement(q_binomial(n * p, m * p), p, 2));
      }
    }
  }
}

TEST(QChecks, AndrewsPairProbedAtThree) {
  for (std::uint64_t n = 0; n <= 3; ++n) {
    for (std::uint64_t m = 0; m <= n; ++m) {
      EXPECT_TRUE(q_congruence_check("Q.clark", 3, n, m).pass);
      EXPECT_TRUE(q_congruence_check("Q.andrews.binom", 3, n, m).pass);
    }
  }
}
