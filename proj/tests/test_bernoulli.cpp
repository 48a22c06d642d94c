#include <gtest/gtest.h>

#include <thread>

#include "wolst/bernoulli.hpp"

using namespace wolst;

namespace {

BigInt B(long v) { return BigInt(v); }

}  // namespace

TEST(BernoulliExact, KnownValues) {
  EXPECT_EQ(bernoulli_exact(0), rat(1));
  EXPECT_EQ(bernoulli_exact(1), rat(-1, 2));
  EXPECT_EQ(bernoulli_exact(2), rat(1, 6));
  EXPECT_EQ(bernoulli_exact(4), rat(-1, 30));
  EXPECT_EQ(bernoulli_exact(7), rat(0));
  EXPECT_EQ(bernoulli_exact(8), rat(-1, 30));
  EXPECT_EQ(bernoulli_exact(10), rat(5, 66));
  EXPECT_EQ(bernoulli_exact(14), rat(7, 6));
  EXPECT_EQ(bernoulli_exact(16), rat(-3617, 510));
}

TEST(BernoulliExact, CapEnforced) {
  BernoulliCache cache(20);
  EXPECT_EQ(cache.get(20), rat(-174611, 330));
  EXPECT_THROW(cache.get(22), CapExceeded);
  cache.raise_cap(30);
  EXPECT_EQ(cache.get(22), BigRational(BigInt(854513), BigInt(138)));
}

TEST(BernoulliExact, SignsAndStaudtClausenThrough400) {
  // the cache checks each denominator as it grows; walking to the cap exercises all of them
  for (std::uint64_t n = 2; n <= 400; n += 2) {
    BigRational b = bernoulli_exact(n);
    EXPECT_EQ(sgn(b) > 0, (n / 2) % 2 == 1) << n;
  }
  for (std::uint64_t n = 3; n <= 399; n += 2) EXPECT_EQ(bernoulli_exact(n), 0);
}

TEST(BernoulliExact, ConcurrentReaders) {
  BernoulliCache cache(120);
  std::vector<std::thread> threads;
  std::vector<BigRational> got(4);
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&, t] { got[t] = cache.get(100 + 2 * t); });
  }
  for (auto& th : threads) th.join();
  for (int t = 0; t < 4; ++t) EXPECT_EQ(got[t], bernoulli_exact(100 + 2 * t));
}

TEST(BernoulliMod, KnownValues) {
  // B_8 = -1/30, which is 4 mod 11
  auto b8 = bernoulli_mod(8, 11, 1);
  EXPECT_EQ(b8.valuation(), 0);
  EXPECT_EQ(b8.unit().value(), 4);
  auto b16 = bernoulli_mod(16, 11, 1);  // -3617/510 = 6 mod 11
  EXPECT_EQ(b16.unit().value(), 6);
  EXPECT_EQ(bernoulli_mod(10, 13, 1).unit().value(), 5);
  EXPECT_EQ(bernoulli_mod(292, 7, 5), padic_normalize(bernoulli_exact(292), B(7), 5));
}

TEST(BernoulliMod, Errors) {
  EXPECT_THROW(bernoulli_mod(9, 11, 1), OddIndex);
  EXPECT_THROW(bernoulli_mod(10, 11, 10), PrecisionUnreachable);
  EXPECT_THROW(bernoulli_mod(10, 11, 0), PrecisionUnreachable);
}

TEST(BernoulliMod, PoleHasValuationMinusOne) {
  auto b = bernoulli_mod(4, 5, 3);
  EXPECT_EQ(b.valuation(), -1);
  EXPECT_EQ(b, padic_normalize(rat(-1, 30), B(5), 3));
}

TEST(BernoulliMod, IrregularValuationRaisesPrecision) {
  // 37 | numerator of B_32
  auto b = bernoulli_mod(32, 37, 3);
  EXPECT_EQ(b.valuation(), 1);
  EXPECT_EQ(b, padic_normalize(bernoulli_exact(32), B(37), 3));
}

TEST(BernoulliMod, MatchesExactOracle) {
  for (std::uint64_t p : {5u, 7u, 11u, 13u, 17u, 19u}) {
    for (std::uint64_t n = 2; n <= 400; n += 2) {
      auto exact = bernoulli_exact(n);
      for (int e = 1; e <= 9; ++e) {
        ASSERT_EQ(bernoulli_mod(n, p, e), padic_normalize(exact, big_u(p), e)) << "n=" << n << " p=" << p << " e=" << e;
      }
    }
  }
}

TEST(BernoulliMod, PathsAgree) {
  auto native = bernoulli_mod(13308, 11, 7);
  ScopedBigPath big;
  EXPECT_EQ(native, bernoulli_mod(13308, 11, 7));
}

TEST(BernoulliMod, KummerCongruence) {
  for (std::uint64_t p : {5u, 7u, 11u, 13u, 17u, 19u}) {
    const BigInt bp = big_u(p);
    for (std::uint64_t n = 2; n <= 400; n += 2) {
      if (n % (p - 1) == 0 || n % p == 0) continue;
      auto bn = bernoulli_mod(n, p, 1);
      for (std::uint64_t m = n + (p - 1); m <= 400; m += p - 1) {
        if (m % p == 0) continue;
        auto bm = bernoulli_mod(m, p, 1);
        ResidueClass lhs = bn.scaled_residue(0, 1) * inverse(ResidueClass(big_u(n), bp));
        ResidueClass rhs = bm.scaled_residue(0, 1) * inverse(ResidueClass(big_u(m), bp));
        EXPECT_EQ(lhs, rhs) << n << " " << m << " " << p;
      }
    }
  }
}

TEST(BernoulliResidue, ScaledForms) {
  // p B_{p-1} = -1 mod p
  for (std::uint64_t p : {5u, 7u, 11u}) {
    EXPECT_EQ(bernoulli_residue(p - 1, p, 1, 1).value(), p - 1);
    EXPECT_EQ(bernoulli_residue(p - 1, p, 1, 4), scaled_rational(bernoulli_exact(p - 1), 1, big_u(p), 4));
  }
  EXPECT_EQ(bernoulli_residue(10, 13, 2, 5), scaled_rational(rat(5, 66), 2, B(13), 5));
  EXPECT_THROW(bernoulli_residue(4, 5, 0, 3), ValuationTooNegative);
  EXPECT_EQ(bernoulli_term(rat(1, 5), 10, 5, 1, 3), scaled_rational(rat(5, 66) / 5, 1, B(5), 3));
}

TEST(FastBpm3, KnownValues) {
  EXPECT_EQ(b_pminus3_fast(13).value(), 5);
  EXPECT_EQ(b_pminus3_fast(17).value(), 4);
  EXPECT_EQ(b_pminus3_fast(11).value(), 4);
  // against the oracle B_8 = -1/30 mod 11, which is also 4
  EXPECT_EQ(bernoulli_mod(8, 11, 1).unit().value(), 4);
}

TEST(FastBpm3, AgreesWithOracleUpTo499) {
  for (auto p : primes_up_to(499)) {
    if (p < 11) continue;
    EXPECT_EQ(b_pminus3_fast(p), bernoulli_residue(p - 3, p, 0, 1)) << p;
  }
}

TEST(WolstenholmeQuotient, KnownValues) {
  auto w5 = wolstenholme_quotient(5);
  EXPECT_EQ(w5.exact, 1);
  EXPECT_EQ(w5.mod_p.value(), 1);
  EXPECT_EQ(make_residue(rat(-2, 3) * rat(1, 6), B(5)).value(), 1);
  auto w7 = wolstenholme_quotient(7);
  EXPECT_EQ(w7.exact, 5);
  EXPECT_EQ(make_residue(rat(-2, 3) * rat(-1, 30), B(7)).value(), 5);
  EXPECT_EQ(wolstenholme_quotient_mod_p(16843).value(), 0);
  EXPECT_THROW(wolstenholme_quotient(9), NotPrime);
}

TEST(WolstenholmeQuotient, LinksToBernoulliThrough2000) {
  for (auto p : primes_up_to(2000)) {
    if (p < 5) continue;
    auto rhs = make_residue(rat(-2, 3), big_u(p)) * bernoulli_residue(p - 3, p, 0, 1);
    if (p < 300) {
      EXPECT_EQ(wolstenholme_quotient(p).mod_p, rhs) << p;
    }
    EXPECT_EQ(wolstenholme_quotient_mod_p(p), rhs) << p;
  }
}
