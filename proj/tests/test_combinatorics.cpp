#include <gtest/gtest.h>

#include <random>

#include "wolst/combinatorics.hpp"

using namespace wolst;

namespace {

BigInt B(long v) { return BigInt(v); }

BigRational exact_harmonic(int power, long offset, long length, long coprime_to) {
  BigRational s = 0;
  for (long k = 1; k < length; ++k) {
    if (coprime_to != 0 && std::gcd(k, coprime_to) != 1) continue;
    BigInt d = ipow(B(offset + k), power);
    s += BigRational(BigInt(1), d);
  }
  s.canonicalize();
  return s;
}

}  // namespace

TEST(BinomialExact, KnownValues) {
  EXPECT_EQ(binomial_exact(17, 0), 1);
  EXPECT_EQ(binomial_exact(0, 0), 1);
  EXPECT_EQ(binomial_exact(9, 4), 126);
  EXPECT_EQ(binomial_exact(5, 7), 0);
  EXPECT_EQ(binomial_exact(5, -1), 0);
  EXPECT_EQ(binomial_exact(100, 50), BigInt("100891344545564193334812497256"));
}

TEST(BinomialMod, KnownValues) {
  EXPECT_EQ(binomial_mod(9, 4, B(125)).value(), 1);
  EXPECT_EQ(binomial_mod(5, 2, B(9)).value(), 1);
  EXPECT_EQ(binomial_mod(13, 6, B(343)).value(), 1);
}

TEST(CentralShifted, KnownValues) {
  EXPECT_EQ(central_shifted_binomial_mod(5, 3).value(), 1);
  EXPECT_EQ(central_shifted_binomial_mod(7, 4).value(), 1716);
  EXPECT_NE(central_shifted_binomial_mod(7, 4).value(), 1);
  EXPECT_EQ(central_shifted_binomial_mod(16843, 4).value(), 1);
  EXPECT_NE(central_shifted_binomial_mod(16843, 5).value(), 1);
}

TEST(Lucas, KnownValues) {
  EXPECT_EQ(lucas_binomial_mod_p(10, 5, 3).value(), 0);
  EXPECT_EQ(lucas_binomial_mod_p(123456, 0, 7).value(), 1);
  EXPECT_EQ(lucas_binomial_mod_p(10, 5, 5).value(), 2);
}

TEST(Kummer, KnownValues) {
  EXPECT_EQ(kummer_valuation(10, 5, 3), 2);
  EXPECT_EQ(kummer_valuation(99, 0, 5), 0);
  EXPECT_EQ(kummer_valuation(9, 4, 5), 0);
}

TEST(BinomialComposite, KnownValues) {
  Factorization f{{B(29), 1}, {B(937), 1}};
  EXPECT_EQ(binomial_mod_composite(2 * 27173 - 1, 27172, B(27173), f).value(), 1);
  EXPECT_EQ(binomial_mod_composite(17, 8, B(9), {{B(3), 2}}).value(), 1);
  EXPECT_EQ(binomial_mod_composite(1000, 0, B(36), {{B(2), 2}, {B(3), 2}}).value(), 1);
  EXPECT_THROW(binomial_mod_composite(17, 8, B(12), {{B(2), 1}, {B(3), 1}}), BadFactorization);
  EXPECT_THROW(binomial_mod_composite(17, 8, B(8), {{B(4), 1}, {B(2), 1}}), BadFactorization);
}

TEST(BinomialComposite, StrippedPathMatchesOracle) {
  // n above the exact threshold forces the stripped-factorial path
  for (std::uint64_t n : {200u, 531u, 1000u, 2187u}) {
    for (std::int64_t m : {1L, 37L, 81L, static_cast<long>(n / 2), static_cast<long>(n) - 3}) {
      for (long mod : {8L, 81L, 3125L, 27173L, 1000000L, 6561L * 49}) {
        Factorization f = factorize_u64(static_cast<std::uint64_t>(mod));
        EXPECT_EQ(binomial_mod_composite(n, m, B(mod), f), ResidueClass(binomial_exact(n, m), B(mod)))
            << n << " " << m << " " << mod;
      }
    }
  }
}

TEST(ModifiedBinomial, KnownValues) {
  for (std::uint64_t p : {5u, 7u, 11u, 13u}) {
    for (int e = 1; e <= 3; ++e) EXPECT_EQ(modified_binomial(p, e), central_shifted_binomial_mod(p, e));
  }
  EXPECT_EQ(modified_binomial(8, 3).value(), 257);
  // n = 9: eps = 3, so 1 + 81*3 = 244 mod 729
  EXPECT_EQ(modified_binomial(9, 3).value(), 244);
}

TEST(Harmonic, KnownValues) {
  EXPECT_EQ(harmonic_sum_mod(HarmonicSpec::plain(1, 5, B(25))).value(), 0);
  EXPECT_EQ(harmonic_sum_mod(HarmonicSpec::plain(2, 5, B(5))).value(), 0);
  EXPECT_EQ(harmonic_sum_mod(HarmonicSpec(1, B(0), 25, 25, B(625))).value(), 0);
}

TEST(Harmonic, ConstructionRejectsNonUnits) {
  try {
    HarmonicSpec(1, B(0), 6, std::nullopt, B(25));
    FAIL();
  } catch (const NonInvertibleDenominator& e) {
    EXPECT_EQ(e.index(), 4u);  // k = 5
    EXPECT_EQ(e.gcd(), "5");
  }
  EXPECT_THROW(HarmonicSpec(0, B(0), 3, std::nullopt, B(7)), ParamsOutOfDomain);
}

TEST(Harmonic, MatchesExactOracle) {
  std::mt19937_64 rng(11);
  int checked = 0;
  while (checked < 300) {
    int power = static_cast<int>(rng() % 4) + 1;
    long length = static_cast<long>(rng() % 200) + 1;
    long offset = static_cast<long>(rng() % 3) * static_cast<long>(rng() % 50);
    long coprime = (rng() % 2) ? 0 : static_cast<long>(rng() % 30) + 1;
    long modulus = static_cast<long>(rng() % 100000) + 2;
    bool units = true;
    for (long k = 1; k < length; ++k) {
      if ((coprime == 0 || std::gcd(k, coprime) == 1) && std::gcd(offset + k, modulus) != 1) units = false;
    }
    std::optional<std::uint64_t> c;
    if (coprime != 0) c = static_cast<std::uint64_t>(coprime);
    if (!units) {
      EXPECT_THROW(HarmonicSpec(power, B(offset), static_cast<std::uint64_t>(length), c, B(modulus)),
                   NonInvertibleDenominator);
      continue;
    }
    BigRational exact = exact_harmonic(power, offset, length, coprime);
    HarmonicSpec spec(power, B(offset), static_cast<std::uint64_t>(length), c, B(modulus));
    EXPECT_EQ(harmonic_sum_mod(spec), make_residue(exact, B(modulus)));
    ++checked;
  }
}

TEST(Harmonic, PowerSumsShareOnePass) {
  auto spec = HarmonicSpec::plain(1, 101, ipow(BigInt(101), 6));
  auto sums = harmonic_power_sums(spec, 5);
  for (int j = 1; j <= 5; ++j) {
    EXPECT_EQ(sums[j - 1], harmonic_sum_mod(HarmonicSpec::plain(j, 101, ipow(BigInt(101), 6))));
  }
}

TEST(Alkan, KnownValues) {
  for (std::uint64_t p : {5u, 7u, 13u, 101u, 16843u}) EXPECT_EQ(alkan_sum_mod(p).value(), 0) << p;
  EXPECT_THROW(alkan_sum_mod(9), ParamsOutOfDomain);
}

TEST(MultipleHarmonic, KnownValues) {
  EXPECT_EQ(multiple_harmonic_mod(5, 1).value(), 0);
  EXPECT_EQ(make_residue(rat(35, 24), B(5)).value(), 0);
  EXPECT_EQ(multiple_harmonic_mod(3, 1).value(), 2);
}

TEST(MultipleHarmonic, ShuffleMatchesQuadraticOracle) {
  for (auto p : primes_up_to(100)) {
    if (p < 3) continue;
    BigRational direct = 0;
    for (std::uint64_t i = 1; i < p; ++i) {
      for (std::uint64_t j = i + 1; j < p; ++j) direct += BigRational(BigInt(1), big_u(i * j));
    }
    direct.canonicalize();
    for (int e : {1, 4, 7}) {
      auto expected = make_residue(direct, ipow(p, e));
      EXPECT_EQ(multiple_harmonic_mod(p, e), expected) << p;
      EXPECT_EQ(multiple_harmonic_prefix_mod(p, e), expected) << p;
    }
  }
}

TEST(MultipleHarmonic, ShuffleIdentityExact) {
  for (long n = 1; n <= 50; ++n) {
    BigRational h1 = exact_harmonic(1, 0, n + 1, 0), h2 = exact_harmonic(2, 0, n + 1, 0), pairs = 0;
    for (long i = 1; i <= n; ++i) {
      for (long j = i + 1; j <= n; ++j) pairs += BigRational(BigInt(1), B(i * j));
    }
    EXPECT_EQ(BigRational(2) * pairs, h1 * h1 - h2);
  }
}

TEST(Apery, KnownValues) {
  EXPECT_EQ(apery_number(0), 1);
  EXPECT_EQ(apery_number(1), 5);
  EXPECT_EQ(apery_number(2), 73);
  EXPECT_EQ(apery_number(5) - apery_number(1), 819000);
  EXPECT_EQ(mod_floor(apery_number(5) - apery_number(1), B(125)), 0);
}

TEST(Apery, FormsAgree) {
  for (std::uint64_t n = 0; n <= 60; ++n) EXPECT_EQ(apery_number_binomial_form(n), apery_number_central_form(n));
}

TEST(BinomialSumU, KnownValues) {
  EXPECT_EQ(binomial_sum_u(1, 1, 1, 1, B(1000)), ResidueClass(-1, 1000));
  EXPECT_EQ(binomial_sum_u(1, 1, 1, 5, B(125)), ResidueClass(-1, 125));
  // the excluded triple (0,0,1) does not satisfy the pattern at p = 5
  EXPECT_NE(binomial_sum_u(0, 1, 0, 5, B(125)), ResidueClass(1 + 2, 125));
}

TEST(PowerBinomialSum, KnownValues) {
  for (std::uint64_t p : {5u, 7u, 13u}) EXPECT_EQ(power_binomial_sum(1, SignPattern::kAlternating, p, 4).value(), 0);
  EXPECT_EQ(power_binomial_sum(2, SignPattern::kAlternating, 5, 3).value(), 6);
  EXPECT_EQ(ResidueClass(256, 125).value(), 6);
  EXPECT_EQ(power_binomial_sum(1, SignPattern::kPlus, 5, 3).value(), 16);
}

TEST(ReciprocalBinomial, KnownValues) {
  EXPECT_EQ(reciprocal_binomial_sum_exact(3), rat(5, 2));
  EXPECT_EQ(reciprocal_binomial_sum(3, 4).value(), 43);
  // reciprocal-sum shape at p = 5: 2^(1-p) mod p^3
  EXPECT_EQ(reciprocal_binomial_sum(5, 3), make_residue(1, 16, 125));
}

TEST(Putnam, KnownValues) {
  EXPECT_EQ(putnam_sum(5).value(), 0);
  EXPECT_EQ(putnam_sum(7).value(), 0);
  EXPECT_EQ(putnam_sum(11).value(), 0);
}

TEST(CombinatoricsProperties, BinomialModMatchesExact) {
  std::mt19937_64 rng(5);
  for (std::uint64_t n = 0; n <= 2000; n += (n < 200 ? 1 : 37)) {
    for (int t = 0; t < 3; ++t) {
      std::int64_t m = static_cast<std::int64_t>(rng() % (n + 1));
      long mod = static_cast<long>(rng() % 1000000) + 2;
      EXPECT_EQ(binomial_mod(n, m, B(mod)), ResidueClass(binomial_exact(n, m), B(mod))) << n << " " << m << " " << mod;
    }
  }
}

TEST(CombinatoricsProperties, LucasAndKummerMatchOracle) {
  for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u}) {
    for (std::uint64_t n = 0; n <= 500; n += (n < 100 ? 1 : 7)) {
      for (std::uint64_t m = 0; m <= n; m += 1 + n / 40) {
        BigInt exact = binomial_exact(n, static_cast<std::int64_t>(m));
        EXPECT_EQ(lucas_binomial_mod_p(n, static_cast<std::int64_t>(m), p), ResidueClass(exact, big_u(p)));
        EXPECT_EQ(kummer_valuation(n, m, p), valuation(exact, big_u(p)));
      }
    }
  }
}

TEST(CombinatoricsProperties, LucasProductForm) {
  for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u}) {
    for (std::uint64_t n = 0; n <= 12; ++n) {
      for (std::uint64_t m = 0; m <= n; ++m) {
        EXPECT_EQ(binomial_mod(n * p, static_cast<std::int64_t>(m * p), big_u(p)),
                  ResidueClass(binomial_exact(n, static_cast<std::int64_t>(m)), big_u(p)));
      }
    }
  }
}

TEST(CombinatoricsProperties, CentralShiftedConsistentAcrossPrecision) {
  for (auto p : primes_up_to(499)) {
    if (p < 5) continue;
    auto r9 = central_shifted_binomial_mod(p, 9);
    EXPECT_EQ(r9.reduce_to(ipow(p, 3)).value(), 1) << p;
    EXPECT_EQ(r9.reduce_to(ipow(p, 4)), central_shifted_binomial_mod(p, 4));
  }
}

TEST(CombinatoricsProperties, CentralShiftedPathsAgree) {
  for (std::uint64_t p : {5u, 11u, 181u}) {
    auto native = central_shifted_binomial_mod(p, 8);
    ScopedBigPath big;
    EXPECT_EQ(native, central_shifted_binomial_mod(p, 8));
    EXPECT_EQ(native, ResidueClass(binomial_exact(2 * p - 1, static_cast<std::int64_t>(p - 1)), ipow(p, 8)));
  }
}

TEST(BinomialPadic, UnitAndValuation) {
  // C(50, 25) = 2^? * ... ; check against exact for several primes
  for (std::uint64_t p : {2u, 3u, 5u, 7u}) {
    BigInt exact = binomial_exact(50, 25);
    auto v = binomial_padic(50, 25, p, 5);
    EXPECT_EQ(v.valuation(), valuation(exact, big_u(p)));
    BigInt unit = exact / ipow(p, v.valuation());
    EXPECT_EQ(v.unit(), ResidueClass(unit, ipow(p, 5)));
  }
}
