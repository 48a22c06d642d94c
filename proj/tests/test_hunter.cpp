#include <gtest/gtest.h>

#include <filesystem>

#include "wolst/hunter.hpp"

using namespace wolst;

namespace {

std::vector<std::uint64_t> primes_of(const HuntResult& r) {
  std::vector<std::uint64_t> out;
  for (const auto& h : r.hits) out.push_back(h.p);
  return out;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("wolst_" + name + "_" + std::to_string(::getpid()))).string();
}

}  // namespace

TEST(Harmonic, PairedSumMatchesExact) {
  for (auto p : primes_in_range(5, 400)) {
    BigRational h = 0;
    for (std::uint64_t k = 1; k < p; ++k) h += BigRational(BigInt(1), big_u(k));
    h.canonicalize();
    EXPECT_EQ(harmonic_p3(p), make_residue(h, ipow(p, 3)).value()) << p;
    EXPECT_EQ(central_binomial_p4(p), binomial_mod_prime_power(2 * p - 1, static_cast<std::int64_t>(p - 1), p, 4).value());
  }
}

TEST(WolstenholmeScan, KnownValues) {
  EXPECT_TRUE(wolstenholme_scan(5, 100).hits.empty());
  auto r = wolstenholme_scan(5, 100000);
  ASSERT_EQ(primes_of(r), std::vector<std::uint64_t>{16843});
  EXPECT_EQ(r.hits[0].harmonic_mod_p3, 0);
  EXPECT_EQ(r.hits[0].binomial_mod_p4, 1);
  EXPECT_TRUE(r.complete);

  HuntOptions direct;
  direct.method = HuntMethod::kDirect;
  EXPECT_EQ(primes_of(wolstenholme_scan(16843, 16843)), std::vector<std::uint64_t>{16843});
  EXPECT_EQ(primes_of(wolstenholme_scan(16843, 16843, direct)), std::vector<std::uint64_t>{16843});
}

TEST(WolstenholmeScan, Errors) {
  EXPECT_THROW(wolstenholme_scan(3, 100), InvalidRange);
  EXPECT_THROW(wolstenholme_scan(100, 50), InvalidRange);
  HuntOptions fast;
  fast.method = HuntMethod::kFast;
  EXPECT_THROW(wolstenholme_scan(5, 100, fast), FastMethodNotValidated);
}

TEST(WolstenholmeScan, MethodsAgreeThrough10k) {
  HuntOptions direct;
  direct.method = HuntMethod::kDirect;
  direct.segment = 1000;
  EXPECT_EQ(wolstenholme_scan(5, 10000).hits, wolstenholme_scan(5, 10000, direct).hits);
  // per-prime witnesses: C = 1 + 2p H mod p^4, so W_p = 2 H / p^2 mod p
  for (auto p : primes_in_range(5, 2000)) {
    const BigInt bp = big_u(p);
    BigInt w_direct = mod_floor((central_binomial_p4(p) - 1) / ipow(p, 3), bp);
    BigInt w_harm = mod_floor(2 * (harmonic_p3(p) / ipow(p, 2)), bp);
    EXPECT_EQ(w_direct, w_harm) << p;
    EXPECT_EQ(ResidueClass(w_direct, bp), make_residue(rat(-2, 3), bp) * bernoulli_residue(p - 3, p, 0, 1)) << p;
  }
}

TEST(WolstenholmeScan, FastMethodBehindGate) {
  auto gate = validate_fast_method();
  HuntOptions fast;
  fast.method = HuntMethod::kFast;
  fast.allow_experimental_fast = true;
  if (!gate.passed) {
    EXPECT_THROW(wolstenholme_scan(5, 100, fast), FastMethodNotValidated);
    return;
  }
  EXPECT_EQ(primes_of(wolstenholme_scan(5, 20000, fast)), std::vector<std::uint64_t>{16843});
}

TEST(WolstenholmeScan, SegmentsAndThreadsDoNotChangeOutput) {
  auto base = wolstenholme_scan(5, 20000);
  for (unsigned jobs : {1u, 3u}) {
    for (std::uint64_t seg : {97u, 4096u, 65536u}) {
      HuntOptions o;
      o.jobs = jobs;
      o.segment = seg;
      std::vector<std::uint64_t> seen;
      o.on_segment = [&](const SegmentStatus& s) { seen.push_back(s.done_hi); };
      EXPECT_EQ(wolstenholme_scan(5, 20000, o).hits, base.hits);
      EXPECT_TRUE(std::is_sorted(seen.begin(), seen.end()));
      EXPECT_EQ(seen.back(), 20000u);
    }
  }
}

TEST(Checkpoint, RoundTripAndDigest) {
  HuntCheckpoint c;
  c.lo = 5;
  c.hi = 100;
  c.done_hi = 60;
  c.hits.push_back(make_hit(16843));
  c.elapsed_seconds = 1.5;
  auto text = c.serialize();
  auto back = HuntCheckpoint::parse(text);
  EXPECT_EQ(back.serialize(), text);
  EXPECT_EQ(back.hits, c.hits);

  auto tampered = text;
  tampered.replace(tampered.find("done_hi 60"), 10, "done_hi 61");
  EXPECT_THROW(HuntCheckpoint::parse(tampered), CheckpointCorrupt);
  EXPECT_THROW(HuntCheckpoint::parse("garbage\n"), CheckpointCorrupt);
}

TEST(Checkpoint, KillAndResumeReproducesHits) {
  const std::string path = temp_path("ckpt");
  HuntOptions full;
  full.segment = 2048;
  auto reference = wolstenholme_scan(5, 40000, full);

  for (std::size_t kill_after : {1u, 4u, 8u}) {
    HuntOptions first = full;
    first.checkpoint_path = path;
    first.max_segments = kill_after;
    first.jobs = 2;
    auto partial = wolstenholme_scan(5, 40000, first);
    EXPECT_FALSE(partial.complete);
    auto ck = HuntCheckpoint::load(path);
    EXPECT_EQ(ck.done_hi, 4 + kill_after * 2048);

    HuntOptions second = full;
    second.resume = ck;
    second.checkpoint_path = path;
    auto finished = wolstenholme_scan(5, 40000, second);
    EXPECT_TRUE(finished.complete);
    EXPECT_EQ(finished.hits, reference.hits);
    EXPECT_EQ(HuntCheckpoint::load(path).done_hi, 40000u);
  }
  std::filesystem::remove(path);
}

TEST(Checkpoint, ResumeMismatch) {
  HuntOptions o;
  o.segment = 1000;
  o.max_segments = 1;
  auto part = wolstenholme_scan(5, 10000, o);
  HuntOptions other;
  other.method = HuntMethod::kDirect;
  other.resume = part.checkpoint;
  EXPECT_THROW(wolstenholme_scan(5, 10000, other), ResumeMismatch);
  HuntOptions shifted;
  shifted.resume = part.checkpoint;
  EXPECT_THROW(wolstenholme_scan(7, 10000, shifted), ResumeMismatch);
}

TEST(W5, NothingBelow20000) {
  HuntOptions o;
  o.w5 = true;
  auto r = wolstenholme_scan(5, 20000, o);
  EXPECT_TRUE(r.hits.empty());
  EXPECT_EQ(r.checkpoint.kind, "w5");
  EXPECT_NE(central_shifted_binomial_mod(16843, 5).value(), 1);
}

TEST(IrregularPair, KnownValues) {
  EXPECT_TRUE(irregular_pair_check(16843));
  EXPECT_FALSE(irregular_pair_check(13));
  EXPECT_FALSE(irregular_pair_check(11));
  EXPECT_THROW(irregular_pair_check(15), NotPrime);
}

TEST(IrregularPair, AgreesWithScan) {
  auto hits = primes_of(wolstenholme_scan(7, 3000));
  for (auto p : primes_in_range(7, 3000)) {
    EXPECT_EQ(irregular_pair_check(p), std::find(hits.begin(), hits.end(), p) != hits.end()) << p;
  }
}

TEST(Converse, KnownValues) {
  auto odd = converse_scan(2, 30000, 1, ConverseClass::kOddComposite);
  ASSERT_EQ(odd.hits.size(), 1u);
  EXPECT_EQ(odd.hits[0].n, 27173u);
  EXPECT_EQ(odd.hits[0].kind, NumberKind::kComposite);
  EXPECT_TRUE(odd.chain_holds);

  EXPECT_TRUE(converse_scan(2, 10000, 3, ConverseClass::kEven).hits.empty());

  auto primes = converse_scan(5, 499, 3, ConverseClass::kPrime);
  EXPECT_EQ(primes.hits.size(), primes_in_range(5, 499).size());
  EXPECT_TRUE(primes.chain_holds);
}

TEST(Converse, ChainAndAgainstExact) {
  auto r = converse_scan(2, 400, 4, ConverseClass::kAll, 2);
  EXPECT_TRUE(r.chain_holds);
  for (int j = 1; j < 4; ++j) {
    for (auto n : r.levels[static_cast<std::size_t>(j)]) {
      const auto& wider = r.levels[static_cast<std::size_t>(j - 1)];
      EXPECT_TRUE(std::binary_search(wider.begin(), wider.end(), n));
    }
  }
  for (std::uint64_t n = 2; n <= 150; ++n) {
    const BigInt a = binomial_exact(2 * n - 1, static_cast<std::int64_t>(n - 1));
    for (int k = 1; k <= 3; ++k) EXPECT_EQ(converse_residue(n, k).value(), mod_floor(a, ipow(n, k))) << n << " " << k;
  }
  EXPECT_THROW(converse_scan(2, 100, 5, ConverseClass::kAll), InvalidRange);
  EXPECT_THROW(converse_scan(2, kConverseBudget + 1, 1, ConverseClass::kAll), InvalidRange);
}
