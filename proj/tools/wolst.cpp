// wolst: verify the congruence catalog, hunt Wolstenholme primes, scan the
// converse, compute single values.

#include <CLI11.hpp>

#include <iostream>
#include <typeinfo>

#include "wolst/cli.hpp"

using namespace wolst;

namespace {

struct Flags {
  std::string config_path;
  std::vector<std::string> checks;
  std::string primes;
  std::string method;
  unsigned jobs = 1;
  std::string format;
  std::string checkpoint;
  std::string resume;
  std::uint64_t seed = 0;
  std::uint64_t segment = 0;
  bool allow_fast = false;
  bool allow_slow = false;
  bool w5 = false;
  bool no_timing = false;
};

/// Config file first, then any flag given on the command line.
RunConfig effective_config(const Flags& f, const CLI::App& app) {
  RunConfig c = f.config_path.empty() ? RunConfig{} : load_config(f.config_path);
  auto given = [&](const char* name) {
    const CLI::Option* opt = app.get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  if (given("--checks")) c.checks = f.checks;
  if (given("--primes")) std::tie(c.primes_lo, c.primes_hi) = parse_range(f.primes);
  if (given("--method")) {
    parse_method(f.method);
    c.method = f.method;
  }
  if (given("--jobs")) c.jobs = f.jobs;
  if (given("--format")) {
    check_format(f.format);
    c.format = f.format;
  }
  if (given("--checkpoint")) c.checkpoint = f.checkpoint;
  if (given("--resume")) c.resume = f.resume;
  if (given("--seed")) c.seed = f.seed;
  if (given("--segment")) c.segment = f.segment;
  if (given("--allow-experimental-fast")) c.allow_experimental_fast = f.allow_fast;
  if (given("--allow-slow")) c.allow_slow = f.allow_slow;
  if (given("--w5")) c.w5 = f.w5;
  if (given("--no-timing")) c.timing = !f.no_timing;
  return c;
}

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_path, "JSON config file; flags override it");
  cmd->add_option("--jobs", f.jobs, "worker threads");
  cmd->add_option("--format", f.format, "table, json or csv");
  cmd->add_option("--seed", f.seed, "seed recorded with the run");
  cmd->add_flag("--no-timing", f.no_timing, "report micros as 0, for byte-stable reports");
}

int run_verify(const RunConfig& c) {
  SweepOptions o;
  o.p_lo = c.primes_lo;
  o.p_hi = c.primes_hi;
  o.jobs = c.jobs;
  o.allow_slow = c.allow_slow;
  const SweepReport report = sweep(c.checks, o);
  write_report(std::cout, report, c.format, c.timing);
  if (c.format != "table") write_summary(std::cerr, report.summary);
  return report.summary.failed == 0 ? kExitOk : kExitFailure;
}

int run_hunt(const RunConfig& c, std::size_t max_segments, bool quiet) {
  HuntOptions o;
  o.method = parse_method(c.method);
  o.jobs = c.jobs;
  o.segment = c.segment;
  o.w5 = c.w5;
  o.allow_experimental_fast = c.allow_experimental_fast;
  o.max_segments = max_segments;
  if (!c.resume.empty()) o.resume = HuntCheckpoint::load(c.resume);
  if (!c.checkpoint.empty()) {
    o.checkpoint_path = c.checkpoint;
  } else if (!c.resume.empty()) {
    o.checkpoint_path = c.resume;
  }
  if (!quiet) o.on_segment = [](const SegmentStatus& s) { std::cerr << segment_json(s).dump() << "\n"; };
  const HuntResult r = wolstenholme_scan(c.primes_lo, c.primes_hi, o);
  if (c.format == "csv") std::cout << "p,harmonic_mod_p3,binomial_mod_p4\n";
  for (const auto& h : r.hits) {
    if (c.format == "json") {
      std::cout << hit_json(h).dump() << "\n";
    } else if (c.format == "csv") {
      std::cout << h.p << ',' << to_string(h.harmonic_mod_p3) << ',' << to_string(h.binomial_mod_p4) << "\n";
    } else {
      std::cout << h.p << "  H(p-1) mod p^3 = " << to_string(h.harmonic_mod_p3)
                << "  C(2p-1,p-1) mod p^4 = " << to_string(h.binomial_mod_p4) << "\n";
    }
  }
  std::cerr << (r.complete ? "complete" : "stopped") << ": scanned " << c.primes_lo << ".." << r.checkpoint.done_hi
            << ", " << r.hits.size() << " hit(s)\n";
  return kExitOk;
}

int run_converse(const std::string& range, int k, const std::string& cls, unsigned jobs, const std::string& format) {
  auto [lo, hi] = parse_range(range);
  const ConverseResult r = converse_scan(lo, hi, k, parse_converse_class(cls), jobs);
  if (format == "csv") std::cout << "n,kind\n";
  for (const auto& h : r.hits) {
    if (format == "json") {
      std::cout << Json{{"n", h.n}, {"kind", kind_name(h.kind)}}.dump() << "\n";
    } else if (format == "csv") {
      std::cout << h.n << ',' << kind_name(h.kind) << "\n";
    } else {
      std::cout << h.n << "  " << kind_name(h.kind) << "\n";
    }
  }
  std::cerr << "tested " << r.tested << ", " << r.hits.size() << " hit(s), chain "
            << (r.chain_holds ? "holds" : "BROKEN") << "\n";
  return r.chain_holds ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wolstenholme-type congruence verifier and prime hunter"};
  app.require_subcommand(1);
  Flags f;

  auto* verify = app.add_subcommand("verify", "run catalog checks over a prime range");
  add_common(verify, f);
  verify->add_option("--checks", f.checks, "check ids or globs (W.*, L.helou.*)")->delimiter(',');
  verify->add_option("--primes", f.primes, "prime range A..B");
  verify->add_flag("--allow-slow", f.allow_slow, "run the conditional checks at p = 16843");

  auto* hunt = app.add_subcommand("hunt", "search for Wolstenholme primes");
  add_common(hunt, f);
  std::string hunt_range;
  std::size_t max_segments = 0;
  bool quiet = false;
  hunt->add_option("range", hunt_range, "prime range A..B");
  hunt->add_option("--primes", f.primes, "prime range A..B");
  hunt->add_option("--method", f.method, "harmonic, direct or fast");
  hunt->add_option("--checkpoint", f.checkpoint, "checkpoint file, rewritten after each segment");
  hunt->add_option("--resume", f.resume, "continue from a checkpoint");
  hunt->add_option("--segment", f.segment, "integers per segment");
  hunt->add_option("--max-segments", max_segments, "stop after this many segments");
  hunt->add_flag("--allow-experimental-fast", f.allow_fast, "permit the fast pre-filter (oracle gate still applies)");
  hunt->add_flag("--w5", f.w5, "look for C(2p-1,p-1) = 1 mod p^5");
  hunt->add_flag("--quiet", quiet, "no per-segment status on stderr");

  auto* converse = app.add_subcommand("converse", "composites n with C(2n-1,n-1) = 1 mod n^k");
  std::string conv_range = "2..30000", conv_class = "odd-composite", conv_format = "table";
  int conv_k = 1;
  unsigned conv_jobs = 1;
  converse->add_option("range", conv_range, "range A..B");
  converse->add_option("--k", conv_k, "power of n, 1..4");
  converse->add_option("--class", conv_class, "odd-composite, even, prime-power, prime or all");
  converse->add_option("--jobs", conv_jobs, "worker threads");
  converse->add_option("--format", conv_format, "table, json or csv");

  auto* compute = app.add_subcommand("compute", "print one value");
  compute->require_subcommand(1);
  std::uint64_t n = 0, m = 0, p = 0, power = 1, exact = 0;
  int e = 1;
  std::string modulus;
  auto* c_binom = compute->add_subcommand("binom", "C(n, m), exact or mod --mod");
  c_binom->add_option("--n", n)->required();
  c_binom->add_option("--m", m)->required();
  c_binom->add_option("--mod", modulus);
  auto* c_harm = compute->add_subcommand("harmonic", "sum_{k<=n} 1/k^power, exact or mod --mod");
  c_harm->add_option("--n", n)->required();
  c_harm->add_option("--power", power);
  c_harm->add_option("--mod", modulus);
  auto* c_bern = compute->add_subcommand("bernoulli", "B_n exactly, or p-adically with --n --p --e");
  auto* exact_opt = c_bern->add_option("--exact", exact, "index for the exact value");
  auto* bn_opt = c_bern->add_option("--n", n);
  c_bern->add_option("--p", p);
  c_bern->add_option("--e", e);
  auto* c_q = compute->add_subcommand("qbinom", "Gaussian binomial [n, m]_q");
  c_q->add_option("--n", n)->required();
  c_q->add_option("--m", m)->required();

  auto* config = app.add_subcommand("config", "print the effective configuration as JSON");
  add_common(config, f);
  config->add_option("--checks", f.checks)->delimiter(',');
  config->add_option("--primes", f.primes);
  config->add_option("--method", f.method);
  config->add_option("--checkpoint", f.checkpoint);
  config->add_option("--resume", f.resume);
  config->add_option("--segment", f.segment);
  config->add_flag("--allow-experimental-fast", f.allow_fast);
  config->add_flag("--allow-slow", f.allow_slow);
  config->add_flag("--w5", f.w5);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*verify) return run_verify(effective_config(f, *verify));
    if (*hunt) {
      if (!hunt_range.empty()) f.primes = hunt_range;
      RunConfig c = effective_config(f, *hunt);
      if (!hunt_range.empty()) std::tie(c.primes_lo, c.primes_hi) = parse_range(hunt_range);
      return run_hunt(c, max_segments, quiet);
    }
    if (*converse) {
      check_format(conv_format);
      return run_converse(conv_range, conv_k, conv_class, conv_jobs, conv_format);
    }
    if (*config) {
      std::cout << to_json(effective_config(f, *config)).dump(2) << "\n";
      return kExitOk;
    }
    if (*c_binom) {
      if (modulus.empty()) {
        std::cout << to_string(binomial_exact(n, static_cast<std::int64_t>(m))) << "\n";
      } else {
        std::cout << binomial_mod(n, static_cast<std::int64_t>(m), BigInt(modulus)).str() << "\n";
      }
    } else if (*c_harm) {
      BigRational h = 0;
      for (std::uint64_t k = 1; k <= n; ++k) h += BigRational(BigInt(1), ipow(k, static_cast<unsigned long>(power)));
      h.canonicalize();
      std::cout << (modulus.empty() ? h.get_str() : make_residue(h, BigInt(modulus)).str()) << "\n";
    } else if (*c_bern) {
      if (exact_opt->count() > 0) {
        std::cout << bernoulli_exact(exact).get_str() << "\n";
      } else if (bn_opt->count() > 0 && p != 0) {
        std::cout << bernoulli_mod(n, p, e).str() << "\n";
      } else {
        std::cerr << "give --exact N, or --n N --p P [--e E]\n";
        return kExitUsage;
      }
    } else if (*c_q) {
      std::cout << q_binomial(n, m).str() << "\n";
    }
    return kExitOk;
  } catch (const std::invalid_argument& err) {  // e.g. a malformed --mod
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    // the bare base class marks internal consistency failures
    return typeid(err) == typeid(Error) ? kExitInternal : kExitUsage;
  } catch (const std::exception& err) {
    std::cerr << "internal error: " << err.what() << "\n";
    return kExitInternal;
  }
}
