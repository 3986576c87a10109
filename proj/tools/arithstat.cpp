// arithstat: statistics of arithmetic functions from the command line.
//
//   arithstat table --kind moebius --lo 1 --hi 10
//   arithstat riemann-check --n-max 1000000 --xi 0
//   arithstat ergodic --atoms "0:2,1.0471:1" --n 10000

#include <iostream>

#include <CLI11.hpp>

#include "arithstat/app.hpp"

namespace {

using arithstat::app::RunConfig;

void add_common(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--out", c.out_dir,
                  "write every artifact into this directory (default: print "
                  "the primary artifact)");
  cmd->add_option("--threads", c.threads, "sieve worker threads")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--segment-size", c.segment_size, "sieve segment length")
      ->check(CLI::PositiveNumber);
}

void add_kind(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--kind", c.kind,
                  "prime_indicator, twin_prime_indicator, squarefree_indicator, "
                  "moebius, liouville, omega_equals:K, section4_weight, "
                  "von_mangoldt")
      ->capture_default_str();
}

void add_n(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--n-max,--n", c.n, "upper end of [1, n]")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Statistics of arithmetic functions"};
  app.require_subcommand(1);
  RunConfig c;

  auto* table = app.add_subcommand("table", "values of f on [lo, hi] as CSV");
  add_kind(table, c);
  table->add_option("--lo", c.lo)->required();
  table->add_option("--hi", c.hi)->required();

  auto* sum = app.add_subcommand("sum", "S(n) at checkpoints as CSV");
  add_kind(sum, c);
  add_n(sum, c);

  auto* stats = app.add_subcommand("stats", "moments, CDF and density on [1, n]");
  add_kind(stats, c);
  add_n(stats, c);

  auto* dep = app.add_subcommand("dependence",
                                 "autocovariance, alpha-hat and stationarity");
  add_kind(dep, c);
  add_n(dep, c);
  dep->add_option("--max-lag", c.max_lag, "lags 1..L")->capture_default_str();
  dep->add_option("--alpha-threshold", c.alpha_threshold,
                  "fail when any alpha-hat exceeds this");

  auto* norm = app.add_subcommand("normality", "KS of standardized block sums");
  add_kind(norm, c);
  add_n(norm, c);
  norm->add_option("--block-size", c.block_size)->capture_default_str();
  norm->add_option("--ks-threshold", c.ks_threshold)->capture_default_str();
  norm->add_option("--bernoulli", c.bernoulli,
                   "use a seeded i.i.d. Bernoulli(p) sequence instead of f");
  norm->add_option("--seed", c.seed)->capture_default_str();

  auto* erg = app.add_subcommand("ergodic", "spectral process simulator");
  erg->add_option("--atoms", c.atoms, "lambda:sigma2 pairs, comma separated")
      ->required();
  erg->add_option("--mean", c.mean)->capture_default_str();
  erg->add_option("--n", c.n)->check(CLI::PositiveNumber)->capture_default_str();
  erg->add_option("--replicates", c.replicates)->capture_default_str();
  erg->add_option("--length", c.length, "realization length for covariances")
      ->capture_default_str();
  erg->add_option("--seed", c.seed)->capture_default_str();

  auto* dev = app.add_subcommand("deviation", "deviation of S(n) from n*C");
  add_kind(dev, c);
  add_n(dev, c);
  dev->add_option("--mode", c.mode, "counting, exponent or growth")
      ->check(CLI::IsMember({"counting", "exponent", "growth"}))
      ->capture_default_str();
  dev->add_option("--trend", c.trend, "C (default: known limit of the kind)");
  dev->add_option("--psi", c.psi, "const:C, log or loglog")->capture_default_str();
  dev->add_option("--xi", c.xi)->capture_default_str();
  dev->add_option("--block-size", c.block_size)->capture_default_str();

  auto* riem = app.add_subcommand("riemann-check", "|M(n)| <= n^(1/2+xi) scan");
  add_n(riem, c);
  riem->add_option("--xi", c.xi)->capture_default_str();

  auto* oeis = app.add_subcommand("oeis-check", "compare against an OEIS b-file");
  oeis->add_option("--bfile", c.bfile)->required()->check(CLI::ExistingFile);
  oeis->add_option("--series", c.series,
                   "mertens, squarefree-count or squarefree-deviation")
      ->capture_default_str();

  for (auto* cmd : {sum, stats, dep, norm, dev}) {
    cmd->add_option("--checkpoints", c.checkpoints, "explicit checkpoints")
        ->delimiter(',');
    cmd->add_option("--per-decade", c.per_decade, "log-spaced checkpoints")
        ->capture_default_str();
  }
  for (auto* cmd : {table, sum, stats, dep, norm, erg, dev, riem, oeis})
    add_common(cmd, c);

  CLI11_PARSE(app, argc, argv);
  c.command = app.get_subcommands().front()->get_name();

  try {
    return arithstat::app::run(c, std::cout).exit_code;
  } catch (const std::exception& e) {
    std::cerr << "arithstat: " << e.what() << '\n';
    return 2;
  }
}
