// Command-line front end: order censuses, exact density profiles, the table
// comparison, the series verification suite and the Euler constant.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "resorder/errors.hpp"
#include "resorder/report.hpp"

namespace {

struct Flags {
  std::optional<std::uint64_t> a;
  std::optional<std::vector<std::uint64_t>> a_list;
  std::optional<std::uint64_t> x;
  std::optional<unsigned> workers;
  std::optional<std::string> format;
  std::optional<std::uint64_t> prime_bound;
  std::optional<std::uint64_t> k_bound;
  std::optional<unsigned> f_max;
  std::optional<std::uint64_t> n_bound;
  std::optional<double> tolerance;
  std::optional<std::string> cache;
  std::optional<std::string> config;
};

// Config file first, then explicit flags on top.
resorder::RunConfig merge(const Flags& f) {
  resorder::RunConfig cfg;
  if (f.config) resorder::load_config_file(cfg, *f.config);
  if (f.a) cfg.a_list = {*f.a};
  if (f.a_list) cfg.a_list = *f.a_list;
  if (f.x) cfg.x = *f.x;
  if (f.workers) cfg.workers = *f.workers;
  if (f.format) cfg.output_format = resorder::parse_format(*f.format);
  if (f.prime_bound) {
    cfg.c_prime_bound = *f.prime_bound;
    cfg.truncation.prime_bound = *f.prime_bound;
  }
  if (f.k_bound) cfg.truncation.k_bound = *f.k_bound;
  if (f.f_max) cfg.truncation.f_max = *f.f_max;
  if (f.n_bound) cfg.truncation.n_bound = *f.n_bound;
  if (f.tolerance) cfg.truncation.tolerance = *f.tolerance;
  if (f.cache) cfg.cache_path = *f.cache;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"residual order distribution toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  Flags flags;
  app.add_option("--a", flags.a, "base a");
  app.add_option("--a-list", flags.a_list, "comma-separated bases")->delimiter(',');
  app.add_option("--x", flags.x, "census bound x");
  app.add_option("--workers", flags.workers, "census worker threads");
  app.add_option("--format", flags.format, "output format: md|csv|json");
  app.add_option("--prime-bound", flags.prime_bound, "Euler product prime bound");
  app.add_option("--k-bound", flags.k_bound, "series index bound");
  app.add_option("--f-max", flags.f_max, "two-power exponent bound");
  app.add_option("--n-bound", flags.n_bound, "squarefree sum bound");
  app.add_option("--tolerance", flags.tolerance, "verification tolerance");
  app.add_option("--cache", flags.cache, "census cache file");
  app.add_option("--config", flags.config, "key=value config file (flags win)");

  auto* census = app.add_subcommand("census", "count orders mod 4 over primes <= x");
  auto* theory = app.add_subcommand("theory", "exact density profile for a base");
  auto* compare = app.add_subcommand("compare", "theory vs experiment table");
  auto* verify = app.add_subcommand("verify", "series identity verification suite");
  auto* constant = app.add_subcommand("constant-c", "Euler product constant C");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? resorder::kExitOk : resorder::kExitInputError;
  }

  try {
    const resorder::RunConfig cfg = merge(flags);
    if (census->parsed()) return resorder::cmd_census(cfg, std::cout, std::cerr);
    if (theory->parsed()) return resorder::cmd_theory(cfg, std::cout, std::cerr);
    if (compare->parsed()) return resorder::cmd_compare(cfg, std::cout, std::cerr);
    if (verify->parsed()) return resorder::cmd_verify(cfg, std::cout, std::cerr);
    if (constant->parsed()) return resorder::cmd_constant_c(cfg, std::cout, std::cerr);
  } catch (const resorder::resource_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return resorder::kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return resorder::kExitInputError;
  }
  return resorder::kExitInputError;
}
