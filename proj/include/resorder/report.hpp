#ifndef RESORDER_REPORT_HPP
#define RESORDER_REPORT_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "resorder/census.hpp"
#include "resorder/density.hpp"
#include "resorder/series.hpp"

namespace resorder {

enum class OutputFormat { kMarkdown, kCsv, kJson };

// Accepts "md", "csv", "json".
OutputFormat parse_format(const std::string& name);

// Round to 6 decimals, halves away from zero (table precision).
double round6(double v);

// Fixed 6-decimal rendering of a round6'd value, e.g. "0.065425".
std::string format_density(double v);

// One line of the theory-vs-experiment table. Real fields are stored already
// rounded to 6 decimals so a rendered table re-parses to identical rows.
struct ComparisonRow {
  std::uint64_t a = 0;
  std::string case_label;
  unsigned l = 1;  // 1 or 3
  std::string theoretical_exact;
  double theoretical_value = 0.0;  // NaN on excluded rows
  double empirical_value = 0.0;
  double abs_diff = 0.0;
  bool excluded = false;  // a was rejected (perfect power)
};

bool rows_equal(const ComparisonRow& a, const ComparisonRow& b);

struct RunConfig {
  std::vector<std::uint64_t> a_list;
  std::uint64_t x = 10'000'000;
  std::uint64_t c_prime_bound = 1'000'000;
  TruncationParams truncation;
  OutputFormat output_format = OutputFormat::kMarkdown;
  unsigned workers = 1;
  std::optional<std::string> cache_path;
};

// Plain key=value configuration ('#' starts a comment). Recognized keys:
// a, a_list, x, workers, format, prime_bound, k_bound, f_max, n_bound,
// tolerance, cache. Command-line flags override file values.
void apply_config_kv(RunConfig& cfg, const std::string& key, const std::string& value);
void load_config_file(RunConfig& cfg, const std::string& path);

// File-backed census results keyed by (a, x); one record per line:
// "a x count0 count1 count2 count3 excluded total version". Records with a
// stale version stamp are dropped on load.
class CensusCache {
 public:
  static constexpr int kVersion = 1;

  explicit CensusCache(std::string path);
  std::optional<OrderCensus> lookup(std::uint64_t a, std::uint64_t x) const;
  void store(const OrderCensus& census);

 private:
  std::string path_;
  std::map<std::pair<std::uint64_t, std::uint64_t>, OrderCensus> entries_;
};

// Census frontend with optional file cache; counts actual computations so
// cache hits are observable.
class CensusRunner {
 public:
  CensusRunner(std::optional<std::string> cache_path, unsigned workers);
  OrderCensus run(std::uint64_t a, std::uint64_t x);
  unsigned computed() const { return computed_; }

 private:
  std::optional<CensusCache> cache_;
  unsigned workers_;
  unsigned computed_ = 0;
};

// Comparison table in paper order: rows grouped by the case of a1, excluded
// bases last, input order preserved inside each group.
std::vector<ComparisonRow> build_comparison_rows(const RunConfig& cfg,
                                                 CensusRunner& runner);

std::string comparison_csv(const std::vector<ComparisonRow>& rows);
std::vector<ComparisonRow> parse_comparison_csv(const std::string& text);

struct VerifyCheck {
  std::string name;
  double residual = 0.0;
  double bound = 0.0;
  bool pass = false;
};

// The full series verification suite at the given truncation.
std::vector<VerifyCheck> run_verification(const TruncationParams& t);

void render_census(std::ostream& out, const OrderCensus& c, OutputFormat format);
void render_theory(std::ostream& out, const DensityProfile& profile,
                   const EulerProductValue& c, OutputFormat format);
void render_comparison(std::ostream& out, const std::vector<ComparisonRow>& rows,
                       OutputFormat format);
void render_verify(std::ostream& out, const std::vector<VerifyCheck>& checks,
                   OutputFormat format);
void render_constant(std::ostream& out, const EulerProductValue& c, OutputFormat format);

// Subcommand bodies; return process exit codes and print one-line
// diagnostics to err on failure.
int cmd_census(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_theory(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_compare(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_constant_c(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// The 14 bases of the reference experiment, in published table order.
const std::vector<std::uint64_t>& default_compare_bases();

}  // namespace resorder

#endif  // RESORDER_REPORT_HPP
