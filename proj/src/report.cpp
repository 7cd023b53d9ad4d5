#include "resorder/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "resorder/errors.hpp"

namespace resorder {

using ordered_json = nlohmann::ordered_json;

OutputFormat parse_format(const std::string& name) {
  if (name == "md") return OutputFormat::kMarkdown;
  if (name == "csv") return OutputFormat::kCsv;
  if (name == "json") return OutputFormat::kJson;
  throw precondition_error("unknown format '" + name + "' (expected md|csv|json)");
}

double round6(double v) {
  if (std::isnan(v)) return v;
  return static_cast<double>(std::llround(v * 1e6)) / 1e6;
}

std::string format_density(double v) {
  if (std::isnan(v)) return "";
  long long scaled = std::llround(v * 1e6);
  const bool neg = scaled < 0;
  if (neg) scaled = -scaled;
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s%lld.%06lld", neg ? "-" : "",
                scaled / 1000000, scaled % 1000000);
  return buf;
}

bool rows_equal(const ComparisonRow& a, const ComparisonRow& b) {
  auto val_eq = [](double x, double y) {
    return (std::isnan(x) && std::isnan(y)) || x == y;
  };
  return a.a == b.a && a.case_label == b.case_label && a.l == b.l &&
         a.theoretical_exact == b.theoretical_exact &&
         val_eq(a.theoretical_value, b.theoretical_value) &&
         val_eq(a.empirical_value, b.empirical_value) &&
         val_eq(a.abs_diff, b.abs_diff) && a.excluded == b.excluded;
}

namespace {

// Paper-table group of a base: 0 a1=1(4), 1 a1'=1, 2 a1'=1(4), 3 a1'=3(4),
// 4 a1=3(4), 5 excluded.
int case_bucket(CaseTag tag) {
  switch (tag) {
    case CaseTag::kA1Mod4Eq1: return 0;
    case CaseTag::kTwoTimesSquare: return 1;
    case CaseTag::kA1PrimeMod4Eq1WithSplitPrime:
    case CaseTag::kA1PrimeMod4Eq1AllInert: return 2;
    case CaseTag::kA1PrimeMod4Eq3WithSplitPrime:
    case CaseTag::kA1PrimeMod4Eq3AllInert: return 3;
    case CaseTag::kA1Mod4Eq3: return 4;
  }
  return 5;
}

const char* bucket_label(int bucket) {
  switch (bucket) {
    case 0: return "a1=1 mod 4";
    case 1: return "a1'=1";
    case 2: return "a1'=1 mod 4";
    case 3: return "a1'=3 mod 4";
    case 4: return "a1=3 mod 4";
    default: return "excluded";
  }
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

}  // namespace

void apply_config_kv(RunConfig& cfg, const std::string& key, const std::string& value) {
  auto to_u64 = [&](const std::string& v) -> std::uint64_t {
    try {
      std::size_t pos = 0;
      const unsigned long long r = std::stoull(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
      return r;
    } catch (const std::exception&) {
      throw precondition_error("config: bad number '" + value + "' for key '" + key + "'");
    }
  };
  if (key == "a") {
    cfg.a_list = {to_u64(value)};
  } else if (key == "a_list") {
    cfg.a_list.clear();
    std::istringstream is(value);
    std::string item;
    while (std::getline(is, item, ',')) cfg.a_list.push_back(to_u64(item));
  } else if (key == "x") {
    cfg.x = to_u64(value);
  } else if (key == "workers") {
    cfg.workers = static_cast<unsigned>(to_u64(value));
  } else if (key == "format") {
    cfg.output_format = parse_format(value);
  } else if (key == "prime_bound") {
    cfg.c_prime_bound = to_u64(value);
    cfg.truncation.prime_bound = cfg.c_prime_bound;
  } else if (key == "k_bound") {
    cfg.truncation.k_bound = to_u64(value);
  } else if (key == "f_max") {
    cfg.truncation.f_max = static_cast<unsigned>(to_u64(value));
  } else if (key == "n_bound") {
    cfg.truncation.n_bound = to_u64(value);
  } else if (key == "tolerance") {
    try {
      cfg.truncation.tolerance = std::stod(value);
    } catch (const std::exception&) {
      throw precondition_error("config: bad number '" + value + "' for key 'tolerance'");
    }
  } else if (key == "cache") {
    cfg.cache_path = value;
  } else {
    throw precondition_error("config: unknown key '" + key + "'");
  }
}

void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw precondition_error("cannot open config file '" + path + "'");
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw precondition_error("config " + path + ":" + std::to_string(lineno) +
                               ": expected key=value");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    apply_config_kv(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

CensusCache::CensusCache(std::string path) : path_(std::move(path)) {
  std::ifstream in(path_);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream is(line);
    OrderCensus c;
    int version = -1;
    if (is >> c.a >> c.x >> c.counts[0] >> c.counts[1] >> c.counts[2] >>
            c.counts[3] >> c.excluded_count >> c.total_primes >> version &&
        version == kVersion)
      entries_[{c.a, c.x}] = c;
  }
}

std::optional<OrderCensus> CensusCache::lookup(std::uint64_t a, std::uint64_t x) const {
  const auto it = entries_.find({a, x});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void CensusCache::store(const OrderCensus& census) {
  entries_[{census.a, census.x}] = census;
  std::ofstream out(path_, std::ios::trunc);
  if (!out) throw resource_error("cannot write cache file '" + path_ + "'");
  for (const auto& [key, c] : entries_) {
    out << c.a << ' ' << c.x << ' ' << c.counts[0] << ' ' << c.counts[1] << ' '
        << c.counts[2] << ' ' << c.counts[3] << ' ' << c.excluded_count << ' '
        << c.total_primes << ' ' << kVersion << '\n';
  }
}

CensusRunner::CensusRunner(std::optional<std::string> cache_path, unsigned workers)
    : workers_(workers) {
  if (cache_path) cache_.emplace(*cache_path);
}

OrderCensus CensusRunner::run(std::uint64_t a, std::uint64_t x) {
  if (cache_) {
    if (auto hit = cache_->lookup(a, x)) return *hit;
  }
  const OrderCensus c = census(a, x, workers_);
  ++computed_;
  if (cache_) cache_->store(c);
  return c;
}

std::vector<ComparisonRow> build_comparison_rows(const RunConfig& cfg,
                                                 CensusRunner& runner) {
  if (cfg.a_list.empty()) throw precondition_error("compare needs a non-empty a list");
  const EulerProductValue c = constant_c(cfg.c_prime_bound);

  std::vector<std::pair<int, ComparisonRow>> keyed;
  for (std::uint64_t a : cfg.a_list) {
    SquarefreeDecomposition decomp;
    bool ok = true;
    try {
      decomp = decompose(a);
    } catch (const domain_error&) {
      ok = false;
    }
    if (!ok) {
      for (unsigned l : {1u, 3u}) {
        ComparisonRow row;
        row.a = a;
        row.case_label = bucket_label(5);
        row.l = l;
        row.theoretical_value = std::nan("");
        row.empirical_value = std::nan("");
        row.abs_diff = std::nan("");
        row.excluded = true;
        keyed.emplace_back(5, std::move(row));
      }
      continue;
    }
    const DensityProfile profile = theoretical_profile(decomp);
    const OrderCensus cen = runner.run(a, cfg.x);
    const int bucket = case_bucket(decomp.case_tag);
    for (unsigned l : {1u, 3u}) {
      ComparisonRow row;
      row.a = a;
      row.case_label = bucket_label(bucket);
      row.l = l;
      row.theoretical_exact = exact_form_string(profile.deltas[l]);
      row.theoretical_value = round6(evaluate(profile.deltas[l], c.value));
      row.empirical_value = round6(empirical_density(cen, l));
      row.abs_diff = round6(std::abs(row.theoretical_value - row.empirical_value));
      keyed.emplace_back(bucket, std::move(row));
    }
  }
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<ComparisonRow> rows;
  rows.reserve(keyed.size());
  for (auto& [bucket, row] : keyed) rows.push_back(std::move(row));
  return rows;
}

std::string comparison_csv(const std::vector<ComparisonRow>& rows) {
  std::ostringstream out;
  out << "a,case,l,exact,theoretical,empirical,abs_diff\n";
  for (const ComparisonRow& r : rows) {
    out << r.a << ',' << r.case_label << ',' << r.l << ',' << r.theoretical_exact
        << ',' << format_density(r.theoretical_value) << ','
        << format_density(r.empirical_value) << ',' << format_density(r.abs_diff)
        << '\n';
  }
  return out.str();
}

std::vector<ComparisonRow> parse_comparison_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<ComparisonRow> rows;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    while (fields.size() < 7) fields.emplace_back();
    ComparisonRow r;
    r.a = std::stoull(fields[0]);
    r.case_label = fields[1];
    r.l = static_cast<unsigned>(std::stoul(fields[2]));
    r.theoretical_exact = fields[3];
    auto num = [](const std::string& s) {
      return s.empty() ? std::nan("") : std::stod(s);
    };
    r.theoretical_value = num(fields[4]);
    r.empirical_value = num(fields[5]);
    r.abs_diff = num(fields[6]);
    r.excluded = r.case_label == "excluded";
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<VerifyCheck> run_verification(const TruncationParams& t) {
  t.validate();
  std::vector<VerifyCheck> checks;
  const auto add = [&](std::string name, double residual, double bound) {
    checks.push_back({std::move(name), residual, bound, residual <= bound});
  };

  for (unsigned f = 1; f <= 4; ++f) {
    const double pair = i_sum(f, 1, t) + i_sum(f, 3, t);
    add("i-sum pair identity f=" + std::to_string(f),
        std::abs(pair - std::ldexp(1.0, -static_cast<int>(f))), t.tolerance);
  }

  const EulerProductValue c = constant_c(t.prime_bound);
  for (std::uint64_t s : {3ull, 5ull, 15ull, 21ull}) {
    for (unsigned f : {1u, 2u}) {
      const std::string where = " f=" + std::to_string(f) + " s=" + std::to_string(s);
      const double r1 = j_raw(f, s, 1, t);
      const double r3 = j_raw(f, s, 3, t);
      add("j-sum cancellation" + where, std::abs(r1 + r3), t.tolerance);
      add("j-sum closed form (class 1)" + where,
          std::abs(r1 - evaluate(j_closed(f, s, 1), c.value)), t.tolerance);
      add("j-sum closed form (class 3)" + where,
          std::abs(r3 - evaluate(j_closed(f, s, 3), c.value)), t.tolerance);
    }
  }

  // The closed form vanishes exactly when s has a prime factor = 1 (mod 4).
  bool zero_rule_ok = true;
  for (std::uint64_t s = 1; s <= 105; s += 2) {
    const FactoredNat fac = factor_trial(s);
    if (moebius(fac) == 0) continue;
    bool has_split = false;
    for (const auto& [p, e] : fac.factors)
      if ((p & 3) == 1) has_split = true;
    const CTerm closed = j_closed(1, s, 1);
    const bool is_zero = closed.alpha == 0 && closed.beta == 0;
    if (is_zero != has_split) zero_rule_ok = false;
  }
  add("j-closed zero rule (odd squarefree s<=105)", zero_rule_ok ? 0.0 : 1.0, 0.5);

  add("n-sum tail estimate", n_tail_estimate(t.n_bound), t.tolerance);

  for (std::uint64_t a : {2ull, 5ull, 6ull, 10ull, 14ull, 42ull}) {
    const SquarefreeDecomposition decomp = decompose(a);
    const auto [raw1, raw3] = delta_raw(decomp, t);
    const auto closed = evaluate(theoretical_profile(decomp), c.value);
    const std::string where = " a=" + std::to_string(a);
    add("series vs closed form (class 1)" + where, std::abs(raw1 - closed[1]),
        t.tolerance);
    add("series vs closed form (class 3)" + where, std::abs(raw3 - closed[3]),
        t.tolerance);
  }
  return checks;
}

void render_census(std::ostream& out, const OrderCensus& c, OutputFormat format) {
  switch (format) {
    case OutputFormat::kMarkdown:
      out << "## census a=" << c.a << " x=" << c.x << "\n\n"
          << "| l | count | density |\n|--:|------:|--------:|\n";
      for (unsigned l = 0; l < 4; ++l)
        out << "| " << l << " | " << c.counts[l] << " | "
            << format_density(round6(empirical_density(c, l))) << " |\n";
      out << "\nexcluded: " << c.excluded_count
          << "  total primes: " << c.total_primes << "\n";
      break;
    case OutputFormat::kCsv:
      out << "a,x,l,count,density\n";
      for (unsigned l = 0; l < 4; ++l)
        out << c.a << ',' << c.x << ',' << l << ',' << c.counts[l] << ','
            << format_density(round6(empirical_density(c, l))) << '\n';
      out << c.a << ',' << c.x << ",excluded," << c.excluded_count << ",\n";
      out << c.a << ',' << c.x << ",total," << c.total_primes << ",\n";
      break;
    case OutputFormat::kJson: {
      ordered_json j;
      j["a"] = c.a;
      j["x"] = c.x;
      j["counts"] = c.counts;
      ordered_json dens = ordered_json::array();
      for (unsigned l = 0; l < 4; ++l) dens.push_back(round6(empirical_density(c, l)));
      j["densities"] = dens;
      j["excluded_count"] = c.excluded_count;
      j["total_primes"] = c.total_primes;
      out << j.dump() << '\n';
      break;
    }
  }
}

void render_theory(std::ostream& out, const DensityProfile& profile,
                   const EulerProductValue& c, OutputFormat format) {
  const auto values = evaluate(profile, c.value);
  char cbuf[48];
  std::snprintf(cbuf, sizeof cbuf, "%.9f", c.value);
  switch (format) {
    case OutputFormat::kMarkdown:
      out << "## theory a=" << profile.a
          << "  case: " << case_tag_name(profile.case_tag) << "\n\n"
          << "| l | exact | value |\n|--:|:------|------:|\n";
      for (unsigned l = 0; l < 4; ++l)
        out << "| " << l << " | " << exact_form_string(profile.deltas[l]) << " | "
            << format_density(round6(values[l])) << " |\n";
      out << "\nC(" << c.prime_bound << ") = " << cbuf << "  (tail bound "
          << sci(c.tail_bound) << ")\n";
      break;
    case OutputFormat::kCsv:
      out << "a,case,l,exact,value,c_value\n";
      for (unsigned l = 0; l < 4; ++l)
        out << profile.a << ',' << case_tag_name(profile.case_tag) << ',' << l
            << ',' << exact_form_string(profile.deltas[l]) << ','
            << format_density(round6(values[l])) << ',' << cbuf << '\n';
      break;
    case OutputFormat::kJson: {
      ordered_json j;
      j["a"] = profile.a;
      j["case"] = case_tag_name(profile.case_tag);
      ordered_json delta_rows = ordered_json::array();
      for (unsigned l = 0; l < 4; ++l) {
        ordered_json d;
        d["l"] = l;
        d["exact"] = exact_form_string(profile.deltas[l]);
        d["value"] = round6(values[l]);
        delta_rows.push_back(d);
      }
      j["deltas"] = delta_rows;
      j["c"] = {{"prime_bound", c.prime_bound},
                {"value", c.value},
                {"tail_bound", c.tail_bound}};
      out << j.dump() << '\n';
      break;
    }
  }
}

void render_comparison(std::ostream& out, const std::vector<ComparisonRow>& rows,
                       OutputFormat format) {
  switch (format) {
    case OutputFormat::kMarkdown:
      out << "| a | case | l | exact | theoretical | empirical | abs diff |\n"
          << "|--:|:-----|--:|:------|------------:|----------:|---------:|\n";
      for (const ComparisonRow& r : rows) {
        auto cell = [](const std::string& s) { return s.empty() ? "-" : s; };
        out << "| " << r.a << " | " << r.case_label << " | " << r.l << " | "
            << cell(r.theoretical_exact) << " | "
            << cell(format_density(r.theoretical_value)) << " | "
            << cell(format_density(r.empirical_value)) << " | "
            << cell(format_density(r.abs_diff)) << " |\n";
      }
      break;
    case OutputFormat::kCsv:
      out << comparison_csv(rows);
      break;
    case OutputFormat::kJson: {
      ordered_json arr = ordered_json::array();
      for (const ComparisonRow& r : rows) {
        ordered_json j;
        j["a"] = r.a;
        j["case"] = r.case_label;
        j["l"] = r.l;
        j["exact"] = r.theoretical_exact;
        j["theoretical"] = r.theoretical_value;
        j["empirical"] = r.empirical_value;
        j["abs_diff"] = r.abs_diff;
        j["excluded"] = r.excluded;
        arr.push_back(j);
      }
      out << arr.dump() << '\n';
      break;
    }
  }
}

void render_verify(std::ostream& out, const std::vector<VerifyCheck>& checks,
                   OutputFormat format) {
  switch (format) {
    case OutputFormat::kMarkdown:
      out << "| check | residual | bound | status |\n"
          << "|:------|---------:|------:|:-------|\n";
      for (const VerifyCheck& c : checks)
        out << "| " << c.name << " | " << sci(c.residual) << " | " << sci(c.bound)
            << " | " << (c.pass ? "PASS" : "FAIL") << " |\n";
      break;
    case OutputFormat::kCsv:
      out << "check,residual,bound,status\n";
      for (const VerifyCheck& c : checks)
        out << c.name << ',' << sci(c.residual) << ',' << sci(c.bound) << ','
            << (c.pass ? "PASS" : "FAIL") << '\n';
      break;
    case OutputFormat::kJson: {
      ordered_json arr = ordered_json::array();
      for (const VerifyCheck& c : checks) {
        ordered_json j;
        j["check"] = c.name;
        j["residual"] = c.residual;
        j["bound"] = c.bound;
        j["pass"] = c.pass;
        arr.push_back(j);
      }
      out << arr.dump() << '\n';
      break;
    }
  }
}

void render_constant(std::ostream& out, const EulerProductValue& c,
                     OutputFormat format) {
  char vbuf[48];
  std::snprintf(vbuf, sizeof vbuf, "%.9f", c.value);
  switch (format) {
    case OutputFormat::kMarkdown:
      out << "C(" << c.prime_bound << ") = " << vbuf << "  (tail bound "
          << sci(c.tail_bound) << ")\n";
      break;
    case OutputFormat::kCsv:
      out << "prime_bound,value,tail_bound\n"
          << c.prime_bound << ',' << vbuf << ',' << sci(c.tail_bound) << '\n';
      break;
    case OutputFormat::kJson: {
      ordered_json j;
      j["prime_bound"] = c.prime_bound;
      j["value"] = c.value;
      j["tail_bound"] = c.tail_bound;
      out << j.dump() << '\n';
      break;
    }
  }
}

namespace {

int run_guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const resource_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::logic_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitVerifyFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}

std::uint64_t single_a(const RunConfig& cfg, const char* cmd) {
  if (cfg.a_list.size() != 1)
    throw precondition_error(std::string(cmd) + " needs exactly one base (--a)");
  return cfg.a_list.front();
}

}  // namespace

int cmd_census(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&] {
    const std::uint64_t a = single_a(cfg, "census");
    CensusRunner runner(cfg.cache_path, cfg.workers);
    render_census(out, runner.run(a, cfg.x), cfg.output_format);
    return kExitOk;
  });
}

int cmd_theory(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&] {
    const std::uint64_t a = single_a(cfg, "theory");
    const DensityProfile profile = theoretical_profile(decompose(a));
    render_theory(out, profile, constant_c(cfg.c_prime_bound), cfg.output_format);
    return kExitOk;
  });
}

int cmd_compare(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&] {
    RunConfig local = cfg;
    if (local.a_list.empty()) local.a_list = default_compare_bases();
    CensusRunner runner(local.cache_path, local.workers);
    render_comparison(out, build_comparison_rows(local, runner), local.output_format);
    return kExitOk;
  });
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&] {
    const std::vector<VerifyCheck> checks = run_verification(cfg.truncation);
    render_verify(out, checks, cfg.output_format);
    const bool all_pass =
        std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.pass; });
    if (!all_pass) {
      err << "error: verification failed\n";
      return kExitVerifyFailed;
    }
    return kExitOk;
  });
}

int cmd_constant_c(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&] {
    render_constant(out, constant_c(cfg.c_prime_bound), cfg.output_format);
    return kExitOk;
  });
}

const std::vector<std::uint64_t>& default_compare_bases() {
  static const std::vector<std::uint64_t> bases = {5,  33, 45, 2,  50, 10, 42,
                                                   210, 6, 14, 30, 11, 55, 75};
  return bases;
}

}  // namespace resorder
