#pragma once

#include <algorithm>
#include <boost/rational.hpp>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "prefpipe/errors.hpp"

namespace prefpipe::metrics {

class MetricsError : public Error {
 public:
  using Error::Error;
};

/// Rates are carried as exact rationals internally and rounded to two
/// decimals only at presentation, so rounding provenance stays auditable.
using Rational = boost::rational<long long>;

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) /
         static_cast<double>(r.denominator());
}

/// Parses a plain decimal like "30.77" or "-6.68" into an exact rational.
inline Rational rational_from_decimal(std::string_view text) {
  bool negative = false;
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  long long int_part = 0, frac_part = 0, frac_scale = 1;
  bool any_digit = false;
  while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
    int_part = int_part * 10 + (text[i] - '0');
    any_digit = true;
    ++i;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
      frac_part = frac_part * 10 + (text[i] - '0');
      frac_scale *= 10;
      any_digit = true;
      ++i;
    }
  }
  if (!any_digit || i != text.size()) {
    throw MetricsError("not a decimal number: '" + std::string(text) + "'");
  }
  Rational r(int_part * frac_scale + frac_part, frac_scale);
  return negative ? -r : r;
}

/// Exact round-half-away-from-zero to two decimals, e.g. 6.915 -> "6.92".
inline std::string format_fixed2(const Rational& r) {
  long long n = r.numerator() * 100;
  long long d = r.denominator();
  bool negative = (n < 0) != (d < 0) && n != 0;
  unsigned long long a = n < 0 ? -static_cast<unsigned long long>(n) : n;
  unsigned long long b = d < 0 ? -static_cast<unsigned long long>(d) : d;
  unsigned long long q = a / b;
  if (2 * (a % b) >= b) ++q;
  std::string out = negative && q != 0 ? "-" : "";
  out += std::to_string(q / 100);
  out += '.';
  unsigned long long cents = q % 100;
  out += static_cast<char>('0' + cents / 10);
  out += static_cast<char>('0' + cents % 10);
  return out;
}

/// Benchmark layout: ordered domains with their task counts, and how many
/// evaluation runs get averaged.
struct BenchmarkSpec {
  std::string name;
  std::vector<std::pair<std::string, int>> domains;
  int runs = 3;

  int total_tasks() const {
    int total = 0;
    for (const auto& [_, count] : domains) total += count;
    return total;
  }
  int task_count(std::string_view domain) const {
    for (const auto& [name_, count] : domains) {
      if (name_ == domain) return count;
    }
    throw MetricsError("unknown domain '" + std::string(domain) + "'");
  }
};

/// The 369-task OSWorld layout. The per-domain counts come from the public
/// benchmark manifest, not the result tables, which only print rates.
inline BenchmarkSpec osworld369() {
  return BenchmarkSpec{"osworld-369",
                       {{"Chrome", 46},
                        {"GIMP", 26},
                        {"LO Calc", 47},
                        {"LO Impress", 47},
                        {"LO Writer", 23},
                        {"Multi Apps", 101},
                        {"OS", 24},
                        {"Thunderbird", 15},
                        {"VLC", 17},
                        {"VS Code", 23}},
                       3};
}

inline BenchmarkSpec benchmark_spec(std::string_view name) {
  if (name == "osworld-369") return osworld369();
  throw MetricsError("unknown benchmark spec '" + std::string(name) + "'");
}

/// Per-domain success statistics, successes summed over runs.
struct DomainReport {
  std::string domain;
  long long successes = 0;
  long long task_count = 0;
  long long runs = 1;

  Rational rate() const;
};

/// 100 * successes / (task_count * runs), exact.
inline Rational success_rate(long long successes, long long task_count,
                             long long runs) {
  if (task_count <= 0 || runs <= 0) {
    throw MetricsError("success_rate: task_count and runs must be positive");
  }
  if (successes < 0 || successes > task_count * runs) {
    throw MetricsError("success_rate: successes out of range");
  }
  return Rational(100 * successes, task_count * runs);
}

inline Rational DomainReport::rate() const {
  return success_rate(successes, task_count, runs);
}

/// Task-count-weighted average of (rate, weight) pairs.
inline Rational weighted_average_rates(
    std::span<const std::pair<Rational, long long>> rates) {
  if (rates.empty()) throw MetricsError("weighted_average: empty input");
  Rational num(0);
  long long den = 0;
  for (const auto& [rate, weight] : rates) {
    num += rate * weight;
    den += weight;
  }
  if (den <= 0) throw MetricsError("weighted_average: nonpositive total weight");
  return num / den;
}

inline Rational weighted_average(std::span<const DomainReport> reports) {
  std::vector<std::pair<Rational, long long>> rates;
  rates.reserve(reports.size());
  for (const auto& r : reports) rates.emplace_back(r.rate(), r.task_count);
  return weighted_average_rates(rates);
}

/// 100 * (model - baseline) / baseline.
inline Rational percent_improvement(const Rational& model_avg,
                                    const Rational& baseline_avg) {
  if (baseline_avg <= Rational(0)) {
    throw MetricsError("percent_improvement: baseline must be positive");
  }
  return Rational(100) * (model_avg - baseline_avg) / baseline_avg;
}

/// Rectangular model x domain rate table.
class ModelTable {
 public:
  ModelTable() = default;
  ModelTable(std::vector<std::string> models, std::vector<std::string> domains)
      : models_(std::move(models)),
        domains_(std::move(domains)),
        rates_(models_.size(), std::vector<Rational>(domains_.size())) {}

  const std::vector<std::string>& models() const { return models_; }
  const std::vector<std::string>& domains() const { return domains_; }

  void set(std::string_view model, std::string_view domain, Rational rate) {
    rates_[model_index(model)][domain_index(domain)] = rate;
  }
  const Rational& at(std::string_view model, std::string_view domain) const {
    return rates_[model_index(model)][domain_index(domain)];
  }

  std::size_t model_index(std::string_view model) const {
    for (std::size_t i = 0; i < models_.size(); ++i) {
      if (models_[i] == model) return i;
    }
    throw MetricsError("unknown model '" + std::string(model) + "'");
  }
  std::size_t domain_index(std::string_view domain) const {
    for (std::size_t i = 0; i < domains_.size(); ++i) {
      if (domains_[i] == domain) return i;
    }
    throw MetricsError("unknown domain '" + std::string(domain) + "'");
  }

 private:
  std::vector<std::string> models_;
  std::vector<std::string> domains_;
  std::vector<std::vector<Rational>> rates_;
};

/// Per model, the number of domains where it attains the strict maximum rate;
/// ties share credit.
inline std::map<std::string, int> best_of_domain(const ModelTable& table) {
  std::map<std::string, int> counts;
  for (const auto& m : table.models()) counts[m] = 0;
  for (const auto& d : table.domains()) {
    Rational best = table.at(table.models().front(), d);
    for (const auto& m : table.models()) best = std::max(best, table.at(m, d));
    for (const auto& m : table.models()) {
      if (table.at(m, d) == best) ++counts[m];
    }
  }
  return counts;
}

/// Per domain, best non-baseline rate minus the baseline rate (may be
/// negative). This is this artifact's documented definition; the printed
/// column cannot be recomputed from the printed rows.
inline std::map<std::string, Rational> max_diff(const ModelTable& table,
                                                std::string_view baseline) {
  bool found = false;
  for (const auto& m : table.models()) {
    if (m == baseline) found = true;
  }
  if (!found) {
    throw MetricsError("max_diff: unknown baseline '" + std::string(baseline) +
                       "'");
  }
  std::map<std::string, Rational> out;
  for (const auto& d : table.domains()) {
    bool any = false;
    Rational best(0);
    for (const auto& m : table.models()) {
      if (m == baseline) continue;
      if (!any || table.at(m, d) > best) {
        best = table.at(m, d);
        any = true;
      }
    }
    if (!any) throw MetricsError("max_diff: table has only the baseline");
    out[d] = best - table.at(std::string(baseline), d);
  }
  return out;
}

/// Half-open bins over [0,100]; the last bin is closed at 100.
struct Histogram {
  double bin_width = 5;
  std::vector<long long> counts;
  long long total = 0;

  double bin_start(std::size_t i) const { return bin_width * i; }
};

inline Histogram score_histogram(std::span<const double> scores,
                                 double bin_width) {
  if (!(bin_width > 0)) throw MetricsError("bin_width must be positive");
  double k_real = 100.0 / bin_width;
  auto k = static_cast<std::size_t>(std::llround(k_real));
  if (k < 1 || std::abs(k * bin_width - 100.0) > 1e-9) {
    throw MetricsError("bin_width must divide 100 evenly");
  }
  Histogram h;
  h.bin_width = bin_width;
  h.counts.assign(k, 0);
  for (double s : scores) {
    if (s < 0.0 || s > 100.0) {
      throw MetricsError("score out of range [0,100]: " + std::to_string(s));
    }
    auto bin = static_cast<std::size_t>(s / bin_width);
    if (bin >= k) bin = k - 1;  // s == 100 falls into the closed last bin
    ++h.counts[bin];
    ++h.total;
  }
  return h;
}

inline std::string histogram_to_csv(const Histogram& h) {
  std::string out = "bin_start,count\n";
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    out += format_fixed2(rational_from_decimal(std::to_string(h.bin_start(i))));
    out += ',';
    out += std::to_string(h.counts[i]);
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Published result tables, kept as data so every derivable number can be
// recomputed and compared against what the tables print.
// ---------------------------------------------------------------------------

struct PublishedTable {
  std::string name;
  int step_budget = 15;
  ModelTable rates;
  std::map<std::string, std::string> printed_weighted_avg;   // model -> decimal
  std::map<std::string, int> printed_best_of_domain;         // model -> count
  std::map<std::string, std::string> printed_improvement;    // model -> decimal
  std::map<std::string, std::string> printed_max_diff;       // domain -> decimal
  std::string printed_weighted_avg_max_diff;
  std::string baseline_model = "Baseline";
};

namespace detail {

inline ModelTable make_table(
    const std::vector<std::string>& models,
    const std::vector<std::pair<std::string, std::vector<const char*>>>& rows) {
  std::vector<std::string> domains;
  domains.reserve(rows.size());
  for (const auto& [domain, _] : rows) domains.push_back(domain);
  ModelTable t(models, domains);
  for (const auto& [domain, cells] : rows) {
    for (std::size_t m = 0; m < models.size(); ++m) {
      t.set(models[m], domain, rational_from_decimal(cells[m]));
    }
  }
  return t;
}

}  // namespace detail

/// 15-step success rates (percent) per domain.
inline PublishedTable published_table_15steps() {
  const std::vector<std::string> models = {"DPO-1", "DPO-2", "DPO-3",
                                           "Baseline"};
  PublishedTable t;
  t.name = "15-steps";
  t.step_budget = 15;
  t.rates = detail::make_table(
      models, {
                  {"Chrome", {"10.87", "7.97", "12.43", "5.07"}},
                  {"GIMP", {"29.49", "24.36", "27.28", "30.77"}},
                  {"LO Calc", {"3.55", "2.13", "3.55", "2.13"}},
                  {"LO Impress", {"4.96", "4.27", "3.59", "3.59"}},
                  {"LO Writer", {"5.79", "7.24", "5.80", "4.35"}},
                  {"Multi Apps", {"0.66", "1.32", "1.17", "1.32"}},
                  {"OS", {"22.22", "27.78", "27.78", "19.44"}},
                  {"Thunderbird", {"8.89", "13.33", "13.33", "6.67"}},
                  {"VLC", {"16.50", "10.40", "8.21", "1.96"}},
                  {"VS Code", {"24.24", "19.70", "23.78", "18.18"}},
              });
  t.printed_weighted_avg = {{"DPO-1", "9.18"},
                            {"DPO-2", "8.46"},
                            {"DPO-3", "9.33"},
                            {"Baseline", "6.91"}};
  t.printed_best_of_domain = {
      {"DPO-1", 3}, {"DPO-2", 4}, {"DPO-3", 4}, {"Baseline", 2}};
  t.printed_improvement = {
      {"DPO-1", "32.86"}, {"DPO-2", "22.43"}, {"DPO-3", "35.03"}};
  t.printed_max_diff = {{"Chrome", "10.48"},     {"GIMP", "7.69"},
                        {"LO Calc", "4.26"},     {"LO Impress", "2.93"},
                        {"LO Writer", "4.35"},   {"Multi Apps", "0.66"},
                        {"OS", "13.89"},         {"Thunderbird", "13.33"},
                        {"VLC", "21.57"},        {"VS Code", "12.25"}};
  t.printed_weighted_avg_max_diff = "3.14";
  return t;
}

/// 50-step success rates (percent) per domain.
inline PublishedTable published_table_50steps() {
  const std::vector<std::string> models = {"DPO-1", "DPO-2", "DPO-3",
                                           "Baseline"};
  PublishedTable t;
  t.name = "50-steps";
  t.step_budget = 50;
  t.rates = detail::make_table(
      models, {
                  {"Chrome", {"9.37", "7.25", "8.64", "5.07"}},
                  {"GIMP", {"28.62", "30.77", "24.36", "31.18"}},
                  {"LO Calc", {"2.13", "4.26", "2.85", "2.84"}},
                  {"LO Impress", {"2.90", "3.58", "5.01", "4.26"}},
                  {"LO Writer", {"11.59", "7.24", "8.82", "4.34"}},
                  {"Multi Apps", {"1.32", "0.99", "1.17", "0.99"}},
                  {"OS", {"27.78", "25.00", "20.83", "26.39"}},
                  {"Thunderbird", {"11.11", "6.67", "15.56", "20.00"}},
                  {"VLC", {"7.97", "14.22", "6.70", "15.27"}},
                  {"VS Code", {"24.00", "25.03", "19.37", "21.94"}},
              });
  t.printed_weighted_avg = {{"DPO-1", "9.01"},
                            {"DPO-2", "8.88"},
                            {"DPO-3", "8.24"},
                            {"Baseline", "8.83"}};
  t.printed_best_of_domain = {
      {"DPO-1", 4}, {"DPO-2", 2}, {"DPO-3", 1}, {"Baseline", 3}};
  t.printed_improvement = {
      {"DPO-1", "2.04"}, {"DPO-2", "0.57"}, {"DPO-3", "-6.68"}};
  t.printed_max_diff = {{"Chrome", "9.99"},      {"GIMP", "3.44"},
                        {"LO Calc", "1.42"},     {"LO Impress", "2.19"},
                        {"LO Writer", "8.70"},   {"Multi Apps", "0.99"},
                        {"OS", "6.94"},          {"Thunderbird", "0.00"},
                        {"VLC", "2.37"},         {"VS Code", "8.50"}};
  t.printed_weighted_avg_max_diff = "1.52";
  return t;
}

/// Everything recomputable from a published table, with flags wherever the
/// recomputation disagrees with what the table prints.
struct TableReproduction {
  std::string table_name;
  std::map<std::string, Rational> weighted_avg;
  std::map<std::string, Rational> improvement;
  std::map<std::string, int> best_of_domain;
  std::map<std::string, Rational> max_diff;
  std::vector<std::string> mismatches;
};

inline TableReproduction reproduce_published_table(const PublishedTable& pub,
                                                   const BenchmarkSpec& spec) {
  TableReproduction rep;
  rep.table_name = pub.name;

  for (const auto& model : pub.rates.models()) {
    std::vector<std::pair<Rational, long long>> rates;
    for (const auto& [domain, count] : spec.domains) {
      rates.emplace_back(pub.rates.at(model, domain), count);
    }
    rep.weighted_avg[model] = weighted_average_rates(rates);
  }
  // Improvements use the printed weighted averages, matching how the table
  // derives its own improvement row.
  Rational printed_baseline =
      rational_from_decimal(pub.printed_weighted_avg.at(pub.baseline_model));
  for (const auto& [model, printed] : pub.printed_weighted_avg) {
    if (model == pub.baseline_model) continue;
    rep.improvement[model] =
        percent_improvement(rational_from_decimal(printed), printed_baseline);
  }
  rep.best_of_domain = best_of_domain(pub.rates);
  rep.max_diff = max_diff(pub.rates, pub.baseline_model);

  auto flag_rational = [&](const std::string& what, const Rational& computed,
                           const std::string& printed) {
    Rational diff = computed - rational_from_decimal(printed);
    if (diff < Rational(0)) diff = -diff;
    if (diff > Rational(5, 100)) {
      rep.mismatches.push_back(what + ": recomputed " +
                               format_fixed2(computed) + " vs printed " +
                               printed);
    }
  };
  for (const auto& [model, printed] : pub.printed_weighted_avg) {
    flag_rational("weighted avg " + model, rep.weighted_avg.at(model), printed);
  }
  for (const auto& [model, printed] : pub.printed_improvement) {
    flag_rational("% improvement " + model, rep.improvement.at(model), printed);
  }
  for (const auto& [model, printed] : pub.printed_best_of_domain) {
    if (rep.best_of_domain.at(model) != printed) {
      rep.mismatches.push_back(
          "# best of domain " + model + ": recomputed " +
          std::to_string(rep.best_of_domain.at(model)) + " vs printed " +
          std::to_string(printed));
    }
  }
  for (const auto& [domain, printed] : pub.printed_max_diff) {
    flag_rational("max diff " + domain, rep.max_diff.at(domain), printed);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Emitters
// ---------------------------------------------------------------------------

/// Plain aligned-text layout of a rate table plus its summary rows.
inline std::string table_to_text(const ModelTable& table,
                                 const BenchmarkSpec& spec,
                                 const std::string& baseline) {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header = {"Domain"};
  for (const auto& m : table.models()) header.push_back(m);
  header.push_back("Max Diff.");
  cells.push_back(header);

  auto diffs = max_diff(table, baseline);
  for (const auto& d : table.domains()) {
    std::vector<std::string> row = {d};
    for (const auto& m : table.models()) {
      row.push_back(format_fixed2(table.at(m, d)));
    }
    row.push_back(format_fixed2(diffs.at(d)));
    cells.push_back(row);
  }

  std::vector<std::string> avg_row = {"Weighted Avg."};
  std::map<std::string, Rational> avgs;
  for (const auto& m : table.models()) {
    std::vector<std::pair<Rational, long long>> rates;
    for (const auto& [domain, count] : spec.domains) {
      rates.emplace_back(table.at(m, domain), count);
    }
    avgs[m] = weighted_average_rates(rates);
    avg_row.push_back(format_fixed2(avgs[m]));
  }
  avg_row.push_back("-");
  cells.push_back(avg_row);

  std::vector<std::string> best_row = {"# Best of Domain"};
  auto best = best_of_domain(table);
  for (const auto& m : table.models()) {
    best_row.push_back(std::to_string(best.at(m)));
  }
  best_row.push_back("-");
  cells.push_back(best_row);

  std::vector<std::string> imp_row = {"% improvement"};
  for (const auto& m : table.models()) {
    if (m == baseline) {
      imp_row.push_back("-");
    } else {
      imp_row.push_back(
          format_fixed2(percent_improvement(avgs.at(m), avgs.at(baseline))));
    }
  }
  imp_row.push_back("-");
  cells.push_back(imp_row);

  std::vector<std::size_t> widths(header.size(), 0);
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      widths[c] = std::max(widths[c], row[c].size());
    }
  }
  std::string out;
  for (std::size_t r = 0; r < cells.size(); ++r) {
    for (std::size_t c = 0; c < cells[r].size(); ++c) {
      std::string cell = cells[r][c];
      cell.resize(widths[c], ' ');
      out += cell;
      if (c + 1 < cells[r].size()) out += "  ";
    }
    out += '\n';
    if (r == 0) {
      std::size_t total = 0;
      for (std::size_t c = 0; c < widths.size(); ++c) {
        total += widths[c] + (c + 1 < widths.size() ? 2 : 0);
      }
      out += std::string(total, '-');
      out += '\n';
    }
  }
  return out;
}

inline nlohmann::ordered_json reproduction_to_json(const TableReproduction& rep) {
  nlohmann::ordered_json j;
  j["table"] = rep.table_name;
  auto fixed2 = [](const std::map<std::string, Rational>& m) {
    nlohmann::ordered_json out;
    for (const auto& [k, v] : m) out[k] = format_fixed2(v);
    return out;
  };
  j["weighted_avg"] = fixed2(rep.weighted_avg);
  j["improvement"] = fixed2(rep.improvement);
  j["best_of_domain"] = rep.best_of_domain;
  j["max_diff"] = fixed2(rep.max_diff);
  j["mismatches_vs_printed"] = rep.mismatches;
  return j;
}

}  // namespace prefpipe::metrics
