#pragma once

// Long-format CSV: scheme,M,T,C,pf,k,kprime,kw,bigk,metric,value,stderr,trials,seed,exact_fraction

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fusionassure/simulate.hpp"

namespace fa {

std::string_view library_version() noexcept;

struct CsvRow {
  Scheme scheme = Scheme::VariantRound;
  ProtocolParams params;
  std::string metric;
  double value = 0.0;
  std::optional<double> standard_error;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<Rational> exact;
};

class Report {
 public:
  static constexpr std::string_view kColumns =
      "scheme,M,T,C,pf,k,kprime,kw,bigk,metric,value,stderr,trials,seed,exact_fraction";

  void add_comment(std::string line) { comments_.push_back(std::move(line)); }
  void add_row(CsvRow row) { rows_.push_back(std::move(row)); }
  /// Stable sort by (scheme, M, pf, T, C).
  void sort_rows();

  const std::vector<std::string>& comments() const { return comments_; }
  const std::vector<CsvRow>& rows() const { return rows_; }
  /// "# " comment lines, the column header, then one line per row.
  std::string csv() const;

 private:
  std::vector<std::string> comments_;
  std::vector<CsvRow> rows_;
};

/// Closed-form rows for the witness or variant-round scheme. Errors from the
/// analytic modules propagate; the one-round scheme has no closed form.
Report analytic_report(Scheme scheme, const ProtocolParams& params);

Report simulate_report(Scheme scheme, const ProtocolParams& params, std::uint64_t trials, std::uint64_t seed,
                       const SimOptions& options = {});

struct TableOptions {
  std::uint64_t trials = 10000;
  std::uint64_t seed = 1;
  /// Agreeing-vote bits for the one-round columns of table 2.
  std::int64_t one_round_agree_bits = 0;
  SimOptions sim;
};

/// Table 1: variant-round maxima (k=0, k'=1, K=0) plus the witness column.
/// Table 2: one-round transmitted-bit maxima (K=48) plus the witness column.
/// Each row carries the maximizing (T,C). InvalidArgument for other numbers.
Report table_report(int table, const TableOptions& options);

struct SweepSpec {
  int nodes = 0;
  int threshold = 0;
  std::vector<Scheme> schemes;
  std::vector<double> pfs;
  int c_first = 0;
  int c_last = -1;  // empty range when c_last < c_first
  std::int64_t agree_bits = 0;
  std::int64_t disagree_bits = 1;
  std::int64_t mac_bits = 4;
  std::int64_t result_bits = 0;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 1;
  std::optional<Metric> metric;
  SimOptions sim;
};

/// One point per scheme x P_f x C. Closed forms where they exist, Monte Carlo
/// otherwise.
Report sweep_report(const SweepSpec& spec);

}  // namespace fa
