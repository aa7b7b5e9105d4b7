#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "fusionassure/error.hpp"
#include "fusionassure/rational.hpp"

namespace fa {

/// Scalar knobs of one scenario.
struct ProtocolParams {
  int nodes = 0;            // M, fusion nodes
  int threshold = 0;        // T, agreeing witnesses needed
  int compromised = 0;      // C
  double pf = 0.0;          // P_f, compromised witness endorses a forged value
  std::int64_t agree_bits = 0;     // k
  std::int64_t disagree_bits = 0;  // k'
  std::int64_t mac_bits = 0;       // k_w
  std::int64_t result_bits = 0;    // K

  friend bool operator==(const ProtocolParams&, const ProtocolParams&) = default;
};

/// Throws InvalidThreshold, InvalidCompromiseCount, InvalidProbability or
/// InvalidArgument (negative bit cost); returns normally otherwise.
void validate(const ProtocolParams& params);

enum class NodeKind : std::uint8_t { Compromised, Uncompromised };

/// Position 0 is the initially chosen node; 1..M-1 is the witness polling order.
class Roster {
 public:
  Roster() = default;
  explicit Roster(std::vector<NodeKind> order) : order_(std::move(order)) {}

  int size() const { return static_cast<int>(order_.size()); }
  NodeKind operator[](int position) const { return order_[static_cast<std::size_t>(position)]; }
  bool compromised(int position) const { return (*this)[position] == NodeKind::Compromised; }
  int compromised_count() const;
  const std::vector<NodeKind>& order() const { return order_; }

  /// Throws InvalidArgument unless size() == M and compromised_count() == C.
  void check_against(const ProtocolParams& params) const;

  friend bool operator==(const Roster&, const Roster&) = default;

 private:
  std::vector<NodeKind> order_;
};

enum class Outcome : std::uint8_t { ValidAccepted, NoValidResult, ForgedAccepted };
inline constexpr std::array<Outcome, 3> kAllOutcomes = {
    Outcome::ValidAccepted, Outcome::NoValidResult, Outcome::ForgedAccepted};

std::string_view outcome_name(Outcome outcome) noexcept;
inline std::size_t index_of(Outcome o) { return static_cast<std::size_t>(o); }

/// One protocol execution.
///
/// `overhead_bits` counts bits sent to the base station by uncompromised nodes,
/// minus one copy of the correct result if one was sent. `transmitted_bits` is
/// the same total without that subtraction.
struct TrialMetrics {
  std::int64_t overhead_bits = 0;
  std::int64_t transmitted_bits = 0;
  int round_delay = 0;
  int polling_delay = 0;
  Outcome outcome = Outcome::NoValidResult;
  int correct_copies_by_uncompromised = 0;
  int distinct_results = 0;

  friend bool operator==(const TrialMetrics&, const TrialMetrics&) = default;
};

/// Expected values as exact rationals.
struct ExactMetrics {
  Rational overhead;
  Rational round_delay;
  Rational polling_delay;
  std::optional<Rational> transmitted_bits;

  friend bool operator==(const ExactMetrics&, const ExactMetrics&) = default;
};

/// ExactMetrics tagged with the outcome the regime guarantees. `metrics` is empty
/// when no closed form applies (forged acceptance in the witness scheme).
struct TaggedMetrics {
  Outcome outcome = Outcome::NoValidResult;
  std::optional<ExactMetrics> metrics;
};

enum class Metric : std::uint8_t { Overhead, TransmittedBits, RoundDelay, PollingDelay };
inline constexpr std::array<Metric, 4> kAllMetrics = {
    Metric::Overhead, Metric::TransmittedBits, Metric::RoundDelay, Metric::PollingDelay};
std::string_view metric_name(Metric metric) noexcept;

/// Monte Carlo summary. Sums are kept as integers so that any partition of the
/// trials reduces to the same totals.
class AggregateMetrics {
 public:
  AggregateMetrics() = default;
  explicit AggregateMetrics(std::uint64_t seed) : seed_(seed) {}

  void add(const TrialMetrics& trial);
  void merge(const AggregateMetrics& other);

  std::uint64_t trials() const { return trials_; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t outcome_count(Outcome o) const { return outcome_counts_[index_of(o)]; }

  double mean(Metric metric) const;
  /// Standard error of the mean; 0 for a single trial.
  double standard_error(Metric metric) const;
  std::int64_t sum(Metric metric) const { return sums_[slot(metric)]; }

  double mean_overhead() const { return mean(Metric::Overhead); }
  double mean_round_delay() const { return mean(Metric::RoundDelay); }
  double mean_polling_delay() const { return mean(Metric::PollingDelay); }
  double stderr_overhead() const { return standard_error(Metric::Overhead); }

  /// Largest correct_copies_by_uncompromised seen in any trial.
  int max_correct_copies() const { return max_correct_copies_; }
  int max_round_delay() const { return max_round_delay_; }

  friend bool operator==(const AggregateMetrics&, const AggregateMetrics&) = default;

 private:
  static std::size_t slot(Metric m) { return static_cast<std::size_t>(m); }

  std::uint64_t seed_ = 0;
  std::uint64_t trials_ = 0;
  std::array<std::int64_t, 4> sums_{};
  std::array<std::int64_t, 4> sum_squares_{};
  std::array<std::uint64_t, 3> outcome_counts_{};
  int max_correct_copies_ = 0;
  int max_round_delay_ = 0;
};

}  // namespace fa
