#include "fusionassure/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fa {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidThreshold: return "InvalidThreshold";
    case ErrorCode::InvalidCompromiseCount: return "InvalidCompromiseCount";
    case ErrorCode::InvalidProbability: return "InvalidProbability";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::RegimeError: return "RegimeError";
    case ErrorCode::PreconditionError: return "PreconditionError";
    case ErrorCode::UnsupportedPf: return "UnsupportedPf";
    case ErrorCode::SizeBound: return "SizeBound";
    case ErrorCode::NonTermination: return "NonTermination";
  }
  return "Unknown";
}

void validate(const ProtocolParams& p) {
  if (p.threshold < 1 || p.threshold > p.nodes - 1) {
    throw Error(ErrorCode::InvalidThreshold,
                "T=" + std::to_string(p.threshold) + " outside 1.." + std::to_string(p.nodes - 1));
  }
  if (p.compromised < 0 || p.compromised > p.nodes) {
    throw Error(ErrorCode::InvalidCompromiseCount,
                "C=" + std::to_string(p.compromised) + " outside 0.." + std::to_string(p.nodes));
  }
  if (!(p.pf >= 0.0 && p.pf <= 1.0)) {
    throw Error(ErrorCode::InvalidProbability, "P_f=" + std::to_string(p.pf) + " outside [0,1]");
  }
  if (p.agree_bits < 0 || p.disagree_bits < 0 || p.mac_bits < 0 || p.result_bits < 0) {
    throw Error(ErrorCode::InvalidArgument, "bit costs must be non-negative");
  }
}

int Roster::compromised_count() const {
  return static_cast<int>(std::count(order_.begin(), order_.end(), NodeKind::Compromised));
}

void Roster::check_against(const ProtocolParams& params) const {
  if (size() != params.nodes || compromised_count() != params.compromised) {
    throw Error(ErrorCode::InvalidArgument,
                "roster of " + std::to_string(size()) + " nodes with " +
                    std::to_string(compromised_count()) + " compromised does not match M=" +
                    std::to_string(params.nodes) + ", C=" + std::to_string(params.compromised));
  }
}

std::string_view outcome_name(Outcome outcome) noexcept {
  switch (outcome) {
    case Outcome::ValidAccepted: return "ValidAccepted";
    case Outcome::NoValidResult: return "NoValidResult";
    case Outcome::ForgedAccepted: return "ForgedAccepted";
  }
  return "Unknown";
}

std::string_view metric_name(Metric metric) noexcept {
  switch (metric) {
    case Metric::Overhead: return "overhead";
    case Metric::TransmittedBits: return "transmitted_bits";
    case Metric::RoundDelay: return "round_delay";
    case Metric::PollingDelay: return "polling_delay";
  }
  return "unknown";
}

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw Error(ErrorCode::InvalidArgument, "metric sum overflows 64 bits");
  }
  return out;
}

std::int64_t checked_square(std::int64_t a) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, a, &out)) {
    throw Error(ErrorCode::InvalidArgument, "metric square overflows 64 bits");
  }
  return out;
}

}  // namespace

void AggregateMetrics::add(const TrialMetrics& t) {
  const std::array<std::int64_t, 4> values = {t.overhead_bits, t.transmitted_bits, t.round_delay,
                                              t.polling_delay};
  for (std::size_t i = 0; i < values.size(); ++i) {
    sums_[i] = checked_add(sums_[i], values[i]);
    sum_squares_[i] = checked_add(sum_squares_[i], checked_square(values[i]));
  }
  ++outcome_counts_[index_of(t.outcome)];
  ++trials_;
  max_correct_copies_ = std::max(max_correct_copies_, t.correct_copies_by_uncompromised);
  max_round_delay_ = std::max(max_round_delay_, t.round_delay);
}

void AggregateMetrics::merge(const AggregateMetrics& other) {
  for (std::size_t i = 0; i < sums_.size(); ++i) {
    sums_[i] = checked_add(sums_[i], other.sums_[i]);
    sum_squares_[i] = checked_add(sum_squares_[i], other.sum_squares_[i]);
  }
  for (std::size_t i = 0; i < outcome_counts_.size(); ++i) outcome_counts_[i] += other.outcome_counts_[i];
  trials_ += other.trials_;
  max_correct_copies_ = std::max(max_correct_copies_, other.max_correct_copies_);
  max_round_delay_ = std::max(max_round_delay_, other.max_round_delay_);
}

double AggregateMetrics::mean(Metric metric) const {
  if (trials_ == 0) return 0.0;
  return static_cast<double>(sums_[slot(metric)]) / static_cast<double>(trials_);
}

double AggregateMetrics::standard_error(Metric metric) const {
  if (trials_ < 2) return 0.0;
  const auto n = static_cast<long double>(trials_);
  const auto s = static_cast<long double>(sums_[slot(metric)]);
  const auto ss = static_cast<long double>(sum_squares_[slot(metric)]);
  const long double variance = std::max<long double>(0.0L, (ss - s * s / n) / (n - 1.0L));
  return static_cast<double>(std::sqrt(variance / n));
}

}  // namespace fa
