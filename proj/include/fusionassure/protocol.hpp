#pragma once

// Executable state machines for the three assurance schemes. Randomness enters
// only through the roster and a VoteSource, so the same machines serve the
// Monte Carlo simulator and the exhaustive oracle.

#include <optional>
#include <string_view>

#include "fusionassure/core.hpp"
#include "fusionassure/rng.hpp"

namespace fa {

enum class Scheme : std::uint8_t { WitnessBased, VariantRound, OneRound };

/// Short CLI names: "witness", "vr", "or".
std::string_view scheme_name(Scheme scheme) noexcept;
std::optional<Scheme> parse_scheme(std::string_view name) noexcept;

/// A fusion result as seen by the base station. Id 0 is the correct result;
/// every forged value gets a fresh positive id.
struct FusionValue {
  int id = 0;

  static constexpr FusionValue correct() { return FusionValue{0}; }
  bool forged() const { return id != 0; }
  friend bool operator==(const FusionValue&, const FusionValue&) = default;
};

enum class Vote : std::uint8_t { Agree, Disagree };

/// The P_f coin: asked once each time a compromised witness is presented a
/// forged value.
class VoteSource {
 public:
  virtual ~VoteSource() = default;
  virtual bool endorse_forgery() = 0;
};

class RngVoteSource final : public VoteSource {
 public:
  RngVoteSource(RngStream& rng, double pf) : rng_(rng), pf_(pf) {}
  bool endorse_forgery() override { return rng_.bernoulli(pf_); }

 private:
  RngStream& rng_;
  double pf_;
};

class FixedVoteSource final : public VoteSource {
 public:
  explicit FixedVoteSource(bool endorse) : endorse_(endorse) {}
  bool endorse_forgery() override { return endorse_; }

 private:
  bool endorse_;
};

/// Hands out unique forged values within one trial.
class ForgeryMint {
 public:
  FusionValue fresh() { return FusionValue{next_++}; }

 private:
  int next_ = 1;
};

/// Compromised witness: rejects the correct value, endorses a forged one when
/// the coin says so.
Vote adversary_vote(const FusionValue& presented, VoteSource& coin);
Vote adversary_vote(const FusionValue& presented, double pf, RngStream& rng);
/// What a compromised node transmits: a value nobody else holds.
FusionValue adversary_value(ForgeryMint& mint);

/// Uniform arrangement of C compromised and M-C uncompromised nodes.
Roster sample_roster(int nodes, int compromised, RngStream& rng);

/// Witness scheme: roster positions 0, 1, ... are chosen in turn. Each chosen
/// node sends its result plus M-1 MACs; it is accepted when at least T
/// witnesses hold the same value. After M-T rejections no valid result exists.
TrialMetrics run_witness_based(const ProtocolParams& params, const Roster& roster);

/// Variant-round scheme. NonTermination if more than M rounds are needed.
TrialMetrics run_variant_round(const ProtocolParams& params, const Roster& roster, VoteSource& coin);

struct OneRoundOptions {
  /// Count the chosen node's own result as its first vote.
  bool chosen_counts_as_vote = false;
};

/// One-round scheme: every witness is polled at most once and the base
/// station keeps all received results with their vote counts.
TrialMetrics run_one_round(const ProtocolParams& params, const Roster& roster, VoteSource& coin,
                           const OneRoundOptions& options = {});

TrialMetrics run_scheme(Scheme scheme, const ProtocolParams& params, const Roster& roster,
                        VoteSource& coin, const OneRoundOptions& options = {});

}  // namespace fa
