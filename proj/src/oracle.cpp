#include "fusionassure/oracle.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "fusionassure/combinatorics.hpp"

namespace fa {
namespace {

// Replays a fixed prefix of coin outcomes, then answers "reject" and records
// how deep the machine went.
class ScriptedVoteSource final : public VoteSource {
 public:
  explicit ScriptedVoteSource(std::vector<bool>& script) : script_(script) {}

  bool endorse_forgery() override {
    if (used_ == script_.size()) script_.push_back(false);
    return script_[used_++];
  }
  std::size_t used() const { return used_; }

 private:
  std::vector<bool>& script_;
  std::size_t used_ = 0;
};

class Accumulator {
 public:
  void add(const TrialMetrics& t, const Rational& weight) {
    ++paths_;
    if (weight.is_zero()) return;
    overhead_ = overhead_ + weight * Rational(t.overhead_bits);
    transmitted_ = transmitted_ + weight * Rational(t.transmitted_bits);
    rounds_ = rounds_ + weight * Rational(t.round_delay);
    polls_ = polls_ + weight * Rational(t.polling_delay);
    auto& p = outcomes_[index_of(t.outcome)];
    p = p + weight;
    max_copies_ = std::max(max_copies_, t.correct_copies_by_uncompromised);
    max_rounds_ = std::max(max_rounds_, t.round_delay);
  }

  OracleResult finish(std::uint64_t placements) const {
    const Rational scale(BigInt(1), BigInt(static_cast<long>(placements)));
    OracleResult r;
    r.metrics.overhead = overhead_ * scale;
    r.metrics.round_delay = rounds_ * scale;
    r.metrics.polling_delay = polls_ * scale;
    r.metrics.transmitted_bits = transmitted_ * scale;
    for (std::size_t i = 0; i < outcomes_.size(); ++i) r.outcome_probability[i] = outcomes_[i] * scale;
    r.max_correct_copies = max_copies_;
    r.max_round_delay = max_rounds_;
    r.placements = placements;
    r.paths = paths_;
    return r;
  }

 private:
  Rational overhead_, transmitted_, rounds_, polls_;
  std::array<Rational, 3> outcomes_;
  int max_copies_ = 0;
  int max_rounds_ = 0;
  std::uint64_t paths_ = 0;
};

std::uint64_t check_size(const ProtocolParams& params, const OracleOptions& options) {
  validate(params);
  if (params.nodes > options.max_nodes) {
    throw Error(ErrorCode::SizeBound, "M=" + std::to_string(params.nodes) + " exceeds oracle bound " +
                                          std::to_string(options.max_nodes));
  }
  const BigInt count = binom(params.nodes, params.compromised);
  if (count > BigInt(std::to_string(options.max_placements))) {
    throw Error(ErrorCode::SizeBound, "C(M,C)=" + count.get_str() + " exceeds placement bound");
  }
  return count.get_ui();
}

// Calls fn(roster) for every arrangement of C compromised among M positions.
template <typename Fn>
void for_each_placement(int nodes, int compromised, Fn&& fn) {
  std::vector<NodeKind> order(static_cast<std::size_t>(nodes), NodeKind::Uncompromised);
  std::fill_n(order.begin(), compromised, NodeKind::Compromised);
  // Compromised < Uncompromised, so this starts at the lexicographic minimum.
  do {
    fn(Roster(order));
  } while (std::next_permutation(order.begin(), order.end()));
}

}  // namespace

OracleResult enumerate_exact(Scheme scheme, const ProtocolParams& params, const OracleOptions& options) {
  if (params.pf != 0.0 && params.pf != 1.0) {
    throw Error(ErrorCode::UnsupportedPf, "exhaustive oracle needs P_f in {0,1}");
  }
  const std::uint64_t placements = check_size(params, options);
  Accumulator acc;
  const Rational one(1);
  for_each_placement(params.nodes, params.compromised, [&](const Roster& roster) {
    FixedVoteSource coin(params.pf == 1.0);
    acc.add(run_scheme(scheme, params, roster, coin, options.one_round), one);
  });
  return acc.finish(placements);
}

OracleResult enumerate_exact_randomized(Scheme scheme, const ProtocolParams& params, int vote_rng_depth,
                                        const OracleOptions& options) {
  const std::uint64_t placements = check_size(params, options);
  if (vote_rng_depth < 0) throw Error(ErrorCode::InvalidArgument, "vote_rng_depth must be non-negative");
  const Rational endorse = Rational::from_double(params.pf);
  const Rational reject = Rational(1) - endorse;

  Accumulator acc;
  for_each_placement(params.nodes, params.compromised, [&](const Roster& roster) {
    // Odometer over coin sequences: flip the last "reject" to "endorse" and
    // drop everything after it.
    std::vector<bool> script;
    for (;;) {
      ScriptedVoteSource coin(script);
      const TrialMetrics t = run_scheme(scheme, params, roster, coin, options.one_round);
      const std::size_t used = coin.used();
      if (used > static_cast<std::size_t>(vote_rng_depth)) {
        throw Error(ErrorCode::SizeBound, "path needs more than " + std::to_string(vote_rng_depth) + " coins");
      }
      script.resize(used);
      Rational weight(1);
      for (bool b : script) weight = weight * (b ? endorse : reject);
      acc.add(t, weight);

      while (!script.empty() && script.back()) script.pop_back();
      if (script.empty()) break;
      script.back() = true;
    }
  });
  return acc.finish(placements);
}

}  // namespace fa
