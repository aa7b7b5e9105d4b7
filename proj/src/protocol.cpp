#include "fusionassure/protocol.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace fa {

std::string_view scheme_name(Scheme scheme) noexcept {
  switch (scheme) {
    case Scheme::WitnessBased: return "witness";
    case Scheme::VariantRound: return "vr";
    case Scheme::OneRound: return "or";
  }
  return "unknown";
}

std::optional<Scheme> parse_scheme(std::string_view name) noexcept {
  if (name == "witness") return Scheme::WitnessBased;
  if (name == "vr") return Scheme::VariantRound;
  if (name == "or") return Scheme::OneRound;
  return std::nullopt;
}

Vote adversary_vote(const FusionValue& presented, VoteSource& coin) {
  if (!presented.forged()) return Vote::Disagree;
  return coin.endorse_forgery() ? Vote::Agree : Vote::Disagree;
}

Vote adversary_vote(const FusionValue& presented, double pf, RngStream& rng) {
  RngVoteSource coin(rng, pf);
  return adversary_vote(presented, coin);
}

FusionValue adversary_value(ForgeryMint& mint) { return mint.fresh(); }

Roster sample_roster(int nodes, int compromised, RngStream& rng) {
  if (nodes < 0 || compromised < 0 || compromised > nodes) {
    throw Error(ErrorCode::InvalidCompromiseCount, "need 0 <= C <= M");
  }
  std::vector<NodeKind> order(static_cast<std::size_t>(nodes), NodeKind::Uncompromised);
  std::fill_n(order.begin(), compromised, NodeKind::Compromised);
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[rng.uniform_below(i)]);
  }
  return Roster(std::move(order));
}

namespace {

// Bits sent to the base station by uncompromised nodes. The first correct
// result they send is the free copy.
class BitLedger {
 public:
  explicit BitLedger(const ProtocolParams& p) : result_bits_(p.result_bits) {}

  void send(std::int64_t bits) {
    overhead_ += bits;
    transmitted_ += bits;
  }

  void send_correct_result() {
    transmitted_ += result_bits_;
    if (copies_ > 0) overhead_ += result_bits_;
    ++copies_;
  }

  void finish(TrialMetrics& out) const {
    out.overhead_bits = overhead_;
    out.transmitted_bits = transmitted_;
    out.correct_copies_by_uncompromised = copies_;
  }

 private:
  std::int64_t result_bits_;
  std::int64_t overhead_ = 0;
  std::int64_t transmitted_ = 0;
  int copies_ = 0;
};

Outcome accepted(const FusionValue& v) { return v.forged() ? Outcome::ForgedAccepted : Outcome::ValidAccepted; }

void check_inputs(const ProtocolParams& params, const Roster& roster) {
  validate(params);
  roster.check_against(params);
}

}  // namespace

TrialMetrics run_witness_based(const ProtocolParams& p, const Roster& roster) {
  check_inputs(p, roster);
  const int m = p.nodes, t = p.threshold, c = p.compromised;
  // Witnesses holding the chosen node's value: honest peers, or colluders.
  const int honest_support = m - c - 1;
  const int colluding_support = c - 1;

  TrialMetrics out;
  BitLedger ledger(p);
  ForgeryMint mint;
  out.outcome = Outcome::NoValidResult;
  for (int position = 0; position < m - t; ++position) {
    ++out.round_delay;
    out.polling_delay += m - 1;
    ++out.distinct_results;
    if (roster.compromised(position)) {
      const FusionValue forged = adversary_value(mint);
      if (colluding_support >= t) {
        out.outcome = accepted(forged);
        break;
      }
    } else {
      ledger.send_correct_result();
      ledger.send(std::int64_t{m - 1} * p.mac_bits);
      if (honest_support >= t) {
        out.outcome = Outcome::ValidAccepted;
        break;
      }
    }
  }
  ledger.finish(out);
  // Repeated honest transmissions carry the same correct value.
  if (out.correct_copies_by_uncompromised > 1) out.distinct_results -= out.correct_copies_by_uncompromised - 1;
  return out;
}

TrialMetrics run_variant_round(const ProtocolParams& p, const Roster& roster, VoteSource& coin) {
  check_inputs(p, roster);
  const int m = p.nodes, t = p.threshold;

  TrialMetrics out;
  BitLedger ledger(p);
  ForgeryMint mint;
  std::set<int> received;

  int chosen = 0;
  std::vector<int> witnesses(static_cast<std::size_t>(m - 1));
  std::iota(witnesses.begin(), witnesses.end(), 1);

  for (int round = 1;; ++round) {
    if (round > m) throw Error(ErrorCode::NonTermination, "variant-round exceeded M rounds");
    out.round_delay = round;

    FusionValue value = FusionValue::correct();
    if (roster.compromised(chosen)) {
      value = adversary_value(mint);
    } else {
      ledger.send_correct_result();
    }
    received.insert(value.id);

    const int pool = static_cast<int>(witnesses.size());
    int agree = 0, disagree = 0, polled = 0, first_dissent = -1;
    std::vector<bool> agreed(witnesses.size(), false);
    while (agree < t && disagree < pool - t + 1 && polled < pool) {
      const int node = witnesses[static_cast<std::size_t>(polled)];
      const bool honest = !roster.compromised(node);
      const Vote vote = honest ? (value.forged() ? Vote::Disagree : Vote::Agree) : adversary_vote(value, coin);
      ++out.polling_delay;
      if (vote == Vote::Agree) {
        ++agree;
        agreed[static_cast<std::size_t>(polled)] = true;
        if (honest) ledger.send(p.agree_bits);
      } else {
        ++disagree;
        if (first_dissent < 0) first_dissent = polled;
        if (honest) ledger.send(p.disagree_bits);
      }
      ++polled;
    }

    if (agree == t) {
      out.outcome = accepted(value);
      break;
    }
    if (agree > pool - t - 1) {
      out.outcome = Outcome::NoValidResult;
      break;
    }
    if (first_dissent < 0) throw Error(ErrorCode::NonTermination, "no dissenting witness to choose");

    // Drop the agreeing witnesses and promote the first dissenter; everyone
    // else keeps their relative order.
    chosen = witnesses[static_cast<std::size_t>(first_dissent)];
    std::vector<int> next;
    next.reserve(witnesses.size());
    for (int idx = 0; idx < pool; ++idx) {
      if (agreed[static_cast<std::size_t>(idx)] || idx == first_dissent) continue;
      next.push_back(witnesses[static_cast<std::size_t>(idx)]);
    }
    witnesses = std::move(next);
  }

  out.distinct_results = static_cast<int>(received.size());
  ledger.finish(out);
  return out;
}

TrialMetrics run_one_round(const ProtocolParams& p, const Roster& roster, VoteSource& coin,
                           const OneRoundOptions& options) {
  check_inputs(p, roster);
  const int m = p.nodes, t = p.threshold;

  struct Candidate {
    FusionValue value;
    int votes = 0;
    int last_activity = 0;
  };

  TrialMetrics out;
  BitLedger ledger(p);
  ForgeryMint mint;
  std::vector<Candidate> stored;

  FusionValue first = FusionValue::correct();
  if (roster.compromised(0)) {
    first = adversary_value(mint);
  } else {
    ledger.send_correct_result();
  }
  stored.push_back({first, options.chosen_counts_as_vote ? 1 : 0, 0});
  std::size_t voting = 0;
  out.round_delay = 1;
  out.outcome = Outcome::NoValidResult;

  // Voting result: most votes, ties to the most recent activity.
  auto reselect = [&] {
    for (std::size_t i = 0; i < stored.size(); ++i) {
      const auto& a = stored[i];
      const auto& b = stored[voting];
      if (a.votes > b.votes || (a.votes == b.votes && a.last_activity > b.last_activity)) voting = i;
    }
  };
  auto should_stop = [&](int unpolled) {
    const Candidate& lead = stored[voting];
    if (lead.votes >= t) {
      out.outcome = accepted(lead.value);
      return true;
    }
    if (unpolled + lead.votes < t) {
      out.outcome = Outcome::NoValidResult;
      return true;
    }
    return false;
  };

  if (!should_stop(m - 1)) {
    for (int position = 1; position < m; ++position) {
      ++out.polling_delay;
      const bool honest = !roster.compromised(position);
      const FusionValue presented = stored[voting].value;
      const Vote vote =
          honest ? (presented.forged() ? Vote::Disagree : Vote::Agree) : adversary_vote(presented, coin);
      if (vote == Vote::Agree) {
        ++stored[voting].votes;
        stored[voting].last_activity = position;
        if (honest) ledger.send(p.agree_bits);
      } else {
        FusionValue own = FusionValue::correct();
        if (honest) {
          ledger.send_correct_result();
        } else {
          own = adversary_value(mint);
        }
        auto it = std::find_if(stored.begin(), stored.end(), [&](const Candidate& s) { return s.value == own; });
        if (it != stored.end()) {
          ++it->votes;
          it->last_activity = position;
        } else {
          stored.push_back({own, 0, position});
        }
      }
      reselect();
      if (should_stop(m - 1 - position)) break;
    }
  }

  out.distinct_results = static_cast<int>(stored.size());
  ledger.finish(out);
  return out;
}

TrialMetrics run_scheme(Scheme scheme, const ProtocolParams& params, const Roster& roster, VoteSource& coin,
                        const OneRoundOptions& options) {
  switch (scheme) {
    case Scheme::WitnessBased: return run_witness_based(params, roster);
    case Scheme::VariantRound: return run_variant_round(params, roster, coin);
    case Scheme::OneRound: return run_one_round(params, roster, coin, options);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown scheme");
}

}  // namespace fa
