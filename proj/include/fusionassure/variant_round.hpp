#pragma once

// Exact expectations for the variant-round direct-voting scheme under the two
// deterministic adversaries: P_f = 0 (compromised witnesses reject everything)
// and P_f = 1 (they endorse every forged value).

#include <optional>
#include <utility>
#include <vector>

#include "fusionassure/core.hpp"

namespace fa::vr {

enum class Regime { Case1NoValid, Case2Valid };

/// Case1 when C >= M-T, Case2 otherwise.
Regime regime_of(int nodes, int threshold, int compromised);

/// Probability mass over a stop index (1-based witness position).
using StopDistribution = std::vector<std::pair<int, Rational>>;

// Stop distributions of the individual polling rounds. `first_stop` is the
// first-round stop index the second round is conditioned on.
namespace dist {

/// Chosen uncompromised, C >= M-T: first round ends at the (M-T)-th disagreement.
StopDistribution first_round_honest_chosen_no_valid(int m, int t, int c);
/// Chosen compromised, P_f = 1: first round ends at the (M-T)-th honest disagreement.
StopDistribution first_round_forged_chosen(int m, int t, int c);
/// P_f = 1, C >= M-T, second round after a compromised first chosen node.
StopDistribution second_round_after_forged(int m, int t, int c, int first_stop);
/// P_f = 1, C >= M-T, second round after an uncompromised first chosen node.
StopDistribution second_round_after_honest(int m, int t, int c, int first_stop);
/// Chosen uncompromised, C < M-T: the round ends at the T-th agreement.
StopDistribution first_round_honest_chosen_valid(int m, int t, int c);
/// P_f = 1, C < M-T, second round (honest chosen) ending at the T-th agreement.
StopDistribution second_round_valid(int m, int t, int c, int first_stop);

}  // namespace dist

/// Expectations conditioned on the kind of the first chosen node, plus the
/// unconditional mix. A branch is empty when its probability is zero.
struct SplitMetrics {
  std::optional<ExactMetrics> forged_first;
  std::optional<ExactMetrics> honest_first;
  ExactMetrics combined;
};

// P_f = 0. Zero for M <= T. Case1 requires C >= M-T, Case2 requires C < M-T
// (RegimeError otherwise).
ExactMetrics pf0_case1(int m, int t, int c, std::int64_t k, std::int64_t k_prime);
ExactMetrics pf0_case2(int m, int t, int c, std::int64_t k, std::int64_t k_prime);

// P_f = 1. Require 2T+1 >= M (PreconditionError) and M-T <= C <= T for Case1,
// C < M-T for Case2 (RegimeError).
SplitMetrics pf1_case1_split(int m, int t, int c, std::int64_t k, std::int64_t k_prime);
SplitMetrics pf1_case2_split(int m, int t, int c, std::int64_t k, std::int64_t k_prime);
ExactMetrics pf1_case1(int m, int t, int c, std::int64_t k, std::int64_t k_prime);
ExactMetrics pf1_case2(int m, int t, int c, std::int64_t k, std::int64_t k_prime);

/// Dispatch on (P_f, regime). Fractional P_f raises UnsupportedPf; P_f = 1 with
/// C > T raises RegimeError. Case1 is tagged NoValidResult, Case2 ValidAccepted.
TaggedMetrics metrics(const ProtocolParams& params);

}  // namespace fa::vr
