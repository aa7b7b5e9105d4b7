#pragma once

// Closed forms for the MAC-based witness scheme: a chosen node forwards the
// witnesses' k_w-bit MACs together with its own result.

#include "fusionassure/core.hpp"

namespace fa::witness {

/// Probability that the base station accepts a forged result when a compromised
/// chosen node guesses the MACs: sum_{i=T}^{M-1} C(M-1,i) p^i (1-p)^(M-1-i), p = 2^-k_w.
Rational forged_acceptance_prob(int nodes, int threshold, int mac_bits);

/// Smallest k_w from the majority-rule sizing k_w = ceil(2 (10/(M-1) + 1)),
/// which keeps the forgery probability at or below 2^-10.
int mac_bits_for_pe_bound(int nodes);

/// Probability that i of the M-T polled chosen nodes are uncompromised.
/// `polled_uncompromised_prob` uses C(M-T,i) C(T,M-C-i) / C(M,C);
/// `polled_uncompromised_prob_by_draws` uses C(M-C,i) C(C,M-T-i) / C(M,M-T).
Rational polled_uncompromised_prob(int nodes, int threshold, int compromised, int i);
Rational polled_uncompromised_prob_by_draws(int nodes, int threshold, int compromised, int i);

/// Invalid regime M-T <= C <= T: every one of the M-T chosen nodes fails.
/// transmitted_bits is the same expectation without the free correct copy.
ExactMetrics invalid_metrics(const ProtocolParams& params);

/// Valid regime C < M-T: nodes are chosen until an uncompromised one answers.
ExactMetrics valid_metrics(const ProtocolParams& params);

/// Regime dispatch. C > T is checked first and yields ForgedAccepted without
/// metrics; then C < M-T (ValidAccepted) and M-T <= C <= T (NoValidResult).
TaggedMetrics metrics(const ProtocolParams& params);

}  // namespace fa::witness
