#pragma once

// Exact expectations by running the protocol machines on every placement of
// the compromised nodes (and, for fractional P_f, every vote-coin sequence).

#include <array>
#include <cstdint>

#include "fusionassure/protocol.hpp"

namespace fa {

struct OracleOptions {
  int max_nodes = 12;
  std::uint64_t max_placements = 1'000'000;
  OneRoundOptions one_round;
};

struct OracleResult {
  /// transmitted_bits is always filled.
  ExactMetrics metrics;
  std::array<Rational, 3> outcome_probability;  // indexed by index_of(Outcome)
  /// Largest correct_copies_by_uncompromised over all paths with nonzero weight.
  int max_correct_copies = 0;
  int max_round_delay = 0;
  std::uint64_t placements = 0;
  std::uint64_t paths = 0;

  const Rational& probability(Outcome o) const { return outcome_probability[index_of(o)]; }
};

/// P_f must be 0 or 1 (UnsupportedPf otherwise). SizeBound when M exceeds
/// max_nodes or C(M,C) exceeds max_placements.
OracleResult enumerate_exact(Scheme scheme, const ProtocolParams& params, const OracleOptions& options = {});

/// Any P_f in [0,1]; each coin is weighted P_f / 1-P_f using the exact value of
/// the double. SizeBound when a path needs more than `vote_rng_depth` coins.
OracleResult enumerate_exact_randomized(Scheme scheme, const ProtocolParams& params, int vote_rng_depth,
                                        const OracleOptions& options = {});

}  // namespace fa
