#pragma once

#include <cstdint>

#include "fusionassure/protocol.hpp"

namespace fa {

struct SimOptions {
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 1;
  OneRoundOptions one_round;
};

/// One trial drawn from `rng`: roster first, then vote coins.
TrialMetrics run_trial(Scheme scheme, const ProtocolParams& params, RngStream& rng,
                       const OneRoundOptions& options = {});

/// Trial i uses RngStream::for_trial(seed, i), so results do not depend on the
/// thread count. InvalidArgument when trials == 0.
AggregateMetrics monte_carlo(Scheme scheme, const ProtocolParams& params, std::uint64_t trials,
                             std::uint64_t seed, const SimOptions& options = {});

}  // namespace fa
