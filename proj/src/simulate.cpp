#include "fusionassure/simulate.hpp"

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace fa {

TrialMetrics run_trial(Scheme scheme, const ProtocolParams& params, RngStream& rng, const OneRoundOptions& options) {
  const Roster roster = sample_roster(params.nodes, params.compromised, rng);
  RngVoteSource coin(rng, params.pf);
  return run_scheme(scheme, params, roster, coin, options);
}

AggregateMetrics monte_carlo(Scheme scheme, const ProtocolParams& params, std::uint64_t trials, std::uint64_t seed,
                             const SimOptions& options) {
  if (trials == 0) throw Error(ErrorCode::InvalidArgument, "trials must be at least 1");
  validate(params);

  unsigned threads = options.threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : options.threads;
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, trials));

  auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
    AggregateMetrics partial(seed);
    for (std::uint64_t i = begin; i < end; ++i) {
      RngStream rng = RngStream::for_trial(seed, i);
      partial.add(run_trial(scheme, params, rng, options.one_round));
    }
    return partial;
  };

  if (threads <= 1) return run_range(0, trials);

  std::vector<AggregateMetrics> partials(threads, AggregateMetrics(seed));
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> workers;
  workers.reserve(threads);
  const std::uint64_t chunk = (trials + threads - 1) / threads;
  for (unsigned w = 0; w < threads; ++w) {
    const std::uint64_t begin = std::min(trials, chunk * w);
    const std::uint64_t end = std::min(trials, begin + chunk);
    workers.emplace_back([&, w, begin, end] {
      try {
        partials[w] = run_range(begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  AggregateMetrics total(seed);
  for (const auto& part : partials) total.merge(part);
  return total;
}

}  // namespace fa
