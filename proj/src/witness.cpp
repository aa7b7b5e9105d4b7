#include "fusionassure/witness.hpp"

#include <string>

#include "fusionassure/combinatorics.hpp"

namespace fa::witness {

Rational forged_acceptance_prob(int nodes, int threshold, int mac_bits) {
  if (threshold < 1 || threshold > nodes - 1) {
    throw Error(ErrorCode::InvalidThreshold, "T must lie in 1..M-1");
  }
  if (mac_bits < 1) throw Error(ErrorCode::InvalidArgument, "k_w must be at least 1");
  const Rational guess = pow2(-mac_bits);
  const Rational miss = Rational(1) - guess;
  Rational total;
  for (int i = threshold; i <= nodes - 1; ++i) {
    Rational term(binom(nodes - 1, i));
    for (int a = 0; a < i; ++a) term *= guess;
    for (int b = 0; b < nodes - 1 - i; ++b) term *= miss;
    total += term;
  }
  return total;
}

int mac_bits_for_pe_bound(int nodes) {
  if (nodes < 2) throw Error(ErrorCode::InvalidArgument, "need at least two fusion nodes");
  // ceil(2 * (10 / (M-1) + 1)) == 2 + ceil(20 / (M-1))
  const int witnesses = nodes - 1;
  return 2 + (20 + witnesses - 1) / witnesses;
}

Rational polled_uncompromised_prob(int m, int t, int c, int i) {
  return Rational(binom(m - t, i) * binom(t, m - c - i), binom(m, c));
}

Rational polled_uncompromised_prob_by_draws(int m, int t, int c, int i) {
  return Rational(binom(m - c, i) * binom(c, m - t - i), binom(m, m - t));
}

ExactMetrics invalid_metrics(const ProtocolParams& p) {
  validate(p);
  const int m = p.nodes, t = p.threshold, c = p.compromised;
  if (c < m - t || c > t) {
    throw Error(ErrorCode::RegimeError,
                "invalid-result regime needs M-T <= C <= T, got C=" + std::to_string(c));
  }
  Rational overhead, transmitted;
  for (int i = 1; i <= m - t; ++i) {
    const Rational prob = polled_uncompromised_prob(m, t, c, i);
    const Rational macs = Rational(std::int64_t{m - 1} * i) * Rational(p.mac_bits);
    overhead += prob * (macs + Rational(p.result_bits) * Rational(i - 1));
    transmitted += prob * (macs + Rational(p.result_bits) * Rational(i));
  }
  ExactMetrics out;
  out.overhead = overhead;
  out.transmitted_bits = transmitted;
  out.round_delay = Rational(m - t);
  out.polling_delay = Rational(std::int64_t{m - t} * (m - 1));
  return out;
}

ExactMetrics valid_metrics(const ProtocolParams& p) {
  validate(p);
  const int m = p.nodes, t = p.threshold, c = p.compromised;
  if (c >= m - t) {
    throw Error(ErrorCode::RegimeError, "valid-result regime needs C < M-T, got C=" + std::to_string(c));
  }
  Rational rounds;
  for (int i = 1; i <= c + 1; ++i) {
    rounds += Rational(binom(m - i, c - i + 1) * i, binom(m, c));
  }
  ExactMetrics out;
  out.overhead = Rational(std::int64_t{m - 1}) * Rational(p.mac_bits);
  out.transmitted_bits = out.overhead + Rational(p.result_bits);
  out.round_delay = rounds;
  out.polling_delay = rounds * Rational(m - 1);
  return out;
}

TaggedMetrics metrics(const ProtocolParams& p) {
  validate(p);
  const int m = p.nodes, t = p.threshold, c = p.compromised;
  if (c > t) return {Outcome::ForgedAccepted, std::nullopt};
  if (c < m - t) return {Outcome::ValidAccepted, valid_metrics(p)};
  return {Outcome::NoValidResult, invalid_metrics(p)};
}

}  // namespace fa::witness
