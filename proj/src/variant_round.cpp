#include "fusionassure/variant_round.hpp"

#include <map>
#include <string>

#include "fusionassure/combinatorics.hpp"

namespace fa::vr {

namespace {

void check_shape(int m, int t, int c, std::int64_t k, std::int64_t k_prime) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "M must be at least 1");
  if (t < 1) throw Error(ErrorCode::InvalidThreshold, "T must be at least 1");
  if (c < 0 || c > m) throw Error(ErrorCode::InvalidCompromiseCount, "C outside 0..M");
  if (k < 0 || k_prime < 0) throw Error(ErrorCode::InvalidArgument, "vote bit costs must be non-negative");
}

Rational ratio(const BigInt& num, const BigInt& den) { return Rational(num, den); }

ExactMetrics zero_metrics() { return ExactMetrics{Rational(0), Rational(0), Rational(0), std::nullopt}; }

ExactMetrics mix(const Rational& w, const ExactMetrics& a, const Rational& v, const ExactMetrics& b) {
  return ExactMetrics{w * a.overhead + v * b.overhead, w * a.round_delay + v * b.round_delay,
                      w * a.polling_delay + v * b.polling_delay, std::nullopt};
}

ExactMetrics combine(int m, int c, const std::optional<ExactMetrics>& forged,
                     const std::optional<ExactMetrics>& honest) {
  const Rational pc{BigInt(c), BigInt(m)};
  const Rational pu{BigInt(m - c), BigInt(m)};
  return mix(pc, forged.value_or(zero_metrics()), pu, honest.value_or(zero_metrics()));
}

// Sum of P(i) * i * k' over the honest disagreements among the first M-T
// witnesses polled behind a compromised chosen node (everyone disagrees at P_f = 0).
Rational forged_round_disagree_bits(int m, int t, int c, std::int64_t k_prime) {
  Rational total;
  const BigInt orders = binom(m - 1, c - 1);
  for (int i = 0; i <= m - t; ++i) {
    total += ratio(binom(m - t, i) * binom(t - 1, m - c - i), orders) * Rational(i);
  }
  return total * Rational(k_prime);
}

// P_f = 0 recursions, memoized on (M, C); each compromised-chosen branch steps
// to (M-1, C-1), so the depth is at most C.
class Pf0Evaluator {
 public:
  Pf0Evaluator(int t, std::int64_t k, std::int64_t k_prime) : t_(t), k_(k), k_prime_(k_prime) {}

  ExactMetrics case1(int m, int c) {
    if (m <= t_) return zero_metrics();
    const auto key = std::make_pair(m, c);
    if (auto it = memo1_.find(key); it != memo1_.end()) return it->second;

    std::optional<ExactMetrics> forged, honest;
    if (c > 0) {
      const ExactMetrics rest = case1(m - 1, c - 1);
      forged = ExactMetrics{forged_round_disagree_bits(m, t_, c, k_prime_) + rest.overhead,
                            Rational(1) + rest.round_delay, Rational(m - t_) + rest.polling_delay,
                            std::nullopt};
    }
    if (c < m) {
      ExactMetrics h = zero_metrics();
      const int last_multi_round = 2 * m - 2 * t_ - 2;
      for (const auto& [j, p] : dist::first_round_honest_chosen_no_valid(m, t_, c)) {
        h.overhead += p * Rational(std::int64_t{j - m + t_} * k_);
        h.polling_delay += p * Rational(j);
        if (j <= last_multi_round) {
          const std::int64_t rounds = 2 * m - 2 * t_ - j;
          h.round_delay += p * Rational(rounds);
          h.polling_delay += p * Rational(rounds * (rounds - 1) / 2);
        } else {
          h.round_delay += p;
        }
      }
      honest = h;
    }
    return memo1_[key] = combine(m, c, forged, honest);
  }

  ExactMetrics case2(int m, int c) {
    if (m <= t_) return zero_metrics();
    if (c == 0) return ExactMetrics{Rational(std::int64_t{t_} * k_), Rational(1), Rational(t_), std::nullopt};
    const auto key = std::make_pair(m, c);
    if (auto it = memo2_.find(key); it != memo2_.end()) return it->second;

    const ExactMetrics rest = case2(m - 1, c - 1);
    const ExactMetrics forged{forged_round_disagree_bits(m, t_, c, k_prime_) + rest.overhead,
                              Rational(1) + rest.round_delay, Rational(m - t_) + rest.polling_delay,
                              std::nullopt};
    ExactMetrics honest = zero_metrics();
    honest.round_delay = Rational(1);
    for (const auto& [j, p] : dist::first_round_honest_chosen_valid(m, t_, c)) {
      honest.overhead += p * Rational(std::int64_t{t_} * k_);
      honest.polling_delay += p * Rational(j);
    }
    return memo2_[key] = combine(m, c, forged, honest);
  }

 private:
  int t_;
  std::int64_t k_, k_prime_;
  std::map<std::pair<int, int>, ExactMetrics> memo1_, memo2_;
};

void check_pf1(int m, int t) {
  if (2 * t + 1 < m) {
    throw Error(ErrorCode::PreconditionError, "P_f=1 analysis needs 2T+1 >= M");
  }
}

}  // namespace

Regime regime_of(int m, int t, int c) { return c >= m - t ? Regime::Case1NoValid : Regime::Case2Valid; }

namespace dist {

StopDistribution first_round_honest_chosen_no_valid(int m, int t, int c) {
  StopDistribution out;
  const BigInt orders = binom(m - 1, c);
  for (int j = m - t; j <= 2 * m - t - c - 1; ++j) {
    out.emplace_back(j, ratio(binom(j - 1, m - t - 1) * binom(m - j - 1, t + c - m), orders));
  }
  return out;
}

StopDistribution first_round_forged_chosen(int m, int t, int c) {
  StopDistribution out;
  const BigInt orders = binom(m - 1, c - 1);
  for (int i = m - t; i <= m - t + c - 1; ++i) {
    out.emplace_back(i, ratio(binom(i - 1, m - t - 1) * binom(m - i - 1, t - c), orders));
  }
  return out;
}

StopDistribution second_round_after_forged(int m, int t, int c, int i) {
  StopDistribution out;
  const int witnesses = 2 * m - t - i - 2;
  const BigInt orders = binom(m - i - 1, t - c);
  for (int j = witnesses + m - 2 * t; j <= m - c + witnesses - t; ++j) {
    out.emplace_back(j, ratio(binom(j - m + t, 2 * m - 2 * t - i - 2) *
                                  binom(2 * m - t - i - j - 2, t + c - m),
                              orders));
  }
  return out;
}

StopDistribution second_round_after_honest(int m, int t, int c, int i) {
  StopDistribution out;
  const int witnesses = 2 * m - t - i - 2;
  const BigInt orders = binom(m - i - 1, t + c - m);
  for (int j = witnesses + m - 2 * t; j <= witnesses - t + c; ++j) {
    out.emplace_back(j, ratio(binom(j - m + t, 2 * m - 2 * t - i - 2) *
                                  binom(2 * m - t - i - j - 2, t - c),
                              orders));
  }
  return out;
}

StopDistribution first_round_honest_chosen_valid(int m, int t, int c) {
  StopDistribution out;
  const BigInt orders = binom(m - 1, c);
  for (int j = t; j <= t + c; ++j) {
    out.emplace_back(j, ratio(binom(j - 1, t - 1) * binom(m - j - 1, m - c - t - 1), orders));
  }
  return out;
}

StopDistribution second_round_valid(int m, int t, int c, int i) {
  // With M = 2T+1 the M-T-1 = T re-polled first-round dissenters already agree.
  if (m == 2 * t + 1) return {{t, Rational(1)}};
  StopDistribution out;
  const BigInt orders = binom(m - i - 1, t - c);
  for (int j = t; j <= m + c - i - 1; ++j) {
    out.emplace_back(j, ratio(binom(j - m + t, 2 * t - m) * binom(2 * m - t - i - j - 2, m - c - t - 1),
                              orders));
  }
  return out;
}

}  // namespace dist

ExactMetrics pf0_case1(int m, int t, int c, std::int64_t k, std::int64_t k_prime) {
  check_shape(m, t, c, k, k_prime);
  if (regime_of(m, t, c) != Regime::Case1NoValid) {
    throw Error(ErrorCode::RegimeError, "P_f=0 case 1 needs C >= M-T, got C=" + std::to_string(c));
  }
  return Pf0Evaluator(t, k, k_prime).case1(m, c);
}

ExactMetrics pf0_case2(int m, int t, int c, std::int64_t k, std::int64_t k_prime) {
  check_shape(m, t, c, k, k_prime);
  if (regime_of(m, t, c) != Regime::Case2Valid) {
    throw Error(ErrorCode::RegimeError, "P_f=0 case 2 needs C < M-T, got C=" + std::to_string(c));
  }
  return Pf0Evaluator(t, k, k_prime).case2(m, c);
}

SplitMetrics pf1_case1_split(int m, int t, int c, std::int64_t k, std::int64_t k_prime) {
  check_shape(m, t, c, k, k_prime);
  check_pf1(m, t);
  if (c < m - t || c > t) {
    throw Error(ErrorCode::RegimeError, "P_f=1 case 1 needs M-T <= C <= T, got C=" + std::to_string(c));
  }
  SplitMetrics out;
  const int last_two_round = 2 * m - 2 * t - 2;
  if (c > 0) {
    ExactMetrics f = zero_metrics();
    for (const auto& [i, p] : dist::first_round_forged_chosen(m, t, c)) {
      Rational bits(std::int64_t{m - t} * k_prime);
      Rational polls(i);
      if (i <= last_two_round) {
        const int witnesses = 2 * m - t - i - 2;
        for (const auto& [j, q] : dist::second_round_after_forged(m, t, c, i)) {
          bits += q * Rational(std::int64_t{j - witnesses + t - 1} * k);
          polls += q * Rational(j);
        }
        f.round_delay += p * Rational(2);
      } else {
        f.round_delay += p;
      }
      f.overhead += p * bits;
      f.polling_delay += p * polls;
    }
    out.forged_first = f;
  }
  if (c < m) {
    ExactMetrics h = zero_metrics();
    for (const auto& [i, p] : dist::first_round_honest_chosen_no_valid(m, t, c)) {
      Rational bits(std::int64_t{i - m + t} * k);
      Rational polls(i);
      if (i <= last_two_round) {
        const int witnesses = 2 * m - t - i - 2;
        for (const auto& [j, q] : dist::second_round_after_honest(m, t, c, i)) {
          bits += q * Rational(std::int64_t{witnesses - t + 1} * k_prime);
          polls += q * Rational(j);
        }
        h.round_delay += p * Rational(2);
      } else {
        h.round_delay += p;
      }
      h.overhead += p * bits;
      h.polling_delay += p * polls;
    }
    out.honest_first = h;
  }
  out.combined = combine(m, c, out.forged_first, out.honest_first);
  return out;
}

SplitMetrics pf1_case2_split(int m, int t, int c, std::int64_t k, std::int64_t k_prime) {
  check_shape(m, t, c, k, k_prime);
  check_pf1(m, t);
  if (regime_of(m, t, c) != Regime::Case2Valid) {
    throw Error(ErrorCode::RegimeError, "P_f=1 case 2 needs C < M-T, got C=" + std::to_string(c));
  }
  SplitMetrics out;
  if (c > 0) {
    ExactMetrics f = zero_metrics();
    for (const auto& [i, p] : dist::first_round_forged_chosen(m, t, c)) {
      Rational bits(std::int64_t{m - t} * k_prime);
      Rational polls(i);
      for (const auto& [j, q] : dist::second_round_valid(m, t, c, i)) {
        bits += q * Rational(std::int64_t{t} * k);
        polls += q * Rational(j);
      }
      f.overhead += p * bits;
      f.round_delay += p * Rational(2);
      f.polling_delay += p * polls;
    }
    out.forged_first = f;
  }
  ExactMetrics h = zero_metrics();
  h.round_delay = Rational(1);
  for (const auto& [i, p] : dist::first_round_honest_chosen_valid(m, t, c)) {
    h.overhead += p * Rational(std::int64_t{t} * k);
    h.polling_delay += p * Rational(i);
  }
  out.honest_first = h;
  out.combined = combine(m, c, out.forged_first, out.honest_first);
  return out;
}

ExactMetrics pf1_case1(int m, int t, int c, std::int64_t k, std::int64_t k_prime) {
  return pf1_case1_split(m, t, c, k, k_prime).combined;
}

ExactMetrics pf1_case2(int m, int t, int c, std::int64_t k, std::int64_t k_prime) {
  return pf1_case2_split(m, t, c, k, k_prime).combined;
}

TaggedMetrics metrics(const ProtocolParams& p) {
  validate(p);
  const int m = p.nodes, t = p.threshold, c = p.compromised;
  const Regime r = regime_of(m, t, c);
  const Outcome tag = r == Regime::Case1NoValid ? Outcome::NoValidResult : Outcome::ValidAccepted;
  if (p.pf == 0.0) {
    return {tag, r == Regime::Case1NoValid ? pf0_case1(m, t, c, p.agree_bits, p.disagree_bits)
                                           : pf0_case2(m, t, c, p.agree_bits, p.disagree_bits)};
  }
  if (p.pf == 1.0) {
    if (c > t) {
      throw Error(ErrorCode::RegimeError, "P_f=1 with C > T yields a forged result; no closed form");
    }
    return {tag, r == Regime::Case1NoValid ? pf1_case1(m, t, c, p.agree_bits, p.disagree_bits)
                                           : pf1_case2(m, t, c, p.agree_bits, p.disagree_bits)};
  }
  throw Error(ErrorCode::UnsupportedPf, "closed forms exist only for P_f in {0,1}; simulate instead");
}

}  // namespace fa::vr
