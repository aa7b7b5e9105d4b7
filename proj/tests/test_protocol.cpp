#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "fusionassure/protocol.hpp"
#include "reference_model.hpp"

using namespace fa;

namespace {
ProtocolParams pp(int m, int t, int c, double pf = 0.0) {
  ProtocolParams p;
  p.nodes = m;
  p.threshold = t;
  p.compromised = c;
  p.pf = pf;
  return p;
}

Roster roster_of(const std::vector<bool>& bad) {
  std::vector<NodeKind> kinds;
  for (bool b : bad) kinds.push_back(b ? NodeKind::Compromised : NodeKind::Uncompromised);
  return Roster(kinds);
}

// Replays a fixed coin string; both machines must ask the same questions.
class StringVoteSource final : public VoteSource {
 public:
  explicit StringVoteSource(std::uint32_t bits) : bits_(bits) {}
  bool endorse_forgery() override { return ((bits_ >> (used_++ % 32)) & 1U) != 0; }
  int used() const { return used_; }

 private:
  std::uint32_t bits_;
  int used_ = 0;
};

void same(const TrialMetrics& got, const ref::Run& want) {
  CHECK(got.overhead_bits == want.overhead);
  CHECK(got.transmitted_bits == want.transmitted);
  CHECK(got.round_delay == want.rounds);
  CHECK(got.polling_delay == want.polls);
  CHECK(index_of(got.outcome) == static_cast<std::size_t>(want.outcome));
  CHECK(got.correct_copies_by_uncompromised == want.correct_copies);
}

std::vector<std::vector<bool>> placements(int m, int c) {
  std::vector<std::vector<bool>> out;
  for (std::uint32_t mask = 0; mask < (1U << m); ++mask) {
    if (__builtin_popcount(mask) != c) continue;
    std::vector<bool> bad(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) bad[static_cast<std::size_t>(i)] = (mask >> i) & 1U;
    out.push_back(bad);
  }
  return out;
}
}  // namespace

TEST_SUITE("protocol") {
  TEST_CASE("scheme names") {
    for (Scheme s : {Scheme::WitnessBased, Scheme::VariantRound, Scheme::OneRound}) {
      CHECK(parse_scheme(scheme_name(s)) == s);
    }
    CHECK_FALSE(parse_scheme("nope").has_value());
  }

  TEST_CASE("adversary votes") {
    FixedVoteSource always(true), never(false);
    CHECK(adversary_vote(FusionValue::correct(), always) == Vote::Disagree);
    CHECK(adversary_vote(FusionValue{3}, always) == Vote::Agree);
    CHECK(adversary_vote(FusionValue{3}, never) == Vote::Disagree);
    RngStream rng(1);
    CHECK(adversary_vote(FusionValue::correct(), 1.0, rng) == Vote::Disagree);
    CHECK(adversary_vote(FusionValue{1}, 1.0, rng) == Vote::Agree);
    CHECK(adversary_vote(FusionValue{1}, 0.0, rng) == Vote::Disagree);
  }

  TEST_CASE("forged values are unique") {
    ForgeryMint mint;
    const FusionValue a = adversary_value(mint), b = adversary_value(mint);
    CHECK(a.forged());
    CHECK(b.forged());
    CHECK_FALSE(a == b);
    CHECK_FALSE(FusionValue::correct().forged());
  }

  TEST_CASE("sample_roster extremes") {
    RngStream rng(9);
    CHECK(sample_roster(3, 0, rng).compromised_count() == 0);
    CHECK(sample_roster(3, 3, rng).compromised_count() == 3);
    CHECK_THROWS_AS(sample_roster(3, 4, rng), Error);
  }

  TEST_CASE("sample_roster is uniform per position") {
    RngStream rng(2024);
    const int n = 100000;
    std::vector<int> hits(11, 0);
    for (int i = 0; i < n; ++i) {
      const Roster r = sample_roster(11, 5, rng);
      REQUIRE(r.compromised_count() == 5);
      for (int pos = 0; pos < 11; ++pos) hits[static_cast<std::size_t>(pos)] += r.compromised(pos);
    }
    const double p = 5.0 / 11.0;
    const double sigma = std::sqrt(n * p * (1 - p));
    for (int h : hits) CHECK(std::abs(h - n * p) < 3 * sigma);
  }

  TEST_CASE("witness scheme with no adversary") {
    ProtocolParams p = pp(11, 6, 0);
    p.mac_bits = 4;
    p.result_bits = 48;
    const Roster r(std::vector<NodeKind>(11, NodeKind::Uncompromised));
    const TrialMetrics t = run_witness_based(p, r);
    CHECK(t.overhead_bits == 40);
    CHECK(t.transmitted_bits == 88);
    CHECK(t.round_delay == 1);
    CHECK(t.polling_delay == 10);
    CHECK(t.outcome == Outcome::ValidAccepted);
  }

  TEST_CASE("witness scheme with free bits costs nothing") {
    for (int c = 0; c <= 6; ++c) {
      for (const auto& bad : placements(7, c)) {
        const TrialMetrics t = run_witness_based(pp(7, 3, c), roster_of(bad));
        CHECK(t.overhead_bits == 0);
      }
    }
  }

  TEST_CASE("variant-round with no adversary takes one round of T polls") {
    const Roster r(std::vector<NodeKind>(11, NodeKind::Uncompromised));
    FixedVoteSource coin(false);
    ProtocolParams p = pp(11, 5, 0);
    p.agree_bits = 1;
    const TrialMetrics t = run_variant_round(p, r, coin);
    CHECK(t.round_delay == 1);
    CHECK(t.polling_delay == 5);
    CHECK(t.overhead_bits == 5);
    CHECK(t.outcome == Outcome::ValidAccepted);
  }

  TEST_CASE("variant-round two-node hand enumeration") {
    ProtocolParams p = pp(2, 1, 1);
    p.disagree_bits = 1;
    FixedVoteSource coin(false);
    const TrialMetrics forged_first =
        run_variant_round(p, Roster({NodeKind::Compromised, NodeKind::Uncompromised}), coin);
    const TrialMetrics honest_first =
        run_variant_round(p, Roster({NodeKind::Uncompromised, NodeKind::Compromised}), coin);
    CHECK(forged_first.overhead_bits + honest_first.overhead_bits == 1);
    CHECK(forged_first.round_delay == 1);
    CHECK(honest_first.round_delay == 1);
    CHECK(forged_first.polling_delay == 1);
    CHECK(honest_first.polling_delay == 1);
  }

  TEST_CASE("one-round with no adversary stops after T agreeing votes") {
    const Roster r(std::vector<NodeKind>(11, NodeKind::Uncompromised));
    FixedVoteSource coin(false);
    const TrialMetrics t = run_one_round(pp(11, 5, 0), r, coin);
    CHECK(t.overhead_bits == 0);
    CHECK(t.polling_delay == 5);
    CHECK(t.outcome == Outcome::ValidAccepted);
    CHECK(t.round_delay == 1);
  }

  TEST_CASE("one-round with T=M-1 stops at the second distinct result") {
    ProtocolParams p = pp(11, 10, 2);
    p.result_bits = 48;
    FixedVoteSource coin(false);
    for (const auto& bad : placements(11, 2)) {
      const TrialMetrics t = run_one_round(p, roster_of(bad), coin);
      CHECK(t.outcome == Outcome::NoValidResult);
      CHECK(t.distinct_results == 2);
      // The first witness whose answer differs from the chosen node's.
      int stop = 1;
      while (bad[static_cast<std::size_t>(stop)] == bad[0] && !bad[0]) ++stop;
      CHECK(t.polling_delay == stop);
    }
  }

  TEST_CASE("one-round with P_f=1 and T=M-1 sends exactly one result") {
    ProtocolParams p = pp(11, 10, 0, 1.0);
    p.result_bits = 48;
    FixedVoteSource coin(true);
    for (int c = 1; c <= 5; ++c) {
      p.compromised = c;
      for (const auto& bad : placements(11, c)) {
        CHECK(run_one_round(p, roster_of(bad), coin).transmitted_bits == 48);
      }
    }
  }

  TEST_CASE("one-round polls each witness at most once") {
    RngStream rng(5);
    for (int i = 0; i < 2000; ++i) {
      const int m = 2 + static_cast<int>(rng.uniform_below(12));
      const int t = 1 + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(m - 1)));
      const int c = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(m + 1)));
      ProtocolParams p = pp(m, t, c, rng.uniform01());
      RngVoteSource coin(rng, p.pf);
      const TrialMetrics r = run_one_round(p, sample_roster(m, c, rng), coin);
      CHECK(r.polling_delay <= m - 1);
    }
  }

  TEST_CASE("self-vote option counts the chosen result") {
    const Roster r(std::vector<NodeKind>(5, NodeKind::Uncompromised));
    FixedVoteSource coin(false);
    OneRoundOptions o;
    o.chosen_counts_as_vote = true;
    CHECK(run_one_round(pp(5, 3, 0), r, coin, o).polling_delay == 2);
    CHECK(run_one_round(pp(5, 1, 0), r, coin, o).polling_delay == 0);
    CHECK(run_one_round(pp(5, 3, 0), r, coin).polling_delay == 3);
  }

  TEST_CASE("machines agree with the reference model roster by roster") {
    for (int m = 2; m <= 7; ++m) {
      for (int t = 1; t < m; ++t) {
        for (int c = 0; c <= m; ++c) {
          ProtocolParams p = pp(m, t, c);
          p.agree_bits = 2;
          p.disagree_bits = 3;
          p.mac_bits = 5;
          p.result_bits = 7;
          const ref::Costs costs{2, 3, 5, 7};
          for (const auto& bad : placements(m, c)) {
            CAPTURE(m);
            CAPTURE(t);
            CAPTURE(c);
            const Roster r = roster_of(bad);
            same(run_witness_based(p, r), ref::witness(bad, t, costs));
            for (std::uint32_t bits : {0U, 0xFFFFFFFFU, 0x5A5A5A5AU, 0x3C3C3C3CU}) {
              auto coin_fn = [bits](int i) { return ((bits >> (i % 32)) & 1U) != 0; };
              StringVoteSource a(bits), b(bits);
              same(run_variant_round(p, r, a), ref::variant_round(bad, t, costs, coin_fn));
              same(run_one_round(p, r, b), ref::one_round(bad, t, costs, coin_fn));
            }
          }
        }
      }
    }
  }

  TEST_CASE("variant-round sends at most one correct copy") {
    for (int m = 2; m <= 8; ++m) {
      for (int t = 1; t < m; ++t) {
        for (int c = 0; c <= m; ++c) {
          for (const auto& bad : placements(m, c)) {
            for (std::uint32_t bits : {0U, 0xFFFFFFFFU, 0x96969696U}) {
              StringVoteSource coin(bits);
              CHECK(run_variant_round(pp(m, t, c), roster_of(bad), coin).correct_copies_by_uncompromised <= 1);
            }
          }
        }
      }
    }
  }

  TEST_CASE("roster must match the parameters") {
    FixedVoteSource coin(false);
    const Roster r(std::vector<NodeKind>(4, NodeKind::Uncompromised));
    CHECK_THROWS_AS(run_variant_round(pp(5, 2, 0), r, coin), Error);
    CHECK_THROWS_AS(run_one_round(pp(4, 2, 1), r, coin), Error);
  }
}
