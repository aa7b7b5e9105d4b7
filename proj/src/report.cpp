#include "fusionassure/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <tuple>

#include "fusionassure/variant_round.hpp"
#include "fusionassure/witness.hpp"

#ifndef FA_VERSION_STRING
#define FA_VERSION_STRING "0.0.0"
#endif

namespace fa {

std::string_view library_version() noexcept { return FA_VERSION_STRING; }

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string fmt_pf(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string describe(const ProtocolParams& p) {
  std::ostringstream os;
  os << "M=" << p.nodes << " T=" << p.threshold << " C=" << p.compromised << " pf=" << fmt_pf(p.pf)
     << " k=" << p.agree_bits << " kprime=" << p.disagree_bits << " kw=" << p.mac_bits << " bigk=" << p.result_bits;
  return os.str();
}

void add_preamble(Report& r, std::string_view kind) {
  r.add_comment("fusionassure " + std::string(library_version()) + " " + std::string(kind));
  r.add_comment("rng: " + std::string(RngStream::kAlgorithm));
  r.add_comment(
      "convention: overhead excludes the first correct K-bit result sent by an uncompromised node; "
      "transmitted_bits includes it");
}

void add_sim_convention(Report& r, const SimOptions& sim) {
  r.add_comment(std::string("convention: one-round chosen node votes for itself: ") +
                (sim.one_round.chosen_counts_as_vote ? "yes" : "no"));
}

CsvRow exact_row(Scheme s, const ProtocolParams& p, std::string metric, const Rational& value) {
  CsvRow row;
  row.scheme = s;
  row.params = p;
  row.metric = std::move(metric);
  row.value = value.to_double();
  row.exact = value;
  return row;
}

CsvRow mc_row(Scheme s, const ProtocolParams& p, std::string metric, double value, double se,
              std::uint64_t trials, std::uint64_t seed) {
  CsvRow row;
  row.scheme = s;
  row.params = p;
  row.metric = std::move(metric);
  row.value = value;
  row.standard_error = se;
  row.trials = trials;
  row.seed = seed;
  return row;
}

std::string probability_metric(Outcome o) { return "p_" + std::string(outcome_name(o)); }

bool wanted(const std::optional<Metric>& filter, Metric m) { return !filter || *filter == m; }

// Closed form when one exists for this point.
std::optional<TaggedMetrics> closed_form(Scheme scheme, const ProtocolParams& p) {
  if (scheme == Scheme::WitnessBased) return witness::metrics(p);
  if (scheme == Scheme::VariantRound && (p.pf == 0.0 || p.pf == 1.0)) {
    try {
      return vr::metrics(p);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::PreconditionError || e.code() == ErrorCode::RegimeError) return std::nullopt;
      throw;
    }
  }
  return std::nullopt;
}

void append_exact(Report& r, Scheme scheme, const ProtocolParams& p, const TaggedMetrics& tagged,
                  const std::optional<Metric>& filter) {
  if (tagged.metrics) {
    const ExactMetrics& m = *tagged.metrics;
    if (wanted(filter, Metric::Overhead)) r.add_row(exact_row(scheme, p, "overhead", m.overhead));
    if (m.transmitted_bits && wanted(filter, Metric::TransmittedBits)) {
      r.add_row(exact_row(scheme, p, "transmitted_bits", *m.transmitted_bits));
    }
    if (wanted(filter, Metric::RoundDelay)) r.add_row(exact_row(scheme, p, "round_delay", m.round_delay));
    if (wanted(filter, Metric::PollingDelay)) r.add_row(exact_row(scheme, p, "polling_delay", m.polling_delay));
  }
  if (!filter) {
    for (Outcome o : kAllOutcomes) {
      r.add_row(exact_row(scheme, p, probability_metric(o), Rational(o == tagged.outcome ? 1 : 0)));
    }
  }
}

void append_mc(Report& r, Scheme scheme, const ProtocolParams& p, const AggregateMetrics& agg,
               const std::optional<Metric>& filter) {
  for (Metric m : kAllMetrics) {
    if (!wanted(filter, m)) continue;
    r.add_row(mc_row(scheme, p, std::string(metric_name(m)), agg.mean(m), agg.standard_error(m), agg.trials(),
                     agg.seed()));
  }
  if (filter) return;
  const auto n = static_cast<double>(agg.trials());
  for (Outcome o : kAllOutcomes) {
    const double q = static_cast<double>(agg.outcome_count(o)) / n;
    r.add_row(mc_row(scheme, p, probability_metric(o), q, std::sqrt(q * (1.0 - q) / n), agg.trials(), agg.seed()));
  }
}

struct GridBest {
  double value = -1.0;
  double standard_error = 0.0;
  std::optional<Rational> exact;
  ProtocolParams at;
};

// Maximum of one metric over T in [ceil(M/2)-1, M-1], C in [0, T].
template <typename Eval>
GridBest maximize(const ProtocolParams& base, Eval&& eval) {
  GridBest best;
  const int m = base.nodes;
  for (int t = (m + 1) / 2 - 1; t <= m - 1; ++t) {
    for (int c = 0; c <= t; ++c) {
      ProtocolParams p = base;
      p.threshold = t;
      p.compromised = c;
      GridBest cand = eval(p);
      if (cand.value > best.value) {
        cand.at = p;
        best = cand;
      }
    }
  }
  return best;
}

GridBest exact_point(const Rational& v) {
  GridBest g;
  g.value = v.to_double();
  g.exact = v;
  return g;
}

GridBest mc_point(Scheme scheme, const ProtocolParams& p, Metric metric, const TableOptions& o) {
  const AggregateMetrics agg = monte_carlo(scheme, p, o.trials, o.seed, o.sim);
  GridBest g;
  g.value = agg.mean(metric);
  g.standard_error = agg.standard_error(metric);
  return g;
}

void add_best(Report& r, Scheme scheme, const std::string& metric, const GridBest& best, const TableOptions& o) {
  if (best.exact) {
    r.add_row(exact_row(scheme, best.at, metric, *best.exact));
  } else {
    r.add_row(mc_row(scheme, best.at, metric, best.value, best.standard_error, o.trials, o.seed));
  }
}

// Witness column: K and k_w fixed, maximized over the same grid.
void add_witness_column(Report& r, int m, std::int64_t result_bits, Metric metric, const TableOptions& o) {
  ProtocolParams base;
  base.nodes = m;
  base.mac_bits = witness::mac_bits_for_pe_bound(m);
  base.result_bits = result_bits;
  const GridBest best = maximize(base, [&](const ProtocolParams& p) {
    const TaggedMetrics t = witness::metrics(p);
    const ExactMetrics& e = *t.metrics;
    return exact_point(metric == Metric::TransmittedBits ? *e.transmitted_bits : e.overhead);
  });
  add_best(r, Scheme::WitnessBased, "max_" + std::string(metric_name(metric)), best, o);
}

}  // namespace

void Report::sort_rows() {
  std::stable_sort(rows_.begin(), rows_.end(), [](const CsvRow& a, const CsvRow& b) {
    return std::make_tuple(scheme_name(a.scheme), a.params.nodes, a.params.pf, a.params.threshold,
                           a.params.compromised) <
           std::make_tuple(scheme_name(b.scheme), b.params.nodes, b.params.pf, b.params.threshold,
                           b.params.compromised);
  });
}

std::string Report::csv() const {
  std::ostringstream os;
  for (const auto& c : comments_) os << "# " << c << '\n';
  os << kColumns << '\n';
  for (const auto& row : rows_) {
    const ProtocolParams& p = row.params;
    os << scheme_name(row.scheme) << ',' << p.nodes << ',' << p.threshold << ',' << p.compromised << ','
       << fmt_pf(p.pf) << ',' << p.agree_bits << ',' << p.disagree_bits << ',' << p.mac_bits << ',' << p.result_bits
       << ',' << row.metric << ',' << fmt_double(row.value) << ','
       << (row.standard_error ? fmt_double(*row.standard_error) : "") << ','
       << (row.trials ? std::to_string(*row.trials) : "") << ',' << (row.seed ? std::to_string(*row.seed) : "")
       << ',' << (row.exact ? row.exact->str() : "") << '\n';
  }
  return os.str();
}

Report analytic_report(Scheme scheme, const ProtocolParams& params) {
  validate(params);
  Report r;
  add_preamble(r, "analytic");
  r.add_comment("params: scheme=" + std::string(scheme_name(scheme)) + " " + describe(params));
  switch (scheme) {
    case Scheme::WitnessBased:
      append_exact(r, scheme, params, witness::metrics(params), std::nullopt);
      if (params.mac_bits >= 1) {
        r.add_row(exact_row(scheme, params, "forged_acceptance_prob",
                            witness::forged_acceptance_prob(params.nodes, params.threshold,
                                                            static_cast<int>(params.mac_bits))));
      }
      break;
    case Scheme::VariantRound:
      append_exact(r, scheme, params, vr::metrics(params), std::nullopt);
      break;
    case Scheme::OneRound:
      throw Error(ErrorCode::InvalidArgument, "the one-round scheme has no closed form; use simulate");
  }
  return r;
}

Report simulate_report(Scheme scheme, const ProtocolParams& params, std::uint64_t trials, std::uint64_t seed,
                       const SimOptions& options) {
  const AggregateMetrics agg = monte_carlo(scheme, params, trials, seed, options);
  Report r;
  add_preamble(r, "simulate");
  add_sim_convention(r, options);
  r.add_comment("params: scheme=" + std::string(scheme_name(scheme)) + " " + describe(params) +
                " trials=" + std::to_string(trials) + " seed=" + std::to_string(seed));
  append_mc(r, scheme, params, agg, std::nullopt);
  return r;
}

Report table_report(int table, const TableOptions& o) {
  if (table != 1 && table != 2) throw Error(ErrorCode::InvalidArgument, "table must be 1 or 2");
  Report r;
  add_preamble(r, "table " + std::to_string(table));
  add_sim_convention(r, o.sim);
  r.add_comment("grid: M in {11,21}; T in [ceil(M/2)-1, M-1]; C in [0, T]; T and C columns give the argmax");
  r.add_comment("trials=" + std::to_string(o.trials) + " seed=" + std::to_string(o.seed));

  if (table == 1) {
    r.add_comment("table 1: variant-round max overhead with k=0 kprime=1 bigk=0; closed form for pf in {0,1}");
    r.add_comment("table 1: witness column uses bigk=0 and kw=2+ceil(20/(M-1))");
    for (int m : {11, 21}) {
      for (double pf : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        ProtocolParams base;
        base.nodes = m;
        base.pf = pf;
        base.disagree_bits = 1;
        const GridBest best = maximize(base, [&](const ProtocolParams& p) {
          if (pf == 0.0 || pf == 1.0) return exact_point(vr::metrics(p).metrics->overhead);
          return mc_point(Scheme::VariantRound, p, Metric::Overhead, o);
        });
        add_best(r, Scheme::VariantRound, "max_overhead", best, o);
      }
      add_witness_column(r, m, 0, Metric::Overhead, o);
    }
  } else {
    r.add_comment("table 2: one-round max transmitted_bits (first correct copy counted) with bigk=48 k=" +
                  std::to_string(o.one_round_agree_bits) + "; max_overhead also listed");
    r.add_comment("table 2: witness column uses bigk=48 and kw=2+ceil(20/(M-1))");
    for (int m : {11, 21}) {
      for (double pf : {0.0, 0.5, 1.0}) {
        ProtocolParams base;
        base.nodes = m;
        base.pf = pf;
        base.agree_bits = o.one_round_agree_bits;
        base.disagree_bits = 1;
        base.result_bits = 48;
        GridBest best_tx, best_ov;
        // One pass over the grid feeds both maxima.
        maximize(base, [&](const ProtocolParams& p) {
          const AggregateMetrics agg = monte_carlo(Scheme::OneRound, p, o.trials, o.seed, o.sim);
          const double tx = agg.mean(Metric::TransmittedBits);
          const double ov = agg.mean(Metric::Overhead);
          if (tx > best_tx.value) best_tx = {tx, agg.standard_error(Metric::TransmittedBits), std::nullopt, p};
          if (ov > best_ov.value) best_ov = {ov, agg.standard_error(Metric::Overhead), std::nullopt, p};
          return GridBest{};
        });
        add_best(r, Scheme::OneRound, "max_transmitted_bits", best_tx, o);
        add_best(r, Scheme::OneRound, "max_overhead", best_ov, o);
      }
      add_witness_column(r, m, 48, Metric::TransmittedBits, o);
      add_witness_column(r, m, 48, Metric::Overhead, o);
    }
  }
  r.sort_rows();
  return r;
}

Report sweep_report(const SweepSpec& s) {
  Report r;
  add_preamble(r, "sweep");
  add_sim_convention(r, s.sim);
  {
    std::ostringstream os;
    os << "sweep: M=" << s.nodes << " T=" << s.threshold << " C=" << s.c_first << ".." << s.c_last << " schemes=";
    for (std::size_t i = 0; i < s.schemes.size(); ++i) os << (i ? ";" : "") << scheme_name(s.schemes[i]);
    os << " pfs=";
    for (std::size_t i = 0; i < s.pfs.size(); ++i) os << (i ? ";" : "") << fmt_pf(s.pfs[i]);
    os << " k=" << s.agree_bits << " kprime=" << s.disagree_bits << " kw=" << s.mac_bits << " bigk=" << s.result_bits
       << " trials=" << s.trials << " seed=" << s.seed;
    if (s.metric) os << " metric=" << metric_name(*s.metric);
    r.add_comment(os.str());
  }
  r.add_comment("sweep: closed form where available (witness; vr with pf in {0,1}), Monte Carlo otherwise");

  for (Scheme scheme : s.schemes) {
    for (double pf : s.pfs) {
      for (int c = s.c_first; c <= s.c_last; ++c) {
        ProtocolParams p;
        p.nodes = s.nodes;
        p.threshold = s.threshold;
        p.compromised = c;
        p.pf = pf;
        p.agree_bits = s.agree_bits;
        p.disagree_bits = s.disagree_bits;
        p.mac_bits = s.mac_bits;
        p.result_bits = s.result_bits;
        validate(p);
        const auto exact = closed_form(scheme, p);
        if (exact && exact->metrics) {
          append_exact(r, scheme, p, *exact, s.metric);
        } else {
          append_mc(r, scheme, p, monte_carlo(scheme, p, s.trials, s.seed, s.sim), s.metric);
        }
      }
    }
  }
  r.sort_rows();
  return r;
}

}  // namespace fa
