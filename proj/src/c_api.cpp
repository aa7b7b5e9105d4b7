#include "fusionassure/fusionassure.h"

#include <array>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <optional>
#include <string>

#include "fusionassure/oracle.hpp"
#include "fusionassure/report.hpp"
#include "fusionassure/variant_round.hpp"
#include "fusionassure/witness.hpp"

struct fa_exact {
  fa::ExactMetrics metrics;
  bool has_metrics = false;
  std::array<fa::Rational, 3> outcomes;
};

struct fa_aggregate {
  fa::AggregateMetrics value;
};

struct fa_report {
  fa::Report value;
};

namespace {

thread_local std::string last_error;

fa_status to_status(fa::ErrorCode code) { return static_cast<fa_status>(static_cast<int>(code) + 1); }

fa_status fail(fa_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

template <typename Fn>
fa_status guarded(Fn&& fn) {
  try {
    last_error.clear();
    return fn();
  } catch (const fa::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(FA_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(FA_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(FA_ERR_INTERNAL, "unknown exception");
  }
}

fa_status null_arg(const char* what) { return fail(FA_ERR_INVALID_ARGUMENT, std::string(what) + " is null"); }

fa::ProtocolParams convert(const fa_params& p) {
  fa::ProtocolParams out;
  out.nodes = p.nodes;
  out.threshold = p.threshold;
  out.compromised = p.compromised;
  out.pf = p.pf;
  out.agree_bits = p.agree_bits;
  out.disagree_bits = p.disagree_bits;
  out.mac_bits = p.mac_bits;
  out.result_bits = p.result_bits;
  return out;
}

fa::Scheme convert(fa_scheme s) {
  switch (s) {
    case FA_SCHEME_WITNESS: return fa::Scheme::WitnessBased;
    case FA_SCHEME_VARIANT_ROUND: return fa::Scheme::VariantRound;
    case FA_SCHEME_ONE_ROUND: return fa::Scheme::OneRound;
  }
  throw fa::Error(fa::ErrorCode::InvalidArgument, "unknown scheme " + std::to_string(static_cast<int>(s)));
}

fa::Metric convert(fa_metric m) {
  if (m < FA_METRIC_OVERHEAD || m > FA_METRIC_POLLING_DELAY) {
    throw fa::Error(fa::ErrorCode::InvalidArgument, "unknown metric " + std::to_string(static_cast<int>(m)));
  }
  return static_cast<fa::Metric>(m);
}

fa::Outcome convert(fa_outcome o) {
  if (o < FA_OUTCOME_VALID || o > FA_OUTCOME_FORGED) {
    throw fa::Error(fa::ErrorCode::InvalidArgument, "unknown outcome " + std::to_string(static_cast<int>(o)));
  }
  return static_cast<fa::Outcome>(o);
}

fa::SimOptions convert(const fa_sim_options* o) {
  fa::SimOptions out;
  if (o) {
    out.threads = o->threads;
    out.one_round.chosen_counts_as_vote = o->one_round_self_vote != 0;
  }
  return out;
}

fa_status copy_out(const std::string& s, char* buf, size_t cap, size_t* needed) {
  if (!needed) return null_arg("needed");
  *needed = s.size() + 1;
  if (!buf) return FA_OK;
  if (cap < s.size() + 1) return fail(FA_ERR_BUFFER_TOO_SMALL, "buffer needs " + std::to_string(s.size() + 1));
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return FA_OK;
}

const fa::Rational* pick(const fa_exact& e, fa::Metric m) {
  if (!e.has_metrics) return nullptr;
  switch (m) {
    case fa::Metric::Overhead: return &e.metrics.overhead;
    case fa::Metric::TransmittedBits: return e.metrics.transmitted_bits ? &*e.metrics.transmitted_bits : nullptr;
    case fa::Metric::RoundDelay: return &e.metrics.round_delay;
    case fa::Metric::PollingDelay: return &e.metrics.polling_delay;
  }
  return nullptr;
}

const fa::Rational& require(const fa_exact& e, fa_metric m) {
  const fa::Rational* r = pick(e, convert(m));
  if (!r) throw fa::Error(fa::ErrorCode::InvalidArgument, "metric not available for this result");
  return *r;
}

}  // namespace

extern "C" {

const char* fa_version(void) { return FA_VERSION_STRING; }

const char* fa_status_name(fa_status status) {
  switch (status) {
    case FA_OK: return "Ok";
    case FA_ERR_BUFFER_TOO_SMALL: return "BufferTooSmall";
    case FA_ERR_INTERNAL: return "Internal";
    default: break;
  }
  const int code = static_cast<int>(status) - 1;
  if (code >= 0 && code <= static_cast<int>(fa::ErrorCode::NonTermination)) {
    return fa::error_name(static_cast<fa::ErrorCode>(code)).data();
  }
  return "Unknown";
}

const char* fa_last_error_message(void) { return last_error.c_str(); }

fa_status fa_validate(const fa_params* params) {
  if (!params) return null_arg("params");
  return guarded([&] {
    fa::validate(convert(*params));
    return FA_OK;
  });
}

fa_status fa_scheme_parse(const char* name, fa_scheme* out) {
  if (!name || !out) return null_arg("argument");
  const auto s = fa::parse_scheme(name);
  if (!s) return fail(FA_ERR_INVALID_ARGUMENT, std::string("unknown scheme '") + name + "'");
  *out = static_cast<fa_scheme>(*s);
  return FA_OK;
}

const char* fa_scheme_name(fa_scheme scheme) {
  if (scheme < FA_SCHEME_WITNESS || scheme > FA_SCHEME_ONE_ROUND) return "unknown";
  return fa::scheme_name(static_cast<fa::Scheme>(scheme)).data();
}

fa_status fa_metric_parse(const char* name, fa_metric* out) {
  if (!name || !out) return null_arg("argument");
  for (fa::Metric m : fa::kAllMetrics) {
    if (fa::metric_name(m) == name) {
      *out = static_cast<fa_metric>(m);
      return FA_OK;
    }
  }
  return fail(FA_ERR_INVALID_ARGUMENT, std::string("unknown metric '") + name + "'");
}

fa_status fa_analytic(fa_scheme scheme, const fa_params* params, fa_exact** out) {
  if (!params || !out) return null_arg("argument");
  return guarded([&] {
    const fa::ProtocolParams p = convert(*params);
    fa::validate(p);
    fa::TaggedMetrics tagged;
    switch (convert(scheme)) {
      case fa::Scheme::WitnessBased: tagged = fa::witness::metrics(p); break;
      case fa::Scheme::VariantRound: tagged = fa::vr::metrics(p); break;
      case fa::Scheme::OneRound:
        throw fa::Error(fa::ErrorCode::InvalidArgument, "the one-round scheme has no closed form");
    }
    auto e = std::make_unique<fa_exact>();
    e->has_metrics = tagged.metrics.has_value();
    if (tagged.metrics) e->metrics = *tagged.metrics;
    for (fa::Outcome o : fa::kAllOutcomes) e->outcomes[fa::index_of(o)] = fa::Rational(o == tagged.outcome ? 1 : 0);
    *out = e.release();
    return FA_OK;
  });
}

fa_status fa_oracle(fa_scheme scheme, const fa_params* params, int vote_rng_depth, fa_exact** out) {
  if (!params || !out) return null_arg("argument");
  return guarded([&] {
    const fa::ProtocolParams p = convert(*params);
    const fa::OracleResult r = vote_rng_depth < 0 ? fa::enumerate_exact(convert(scheme), p)
                                                  : fa::enumerate_exact_randomized(convert(scheme), p, vote_rng_depth);
    auto e = std::make_unique<fa_exact>();
    e->has_metrics = true;
    e->metrics = r.metrics;
    e->outcomes = r.outcome_probability;
    *out = e.release();
    return FA_OK;
  });
}

int fa_exact_has(const fa_exact* e, fa_metric metric) {
  if (!e || metric < FA_METRIC_OVERHEAD || metric > FA_METRIC_POLLING_DELAY) return 0;
  return pick(*e, static_cast<fa::Metric>(metric)) != nullptr;
}

fa_status fa_exact_value(const fa_exact* e, fa_metric metric, double* out) {
  if (!e || !out) return null_arg("argument");
  return guarded([&] {
    *out = require(*e, metric).to_double();
    return FA_OK;
  });
}

fa_status fa_exact_fraction(const fa_exact* e, fa_metric metric, char* buf, size_t cap, size_t* needed) {
  if (!e) return null_arg("handle");
  return guarded([&] { return copy_out(require(*e, metric).str(), buf, cap, needed); });
}

fa_status fa_exact_compare(const fa_exact* a, const fa_exact* b, fa_metric metric, int* out) {
  if (!a || !b || !out) return null_arg("argument");
  return guarded([&] {
    const auto c = require(*a, metric) <=> require(*b, metric);
    *out = c < 0 ? -1 : (c > 0 ? 1 : 0);
    return FA_OK;
  });
}

fa_status fa_exact_outcome_fraction(const fa_exact* e, fa_outcome outcome, char* buf, size_t cap, size_t* needed) {
  if (!e) return null_arg("handle");
  return guarded([&] { return copy_out(e->outcomes[fa::index_of(convert(outcome))].str(), buf, cap, needed); });
}

void fa_exact_destroy(fa_exact* e) { delete e; }

fa_status fa_forged_acceptance(int nodes, int threshold, int mac_bits, double* value, char* buf, size_t cap,
                               size_t* needed) {
  return guarded([&] {
    const fa::Rational p = fa::witness::forged_acceptance_prob(nodes, threshold, mac_bits);
    if (value) *value = p.to_double();
    if (!needed) return FA_OK;
    return copy_out(p.str(), buf, cap, needed);
  });
}

fa_status fa_forged_acceptance_at_most_pow2(int nodes, int threshold, int mac_bits, int exponent, int* holds) {
  if (!holds) return null_arg("holds");
  return guarded([&] {
    *holds = fa::witness::forged_acceptance_prob(nodes, threshold, mac_bits) <= fa::pow2(exponent);
    return FA_OK;
  });
}

fa_status fa_simulate(fa_scheme scheme, const fa_params* params, uint64_t trials, uint64_t seed,
                      const fa_sim_options* options, fa_aggregate** out) {
  if (!params || !out) return null_arg("argument");
  return guarded([&] {
    auto a = std::make_unique<fa_aggregate>();
    a->value = fa::monte_carlo(convert(scheme), convert(*params), trials, seed, convert(options));
    *out = a.release();
    return FA_OK;
  });
}

fa_status fa_aggregate_mean(const fa_aggregate* a, fa_metric metric, double* out) {
  if (!a || !out) return null_arg("argument");
  return guarded([&] {
    *out = a->value.mean(convert(metric));
    return FA_OK;
  });
}

fa_status fa_aggregate_stderr(const fa_aggregate* a, fa_metric metric, double* out) {
  if (!a || !out) return null_arg("argument");
  return guarded([&] {
    *out = a->value.standard_error(convert(metric));
    return FA_OK;
  });
}

fa_status fa_aggregate_trials(const fa_aggregate* a, uint64_t* out) {
  if (!a || !out) return null_arg("argument");
  *out = a->value.trials();
  return FA_OK;
}

fa_status fa_aggregate_outcome_count(const fa_aggregate* a, fa_outcome outcome, uint64_t* out) {
  if (!a || !out) return null_arg("argument");
  return guarded([&] {
    *out = a->value.outcome_count(convert(outcome));
    return FA_OK;
  });
}

fa_status fa_aggregate_max_correct_copies(const fa_aggregate* a, int* out) {
  if (!a || !out) return null_arg("argument");
  *out = a->value.max_correct_copies();
  return FA_OK;
}

fa_status fa_aggregate_max_round_delay(const fa_aggregate* a, int* out) {
  if (!a || !out) return null_arg("argument");
  *out = a->value.max_round_delay();
  return FA_OK;
}

void fa_aggregate_destroy(fa_aggregate* a) { delete a; }

fa_status fa_report_analytic(fa_scheme scheme, const fa_params* params, fa_report** out) {
  if (!params || !out) return null_arg("argument");
  return guarded([&] {
    auto r = std::make_unique<fa_report>();
    r->value = fa::analytic_report(convert(scheme), convert(*params));
    *out = r.release();
    return FA_OK;
  });
}

fa_status fa_report_simulate(fa_scheme scheme, const fa_params* params, uint64_t trials, uint64_t seed,
                             const fa_sim_options* options, fa_report** out) {
  if (!params || !out) return null_arg("argument");
  return guarded([&] {
    auto r = std::make_unique<fa_report>();
    r->value = fa::simulate_report(convert(scheme), convert(*params), trials, seed, convert(options));
    *out = r.release();
    return FA_OK;
  });
}

fa_status fa_report_table(int table, const fa_table_options* options, fa_report** out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    fa::TableOptions o;
    if (options) {
      o.trials = options->trials;
      o.seed = options->seed;
      o.one_round_agree_bits = options->one_round_agree_bits;
      o.sim = convert(&options->sim);
    }
    auto r = std::make_unique<fa_report>();
    r->value = fa::table_report(table, o);
    *out = r.release();
    return FA_OK;
  });
}

fa_status fa_report_sweep(const fa_sweep_spec* spec, fa_report** out) {
  if (!spec || !out) return null_arg("argument");
  if ((spec->scheme_count && !spec->schemes) || (spec->pf_count && !spec->pfs)) return null_arg("list");
  return guarded([&] {
    fa::SweepSpec s;
    s.nodes = spec->nodes;
    s.threshold = spec->threshold;
    for (size_t i = 0; i < spec->scheme_count; ++i) s.schemes.push_back(convert(spec->schemes[i]));
    s.pfs.assign(spec->pfs, spec->pfs + spec->pf_count);
    s.c_first = spec->c_first;
    s.c_last = spec->c_last;
    s.agree_bits = spec->agree_bits;
    s.disagree_bits = spec->disagree_bits;
    s.mac_bits = spec->mac_bits;
    s.result_bits = spec->result_bits;
    s.trials = spec->trials;
    s.seed = spec->seed;
    if (spec->has_metric) s.metric = convert(spec->metric);
    s.sim = convert(&spec->sim);
    auto r = std::make_unique<fa_report>();
    r->value = fa::sweep_report(s);
    *out = r.release();
    return FA_OK;
  });
}

fa_status fa_report_add_comment(fa_report* r, const char* line) {
  if (!r || !line) return null_arg("argument");
  return guarded([&] {
    r->value.add_comment(line);
    return FA_OK;
  });
}

fa_status fa_report_row_count(const fa_report* r, size_t* out) {
  if (!r || !out) return null_arg("argument");
  *out = r->value.rows().size();
  return FA_OK;
}

fa_status fa_report_csv(const fa_report* r, char* buf, size_t cap, size_t* needed) {
  if (!r) return null_arg("handle");
  return guarded([&] { return copy_out(r->value.csv(), buf, cap, needed); });
}

void fa_report_destroy(fa_report* r) { delete r; }

}  // extern "C"
