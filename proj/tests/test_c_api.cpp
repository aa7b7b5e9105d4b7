#include "doctest.h"

#include <string>

#include "fusionassure/fusionassure.h"

namespace {
fa_params cp(int m, int t, int c, double pf) { return fa_params{m, t, c, pf, 0, 1, 4, 0}; }

std::string fraction(const fa_exact* e, fa_metric m) {
  size_t need = 0;
  REQUIRE(fa_exact_fraction(e, m, nullptr, 0, &need) == FA_OK);
  std::string s(need, '\0');
  REQUIRE(fa_exact_fraction(e, m, s.data(), s.size(), &need) == FA_OK);
  s.resize(need - 1);
  return s;
}
}  // namespace

TEST_SUITE("c_api") {
  TEST_CASE("status names and version") {
    CHECK(std::string(fa_status_name(FA_OK)) == "Ok");
    CHECK(std::string(fa_status_name(FA_ERR_REGIME)) == "RegimeError");
    CHECK(std::string(fa_status_name(FA_ERR_UNSUPPORTED_PF)) == "UnsupportedPf");
    CHECK(std::string(fa_status_name(FA_ERR_NON_TERMINATION)) == "NonTermination");
    CHECK(std::string(fa_version()).size() > 0);
  }

  TEST_CASE("validation errors map to status codes") {
    fa_params p = cp(11, 5, 2, 0);
    CHECK(fa_validate(&p) == FA_OK);
    p.threshold = 0;
    CHECK(fa_validate(&p) == FA_ERR_INVALID_THRESHOLD);
    CHECK(std::string(fa_last_error_message()).find("InvalidThreshold") == 0);
    p = cp(11, 5, 12, 0);
    CHECK(fa_validate(&p) == FA_ERR_INVALID_COMPROMISE_COUNT);
    CHECK(fa_validate(nullptr) == FA_ERR_INVALID_ARGUMENT);
  }

  TEST_CASE("analytic handle") {
    const fa_params p = cp(11, 6, 5, 0);
    fa_exact* e = nullptr;
    REQUIRE(fa_analytic(FA_SCHEME_WITNESS, &p, &e) == FA_OK);
    double v = 0;
    CHECK(fa_exact_value(e, FA_METRIC_OVERHEAD, &v) == FA_OK);
    CHECK(v == doctest::Approx(1200.0 / 11.0));
    CHECK(fraction(e, FA_METRIC_OVERHEAD) == "1200/11");
    char tiny[3];
    size_t need = 0;
    CHECK(fa_exact_fraction(e, FA_METRIC_OVERHEAD, tiny, sizeof tiny, &need) == FA_ERR_BUFFER_TOO_SMALL);
    CHECK(need == 8);
    CHECK(fa_exact_has(e, FA_METRIC_TRANSMITTED_BITS) == 1);
    fa_exact_destroy(e);
  }

  TEST_CASE("analytic regime errors") {
    fa_exact* e = nullptr;
    fa_params p = cp(11, 5, 2, 0.5);
    CHECK(fa_analytic(FA_SCHEME_VARIANT_ROUND, &p, &e) == FA_ERR_UNSUPPORTED_PF);
    CHECK(e == nullptr);
    p = cp(11, 5, 7, 1.0);
    CHECK(fa_analytic(FA_SCHEME_VARIANT_ROUND, &p, &e) == FA_ERR_REGIME);
    p = cp(11, 5, 2, 0);
    CHECK(fa_analytic(FA_SCHEME_ONE_ROUND, &p, &e) == FA_ERR_INVALID_ARGUMENT);
  }

  TEST_CASE("forged witness result has no metrics") {
    const fa_params p = cp(11, 6, 7, 0);
    fa_exact* e = nullptr;
    REQUIRE(fa_analytic(FA_SCHEME_WITNESS, &p, &e) == FA_OK);
    CHECK(fa_exact_has(e, FA_METRIC_OVERHEAD) == 0);
    double v;
    CHECK(fa_exact_value(e, FA_METRIC_OVERHEAD, &v) == FA_ERR_INVALID_ARGUMENT);
    size_t need = 0;
    REQUIRE(fa_exact_outcome_fraction(e, FA_OUTCOME_FORGED, nullptr, 0, &need) == FA_OK);
    std::string s(need, '\0');
    REQUIRE(fa_exact_outcome_fraction(e, FA_OUTCOME_FORGED, s.data(), s.size(), &need) == FA_OK);
    CHECK(s.c_str() == std::string("1"));
    fa_exact_destroy(e);
  }

  TEST_CASE("oracle agrees with analytic through the C layer") {
    const fa_params p = cp(7, 3, 4, 0);
    fa_exact *a = nullptr, *o = nullptr;
    REQUIRE(fa_analytic(FA_SCHEME_VARIANT_ROUND, &p, &a) == FA_OK);
    REQUIRE(fa_oracle(FA_SCHEME_VARIANT_ROUND, &p, -1, &o) == FA_OK);
    for (fa_metric m : {FA_METRIC_OVERHEAD, FA_METRIC_ROUND_DELAY, FA_METRIC_POLLING_DELAY}) {
      int cmp = 2;
      CHECK(fa_exact_compare(a, o, m, &cmp) == FA_OK);
      CHECK(cmp == 0);
    }
    fa_exact_destroy(a);
    fa_exact_destroy(o);
    const fa_params q = cp(13, 6, 2, 0);
    CHECK(fa_oracle(FA_SCHEME_VARIANT_ROUND, &q, -1, &o) == FA_ERR_SIZE_BOUND);
  }

  TEST_CASE("forged acceptance bound") {
    int holds = 0;
    CHECK(fa_forged_acceptance_at_most_pow2(11, 6, 4, -10, &holds) == FA_OK);
    CHECK(holds == 1);
    CHECK(fa_forged_acceptance_at_most_pow2(11, 6, 1, -10, &holds) == FA_OK);
    CHECK(holds == 0);
    double v = 0;
    size_t need = 0;
    CHECK(fa_forged_acceptance(2, 1, 1, &v, nullptr, 0, &need) == FA_OK);
    CHECK(v == 0.5);
    CHECK(need == 4);
  }

  TEST_CASE("simulation aggregate") {
    const fa_params p = cp(11, 5, 2, 0.25);
    const fa_sim_options o{2, 0};
    fa_aggregate* a = nullptr;
    REQUIRE(fa_simulate(FA_SCHEME_VARIANT_ROUND, &p, 1000, 5, &o, &a) == FA_OK);
    uint64_t n = 0, valid = 0, none = 0, forged = 0;
    CHECK(fa_aggregate_trials(a, &n) == FA_OK);
    CHECK(n == 1000);
    fa_aggregate_outcome_count(a, FA_OUTCOME_VALID, &valid);
    fa_aggregate_outcome_count(a, FA_OUTCOME_NO_VALID, &none);
    fa_aggregate_outcome_count(a, FA_OUTCOME_FORGED, &forged);
    CHECK(valid + none + forged == 1000);
    double mean = -1, se = -1;
    CHECK(fa_aggregate_mean(a, FA_METRIC_OVERHEAD, &mean) == FA_OK);
    CHECK(fa_aggregate_stderr(a, FA_METRIC_OVERHEAD, &se) == FA_OK);
    CHECK(mean >= 0);
    CHECK(se >= 0);
    int copies = 5;
    CHECK(fa_aggregate_max_correct_copies(a, &copies) == FA_OK);
    CHECK(copies <= 1);
    fa_aggregate_destroy(a);
    CHECK(fa_simulate(FA_SCHEME_VARIANT_ROUND, &p, 0, 5, nullptr, &a) == FA_ERR_INVALID_ARGUMENT);
  }

  TEST_CASE("reports") {
    const fa_params p = cp(11, 5, 2, 0);
    fa_report* r = nullptr;
    REQUIRE(fa_report_analytic(FA_SCHEME_VARIANT_ROUND, &p, &r) == FA_OK);
    CHECK(fa_report_add_comment(r, "hello") == FA_OK);
    size_t rows = 0;
    CHECK(fa_report_row_count(r, &rows) == FA_OK);
    CHECK(rows == 6);
    size_t need = 0;
    REQUIRE(fa_report_csv(r, nullptr, 0, &need) == FA_OK);
    std::string csv(need, '\0');
    REQUIRE(fa_report_csv(r, csv.data(), csv.size(), &need) == FA_OK);
    CHECK(csv.find("# hello\n") != std::string::npos);
    fa_report_destroy(r);

    const fa_scheme schemes[] = {FA_SCHEME_WITNESS};
    const double pfs[] = {0.0};
    fa_sweep_spec s{};
    s.nodes = 11;
    s.threshold = 5;
    s.schemes = schemes;
    s.scheme_count = 1;
    s.pfs = pfs;
    s.pf_count = 1;
    s.c_first = 0;
    s.c_last = 2;
    s.mac_bits = 4;
    s.trials = 10;
    s.seed = 1;
    s.has_metric = 1;
    s.metric = FA_METRIC_OVERHEAD;
    REQUIRE(fa_report_sweep(&s, &r) == FA_OK);
    CHECK(fa_report_row_count(r, &rows) == FA_OK);
    CHECK(rows == 3);
    fa_report_destroy(r);
    CHECK(fa_report_table(5, nullptr, &r) == FA_ERR_INVALID_ARGUMENT);
  }

  TEST_CASE("parsers") {
    fa_scheme s;
    CHECK(fa_scheme_parse("or", &s) == FA_OK);
    CHECK(s == FA_SCHEME_ONE_ROUND);
    CHECK(std::string(fa_scheme_name(FA_SCHEME_VARIANT_ROUND)) == "vr");
    CHECK(fa_scheme_parse("xx", &s) == FA_ERR_INVALID_ARGUMENT);
    fa_metric m;
    CHECK(fa_metric_parse("polling_delay", &m) == FA_OK);
    CHECK(m == FA_METRIC_POLLING_DELAY);
    CHECK(fa_metric_parse("speed", &m) == FA_ERR_INVALID_ARGUMENT);
  }
}
