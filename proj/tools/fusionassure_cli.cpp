// fusionassure: analytic evaluation, simulation, table reproduction and sweeps.
// Output is CSV on stdout; exit 2 for flag errors, 3 for library errors.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "fusionassure/fusionassure.h"

namespace {

constexpr int kExitFlags = 2;
constexpr int kExitLibrary = 3;

struct FlagError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LibraryError : std::runtime_error {
  fa_status status;
  LibraryError(fa_status s, const std::string& what) : std::runtime_error(what), status(s) {}
};

void check(fa_status s) {
  if (s != FA_OK) throw LibraryError(s, fa_last_error_message());
}

struct Options {
  std::string scheme;
  int m = 0, t = 0, c = 0;
  double pf = 0.0;
  int64_t k = 0, kprime = 1, kw = 4, bigk = 0;
  uint64_t trials = 10000, seed = 1;
  unsigned threads = 1;
  bool self_vote = false;
  int table = 0;
  std::string scheme_list = "witness,vr,or";
  std::string pf_list = "0";
  std::string c_range;
  std::string metric;
  std::string config;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

fa_scheme parse_scheme(const std::string& name) {
  fa_scheme s;
  if (fa_scheme_parse(name.c_str(), &s) != FA_OK) throw FlagError("unknown scheme '" + name + "'");
  return s;
}

fa_params make_params(const Options& o) {
  return fa_params{o.m, o.t, o.c, o.pf, o.k, o.kprime, o.kw, o.bigk};
}

// "a..b" -> [a, b]; "" -> empty.
std::pair<int, int> parse_c_range(const std::string& s) {
  if (s.empty()) return {0, -1};
  const auto dots = s.find("..");
  if (dots == std::string::npos) throw FlagError("--c-range expects a..b");
  try {
    std::size_t used = 0;
    const std::string lo = s.substr(0, dots), hi = s.substr(dots + 2);
    const int a = std::stoi(lo, &used);
    if (used != lo.size()) throw FlagError("bad --c-range");
    const int b = std::stoi(hi, &used);
    if (used != hi.size()) throw FlagError("bad --c-range");
    return {a, b};
  } catch (const std::logic_error&) {
    throw FlagError("bad --c-range '" + s + "'");
  }
}

std::string render(const fa_report* r) {
  size_t need = 0;
  check(fa_report_csv(r, nullptr, 0, &need));
  std::string buf(need, '\0');
  check(fa_report_csv(r, buf.data(), buf.size(), &need));
  buf.resize(need - 1);
  return buf;
}

// Flat JSON object -> "--key value" tokens, placed before the real flags so
// that command-line values win.
std::vector<std::string> config_tokens(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FlagError("cannot open config '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw FlagError("config '" + path + "': " + e.what());
  }
  if (!j.is_object()) throw FlagError("config must be a JSON object");
  std::vector<std::string> out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string flag = "--" + it.key();
    const auto& v = it.value();
    if (v.is_boolean()) {
      if (v.get<bool>()) out.push_back(flag);
    } else if (v.is_string()) {
      out.push_back(flag);
      out.push_back(v.get<std::string>());
    } else if (v.is_number()) {
      out.push_back(flag);
      out.push_back(v.dump());
    } else if (v.is_array()) {
      std::string joined;
      for (const auto& e : v) joined += (joined.empty() ? "" : ",") + (e.is_string() ? e.get<std::string>() : e.dump());
      out.push_back(flag);
      out.push_back(joined);
    } else {
      throw FlagError("config key '" + it.key() + "' has an unsupported type");
    }
  }
  return out;
}

std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty() || args.empty()) return args;
  std::vector<std::string> extra = config_tokens(path);
  args.insert(args.begin() + 1, extra.begin(), extra.end());
  return args;
}

std::string command_line(int argc, char** argv) {
  std::string s = "fusionassure";
  for (int i = 1; i < argc; ++i) s += std::string(" ") + argv[i];
  return s;
}

void add_params(CLI::App* sub, Options& o, bool with_scheme) {
  if (with_scheme) sub->add_option("--scheme", o.scheme, "witness | vr | or")->required();
  sub->add_option("--m", o.m, "fusion nodes M")->required();
  sub->add_option("--t", o.t, "threshold T")->required();
  sub->add_option("--c", o.c, "compromised nodes C")->required();
  sub->add_option("--pf", o.pf, "P_f")->capture_default_str();
  sub->add_option("--k", o.k, "agree vote bits")->capture_default_str();
  sub->add_option("--kprime", o.kprime, "disagree vote bits")->capture_default_str();
  sub->add_option("--kw", o.kw, "MAC bits")->capture_default_str();
  sub->add_option("--bigk", o.bigk, "fusion result bits K")->capture_default_str();
}

void add_sim(CLI::App* sub, Options& o) {
  sub->add_option("--trials", o.trials, "Monte Carlo trials")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
  sub->add_option("--threads", o.threads, "worker threads, 0 = all cores")->capture_default_str();
  sub->add_flag("--self-vote", o.self_vote, "one-round: chosen node's result starts with one vote");
}

fa_sim_options sim_options(const Options& o) { return fa_sim_options{o.threads, o.self_vote ? 1 : 0}; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Overhead and delay of fusion-result assurance schemes"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.set_version_flag("--version", std::string(fa_version()));

  Options o;
  auto* analytic = app.add_subcommand("analytic", "closed-form expectations (witness, vr)");
  add_params(analytic, o, true);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimates");
  add_params(simulate, o, true);
  add_sim(simulate, o);

  auto* table = app.add_subcommand("table", "maxima over the (T,C) grid for table 1 or 2");
  table->add_option("table", o.table, "1 or 2")->required()->check(CLI::IsMember({1, 2}));
  add_sim(table, o);
  table->add_option("--k", o.k, "one-round agree vote bits (table 2)")->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "curves over C for several schemes and P_f values");
  sweep->add_option("--m", o.m, "fusion nodes M")->required();
  sweep->add_option("--t", o.t, "threshold T")->required();
  sweep->add_option("--scheme-list", o.scheme_list, "comma-separated schemes")->capture_default_str();
  sweep->add_option("--pf-list", o.pf_list, "comma-separated P_f values")->capture_default_str();
  sweep->add_option("--c-range", o.c_range, "a..b, empty for none");
  sweep->add_option("--metric", o.metric, "overhead | transmitted_bits | round_delay | polling_delay");
  sweep->add_option("--k", o.k, "agree vote bits")->capture_default_str();
  sweep->add_option("--kprime", o.kprime, "disagree vote bits")->capture_default_str();
  sweep->add_option("--kw", o.kw, "MAC bits")->capture_default_str();
  sweep->add_option("--bigk", o.bigk, "fusion result bits K")->capture_default_str();
  add_sim(sweep, o);

  for (auto* sub : {analytic, simulate, table, sweep}) {
    sub->add_option("--config", o.config, "flat JSON object of flag values; flags override it");
  }

  try {
    std::vector<std::string> args = expand_config(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitFlags;
  } catch (const FlagError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFlags;
  }

  fa_report* report = nullptr;
  try {
    if (analytic->parsed()) {
      const fa_scheme s = parse_scheme(o.scheme);
      if (s == FA_SCHEME_ONE_ROUND) throw FlagError("analytic supports --scheme witness or vr");
      const fa_params p = make_params(o);
      check(fa_report_analytic(s, &p, &report));
    } else if (simulate->parsed()) {
      const fa_params p = make_params(o);
      const fa_sim_options so = sim_options(o);
      check(fa_report_simulate(parse_scheme(o.scheme), &p, o.trials, o.seed, &so, &report));
    } else if (table->parsed()) {
      fa_table_options to{o.trials, o.seed, o.k, sim_options(o)};
      check(fa_report_table(o.table, &to, &report));
    } else {
      std::vector<fa_scheme> schemes;
      for (const auto& name : split(o.scheme_list, ',')) schemes.push_back(parse_scheme(name));
      std::vector<double> pfs;
      for (const auto& v : split(o.pf_list, ',')) {
        try {
          std::size_t used = 0;
          pfs.push_back(std::stod(v, &used));
          if (used != v.size()) throw FlagError("bad P_f '" + v + "'");
        } catch (const std::logic_error&) {
          throw FlagError("bad P_f '" + v + "'");
        }
      }
      const auto [c_first, c_last] = parse_c_range(o.c_range);
      fa_sweep_spec spec{};
      spec.nodes = o.m;
      spec.threshold = o.t;
      spec.schemes = schemes.data();
      spec.scheme_count = schemes.size();
      spec.pfs = pfs.data();
      spec.pf_count = pfs.size();
      spec.c_first = c_first;
      spec.c_last = c_last;
      spec.agree_bits = o.k;
      spec.disagree_bits = o.kprime;
      spec.mac_bits = o.kw;
      spec.result_bits = o.bigk;
      spec.trials = o.trials;
      spec.seed = o.seed;
      if (!o.metric.empty()) {
        spec.has_metric = 1;
        if (fa_metric_parse(o.metric.c_str(), &spec.metric) != FA_OK) throw FlagError("unknown metric '" + o.metric + "'");
      }
      spec.sim = sim_options(o);
      check(fa_report_sweep(&spec, &report));
    }
    check(fa_report_add_comment(report, ("command: " + command_line(argc, argv)).c_str()));
    std::cout << render(report);
    fa_report_destroy(report);
    return 0;
  } catch (const FlagError& e) {
    fa_report_destroy(report);
    std::cerr << "error: " << e.what() << '\n';
    return kExitFlags;
  } catch (const LibraryError& e) {
    fa_report_destroy(report);
    const std::string name = fa_status_name(e.status);
    const std::string what = e.what();
    std::cerr << "error: " << (what.rfind(name, 0) == 0 ? what : name + ": " + what) << '\n';
    return kExitLibrary;
  }
}
