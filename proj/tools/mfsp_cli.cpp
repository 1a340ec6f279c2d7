// mfsp: command-line front end. All work happens in mfsp::run; this file
// only maps flags onto a RunConfig and writes the outputs.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "mfsp/driver.hpp"

namespace {

constexpr const char* kCsvHelp = R"(CSV outputs
  construct/scan (--csv): p, f(p+1)..f(p+k) as exact fractions "p/q",
    approx_f(p+1)..approx_f(p+k) as %.12g decimals, rough, squarefree, in_box
    (1/0; rough and squarefree are empty on the direct scan route).
  sieve (stdout or --csv): x, observed, main_term, normalized, where
    normalized = observed * (log x)^(k+1) / x.

Exit codes: 0 success, 2 precondition or hypothesis violation,
3 budget exhausted, 4 nothing found within x (or a requested ordering /
g(d) check not satisfied).)";

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(item);
      item.clear();
    } else if (ch != ' ') {
      item += ch;
    }
  }
  out.push_back(item);
  return out;
}

struct Flags {
  std::string function = "n_over_phi";
  unsigned k = 2;
  std::string c;
  unsigned nu = 0;
  std::vector<std::string> box;
  std::vector<std::string> perms;
  bool all = false;
  std::string x;
  std::string x_points;
  double alpha = 0.1;
  std::string prime_budget;
  std::size_t record_cap = 1000;
  double time_hint = 0;
  std::string config;
  std::string system_from;
  std::string moduli;
  bool gd_check = false;
  std::string dmax = "10000";
  bool bv = false;
  std::string q;
  std::string json;
  std::string csv;
  std::uint64_t seed = 1;
};

void add_common(CLI::App* cmd, Flags& fl) {
  cmd->add_option("--function", fl.function,
                  "n_over_phi, sigma_over_n, phi_over_n or gamma_over_n (custom tables: --config)");
  cmd->add_option("-k", fl.k, "tuple length");
  cmd->add_option("--alpha", fl.alpha, "sifting exponent in (0,1)");
  cmd->add_option("--config", fl.config, "JSON config file (flags given explicitly override it)");
  cmd->add_option("--json", fl.json, "write the JSON report here");
  cmd->add_option("--csv", fl.csv, "write CSV output here");
  cmd->add_option("--seed", fl.seed, "seed for randomized internals (recorded in the report)");
  cmd->add_option("--time-hint", fl.time_hint, "seconds; flagged in metadata when exceeded");
}

mfsp::RunConfig to_config(CLI::App* cmd, mfsp::Mode mode, const Flags& fl) {
  mfsp::RunConfig cfg;
  if (!fl.config.empty()) {
    std::ifstream in(fl.config);
    if (!in) throw mfsp::Error(mfsp::ErrorKind::precondition, "cannot read config " + fl.config);
    cfg = mfsp::run_config_from_json(mfsp::Json::parse(in));
  }
  cfg.mode = mode;
  auto given = [&](const char* name) { return cmd->count(name) > 0; };
  if (given("--function")) cfg.function = mfsp::FunctionSpec{fl.function, {}, {}, {}};
  if (given("-k")) cfg.k = fl.k;
  if (given("--alpha")) cfg.alpha = fl.alpha;
  if (given("--seed")) cfg.seed = fl.seed;
  if (given("--time-hint")) cfg.time_hint_seconds = fl.time_hint;
  if (given("--json")) cfg.json_path = fl.json;
  if (given("--csv")) cfg.csv_path = fl.csv;
  if (cmd->get_option_no_throw("-c") && given("-c")) {
    cfg.c.clear();
    for (const auto& v : split(fl.c, ',')) cfg.c.push_back(mfsp::Rational::parse(v));
  }
  if (cmd->get_option_no_throw("--nu") && given("--nu")) cfg.nu = fl.nu;
  if (cmd->get_option_no_throw("-x") && given("-x")) cfg.x = mfsp::parse_count(fl.x);
  if (cmd->get_option_no_throw("--prime-budget") && given("--prime-budget"))
    cfg.prime_budget = mfsp::parse_count(fl.prime_budget);
  if (cmd->get_option_no_throw("--record-cap") && given("--record-cap")) cfg.record_cap = fl.record_cap;
  if (cmd->get_option_no_throw("--box") && given("--box")) {
    cfg.box.clear();
    for (const auto& b : fl.box)
      for (const auto& iv : split(b, 'x')) cfg.box.push_back(mfsp::Interval::parse(iv));
  }
  if (cmd->get_option_no_throw("--perm") && given("--perm")) {
    cfg.permutations.clear();
    for (const auto& p : fl.perms) cfg.permutations.push_back(mfsp::parse_permutation(p));
  }
  if (cmd->get_option_no_throw("--all") && given("--all")) cfg.all_permutations = true;
  if (mode == mfsp::Mode::sieve) {
    if (given("--x-points")) {
      cfg.x_points.clear();
      for (const auto& v : split(fl.x_points, ',')) cfg.x_points.push_back(mfsp::parse_count(v));
    }
    if (given("--system-from")) {
      std::ifstream in(fl.system_from);
      if (!in) throw mfsp::Error(mfsp::ErrorKind::precondition, "cannot read " + fl.system_from);
      const mfsp::Json report = mfsp::Json::parse(in);
      const mfsp::Json* system = nullptr;
      if (report.contains("result") && report["result"].contains("system")) system = &report["result"]["system"];
      else if (report.contains("system")) system = &report["system"];
      else if (report.contains("a")) system = &report;
      if (!system) throw mfsp::Error(mfsp::ErrorKind::precondition, fl.system_from + " holds no system");
      const mfsp::CongruenceSystem s = mfsp::congruence_system_from_json(*system);
      cfg.k = s.k;
      cfg.moduli.clear();
      for (const auto& a : s.a) cfg.moduli.push_back(a.value());
    }
    if (given("--moduli")) {
      cfg.moduli.clear();
      for (const auto& v : split(fl.moduli, ',')) cfg.moduli.push_back(mfsp::parse_natural(v));
    }
    if (given("--gd-check")) cfg.gd_check = true;
    if (given("--dmax")) cfg.dmax = mfsp::parse_count(fl.dmax);
    if (given("--bv")) cfg.bv_q = mfsp::parse_count(fl.q);
  }
  return cfg;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw mfsp::Error(mfsp::ErrorKind::precondition, "cannot write " + path);
  out << content;
}

int execute(const mfsp::RunConfig& cfg) {
  const mfsp::RunOutcome outcome = mfsp::run(cfg);
  for (const auto& w : outcome.report["warnings"]) std::cerr << "warning: " << w.get<std::string>() << "\n";
  if (!cfg.json_path.empty()) write_file(cfg.json_path, outcome.report.dump(2) + "\n");
  if (!cfg.csv_path.empty() && !outcome.csv.empty()) write_file(cfg.csv_path, outcome.csv);
  std::cout << outcome.text;
  return outcome.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tuples of multiplicative functions on shifted primes: construct, scan, order, sieve"};
  app.footer(kCsvHelp);
  app.require_subcommand(1);
  Flags fl;

  auto* construct = app.add_subcommand("construct", "build moduli and congruences, then scan the class");
  add_common(construct, fl);
  construct->add_option("-c", fl.c, "targets c_1,...,c_k (exact: 2, 3/2, 2.1)");
  construct->add_option("--nu", fl.nu, "box half-width is 1/nu");
  construct->add_option("-x", fl.x, "scan bound (1e9 and 10^9 accepted)");
  construct->add_option("--prime-budget", fl.prime_budget, "primes the modulus builder may consume");
  construct->add_option("--record-cap", fl.record_cap, "maximum records kept in the report");

  auto* scan = app.add_subcommand("scan", "scan every prime p <= x directly");
  add_common(scan, fl);
  scan->add_option("--box", fl.box,
                   "intervals joined by 'x' or one per repeated flag, e.g. \"(1.9,2.1)x[1,inf)\"")
      ->allow_extra_args(false);
  scan->add_option("-c", fl.c, "box centres, used with --nu when --box is absent");
  scan->add_option("--nu", fl.nu, "box half-width is 1/nu");
  scan->add_option("-x", fl.x, "scan bound");
  scan->add_option("--record-cap", fl.record_cap, "maximum records kept in the report");

  auto* order = app.add_subcommand("order", "first primes realising each ordering of f(p+1..p+k)");
  add_common(order, fl);
  order->add_option("--perm", fl.perms, "permutation i_1,...,i_k with f(p+i_1) < ... (repeatable)");
  order->add_flag("--all", fl.all, "all k! permutations");
  order->add_option("-x", fl.x, "scan bound");

  auto* sieve = app.add_subcommand("sieve", "sieve analytics for a congruence system");
  add_common(sieve, fl);
  sieve->add_option("--system-from", fl.system_from, "JSON report (or system) to take a_1..a_k from");
  sieve->add_option("--moduli", fl.moduli, "a_1,...,a_k");
  sieve->add_option("--x-points", fl.x_points, "comma separated bounds");
  sieve->add_flag("--gd-check", fl.gd_check, "check g(d) = k^omega(d)");
  sieve->add_option("--dmax", fl.dmax, "bound for --gd-check");
  sieve->add_flag("--bv", fl.bv, "print max_b |pi(x;q,b) - pi(x)/phi(q)|");
  sieve->add_option("-q", fl.q, "modulus for --bv");
  sieve->add_option("-x", fl.x, "bound for --bv");

  auto* replay = app.add_subcommand("run", "replay a config file or the config embedded in a report");
  std::string replay_path, replay_json, replay_csv;
  replay->add_option("--config", replay_path, "config or report JSON")->required();
  replay->add_option("--json", replay_json, "write the JSON report here");
  replay->add_option("--csv", replay_csv, "write CSV output here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : mfsp::kExitPrecondition;
  }

  try {
    if (replay->parsed()) {
      std::ifstream in(replay_path);
      if (!in) throw mfsp::Error(mfsp::ErrorKind::precondition, "cannot read config " + replay_path);
      mfsp::RunConfig cfg = mfsp::run_config_from_json(mfsp::Json::parse(in));
      cfg.json_path = replay_json;
      cfg.csv_path = replay_csv;
      return execute(cfg);
    }
    std::pair<CLI::App*, mfsp::Mode> modes[] = {{construct, mfsp::Mode::construct},
                                                 {scan, mfsp::Mode::scan},
                                                 {order, mfsp::Mode::order},
                                                 {sieve, mfsp::Mode::sieve}};
    for (auto [cmd, mode] : modes)
      if (cmd->parsed()) return execute(to_config(cmd, mode, fl));
  } catch (const mfsp::Error& e) {
    std::cerr << "mfsp: " << mfsp::describe(e) << "\n";
    return mfsp::exit_code_for(e);
  } catch (const mfsp::Json::exception& e) {
    std::cerr << "mfsp: [config] malformed JSON: " << e.what() << "\n";
    return mfsp::kExitPrecondition;
  }
  return mfsp::kExitPrecondition;
}
