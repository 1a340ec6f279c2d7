#include "mfsp/driver.hpp"

#include <chrono>
#include <sstream>

#include "mfsp/scanner.hpp"
#include "mfsp/sieve_stats.hpp"

namespace mfsp {

namespace {

// Prime bound for the declared-class audit; large enough to separate the
// built-ins, small enough to be free.
constexpr std::uint64_t kAuditBound = 100000;

std::string join(const std::vector<Rational>& values, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? sep : "") + values[i].to_string();
  return out;
}

std::string join(const std::vector<unsigned>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + std::to_string(values[i]);
  return out;
}

void summarise_records(std::ostringstream& os, const ScanReport& r) {
  std::size_t shown = 0;
  for (const auto& rec : r.records) {
    if (!rec.in_box) continue;
    if (shown++ == 10) {
      os << "  ...\n";
      break;
    }
    os << "  p = " << rec.p << "  (" << join(rec.values, ", ") << ")\n";
  }
}

std::string tuples_csv(const ScanReport& r) {
  std::ostringstream os;
  write_tuples_csv(os, r.records, r.k);
  return os.str();
}

void run_construct(const RunConfig& cfg, const MultiplicativeFunction& f, RunOutcome& out) {
  ConstructParams params{f, cfg.k, cfg.c, *cfg.nu, *cfg.x, cfg.alpha, cfg.prime_budget, cfg.record_cap};
  const ScanReport r = scan_constructed(params);
  out.report["result"] = to_json(r);
  out.csv = tuples_csv(r);
  std::ostringstream os;
  os << "function " << r.function << ", k = " << r.k << ", x = " << r.x << "\n";
  os << "box " << r.box.to_string() << ", epsilon = " << r.epsilon->to_string() << "\n";
  os << "targets x = (" << join(r.targets_x, ", ") << ")\n";
  os << "K = " << r.system->K.to_string() << ", a = (";
  for (std::size_t i = 0; i < r.system->a.size(); ++i)
    os << (i ? ", " : "") << r.system->a[i].value().get_str();
  os << ")\nN = " << r.system->N.get_str() << ", M' = " << r.system->modulus.get_str() << "\n";
  os << "class primes " << r.class_primes << ", in S " << r.s_members << ", in box " << r.found
     << (r.truncated ? " (records truncated)" : "") << "\n";
  os << "shift divisibility " << (r.claim1_all_ok ? "ok" : "FAILED") << ", rough parts "
     << (r.rough_parts_all_ok ? "ok" : "FAILED") << "\n";
  summarise_records(os, r);
  out.text = os.str();
  out.exit_code = r.found > 0 ? kExitOk : kExitNothingFound;
}

void run_scan(const RunConfig& cfg, const MultiplicativeFunction& f, RunOutcome& out) {
  const TargetBox box = cfg.box.empty() ? TargetBox::around(cfg.c, *cfg.nu) : TargetBox{cfg.box};
  ScanReport r = scan_direct(f, cfg.k, *cfg.x, box, cfg.record_cap);
  if (!cfg.c.empty()) r.c = cfg.c;
  if (cfg.box.empty()) r.nu = cfg.nu;
  out.report["result"] = to_json(r);
  out.csv = tuples_csv(r);
  std::ostringstream os;
  os << "function " << r.function << ", k = " << r.k << ", x = " << r.x << "\n";
  os << "box " << r.box.to_string() << "\n";
  os << "primes scanned " << r.primes_scanned << ", in box " << r.found
     << (r.truncated ? " (records truncated)" : "") << "\n";
  summarise_records(os, r);
  out.text = os.str();
  out.exit_code = r.found > 0 ? kExitOk : kExitNothingFound;
}

void run_order(const RunConfig& cfg, const MultiplicativeFunction& f, RunOutcome& out) {
  const auto perms = cfg.all_permutations ? all_permutations(cfg.k) : cfg.permutations;
  const OrderingTable t = find_orderings(f, cfg.k, *cfg.x, perms);
  out.report["result"] = to_json(t);
  std::ostringstream os;
  os << "ordering        first        count\n";
  for (const auto& row : t.rows) {
    std::string first = row.first ? std::to_string(*row.first) : "-";
    std::string perm = join(row.permutation);
    os << perm << std::string(perm.size() < 16 ? 16 - perm.size() : 1, ' ') << first
       << std::string(first.size() < 13 ? 13 - first.size() : 1, ' ') << row.count << "\n";
  }
  os << "primes scanned " << t.primes_scanned << ", equal values " << t.ties << "\n";
  out.text = os.str();
  out.exit_code = t.all_realized() ? kExitOk : kExitNothingFound;
}

void run_sieve(const RunConfig& cfg, RunOutcome& out) {
  std::ostringstream os;
  if (cfg.bv_q) {
    const double e = bv_error(*cfg.bv_q, *cfg.x);
    out.report["result"] = {{"q", *cfg.bv_q}, {"x", *cfg.x}, {"bv_error", e}};
    out.text = format_decimal(e) + "\n";
    return;
  }
  if (cfg.gd_check) {
    const GdCheck g = check_g_closed_form(cfg.dmax, cfg.k);
    out.report["result"] = {{"k", cfg.k}, {"dmax", cfg.dmax}, {"checked", g.checked},
                            {"mismatches", g.mismatches}};
    out.report["result"]["first_mismatch"] = g.first_mismatch ? Json(*g.first_mismatch) : Json(nullptr);
    os << "g(d) = " << cfg.k << "^omega(d) on " << g.checked << " values of d <= " << cfg.dmax
       << ": " << g.mismatches << " mismatches\n";
    out.text = os.str();
    out.exit_code = g.mismatches == 0 ? kExitOk : kExitNothingFound;
    return;
  }
  std::vector<FactoredInteger> a;
  for (const auto& m : cfg.moduli) a.push_back(factorize(m));
  CongruenceSystem system = [&] {
    try {
      return build_system(compute_K(cfg.k), a);
    } catch (Error& e) {
      if (e.stage().empty()) e.set_stage("build_system");
      throw;
    }
  }();
  const auto rows = rough_count(system, cfg.x_points, cfg.alpha);
  Json jr = Json::array();
  for (const auto& e : rows) jr.push_back(to_json(e));
  // The lower bound is sometimes quoted with exponent k; rows use the k+1 that the sieve yields.
  out.report["result"] = {{"system", to_json(system)},
                          {"alpha", cfg.alpha},
                          {"normalization", "observed * (log x)^(k+1) / x"},
                          {"rows", jr}};
  write_sieve_csv(os, rows);
  out.csv = os.str();
  out.text = out.csv;
}

}  // namespace

RunOutcome run(const RunConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  RunOutcome out;
  out.report = {{"schema_version", kSchemaVersion},
                {"mode", std::string(to_string(cfg.mode))},
                {"config", to_json(cfg)},
                {"warnings", Json::array()}};
  if (cfg.mode == Mode::sieve) {
    run_sieve(cfg, out);
  } else {
    const MultiplicativeFunction f = [&] {
      try {
        return cfg.function.build();
      } catch (Error& e) {
        if (e.stage().empty()) e.set_stage("config");
        throw;
      }
    }();
    if (auto warning = audit_declared_class(f, kAuditBound)) out.report["warnings"].push_back(*warning);
    switch (cfg.mode) {
      case Mode::construct: run_construct(cfg, f, out); break;
      case Mode::scan: run_scan(cfg, f, out); break;
      case Mode::order: run_order(cfg, f, out); break;
      case Mode::sieve: break;
    }
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.report["metadata"] = {{"elapsed_seconds", elapsed}};
  if (cfg.time_hint_seconds) out.report["metadata"]["time_hint_exceeded"] = elapsed > *cfg.time_hint_seconds;
  return out;
}

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::budget_exhausted:
    case ErrorKind::precision_exhausted: return kExitBudget;
    default: return kExitPrecondition;
  }
}

std::string describe(const Error& e) {
  std::string out = e.stage().empty() ? "" : "[" + e.stage() + "] ";
  return out + std::string(to_string(e.kind())) + ": " + e.what();
}

std::string reproducible_dump(const Json& report) {
  Json copy = report;
  copy.erase("metadata");
  return copy.dump(2);
}

}  // namespace mfsp
