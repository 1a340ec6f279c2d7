#include "mfsp/report.hpp"

#include <cstdio>

#include "mfsp/error.hpp"

namespace mfsp {

std::string format_decimal(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

Json to_json(const Rational& r) { return r.to_string(); }

namespace {

Json rationals(const std::vector<Rational>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(v.to_string());
  return out;
}

Json approximations(const std::vector<Rational>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(v.to_double());
  return out;
}

Json claim_checks(const ConstructedPrime& d) {
  Json parts = Json::array();
  for (const auto& c : d.rough_parts) {
    parts.push_back({{"shift", c.shift},
                     {"value", c.value.to_string()},
                     {"deviation", c.deviation},
                     {"deviation_bound", c.deviation_bound},
                     {"distinct_primes", c.distinct_primes},
                     {"prime_count_bound", c.prime_count_bound},
                     {"ok", c.ok}});
  }
  return {{"delta", d.delta.value().get_str()},
          {"delta_factors", d.delta.to_string()},
          {"claim1_ok", d.claim1_ok},
          {"rough_parts", parts}};
}

}  // namespace

Json to_json(const CongruenceSystem& system) {
  Json a = Json::array();
  for (const auto& ai : system.a) a.push_back(ai.value().get_str());
  Json congruences = Json::array();
  for (const auto& c : system.congruences)
    congruences.push_back({{"residue", c.residue.get_str()}, {"modulus", c.modulus.get_str()}});
  return {{"k", system.k},
          {"K", system.K.value().get_str()},
          {"a", a},
          {"congruences", congruences},
          {"N", system.N.get_str()},
          {"M_prime", system.modulus.get_str()}};
}

CongruenceSystem congruence_system_from_json(const Json& j) {
  const unsigned k = j.at("k").get<unsigned>();
  std::vector<FactoredInteger> a;
  for (const auto& ai : j.at("a")) a.push_back(factorize(parse_natural(ai.get<std::string>())));
  if (a.size() != k) throw Error(ErrorKind::precondition, "system JSON: a[] does not have k entries");
  const FactoredInteger K = j.contains("K") ? factorize(parse_natural(j.at("K").get<std::string>()))
                                            : compute_K(k);
  CongruenceSystem system = build_system(K, a);
  if (j.contains("N") && parse_natural(j.at("N").get<std::string>()) != system.N)
    throw Error(ErrorKind::precondition, "system JSON: stored N disagrees with the recomputed one");
  if (j.contains("M_prime") && parse_natural(j.at("M_prime").get<std::string>()) != system.modulus)
    throw Error(ErrorKind::precondition, "system JSON: stored M' disagrees with the recomputed one");
  return system;
}

Json to_json(const OrderingTable& table) {
  Json rows = Json::array();
  for (const auto& row : table.rows) {
    Json r = {{"permutation", row.permutation},
              {"count", row.count},
              {"first_occurrences", row.first_few}};
    r["first"] = row.first ? Json(*row.first) : Json(nullptr);
    rows.push_back(r);
  }
  Json out = {{"rows", rows},
              {"primes_scanned", table.primes_scanned},
              {"all_realized", table.all_realized()},
              {"equalities", {{"count", table.ties}, {"examples", table.tie_examples}}}};
  out["equalities"]["first"] = table.first_tie ? Json(*table.first_tie) : Json(nullptr);
  return out;
}

Json to_json(const ScanReport& report) {
  Json out = {{"route", report.route},
              {"function", report.function},
              {"k", report.k},
              {"x", report.x},
              {"box", report.box.to_string()},
              {"found", report.found},
              {"truncated", report.truncated}};
  if (report.alpha) out["alpha"] = *report.alpha;
  if (report.nu) out["nu"] = *report.nu;
  if (!report.c.empty()) out["c"] = rationals(report.c);
  if (report.route == "direct") out["primes_scanned"] = report.primes_scanned;
  if (report.epsilon) out["epsilon"] = report.epsilon->to_string();
  if (!report.targets_x.empty()) out["targets_x"] = rationals(report.targets_x);
  if (report.system) {
    out["system"] = to_json(*report.system);
    Json brackets = Json::array();
    for (const auto& b : report.bracketing)
      brackets.push_back({{"index", b.index},
                          {"lower", b.lower.to_string()},
                          {"value", b.value.to_string()},
                          {"upper", b.upper.to_string()},
                          {"ok", b.ok}});
    out["bracketing"] = brackets;
    out["class_candidates"] = report.class_candidates;
    out["class_primes"] = report.class_primes;
    out["s_members"] = report.s_members;
    out["claim1_all_ok"] = report.claim1_all_ok;
    out["rough_parts_all_ok"] = report.rough_parts_all_ok;
  }
  Json records = Json::array();
  for (std::size_t i = 0; i < report.records.size(); ++i) {
    const auto& rec = report.records[i];
    Json r = {{"p", rec.p},
              {"values", rationals(rec.values)},
              {"values_approx", approximations(rec.values)},
              {"in_box", rec.in_box}};
    if (rec.rough) r["rough"] = *rec.rough;
    if (rec.squarefree) r["squarefree"] = *rec.squarefree;
    if (i < report.details.size()) r["checks"] = claim_checks(report.details[i]);
    records.push_back(r);
  }
  out["records"] = records;
  if (report.orderings) out["orderings"] = to_json(*report.orderings);
  return out;
}

Json to_json(const SieveEstimate& e) {
  return {{"x", e.x},
          {"M_prime", e.modulus.get_str()},
          {"y", e.y},
          {"k", e.k},
          {"pi_x", e.pi_x},
          {"main_term", e.main_term},
          {"observed", e.observed},
          {"normalized", e.normalized}};
}

void write_tuples_csv(std::ostream& os, std::span<const TupleRecord> records, unsigned k) {
  os << "p";
  for (unsigned i = 1; i <= k; ++i) os << ",f(p+" << i << ")";
  for (unsigned i = 1; i <= k; ++i) os << ",approx_f(p+" << i << ")";
  os << ",rough,squarefree,in_box\n";
  auto flag = [](const std::optional<bool>& b) -> std::string {
    return b ? (*b ? "1" : "0") : "";
  };
  for (const auto& rec : records) {
    os << rec.p;
    for (const auto& v : rec.values) os << ',' << v.to_string();
    for (const auto& v : rec.values) os << ',' << format_decimal(v.to_double());
    os << ',' << flag(rec.rough) << ',' << flag(rec.squarefree) << ',' << (rec.in_box ? 1 : 0)
       << '\n';
  }
}

void write_sieve_csv(std::ostream& os, std::span<const SieveEstimate> rows) {
  os << "x,observed,main_term,normalized\n";
  for (const auto& e : rows)
    os << e.x << ',' << e.observed << ',' << format_decimal(e.main_term) << ','
       << format_decimal(e.normalized) << '\n';
}

}  // namespace mfsp
