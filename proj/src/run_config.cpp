#include "mfsp/run_config.hpp"

#include <map>

#include "mfsp/error.hpp"

namespace mfsp {

namespace {

[[noreturn]] void config_error(const std::string& message) {
  Error e(ErrorKind::precondition, message);
  e.set_stage("config");
  throw e;
}

std::uint64_t count_field(const Json& j) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer()) {
    if (j.get<long long>() < 0) config_error("negative count " + j.dump());
    return j.get<std::uint64_t>();
  }
  if (j.is_string()) return parse_count(j.get<std::string>());
  config_error("expected an integer, got " + j.dump());
}

Rational rational_field(const Json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  config_error("rationals must be strings \"p/q\", got " + j.dump());
}

}  // namespace

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::construct: return "construct";
    case Mode::scan: return "scan";
    case Mode::order: return "order";
    case Mode::sieve: return "sieve";
  }
  return "construct";
}

Mode mode_from_string(std::string_view s) {
  if (s == "construct") return Mode::construct;
  if (s == "scan") return Mode::scan;
  if (s == "order") return Mode::order;
  if (s == "sieve") return Mode::sieve;
  config_error("unknown mode '" + std::string(s) + "'");
}

std::uint64_t parse_count(std::string_view text) {
  std::string s(text);
  if (auto caret = s.find('^'); caret != std::string::npos) {
    const Rational base = Rational::parse(s.substr(0, caret));
    const Rational exp = Rational::parse(s.substr(caret + 1));
    if (!base.is_integer() || !exp.is_integer() || exp.sign() < 0 || base.sign() < 0)
      config_error("bad count '" + s + "'");
    Natural out;
    mpz_pow_ui(out.get_mpz_t(), base.numerator().get_mpz_t(), exp.numerator().get_ui());
    if (!fits_u64(out)) config_error("count '" + s + "' exceeds 64 bits");
    return to_u64(out);
  }
  Rational r = [&] {
    try {
      return Rational::parse(s);
    } catch (const std::exception&) {
      config_error("bad count '" + s + "'");
    }
  }();
  if (!r.is_integer() || r.sign() < 0) config_error("count '" + s + "' is not a non-negative integer");
  if (!fits_u64(r.numerator())) config_error("count '" + s + "' exceeds 64 bits");
  return to_u64(r.numerator());
}

std::vector<unsigned> parse_permutation(std::string_view text) {
  std::vector<unsigned> out;
  std::string item;
  auto flush = [&] {
    if (item.empty()) config_error("empty entry in permutation '" + std::string(text) + "'");
    out.push_back(static_cast<unsigned>(parse_count(item)));
    item.clear();
  };
  for (char ch : text) {
    if (ch == ',') flush();
    else if (ch != ' ') item += ch;
  }
  flush();
  return out;
}

MultiplicativeFunction FunctionSpec::build() const {
  MultiplicativeFunction base_f = MultiplicativeFunction::builtin(base);
  if (is_plain()) return base_f;
  std::map<std::pair<Natural, unsigned>, Rational> table;
  for (const auto& o : overrides) {
    if (o.a == 0) config_error("override exponent must be >= 1");
    if (!is_prime(o.p)) config_error("override key " + o.p.get_str() + " is not prime");
    table[{o.p, o.a}] = o.value;
  }
  return base_f.with_overrides(name.empty() ? base : name, declared.value_or(base_f.declared_class()),
                               std::move(table));
}

void RunConfig::validate() const {
  if (k < 1) config_error("k must be >= 1");
  const bool needs_x = mode != Mode::sieve || bv_q;
  if (needs_x && !x) config_error(std::string(to_string(mode)) + " needs x");
  switch (mode) {
    case Mode::construct:
      if (c.size() != k) config_error("construct needs exactly k targets in c");
      if (!nu || *nu == 0) config_error("construct needs nu >= 1");
      break;
    case Mode::scan:
      if (!box.empty()) {
        if (box.size() != k) config_error("scan box must have k intervals");
      } else if (c.size() != k || !nu || *nu == 0) {
        config_error("scan needs k box intervals or k targets c with nu >= 1");
      }
      break;
    case Mode::order:
      if (permutations.empty() && !all_permutations)
        config_error("order needs at least one permutation or all_permutations");
      break;
    case Mode::sieve: {
      const int tasks = int(gd_check) + int(bv_q.has_value()) + int(!moduli.empty());
      if (tasks != 1) config_error("sieve needs exactly one of moduli, gd_check, bv");
      if (!moduli.empty()) {
        if (moduli.size() != k) config_error("sieve moduli must list k values a_1..a_k");
        if (x_points.empty()) config_error("sieve needs x_points");
      }
      break;
    }
  }
}

Json to_json(const RunConfig& cfg) {
  Json function;
  if (cfg.function.is_plain()) {
    function = cfg.function.base;
  } else {
    function = {{"base", cfg.function.base}};
    if (!cfg.function.name.empty()) function["name"] = cfg.function.name;
    if (cfg.function.declared) function["class"] = std::string(to_string(*cfg.function.declared));
    Json overrides = Json::array();
    for (const auto& o : cfg.function.overrides)
      overrides.push_back({{"p", o.p.get_str()}, {"a", o.a}, {"value", o.value.to_string()}});
    function["overrides"] = overrides;
  }
  Json out = {{"mode", std::string(to_string(cfg.mode))},
              {"function", function},
              {"k", cfg.k},
              {"alpha", cfg.alpha},
              {"prime_budget", cfg.prime_budget},
              {"record_cap", cfg.record_cap},
              {"seed", cfg.seed}};
  if (!cfg.c.empty()) {
    Json c = Json::array();
    for (const auto& v : cfg.c) c.push_back(v.to_string());
    out["c"] = c;
  }
  if (cfg.nu) out["nu"] = *cfg.nu;
  if (!cfg.box.empty()) {
    Json box = Json::array();
    for (const auto& iv : cfg.box) box.push_back(iv.to_string());
    out["box"] = box;
  }
  if (!cfg.permutations.empty()) out["permutations"] = cfg.permutations;
  if (cfg.all_permutations) out["all_permutations"] = true;
  if (cfg.x) out["x"] = *cfg.x;
  if (!cfg.x_points.empty()) out["x_points"] = cfg.x_points;
  if (cfg.time_hint_seconds) out["time_hint_seconds"] = *cfg.time_hint_seconds;
  if (!cfg.moduli.empty()) {
    Json m = Json::array();
    for (const auto& a : cfg.moduli) m.push_back(a.get_str());
    out["moduli"] = m;
  }
  if (cfg.gd_check) {
    out["gd_check"] = true;
    out["dmax"] = cfg.dmax;
  }
  if (cfg.bv_q) out["bv_q"] = *cfg.bv_q;
  return out;
}

RunConfig run_config_from_json(const Json& input) {
  const Json& j = input.contains("config") ? input.at("config") : input;
  if (!j.is_object()) config_error("config must be a JSON object");
  RunConfig cfg;
  try {
    if (j.contains("mode")) cfg.mode = mode_from_string(j.at("mode").get<std::string>());
    if (j.contains("function")) {
      const Json& f = j.at("function");
      if (f.is_string()) {
        cfg.function.base = f.get<std::string>();
      } else {
        cfg.function.base = f.value("base", std::string("n_over_phi"));
        cfg.function.name = f.value("name", std::string());
        if (f.contains("class"))
          cfg.function.declared = divergence_class_from_string(f.at("class").get<std::string>());
        for (const auto& o : f.value("overrides", Json::array()))
          cfg.function.overrides.push_back({parse_natural(o.at("p").is_string() ? o.at("p").get<std::string>()
                                                                          : o.at("p").dump()),
                                            o.value("a", 1u), rational_field(o.at("value"))});
      }
    }
    if (j.contains("k")) cfg.k = j.at("k").get<unsigned>();
    for (const auto& v : j.value("c", Json::array())) cfg.c.push_back(rational_field(v));
    if (j.contains("nu")) cfg.nu = j.at("nu").get<unsigned>();
    for (const auto& v : j.value("box", Json::array())) cfg.box.push_back(Interval::parse(v.get<std::string>()));
    for (const auto& perm : j.value("permutations", Json::array())) {
      if (perm.is_string()) cfg.permutations.push_back(parse_permutation(perm.get<std::string>()));
      else cfg.permutations.push_back(perm.get<std::vector<unsigned>>());
    }
    cfg.all_permutations = j.value("all_permutations", false);
    if (j.contains("x")) cfg.x = count_field(j.at("x"));
    for (const auto& v : j.value("x_points", Json::array())) cfg.x_points.push_back(count_field(v));
    cfg.alpha = j.value("alpha", 0.1);
    if (j.contains("prime_budget")) cfg.prime_budget = count_field(j.at("prime_budget"));
    if (j.contains("record_cap")) cfg.record_cap = count_field(j.at("record_cap"));
    if (j.contains("time_hint_seconds")) cfg.time_hint_seconds = j.at("time_hint_seconds").get<double>();
    for (const auto& v : j.value("moduli", Json::array()))
      cfg.moduli.push_back(parse_natural(v.is_string() ? v.get<std::string>() : v.dump()));
    cfg.gd_check = j.value("gd_check", false);
    if (j.contains("dmax")) cfg.dmax = count_field(j.at("dmax"));
    if (j.contains("bv_q")) cfg.bv_q = count_field(j.at("bv_q"));
    if (j.contains("seed")) cfg.seed = count_field(j.at("seed"));
    cfg.json_path = j.value("json", std::string());
    cfg.csv_path = j.value("csv", std::string());
  } catch (const Json::exception& e) {
    config_error(std::string("malformed config: ") + e.what());
  }
  return cfg;
}

}  // namespace mfsp
