#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mfsp/moduli.hpp"
#include "mfsp/mult_func.hpp"
#include "mfsp/rational.hpp"
#include "mfsp/report.hpp"
#include "mfsp/scanner.hpp"

namespace mfsp {

enum class Mode { construct, scan, order, sieve };

std::string_view to_string(Mode mode);
Mode mode_from_string(std::string_view s);

struct FunctionOverride {
  Natural p;
  unsigned a = 1;
  Rational value;
};

/// A built-in rule, optionally renamed, re-declared and patched by a finite
/// table of prime-power overrides.
struct FunctionSpec {
  std::string base = "n_over_phi";
  std::string name;  // empty: use base
  std::optional<DivergenceClass> declared;
  std::vector<FunctionOverride> overrides;

  bool is_plain() const { return name.empty() && !declared && overrides.empty(); }
  MultiplicativeFunction build() const;
};

struct RunConfig {
  Mode mode = Mode::construct;
  FunctionSpec function;
  unsigned k = 2;

  std::vector<Rational> c;   // construct, scan
  std::optional<unsigned> nu;
  std::vector<Interval> box; // scan; overrides c/nu when present

  std::vector<std::vector<unsigned>> permutations;  // order
  bool all_permutations = false;

  std::optional<std::uint64_t> x;
  std::vector<std::uint64_t> x_points;  // sieve
  double alpha = 0.1;

  std::uint64_t prime_budget = kDefaultPrimeBudget;
  std::size_t record_cap = 1000;
  std::optional<double> time_hint_seconds;

  std::vector<Natural> moduli;  // sieve: a_1..a_k of an existing system
  bool gd_check = false;
  std::uint64_t dmax = 10000;
  std::optional<std::uint64_t> bv_q;

  std::string json_path;  // not embedded in reports
  std::string csv_path;
  std::uint64_t seed = 1;

  /// Throws precondition (stage "config") when a mode-specific field is missing.
  void validate() const;
};

/// Output paths are left out so that a replay never clobbers the original.
Json to_json(const RunConfig& config);

/// Accepts a bare config or a full report (its "config" member is used).
RunConfig run_config_from_json(const Json& j);

/// "1e9", "1000000", "10^6" -> exact non-negative integer.
std::uint64_t parse_count(std::string_view text);

/// "1,2,3" -> {1,2,3}.
std::vector<unsigned> parse_permutation(std::string_view text);

}  // namespace mfsp
