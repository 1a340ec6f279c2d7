#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mfsp/arith.hpp"
#include "mfsp/congruence.hpp"
#include "mfsp/moduli.hpp"
#include "mfsp/mult_func.hpp"
#include "mfsp/rational.hpp"

namespace mfsp {

/// Interval of the extended rational line; a missing bound is infinite.
struct Interval {
  std::optional<Rational> lower;
  std::optional<Rational> upper;
  bool lower_closed = true;
  bool upper_closed = true;

  static Interval open(Rational lo, Rational hi);
  static Interval closed(Rational lo, Rational hi);
  /// "[2.1,2.2]", "(1,inf)", "(-inf,3/2]".
  static Interval parse(std::string_view text);

  bool contains(const Rational& v) const;
  bool is_empty() const;
  std::string to_string() const;
};

struct TargetBox {
  std::vector<Interval> intervals;

  /// Open intervals (c_i - 1/nu, c_i + 1/nu).
  static TargetBox around(const std::vector<Rational>& c, unsigned nu);

  bool contains(std::span<const Rational> values) const;
  std::string to_string() const;
};

struct TupleRecord {
  std::uint64_t p = 0;
  std::vector<Rational> values;  // f(p+1), ..., f(p+k)
  std::optional<bool> rough;       // P-(delta(p)) > x^alpha; constructed route only
  std::optional<bool> squarefree;  // mu^2(delta(p)) = 1; constructed route only
  bool in_box = false;
};

/// One class prime together with the shape of delta(p).
struct ClassPrime {
  std::uint64_t p = 0;
  PrimeOrInfinity least_delta_prime = PrimeOrInfinity::infinity();
  bool delta_squarefree = true;
};

/// Every prime p <= x with p = N (mod M'), ascending. Steps the progression
/// and tests each candidate; `candidates` receives the number of terms tested.
std::vector<ClassPrime> enumerate_class_primes(const CongruenceSystem& system, std::uint64_t x,
                                               std::uint64_t* candidates = nullptr);

/// Throws precondition unless alpha is in (0,1) and x^alpha >= k-1.
double sifting_level(const CongruenceSystem& system, std::uint64_t x, double alpha);

/// Primes p <= x in the class with P-(delta(p)) > x^alpha and delta(p) squarefree.
std::vector<std::uint64_t> members_of_S(const CongruenceSystem& system, std::uint64_t x,
                                        double alpha);

/// |f(a_i) - target| bracketing for one coordinate: lower < value < upper.
struct BracketCheck {
  unsigned index = 0;
  Rational lower;
  Rational value;
  Rational upper;
  bool ok = false;
};

/// Finite version of the rough-part estimate for one factor (p+i)/(a_i(i-1)).
struct RoughPartCheck {
  unsigned shift = 0;
  Rational value;               // f of the part
  double deviation = 0;         // |value - 1|
  double deviation_bound = 0;   // 2 * sum |f(q^e) - 1| over the part's prime powers
  unsigned distinct_primes = 0;
  double prime_count_bound = 0; // log(x+i) / (alpha log x)
  bool ok = false;
};

struct ConstructedPrime {
  TupleRecord record;
  FactoredInteger delta;
  bool claim1_ok = false;
  std::vector<RoughPartCheck> rough_parts;
};

struct ConstructParams {
  MultiplicativeFunction f;
  unsigned k = 2;
  std::vector<Rational> c;
  unsigned nu = 1;
  std::uint64_t x = 0;
  double alpha = 0.1;
  std::uint64_t prime_budget = kDefaultPrimeBudget;
  std::size_t record_cap = 1000;
};

struct OrderingRow {
  std::vector<unsigned> permutation;  // f(p+i_1) < ... < f(p+i_k)
  std::optional<std::uint64_t> first;
  std::vector<std::uint64_t> first_few;
  std::uint64_t count = 0;
};

struct OrderingTable {
  std::vector<OrderingRow> rows;
  std::uint64_t primes_scanned = 0;
  std::uint64_t ties = 0;  // primes with f(p+i) = f(p+j) for some i != j
  std::optional<std::uint64_t> first_tie;
  std::vector<std::uint64_t> tie_examples;

  bool all_realized() const;
};

struct ScanReport {
  std::string route;  // "constructed" or "direct"
  std::string function;
  unsigned k = 0;
  std::uint64_t x = 0;
  std::optional<double> alpha;
  std::optional<unsigned> nu;
  std::vector<Rational> c;
  TargetBox box;

  // Constructed route.
  std::optional<Rational> epsilon;
  std::vector<Rational> targets_x;
  std::optional<CongruenceSystem> system;
  std::vector<BracketCheck> bracketing;
  std::uint64_t class_candidates = 0;
  std::uint64_t class_primes = 0;
  std::uint64_t s_members = 0;
  std::vector<ConstructedPrime> details;  // parallel to records
  bool claim1_all_ok = true;
  bool rough_parts_all_ok = true;

  std::uint64_t primes_scanned = 0;  // direct route
  std::uint64_t found = 0;           // records with in_box = true
  std::vector<TupleRecord> records;
  bool truncated = false;
  std::optional<OrderingTable> orderings;

  double elapsed_seconds = 0;  // metadata; excluded from reproducibility checks
};

/// Full construction: K, epsilon, targets, moduli, congruence system, then
/// the class scan with exact tuple evaluation. Errors carry their stage.
ScanReport scan_constructed(const ConstructParams& params);

/// Independent route: every prime p <= x, tuples evaluated exactly from a
/// windowed factorisation of p+1..p+k.
ScanReport scan_direct(const MultiplicativeFunction& f, unsigned k, std::uint64_t x,
                       const TargetBox& box, std::size_t record_cap = 1000);

/// All k! permutations in lexicographic order.
std::vector<std::vector<unsigned>> all_permutations(unsigned k);

OrderingTable find_orderings(const MultiplicativeFunction& f, unsigned k, std::uint64_t x,
                             const std::vector<std::vector<unsigned>>& permutations);

/// f(p+1..p+k) for every prime p in [lo, hi], windowed. Exposed so other
/// modules can reuse the direct route.
void for_each_prime_tuple(const MultiplicativeFunction& f, unsigned k, std::uint64_t lo,
                          std::uint64_t hi,
                          const std::function<void(std::uint64_t, std::span<const Rational>)>& fn);

}  // namespace mfsp
