#include "mfsp/scanner.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <unordered_map>

#include "mfsp/error.hpp"
#include "mfsp/primes.hpp"
#include "parallel.hpp"

namespace mfsp {

namespace {

constexpr std::size_t kFirstFew = 5;

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::optional<Rational> parse_bound(std::string_view text, bool lower) {
  std::string s = trim(text);
  const bool negative = !s.empty() && s.front() == '-';
  const std::string name = (!s.empty() && (s.front() == '-' || s.front() == '+')) ? s.substr(1) : s;
  if (name != "inf" && name != "infinity" && name != "oo") return Rational::parse(s);
  if (lower != negative)
    throw Error(ErrorKind::precondition, "infinite bound on the wrong side: '" + s + "'");
  return std::nullopt;
}

template <class Fn>
auto staged(const char* stage, Fn&& fn) {
  try {
    return fn();
  } catch (Error& e) {
    if (e.stage().empty()) e.set_stage(stage);
    throw;
  }
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Boxes

Interval Interval::open(Rational lo, Rational hi) {
  return Interval{std::move(lo), std::move(hi), false, false};
}

Interval Interval::closed(Rational lo, Rational hi) {
  return Interval{std::move(lo), std::move(hi), true, true};
}

Interval Interval::parse(std::string_view text) {
  const std::string s = trim(text);
  const auto comma = s.find(',');
  if (s.size() < 5 || comma == std::string::npos || (s.front() != '[' && s.front() != '(') ||
      (s.back() != ']' && s.back() != ')'))
    throw Error(ErrorKind::precondition, "cannot parse interval '" + s + "'");
  Interval out;
  out.lower_closed = s.front() == '[';
  out.upper_closed = s.back() == ']';
  out.lower = parse_bound(std::string_view(s).substr(1, comma - 1), true);
  out.upper = parse_bound(std::string_view(s).substr(comma + 1, s.size() - comma - 2), false);
  if (!out.lower) out.lower_closed = false;
  if (!out.upper) out.upper_closed = false;
  if (out.is_empty()) throw Error(ErrorKind::precondition, "empty interval '" + s + "'");
  return out;
}

bool Interval::contains(const Rational& v) const {
  if (lower && (lower_closed ? v < *lower : v <= *lower)) return false;
  if (upper && (upper_closed ? v > *upper : v >= *upper)) return false;
  return true;
}

bool Interval::is_empty() const {
  if (!lower || !upper) return false;
  if (*lower < *upper) return false;
  return !(*lower == *upper && lower_closed && upper_closed);
}

std::string Interval::to_string() const {
  std::string out(1, lower_closed ? '[' : '(');
  out += lower ? lower->to_string() : "-inf";
  out += ',';
  out += upper ? upper->to_string() : "inf";
  out += upper_closed ? ']' : ')';
  return out;
}

TargetBox TargetBox::around(const std::vector<Rational>& c, unsigned nu) {
  if (nu < 1) throw Error(ErrorKind::precondition, "nu must be a positive integer");
  const Rational width = Rational(1) / Rational(static_cast<long>(nu));
  TargetBox box;
  for (const auto& ci : c) box.intervals.push_back(Interval::open(ci - width, ci + width));
  return box;
}

bool TargetBox::contains(std::span<const Rational> values) const {
  if (values.size() != intervals.size()) return false;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!intervals[i].contains(values[i])) return false;
  return true;
}

std::string TargetBox::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    if (i) out += 'x';
    out += intervals[i].to_string();
  }
  return out;
}

bool OrderingTable::all_realized() const {
  return std::all_of(rows.begin(), rows.end(), [](const OrderingRow& r) { return r.first.has_value(); });
}

// ---------------------------------------------------------------------------
// Class route

std::vector<ClassPrime> enumerate_class_primes(const CongruenceSystem& system, std::uint64_t x,
                                               std::uint64_t* candidates) {
  if (candidates) *candidates = 0;
  if (Natural(to_natural(x)) < system.N) return {};
  const std::uint64_t N = to_u64(system.N);
  // A modulus beyond 64 bits leaves N as the only candidate <= x.
  const std::uint64_t M = fits_u64(system.modulus) ? system.modulus.get_ui() : 0;
  const std::uint64_t last = M ? (x - N) / M : 0;
  if (candidates) *candidates = last + 1;
  auto chunks = detail::map_chunks<std::vector<ClassPrime>>(
      0, last, 4096, [&](std::uint64_t t0, std::uint64_t t1) {
        std::vector<ClassPrime> found;
        for (std::uint64_t t = t0; t <= t1; ++t) {
          const std::uint64_t n = N + t * M;
          if (!is_prime_u64(n)) continue;
          const FactoredInteger d = delta(to_natural(n), system);
          found.push_back(ClassPrime{n, p_minus(d), is_squarefree(d)});
        }
        return found;
      });
  std::vector<ClassPrime> out;
  for (auto& c : chunks) std::move(c.begin(), c.end(), std::back_inserter(out));
  return out;
}

double sifting_level(const CongruenceSystem& system, std::uint64_t x, double alpha) {
  if (!(alpha > 0 && alpha < 1)) throw Error(ErrorKind::precondition, "alpha must lie in (0,1)");
  const double y = std::pow(static_cast<double>(x), alpha);
  if (y < static_cast<double>(system.k) - 1)
    throw Error(ErrorKind::precondition, "x^alpha = " + std::to_string(y) + " is below k-1 = " +
                                             std::to_string(system.k - 1));
  return y;
}

std::vector<std::uint64_t> members_of_S(const CongruenceSystem& system, std::uint64_t x,
                                        double alpha) {
  const double y = sifting_level(system, x, alpha);
  std::vector<std::uint64_t> out;
  for (const auto& cp : enumerate_class_primes(system, x))
    if (cp.least_delta_prime.exceeds(y) && cp.delta_squarefree) out.push_back(cp.p);
  return out;
}

ScanReport scan_constructed(const ConstructParams& params) {
  const auto start = std::chrono::steady_clock::now();
  const auto& f = params.f;
  ScanReport r;
  r.route = "constructed";
  r.function = f.name();
  r.k = params.k;
  r.x = params.x;
  r.alpha = params.alpha;
  r.nu = params.nu;
  r.c = params.c;

  staged("hypothesis", [&] {
    if (f.declared_class() == DivergenceClass::non_divergent)
      throw Error(ErrorKind::class_mismatch,
                  f.name() + " is a non-divergent function; no construction exists");
    if (params.c.size() != params.k)
      throw Error(ErrorKind::precondition, "expected " + std::to_string(params.k) +
                                               " target coordinates, got " +
                                               std::to_string(params.c.size()));
    return 0;
  });
  const FactoredInteger K = staged("compute_K", [&] { return compute_K(params.k); });
  r.epsilon = staged("compute_epsilon", [&] { return compute_epsilon(f, params.k, params.nu); });
  r.box = TargetBox::around(params.c, params.nu);
  r.targets_x = staged("targets_to_x", [&] { return targets_to_x(params.c, f, K); });
  const auto a = staged("build_moduli", [&] {
    return build_moduli(ModulusRequest{f, r.targets_x, *r.epsilon, K, params.prime_budget});
  });
  r.system = staged("build_system", [&] { return build_system(K, a); });
  const CongruenceSystem& system = *r.system;

  const Rational half_width = Rational(1) / Rational(static_cast<long>(2 * params.nu));
  for (unsigned i = 0; i < params.k; ++i) {
    const Rational base = i == 0 ? evaluate(f, K) : evaluate(f, factorize(std::uint64_t{i}));
    BracketCheck b;
    b.index = i + 1;
    b.lower = (params.c[i] - half_width) / base;
    b.upper = (params.c[i] + half_width) / base;
    b.value = evaluate(f, a[i]);
    b.ok = b.lower < b.value && b.value < b.upper;
    r.bracketing.push_back(std::move(b));
  }

  const double y = staged("members_of_S", [&] { return sifting_level(system, params.x, params.alpha); });
  const auto class_primes = enumerate_class_primes(system, params.x, &r.class_candidates);
  r.class_primes = class_primes.size();
  const double log_x = std::log(static_cast<double>(params.x));
  for (const auto& cp : class_primes) {
    if (!(cp.least_delta_prime.exceeds(y) && cp.delta_squarefree)) continue;
    ++r.s_members;
    ConstructedPrime detail;
    TupleRecord& rec = detail.record;
    rec.p = cp.p;
    rec.rough = true;
    rec.squarefree = true;
    for (unsigned i = 1; i <= params.k; ++i)
      rec.values.push_back(evaluate(f, factorize(to_natural(cp.p) + i)));
    rec.in_box = r.box.contains(rec.values);
    if (rec.in_box) ++r.found;

    const Natural p = to_natural(cp.p);
    detail.claim1_ok = verify_claim1(p, system).all();
    r.claim1_all_ok = r.claim1_all_ok && detail.claim1_ok;
    const auto parts = delta_parts(p, system);
    for (unsigned i = 1; i <= params.k; ++i) {
      const FactoredInteger& part = parts[i - 1];
      detail.delta = detail.delta * part;
      RoughPartCheck check;
      check.shift = i;
      check.value = evaluate(f, part);
      check.deviation = abs(check.value - Rational(1)).to_double();
      double sum = 0;
      for (const auto& pp : part.factors())
        sum += abs(f.at_prime_power(pp.prime, pp.exponent) - Rational(1)).to_double();
      check.deviation_bound = 2 * sum;
      check.distinct_primes = static_cast<unsigned>(part.distinct_primes());
      check.prime_count_bound = std::log(static_cast<double>(params.x) + i) / (params.alpha * log_x);
      check.ok = check.deviation <= check.deviation_bound &&
                 check.distinct_primes <= check.prime_count_bound;
      r.rough_parts_all_ok = r.rough_parts_all_ok && check.ok;
      detail.rough_parts.push_back(std::move(check));
    }
    if (r.records.size() < params.record_cap) {
      r.records.push_back(detail.record);
      r.details.push_back(std::move(detail));
    } else {
      r.truncated = true;
    }
  }
  r.elapsed_seconds = seconds_since(start);
  return r;
}

// ---------------------------------------------------------------------------
// Direct route

void for_each_prime_tuple(const MultiplicativeFunction& f, unsigned k, std::uint64_t lo,
                          std::uint64_t hi,
                          const std::function<void(std::uint64_t, std::span<const Rational>)>& fn) {
  lo = std::max<std::uint64_t>(lo, 2);
  if (hi < lo) return;
  const auto sieving = primes_up_to(isqrt(hi + k) + 1);
  const std::uint64_t largest_sieving = sieving.empty() ? 0 : sieving.back();
  FactorWindow window(sieving);
  // f(q^e) for sieving primes q, which cover almost every factor met.
  std::unordered_map<std::uint64_t, Rational> cache;
  auto value_of = [&](const SmallFactor& sf) -> const Rational& {
    const std::uint64_t key = sf.prime * 64 + sf.exponent;
    auto it = cache.find(key);
    if (it == cache.end())
      it = cache.emplace(key, f.at_prime_power(to_natural(sf.prime), sf.exponent)).first;
    return it->second;
  };
  std::vector<Rational> values(k);
  constexpr std::uint64_t kSegment = 1u << 14;
  for (std::uint64_t seg = lo; seg <= hi;) {
    const std::uint64_t seg_end = std::min(hi, seg + kSegment - 1);
    window.sieve(seg, seg_end + k + 1);
    for (std::uint64_t p = seg; p <= seg_end; ++p) {
      if (!window.is_prime(p)) continue;
      for (unsigned i = 1; i <= k; ++i) {
        Rational& v = values[i - 1];
        v = Rational(1);
        for (const auto& sf : window.factors(p + i)) {
          if (sf.prime <= largest_sieving)
            v *= value_of(sf);
          else
            v *= f.at_prime_power(to_natural(sf.prime), sf.exponent);
        }
      }
      fn(p, values);
    }
    if (seg_end == hi) break;
    seg = seg_end + 1;
  }
}

ScanReport scan_direct(const MultiplicativeFunction& f, unsigned k, std::uint64_t x,
                       const TargetBox& box, std::size_t record_cap) {
  const auto start = std::chrono::steady_clock::now();
  if (x < 2) throw Error(ErrorKind::precondition, "scan_direct needs x >= 2");
  if (box.intervals.size() != k)
    throw Error(ErrorKind::precondition, "box dimension does not match k");
  ScanReport r;
  r.route = "direct";
  r.function = f.name();
  r.k = k;
  r.x = x;
  r.box = box;

  struct Partial {
    std::uint64_t scanned = 0;
    std::uint64_t found = 0;
    std::vector<TupleRecord> records;
  };
  auto partials = detail::map_chunks<Partial>(2, x, 1u << 20, [&](std::uint64_t lo, std::uint64_t hi) {
    Partial part;
    for_each_prime_tuple(f, k, lo, hi, [&](std::uint64_t p, std::span<const Rational> values) {
      ++part.scanned;
      if (!box.contains(values)) return;
      ++part.found;
      if (part.records.size() < record_cap)
        part.records.push_back(TupleRecord{p, {values.begin(), values.end()}, {}, {}, true});
    });
    return part;
  });
  for (auto& part : partials) {
    r.primes_scanned += part.scanned;
    r.found += part.found;
    for (auto& rec : part.records) {
      if (r.records.size() < record_cap)
        r.records.push_back(std::move(rec));
    }
  }
  r.truncated = r.found > r.records.size();
  r.elapsed_seconds = seconds_since(start);
  return r;
}

std::vector<std::vector<unsigned>> all_permutations(unsigned k) {
  std::vector<unsigned> perm(k);
  std::iota(perm.begin(), perm.end(), 1u);
  std::vector<std::vector<unsigned>> out;
  do {
    out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

OrderingTable find_orderings(const MultiplicativeFunction& f, unsigned k, std::uint64_t x,
                             const std::vector<std::vector<unsigned>>& permutations) {
  if (k < 2) throw Error(ErrorKind::precondition, "orderings need k >= 2");
  std::map<std::vector<unsigned>, std::size_t> row_of;
  for (const auto& perm : permutations) {
    std::vector<unsigned> sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    std::vector<unsigned> expected(k);
    std::iota(expected.begin(), expected.end(), 1u);
    if (sorted != expected)
      throw Error(ErrorKind::precondition, "not a permutation of 1..k");
    row_of.emplace(perm, row_of.size());
  }

  auto partials = detail::map_chunks<OrderingTable>(2, std::max<std::uint64_t>(x, 2), 1u << 20,
                                                    [&](std::uint64_t lo, std::uint64_t hi) {
    OrderingTable part;
    part.rows.resize(row_of.size());
    if (hi > x) return part;
    std::vector<unsigned> order(k);
    for_each_prime_tuple(f, k, lo, hi, [&](std::uint64_t p, std::span<const Rational> values) {
      ++part.primes_scanned;
      std::iota(order.begin(), order.end(), 1u);
      std::sort(order.begin(), order.end(),
                [&](unsigned a, unsigned b) { return values[a - 1] < values[b - 1]; });
      for (unsigned j = 1; j < k; ++j) {
        if (values[order[j - 1] - 1] == values[order[j] - 1]) {
          ++part.ties;
          if (part.tie_examples.size() < kFirstFew) part.tie_examples.push_back(p);
          return;
        }
      }
      const auto it = row_of.find(order);
      if (it == row_of.end()) return;
      OrderingRow& row = part.rows[it->second];
      ++row.count;
      if (row.first_few.size() < kFirstFew) row.first_few.push_back(p);
    });
    return part;
  });

  OrderingTable table;
  table.rows.resize(row_of.size());
  for (const auto& [perm, idx] : row_of) table.rows[idx].permutation = perm;
  for (auto& part : partials) {
    table.primes_scanned += part.primes_scanned;
    table.ties += part.ties;
    for (auto p : part.tie_examples)
      if (table.tie_examples.size() < kFirstFew) table.tie_examples.push_back(p);
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      auto& row = table.rows[i];
      row.count += part.rows[i].count;
      for (auto p : part.rows[i].first_few)
        if (row.first_few.size() < kFirstFew) row.first_few.push_back(p);
    }
  }
  if (!table.tie_examples.empty()) table.first_tie = table.tie_examples.front();
  for (auto& row : table.rows)
    if (!row.first_few.empty()) row.first = row.first_few.front();
  return table;
}

}  // namespace mfsp
