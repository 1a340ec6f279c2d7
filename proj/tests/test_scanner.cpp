#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "mfsp/error.hpp"
#include "mfsp/primes.hpp"
#include "mfsp/scanner.hpp"

using namespace mfsp;

namespace {

const auto n_over_phi = MultiplicativeFunction::builtin("n_over_phi");
const auto sigma_over_n = MultiplicativeFunction::builtin("sigma_over_n");
const auto gamma_over_n = MultiplicativeFunction::builtin("gamma_over_n");

FactoredInteger F(std::uint64_t n) { return factorize(n); }

bool naive_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// phi(n) by trial division, for an n/phi(n) oracle.
std::uint64_t naive_phi(std::uint64_t n) {
  std::uint64_t out = n;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      out -= out / p;
    }
  if (n > 1) out -= out / n;
  return out;
}

Rational naive_n_over_phi(std::uint64_t n) { return Rational(to_natural(n), to_natural(naive_phi(n))); }

}  // namespace

TEST_CASE("Interval parsing and membership") {
  const auto a = Interval::parse("[2.1,2.2]");
  CHECK(a.contains(Rational(21, 10)));
  CHECK(a.contains(Rational(13, 6)));
  CHECK_FALSE(a.contains(Rational(23, 10)));
  const auto b = Interval::parse("(1,inf)");
  CHECK_FALSE(b.contains(Rational(1)));
  CHECK(b.contains(Rational(Natural("1000000000000000000000"))));
  const auto c = Interval::parse("(-inf,3/2]");
  CHECK(c.contains(Rational(3, 2)));
  CHECK(c.contains(Rational(-100)));
  CHECK(Interval::parse(a.to_string()).contains(Rational(11, 5)));
  CHECK_THROWS_AS(Interval::parse("(1,1)"), Error);
  CHECK(Interval::open(Rational(1), Rational(1)).is_empty());
  CHECK_FALSE(Interval::parse("[1,1]").is_empty());
  CHECK_THROWS_AS(Interval::parse("[1,2"), Error);
  const auto box = TargetBox::around({Rational(2), Rational(1)}, 2);
  CHECK(box.to_string() == "(3/2,5/2)x(1/2,3/2)");
}

TEST_CASE("members_of_S: worked system") {
  const auto s = build_system(F(6), {F(5), F(7)});
  const auto m = members_of_S(s, 28229, 0.1);
  CHECK(m == std::vector<std::uint64_t>{28229});
  CHECK(members_of_S(s, 10000, 0.1).empty());
  CHECK_THROWS_AS(members_of_S(s, 1000, 1.5), Error);

  // Oracle: walk the class by hand, test primality, factor delta by trial division.
  const double y = std::pow(1e6, 0.1);
  std::vector<std::uint64_t> expected;
  for (std::uint64_t n = 28229; n <= 1'000'000; n += 44100) {
    if (!naive_prime(n)) continue;
    std::uint64_t parts[] = {(n + 1) / 30, (n + 2) / 7};
    bool rough = true, squarefree = true;
    for (auto part : parts) {
      for (std::uint64_t q = 2; q * q <= part || q <= y; ++q) {
        if (part % q) continue;
        if (static_cast<double>(q) <= y) rough = false;
        if ((part / q) % q == 0) squarefree = false;
      }
      if (part > 1 && static_cast<double>(part) <= y) rough = false;
    }
    if (std::gcd(parts[0], parts[1]) != 1) squarefree = false;
    CHECK(delta(n, s).value() == Natural(parts[0]) * parts[1]);
    if (rough && squarefree) expected.push_back(n);
  }
  CHECK(members_of_S(s, 1'000'000, 0.1) == expected);
  const auto all = enumerate_class_primes(s, 1'000'000);
  CHECK(all.size() >= expected.size());
  for (const auto& cp : all) CHECK(naive_prime(cp.p));
}

TEST_CASE("scan_direct: worked boxes") {
  auto box = TargetBox{{Interval::parse("[2.1,2.2]"), Interval::parse("[2.1,2.2]")}};
  auto r = scan_direct(n_over_phi, 2, 200, box);
  bool has103 = false;
  for (const auto& rec : r.records)
    if (rec.p == 103) {
      has103 = true;
      CHECK(rec.values[0] == Rational(13, 6));
      CHECK(rec.values[1] == Rational(35, 16));
    }
  CHECK(has103);

  r = scan_direct(n_over_phi, 1, 10, TargetBox{{Interval::parse("[1,1]")}});
  CHECK(r.found == 0);

  r = scan_direct(sigma_over_n, 2, 100, TargetBox{{Interval::parse("(1,inf)"), Interval::parse("(1,inf)")}});
  CHECK(r.found == 25);
  CHECK(r.primes_scanned == 25);
  CHECK_THROWS_AS(scan_direct(n_over_phi, 2, 100, TargetBox{{Interval::parse("[1,2]")}}), Error);
}

TEST_CASE("scan_direct agrees with a brute-force oracle") {
  const auto box = TargetBox::around({Rational(2), Rational(3, 2), Rational(2)}, 3);
  const auto r = scan_direct(n_over_phi, 3, 20000, box, 100000);
  std::vector<std::uint64_t> expected;
  for (std::uint64_t p = 2; p <= 20000; ++p) {
    if (!naive_prime(p)) continue;
    std::vector<Rational> v{naive_n_over_phi(p + 1), naive_n_over_phi(p + 2), naive_n_over_phi(p + 3)};
    if (box.contains(v)) expected.push_back(p);
  }
  std::vector<std::uint64_t> got;
  for (const auto& rec : r.records)
    if (rec.in_box) got.push_back(rec.p);
  CHECK(got == expected);
  CHECK(r.found == expected.size());
  CHECK_FALSE(r.truncated);
}

TEST_CASE("for_each_prime_tuple matches factorize across window boundaries") {
  std::uint64_t seen = 0;
  for_each_prime_tuple(sigma_over_n, 4, 1'000'000 - 5000, 1'000'000 + 40000,
                       [&](std::uint64_t p, std::span<const Rational> v) {
                         ++seen;
                         for (unsigned i = 1; i <= 4; ++i) CHECK(v[i - 1] == evaluate(sigma_over_n, F(p + i)));
                       });
  CHECK(seen == count_primes(1'000'000 - 5000, 1'000'000 + 40000));
}

TEST_CASE("find_orderings: worked tables") {
  auto t = find_orderings(n_over_phi, 2, 200, {{1, 2}});
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows[0].first == std::optional<std::uint64_t>(2));
  REQUIRE(t.rows[0].first_few.size() >= 2);
  CHECK(t.rows[0].first_few[1] == 103);
  t = find_orderings(n_over_phi, 2, 10, {{2, 1}});
  CHECK(t.rows[0].first == std::optional<std::uint64_t>(3));
  t = find_orderings(gamma_over_n, 2, 100, {{1, 2}, {2, 1}});
  CHECK(t.ties > 0);
  CHECK(t.first_tie.has_value());
  CHECK(all_permutations(3).size() == 6);
  CHECK(all_permutations(3).front() == std::vector<unsigned>{1, 2, 3});
  CHECK_THROWS_AS(find_orderings(n_over_phi, 2, 100, {{1, 1}}), Error);
  CHECK_THROWS_AS(find_orderings(n_over_phi, 1, 100, {{1}}), Error);
}

TEST_CASE("find_orderings: counts partition the non-tied primes") {
  const auto t = find_orderings(n_over_phi, 3, 100000, all_permutations(3));
  std::uint64_t total = t.ties;
  for (const auto& row : t.rows) total += row.count;
  CHECK(total == t.primes_scanned);
  CHECK(t.primes_scanned == 9592);
  const std::uint64_t firsts[] = {193, 313, 3, 5, 2, 1483};
  for (std::size_t i = 0; i < 6; ++i) CHECK(t.rows[i].first == std::optional<std::uint64_t>(firsts[i]));
}

TEST_CASE("scan_constructed: stage-tagged errors") {
  ConstructParams p{sigma_over_n, 2, {Rational(1), Rational(1)}, 2, 1'000'000};
  try {
    scan_constructed(p);
    FAIL("expected box violation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::box_violation);
    CHECK(e.stage() == "targets_to_x");
  }
  ConstructParams q{gamma_over_n, 2, {Rational(1), Rational(1)}, 2, 1'000'000};
  try {
    scan_constructed(q);
    FAIL("expected class mismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::class_mismatch);
    CHECK(std::string(e.what()).find("non-divergent function") != std::string::npos);
  }
}

TEST_CASE("scan_constructed: records are exact") {
  ConstructParams p{n_over_phi, 2, {Rational(3), Rational(1)}, 1, 200'000'000};
  const auto r = scan_constructed(p);
  CHECK(r.epsilon == std::optional<Rational>(Rational(1, 6)));
  CHECK(r.claim1_all_ok);
  CHECK(r.rough_parts_all_ok);
  for (const auto& b : r.bracketing) CHECK(b.ok);
  for (const auto& rec : r.records) {
    CHECK(rec.values[0] == naive_n_over_phi(rec.p + 1));
    CHECK(rec.values[1] == naive_n_over_phi(rec.p + 2));
    CHECK(rec.in_box == r.box.contains(rec.values));
    CHECK(*rec.rough);
    CHECK(*rec.squarefree);
  }
  CHECK(r.found > 0);
}
