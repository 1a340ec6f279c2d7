#include "mfsp/primes.hpp"

#include <algorithm>
#include <cmath>

namespace mfsp {

namespace {

constexpr std::uint64_t kSegment = 1u << 18;

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Marks composites of [lo, lo + flags.size()) using base primes; flags[i]
// ends up true iff lo + i is prime.
void sieve_segment(std::uint64_t lo, std::vector<char>& flags,
                   std::span<const std::uint64_t> base) {
  std::fill(flags.begin(), flags.end(), 1);
  const std::uint64_t hi = lo + flags.size();
  for (std::uint64_t q : base) {
    if (q * q >= hi) break;
    std::uint64_t start = std::max(q * q, (lo + q - 1) / q * q);
    for (std::uint64_t m = start; m < hi; m += q) flags[m - lo] = 0;
  }
  for (std::uint64_t n = lo; n < std::min<std::uint64_t>(hi, 2); ++n) flags[n - lo] = 0;
}

}  // namespace

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  if (limit < 2) return out;
  std::vector<char> composite(limit + 1, 0);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
  }
  return out;
}

std::span<const std::uint64_t> small_prime_table() {
  static const std::vector<std::uint64_t> table = primes_up_to(1'000'000);
  return table;
}

void for_each_prime(std::uint64_t lo, std::uint64_t hi,
                    const std::function<void(std::uint64_t)>& fn) {
  if (hi < 2 || lo > hi) return;
  lo = std::max<std::uint64_t>(lo, 2);
  const auto base = primes_up_to(isqrt(hi));
  std::vector<char> flags;
  for (std::uint64_t seg = lo; seg <= hi;) {
    const std::uint64_t len = std::min(kSegment, hi - seg + 1);
    flags.resize(len);
    sieve_segment(seg, flags, base);
    for (std::uint64_t i = 0; i < len; ++i)
      if (flags[i]) fn(seg + i);
    if (hi - seg + 1 <= kSegment) break;
    seg += len;
  }
}

std::uint64_t count_primes(std::uint64_t lo, std::uint64_t hi) {
  if (hi < 2 || lo > hi) return 0;
  lo = std::max<std::uint64_t>(lo, 2);
  const auto base = primes_up_to(isqrt(hi));
  std::vector<char> flags;
  std::uint64_t count = 0;
  for (std::uint64_t seg = lo; seg <= hi;) {
    const std::uint64_t len = std::min(kSegment, hi - seg + 1);
    flags.resize(len);
    sieve_segment(seg, flags, base);
    count += static_cast<std::uint64_t>(std::count(flags.begin(), flags.end(), 1));
    if (hi - seg + 1 <= kSegment) break;
    seg += len;
  }
  return count;
}

PrimeCursor::PrimeCursor(std::uint64_t after) : block_lo_(after + 1) {}

std::uint64_t PrimeCursor::next() {
  while (pos_ == block_.size()) refill();
  return block_[pos_++];
}

void PrimeCursor::refill() {
  constexpr std::uint64_t kBlock = 1u << 16;
  const std::uint64_t lo = block_lo_;
  const std::uint64_t hi = lo + kBlock - 1;
  block_.clear();
  pos_ = 0;
  for_each_prime(lo, hi, [this](std::uint64_t p) { block_.push_back(p); });
  block_lo_ = hi + 1;
}

std::uint64_t PrimeCounter::operator()(std::uint64_t x) {
  if (x < counted_to_) return count_primes(2, x);
  count_ += count_primes(counted_to_ + 1, x);
  counted_to_ = x;
  return count_;
}

FactorWindow::FactorWindow(std::span<const std::uint64_t> sieving_primes)
    : sieving_primes_(sieving_primes) {}

void FactorWindow::sieve(std::uint64_t lo, std::uint64_t hi) {
  lo_ = lo;
  hi_ = hi;
  const std::size_t len = hi - lo;
  rem_.resize(len);
  count_.assign(len, 0);
  factors_.resize(len);
  for (std::size_t i = 0; i < len; ++i) rem_[i] = lo + i;
  for (std::uint64_t q : sieving_primes_) {
    if (q * q >= hi) break;
    for (std::uint64_t m = (lo + q - 1) / q * q; m < hi; m += q) {
      const std::size_t i = m - lo;
      std::uint32_t e = 0;
      do {
        rem_[i] /= q;
        ++e;
      } while (rem_[i] % q == 0);
      factors_[i][count_[i]++] = SmallFactor{q, e};
    }
  }
  for (std::size_t i = 0; i < len; ++i)
    if (rem_[i] > 1) factors_[i][count_[i]++] = SmallFactor{rem_[i], 1};
}

std::span<const SmallFactor> FactorWindow::factors(std::uint64_t n) const {
  const std::size_t i = n - lo_;
  return {factors_[i].data(), count_[i]};
}

bool FactorWindow::is_prime(std::uint64_t n) const {
  const auto f = factors(n);
  return f.size() == 1 && f[0].prime == n;
}

}  // namespace mfsp
