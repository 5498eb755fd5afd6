#include "congestlab/numtheory.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace congestlab {

namespace {

std::vector<std::uint64_t> sieve_first(std::size_t count) {
  if (count == 0) return {};
  // p_n < n (ln n + ln ln n) for n >= 6; pad the small cases.
  double n = static_cast<double>(count < 6 ? 6 : count);
  double bound = n * (std::log(n) + std::log(std::log(n))) + 16.0;
  auto limit = static_cast<std::size_t>(bound);
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint64_t> primes;
  primes.reserve(count);
  for (std::size_t i = 2; i <= limit && primes.size() < count; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::size_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  if (primes.size() < count) throw std::logic_error("prime bound too small");
  return primes;
}

}  // namespace

std::vector<std::uint64_t> nth_primes(std::size_t count) {
  static std::mutex mu;
  static std::vector<std::uint64_t> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (cache.size() < count) cache = sieve_first(count);
  return {cache.begin(), cache.begin() + static_cast<std::ptrdiff_t>(count)};
}

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("zero modulus");
  std::uint64_t r = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod_u64(r, base, m);
    base = mulmod_u64(base, base, m);
    exp >>= 1;
  }
  return r;
}

BigUint BigUint::from_bits(const BitString& s) {
  BigUint out;
  out.words_.assign((s.size() + 63) / 64, 0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.get(i)) out.words_[i / 64] |= std::uint64_t{1} << (i % 64);
  }
  out.trim();
  return out;
}

void BigUint::trim() {
  while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

bool BigUint::is_zero() const { return words_.empty(); }

std::size_t BigUint::bit_length() const {
  if (words_.empty()) return 0;
  std::uint64_t top = words_.back();
  std::size_t bits = 0;
  while (top) {
    ++bits;
    top >>= 1;
  }
  return 64 * (words_.size() - 1) + bits;
}

int BigUint::cmp(const BigUint& a, const BigUint& b) {
  if (a.words_.size() != b.words_.size()) {
    return a.words_.size() < b.words_.size() ? -1 : 1;
  }
  for (std::size_t i = a.words_.size(); i-- > 0;) {
    if (a.words_[i] != b.words_[i]) return a.words_[i] < b.words_[i] ? -1 : 1;
  }
  return 0;
}

BigUint BigUint::abs_diff(const BigUint& a, const BigUint& b) {
  const BigUint* hi = &a;
  const BigUint* lo = &b;
  if (cmp(a, b) < 0) {
    hi = &b;
    lo = &a;
  }
  BigUint out;
  out.words_.assign(hi->words_.size(), 0);
  unsigned __int128 carry = 0;
  for (std::size_t i = 0; i < hi->words_.size(); ++i) {
    unsigned __int128 h = hi->words_[i];
    unsigned __int128 l = (i < lo->words_.size() ? lo->words_[i] : 0);
    unsigned __int128 sub = l + carry;
    if (h >= sub) {
      out.words_[i] = static_cast<std::uint64_t>(h - sub);
      carry = 0;
    } else {
      out.words_[i] = static_cast<std::uint64_t>(
          (static_cast<unsigned __int128>(1) << 64) + h - sub);
      carry = 1;
    }
  }
  out.trim();
  return out;
}

std::uint64_t BigUint::mod_u64(std::uint64_t m) const {
  if (m == 0) throw std::invalid_argument("zero modulus");
  unsigned __int128 r = 0;
  for (std::size_t i = words_.size(); i-- > 0;) {
    r = ((r << 64) | words_[i]) % m;
  }
  return static_cast<std::uint64_t>(r);
}

}  // namespace congestlab
