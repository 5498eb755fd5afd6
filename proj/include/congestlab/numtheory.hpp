#pragma once
// Small number-theoretic helpers for the fingerprint equality machinery:
// prime tables, modular exponentiation, and a minimal big-unsigned type for
// the bad-prime census (subtract, compare, mod by machine word).

#include <cstdint>
#include <vector>

#include "congestlab/bits.hpp"

namespace congestlab {

// First `count` primes, ascending. Cached; calls are cheap after the first.
std::vector<std::uint64_t> nth_primes(std::size_t count);

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

// Non-negative integer of arbitrary width, little-endian 64-bit words.
// Supports exactly what the fingerprint analysis needs.
class BigUint {
 public:
  BigUint() = default;

  // Value of the bit string read with bit i as the coefficient of 2^i.
  static BigUint from_bits(const BitString& s);

  bool is_zero() const;
  std::size_t bit_length() const;

  // -1, 0, 1 comparison.
  static int cmp(const BigUint& a, const BigUint& b);
  // |a - b|.
  static BigUint abs_diff(const BigUint& a, const BigUint& b);

  std::uint64_t mod_u64(std::uint64_t m) const;

 private:
  std::vector<std::uint64_t> words_;
  void trim();
};

}  // namespace congestlab
