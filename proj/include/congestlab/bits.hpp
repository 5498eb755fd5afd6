#pragma once
// Bit-level containers shared by the communication functions, the gadget
// encoders and the simulator wire format.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace congestlab {

// Fixed-length string over {0,1}. Bit i is the coefficient of 2^i when the
// string is read as an integer, so the hex form is that integer in hex. The
// literal "01..." form lists bits by index, s[0] first.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t nbits) : bits_(nbits, 0) {}

  static BitString from_bits01(std::string_view s);
  // hex carries no length information, so the bit length is explicit.
  static BitString from_hex(std::string_view hex, std::size_t nbits);
  static BitString random(std::size_t nbits, std::mt19937_64& rng);

  std::size_t size() const { return bits_.size(); }
  bool get(std::size_t i) const;
  void set(std::size_t i, bool v);

  bool all_ones() const;
  bool any() const;
  std::size_t popcount() const;

  std::string to_hex() const;
  std::string to_bits01() const;

  // Value of bits [pos, pos+len) read most-significant-first; len <= 63.
  std::uint64_t slice_msb_first(std::size_t pos, std::size_t len) const;
  void set_slice_msb_first(std::size_t pos, std::size_t len, std::uint64_t v);

  bool operator==(const BitString&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

// Entry (i, j) of a k-by-k pair-indexed string lives at index k*i + j.
bool pair_bit(const BitString& s, int k, int i, int j);

// Append-only bit buffer with a sequential reader. Message payloads and
// protocol row encodings use it; size() is the exact bit count charged
// against bandwidth and transcript budgets.
class BitVec {
 public:
  BitVec() = default;

  void append_bit(bool b);
  void append_bits(std::uint64_t value, int width);  // width <= 64
  void append(const BitVec& other);

  std::size_t size() const { return nbits_; }
  bool get(std::size_t i) const;

  bool operator==(const BitVec&) const = default;

 private:
  std::vector<std::uint64_t> words_;
  std::size_t nbits_ = 0;
};

class BitReader {
 public:
  explicit BitReader(const BitVec& v) : v_(&v) {}

  std::uint64_t read_bits(int width);  // width <= 64
  bool read_bit();
  std::size_t remaining() const { return v_->size() - pos_; }

 private:
  const BitVec* v_;
  std::size_t pos_ = 0;
};

}  // namespace congestlab
