#include "congestlab/bits.hpp"

#include <stdexcept>

namespace congestlab {

namespace {

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

BitString BitString::from_bits01(std::string_view s) {
  BitString out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1') {
      out.bits_[i] = 1;
    } else if (s[i] != '0') {
      throw std::invalid_argument("bit literal may contain only 0 and 1");
    }
  }
  return out;
}

BitString BitString::from_hex(std::string_view hex, std::size_t nbits) {
  BitString out(nbits);
  // hex[0] is the most significant nibble of the value.
  std::size_t nibble_count = hex.size();
  for (std::size_t d = 0; d < nibble_count; ++d) {
    int v = hex_digit(hex[nibble_count - 1 - d]);
    if (v < 0) throw std::invalid_argument("invalid hex digit");
    for (int b = 0; b < 4; ++b) {
      if (!((v >> b) & 1)) continue;
      std::size_t idx = 4 * d + static_cast<std::size_t>(b);
      if (idx >= nbits) {
        throw std::invalid_argument("hex value does not fit in declared bit length");
      }
      out.bits_[idx] = 1;
    }
  }
  return out;
}

BitString BitString::random(std::size_t nbits, std::mt19937_64& rng) {
  BitString out(nbits);
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < nbits; ++i) {
    if (i % 64 == 0) word = rng();
    out.bits_[i] = static_cast<std::uint8_t>((word >> (i % 64)) & 1);
  }
  return out;
}

bool BitString::get(std::size_t i) const {
  if (i >= bits_.size()) throw std::out_of_range("bit index out of range");
  return bits_[i] != 0;
}

void BitString::set(std::size_t i, bool v) {
  if (i >= bits_.size()) throw std::out_of_range("bit index out of range");
  bits_[i] = v ? 1 : 0;
}

bool BitString::all_ones() const {
  for (auto b : bits_) {
    if (!b) return false;
  }
  return !bits_.empty();
}

bool BitString::any() const {
  for (auto b : bits_) {
    if (b) return true;
  }
  return false;
}

std::size_t BitString::popcount() const {
  std::size_t c = 0;
  for (auto b : bits_) c += b;
  return c;
}

std::string BitString::to_hex() const {
  if (bits_.empty()) return "";
  std::size_t nibbles = (bits_.size() + 3) / 4;
  std::string out(nibbles, '0');
  static const char* digits = "0123456789abcdef";
  for (std::size_t d = 0; d < nibbles; ++d) {
    int v = 0;
    for (int b = 0; b < 4; ++b) {
      std::size_t idx = 4 * d + static_cast<std::size_t>(b);
      if (idx < bits_.size() && bits_[idx]) v |= 1 << b;
    }
    out[nibbles - 1 - d] = digits[v];
  }
  return out;
}

std::string BitString::to_bits01() const {
  std::string out(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) out[i] = '1';
  }
  return out;
}

std::uint64_t BitString::slice_msb_first(std::size_t pos, std::size_t len) const {
  if (len > 63) throw std::invalid_argument("slice too wide");
  if (pos + len > bits_.size()) throw std::out_of_range("slice out of range");
  std::uint64_t v = 0;
  for (std::size_t t = 0; t < len; ++t) {
    v = (v << 1) | (bits_[pos + t] ? 1u : 0u);
  }
  return v;
}

void BitString::set_slice_msb_first(std::size_t pos, std::size_t len, std::uint64_t v) {
  if (len > 63) throw std::invalid_argument("slice too wide");
  if (pos + len > bits_.size()) throw std::out_of_range("slice out of range");
  if (len < 64 && (v >> len) != 0) throw std::invalid_argument("value does not fit slice");
  for (std::size_t t = 0; t < len; ++t) {
    bits_[pos + t] = static_cast<std::uint8_t>((v >> (len - 1 - t)) & 1);
  }
}

bool pair_bit(const BitString& s, int k, int i, int j) {
  if (k <= 0 || i < 0 || i >= k || j < 0 || j >= k) {
    throw std::out_of_range("pair index out of range");
  }
  return s.get(static_cast<std::size_t>(k) * static_cast<std::size_t>(i) +
               static_cast<std::size_t>(j));
}

void BitVec::append_bit(bool b) {
  if (nbits_ % 64 == 0) words_.push_back(0);
  if (b) words_.back() |= std::uint64_t{1} << (nbits_ % 64);
  ++nbits_;
}

void BitVec::append_bits(std::uint64_t value, int width) {
  if (width < 0 || width > 64) throw std::invalid_argument("field width out of range");
  if (width < 64 && (value >> width) != 0) {
    throw std::invalid_argument("value does not fit field width");
  }
  for (int i = 0; i < width; ++i) append_bit((value >> i) & 1);
}

void BitVec::append(const BitVec& other) {
  for (std::size_t i = 0; i < other.size(); ++i) append_bit(other.get(i));
}

bool BitVec::get(std::size_t i) const {
  if (i >= nbits_) throw std::out_of_range("bit index out of range");
  return (words_[i / 64] >> (i % 64)) & 1;
}

std::uint64_t BitReader::read_bits(int width) {
  if (width < 0 || width > 64) throw std::invalid_argument("field width out of range");
  if (pos_ + static_cast<std::size_t>(width) > v_->size()) {
    throw std::out_of_range("read past end of bit vector");
  }
  std::uint64_t v = 0;
  for (int i = 0; i < width; ++i) {
    if (v_->get(pos_++)) v |= std::uint64_t{1} << i;
  }
  return v;
}

bool BitReader::read_bit() { return read_bits(1) != 0; }

}  // namespace congestlab
