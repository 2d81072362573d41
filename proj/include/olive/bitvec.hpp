#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace olive {

/// Dense vector over F2, packed 64 bits per word. Bits past size() are
/// always zero so word-wise equality is value equality.
class BitVec {
 public:
  using word_type = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BitVec() = default;
  explicit BitVec(std::size_t nbits) : size_(nbits), words_(word_count(nbits), 0) {}

  std::size_t size() const { return size_; }
  std::size_t num_words() const { return words_.size(); }
  const word_type* data() const { return words_.data(); }
  word_type* data() { return words_.data(); }

  bool test(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1u; }
  void set(std::size_t i) { words_[i / kWordBits] |= word_type{1} << (i % kWordBits); }
  void reset(std::size_t i) { words_[i / kWordBits] &= ~(word_type{1} << (i % kWordBits)); }
  void flip(std::size_t i) { words_[i / kWordBits] ^= word_type{1} << (i % kWordBits); }
  void clear() { std::fill(words_.begin(), words_.end(), 0); }

  bool none() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  BitVec& operator^=(const BitVec& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
    return *this;
  }
  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
  friend bool operator==(const BitVec& a, const BitVec& b) = default;

  /// True iff every set bit of *this is also set in `other`.
  bool subset_of(const BitVec& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~other.words_[i]) return false;
    return true;
  }

  /// XOR the low `len` bits of `src` into *this starting at bit `offset`.
  void xor_shifted(std::size_t offset, const BitVec& src, std::size_t len);

  /// Calls fn(i) for each set bit in ascending order.
  template <class Fn>
  void for_each_set(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      word_type bits = words_[w];
      while (bits) {
        const int tz = std::countr_zero(bits);
        fn(w * kWordBits + static_cast<std::size_t>(tz));
        bits &= bits - 1;
      }
    }
  }

  std::vector<std::size_t> set_bits() const {
    std::vector<std::size_t> out;
    for_each_set([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  /// Big-endian hex of the integer sum(bit_i * 2^i), ceil(size/4) digits.
  std::string to_hex() const;
  static BitVec from_hex(std::string_view hex, std::size_t nbits);

  std::size_t hash() const;

 private:
  static std::size_t word_count(std::size_t nbits) { return (nbits + kWordBits - 1) / kWordBits; }

  std::size_t size_ = 0;
  std::vector<word_type> words_;
};

}  // namespace olive
