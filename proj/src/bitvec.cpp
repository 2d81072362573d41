#include "olive/bitvec.hpp"

#include <stdexcept>

namespace olive {

void BitVec::xor_shifted(std::size_t offset, const BitVec& src, std::size_t len) {
  if (len == 0) return;
  if (offset + len > size_ || len > src.size_)
    throw std::out_of_range("BitVec::xor_shifted: range exceeds vector");

  const std::size_t shift = offset % kWordBits;
  std::size_t dst_word = offset / kWordBits;
  const std::size_t full = len / kWordBits;
  const std::size_t rest = len % kWordBits;

  auto put = [&](word_type chunk) {
    words_[dst_word] ^= chunk << shift;
    if (shift != 0 && dst_word + 1 < words_.size()) words_[dst_word + 1] ^= chunk >> (kWordBits - shift);
    ++dst_word;
  };
  for (std::size_t i = 0; i < full; ++i) put(src.words_[i]);
  if (rest) put(src.words_[full] & ((word_type{1} << rest) - 1));
}

std::string BitVec::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t ndigits = (size_ + 3) / 4;
  std::string out(ndigits, '0');
  for (std::size_t d = 0; d < ndigits; ++d) {
    unsigned nib = 0;
    for (std::size_t b = 0; b < 4; ++b) {
      const std::size_t bit = d * 4 + b;
      if (bit < size_ && test(bit)) nib |= 1u << b;
    }
    out[ndigits - 1 - d] = kDigits[nib];
  }
  return out;
}

BitVec BitVec::from_hex(std::string_view hex, std::size_t nbits) {
  if (hex.size() != (nbits + 3) / 4) throw std::invalid_argument("BitVec::from_hex: digit count does not match length");
  BitVec v(nbits);
  for (std::size_t d = 0; d < hex.size(); ++d) {
    const char c = hex[hex.size() - 1 - d];
    unsigned nib;
    if (c >= '0' && c <= '9')
      nib = static_cast<unsigned>(c - '0');
    else if (c >= 'a' && c <= 'f')
      nib = static_cast<unsigned>(c - 'a' + 10);
    else if (c >= 'A' && c <= 'F')
      nib = static_cast<unsigned>(c - 'A' + 10);
    else
      throw std::invalid_argument("BitVec::from_hex: bad digit");
    for (std::size_t b = 0; b < 4; ++b) {
      if (!(nib >> b & 1u)) continue;
      const std::size_t bit = d * 4 + b;
      if (bit >= nbits) throw std::invalid_argument("BitVec::from_hex: bit beyond length");
      v.set(bit);
    }
  }
  return v;
}

std::size_t BitVec::hash() const {
  std::size_t h = size_ * 0x9e3779b97f4a7c15ull;
  for (auto w : words_) h = (h ^ w) * 0x100000001b3ull + (h >> 29);
  return h;
}

}  // namespace olive
