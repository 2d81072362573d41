#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>

namespace olive {

/// A pair (u1, u2) of subsets of {0,1,2}, stored as 3-bit masks. Indexes the
/// partial isomorphisms of the tiered group and the formal conjugators of
/// the witness product.
struct SPair {
  std::uint8_t u1 = 0;
  std::uint8_t u2 = 0;

  static SPair of(std::initializer_list<int> first, std::initializer_list<int> second) {
    SPair s;
    for (int l : first) s.u1 = static_cast<std::uint8_t>(s.u1 | (1u << l));
    for (int l : second) s.u2 = static_cast<std::uint8_t>(s.u2 | (1u << l));
    return s;
  }

  bool in_first(int l) const { return (u1 >> l) & 1u; }
  bool in_second(int l) const { return (u2 >> l) & 1u; }

  friend auto operator<=>(const SPair&, const SPair&) = default;
};

/// "({0,1},{2})"
std::string to_string(const SPair& s);

}  // namespace olive
