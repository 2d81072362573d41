#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace olive {

/// Sym(n) acting on {0..n-1}; (a*b)(i) = b(a(i)), i.e. a first.
class SymmetricGroup {
 public:
  using Element = std::vector<std::uint8_t>;

  explicit SymmetricGroup(int n) : n_(n) {
    if (n < 1 || n > 8) throw std::out_of_range("SymmetricGroup: degree must be in 1..8");
    Element p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), std::uint8_t{0});
    do elements_.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
  }

  int degree() const { return n_; }
  Element identity() const { return elements_.front(); }
  Element multiply(const Element& a, const Element& b) const {
    Element out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = b[a[i]];
    return out;
  }
  Element invert(const Element& a) const {
    Element out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[a[i]] = static_cast<std::uint8_t>(i);
    return out;
  }
  bool equal(const Element& a, const Element& b) const { return a == b; }
  const std::vector<Element>& elements() const { return elements_; }

 private:
  int n_;
  std::vector<Element> elements_;
};

/// Z/n written multiplicatively.
class CyclicGroup {
 public:
  using Element = int;

  explicit CyclicGroup(int n) : n_(n) {
    if (n < 1) throw std::out_of_range("CyclicGroup: order must be positive");
    elements_.resize(static_cast<std::size_t>(n));
    std::iota(elements_.begin(), elements_.end(), 0);
  }

  Element identity() const { return 0; }
  Element multiply(Element a, Element b) const { return (a + b) % n_; }
  Element invert(Element a) const { return (n_ - a) % n_; }
  bool equal(Element a, Element b) const { return a == b; }
  const std::vector<Element>& elements() const { return elements_; }

 private:
  int n_;
  std::vector<Element> elements_;
};

}  // namespace olive
