#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "olive/bitvec.hpp"
#include "olive/spair.hpp"
#include "olive/words.hpp"

namespace olive {

/// Colexicographic rank of the unordered pair {a, b}, a != b: C(max,2) + min.
/// This is the pairing used for both f1 and f0.
constexpr std::size_t pair_rank(std::size_t a, std::size_t b) {
  if (a > b) std::swap(a, b);
  return b * (b - 1) / 2 + a;
}
std::pair<std::size_t, std::size_t> pair_unrank(std::size_t rank);

/// Shape of the tiered group: n2 = 3m generators at level 2, n1 = C(n2,2) at
/// level 1, n0 = C(n1,2) at level 0. With a quotient index set, that level-0
/// generator is identified with the identity.
struct KParams {
  int m = 6;
  std::array<std::size_t, 3> n{};  // n[j] = number of level-j generators
  std::optional<std::size_t> quotient_mask;
  SigmaVariant variant = SigmaVariant::Repaired;  // sigma_* the mask was derived from

  static KParams make(int m);
  std::size_t total_bits() const { return n[0] + n[1] + n[2]; }
  friend bool operator==(const KParams&, const KParams&) = default;
};

/// n2 = n1 = n0 = 3.
KParams toy_params();

/// Normal form: one bit-vector per level. v[j] has n[j] bits; the masked
/// level-0 bit is always clear.
struct KElement {
  std::array<BitVec, 3> v;

  bool is_identity() const { return v[0].none() && v[1].none() && v[2].none(); }
  friend bool operator==(const KElement&, const KElement&) = default;
};

struct KElementHash {
  std::size_t operator()(const KElement& e) const {
    return e.v[0].hash() * 31u + e.v[1].hash() * 17u + e.v[2].hash();
  }
};

KElement k_identity(const KParams& p);
KElement k_generator(int level, std::size_t index, const KParams& p);
/// z_{i,k} = y_{2, m*i + k}.
KElement z_gen(int i, int k, const KParams& p);

/// Product by leftmost-out-of-order-first collection of the concatenated
/// normal forms. Level-2 and level-1 letters that swap out of order emit the
/// paired letter one level down; cross-level pairs and level-0 letters commute.
/// Mask applied last.
KElement k_mul(const KElement& a, const KElement& b, const KParams& p);

/// Right inverse: k_mul(a, k_inv(a)) is the identity.
KElement k_inv(const KElement& a, const KParams& p);

/// Clears the quotient bit, if any.
KElement apply_mask(KElement a, const KParams& p);

/// Group-context adaptor for word evaluation.
class KContext {
 public:
  using Element = KElement;
  explicit KContext(KParams p) : p_(std::move(p)) {}

  const KParams& params() const { return p_; }
  Element identity() const { return k_identity(p_); }
  Element multiply(const Element& a, const Element& b) const { return k_mul(a, b, p_); }
  Element invert(const Element& a) const { return k_inv(a, p_); }
  bool equal(const Element& a, const Element& b) const { return a == b; }

 private:
  KParams p_;
};

/// The triple (z_{0,0}, z_{1,1}, z_{2,4}), indices reduced mod m for small m.
std::array<KElement, 3> ell_star_triple(const KParams& p);

/// Index l* with sigma(z00, z11, z24) = y_{0,l*} in the unquotiented group.
/// Throws olive::Error if the value is not a single level-0 generator.
std::size_t compute_ell_star(const KParams& p, SigmaVariant v = SigmaVariant::Repaired);

/// p with quotient_mask = compute_ell_star(p, v).
KParams make_K2(const KParams& p, SigmaVariant v = SigmaVariant::Repaired);

/// Each generator bit set independently with probability `density`.
KElement random_k_element(std::mt19937_64& rng, const KParams& p, double density = 0.5);

/// a^-1 b^-1 a b, multiplied left to right.
KElement k_commutator(const KElement& a, const KElement& b, const KParams& p);

struct RelationCheck {
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::string first_failure;
};

/// The defining relations over all generator pairs: every generator is an
/// involution, [y_{j,a}, y_{j,b}] = y_{j-1,C(b,2)+a} for j > 0 and a < b, and
/// every other pair commutes. Quadratic in the number of generators.
RelationCheck check_relations(const KParams& p);

struct AssociativityCheck {
  std::size_t samples = 0;
  std::size_t failures = 0;
  std::string first_failure;
};

/// (ab)c = a(bc) on `samples` random triples drawn with the given seed.
AssociativityCheck check_associativity(const KParams& p, std::size_t samples, std::uint64_t seed, double density = 0.5);

/// Short stable digest of the parameters, for reports.
std::string fingerprint(const KParams& p);

// ---------------------------------------------------------------------------
// S_* and partial isomorphisms
// ---------------------------------------------------------------------------

/// Every element of u1 below every element of u2, and s != ({0},{1,2}).
bool in_S_star(const SPair& s);
std::vector<SPair> enumerate_S_star();

/// Generator-level map between level-2 indices.
struct PartialIso {
  std::vector<std::pair<std::size_t, std::size_t>> map;
};

/// pi_s: z_{l,0} -> z_{l,2} for l in u1; z_{l,1} -> z_{l,3}, z_{l,4} -> z_{l,4}
/// for l in u2. Throws std::invalid_argument for s outside S_*.
PartialIso pi_s(const SPair& s, const KParams& p);
/// Same rule without the S_* membership check.
PartialIso pi_s_unchecked(const SPair& s, const KParams& p);

/// Relabeling of all three levels induced by a level-2 map through the pair
/// ranks; -1 marks indices outside the induced domain.
struct InducedRelabel {
  std::array<std::vector<std::int64_t>, 3> forward;
  std::array<std::vector<std::int64_t>, 3> backward;
  bool injective = true;
};

InducedRelabel induce(const PartialIso& pi, const KParams& p);

/// Image of `x` when its support lies in the induced domain, else nullopt.
std::optional<KElement> relabel(const KElement& x, const InducedRelabel& r, const KParams& p);
std::optional<KElement> relabel_inverse(const KElement& x, const InducedRelabel& r, const KParams& p);

struct PartialIsoCheck {
  bool pass = false;
  bool injective = false;
  bool mask_respected = false;
  std::size_t hom_samples = 0;
  std::size_t hom_failures = 0;
  std::string detail;
};

/// Structural check of the induced relabeling against the quotient, followed
/// by `samples` random products of domain generators checked for
/// pi(x*y...) = pi(x)*pi(y)...
PartialIsoCheck verify_partial_iso(const PartialIso& pi, const KParams& p, std::size_t samples = 10000,
                                   std::uint64_t seed = 0);

// ---------------------------------------------------------------------------
// Toy instance
// ---------------------------------------------------------------------------

using Permutation = std::vector<std::uint32_t>;

/// Small instance materialized by closure under multiplication.
class ToyGroup {
 public:
  using Element = KElement;

  /// Closure of all generators; requires total_bits() <= 24.
  explicit ToyGroup(KParams p);

  const KParams& params() const { return p_; }
  const std::vector<KElement>& elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }
  std::size_t index_of(const KElement& x) const;

  Element identity() const { return k_identity(p_); }
  Element multiply(const Element& a, const Element& b) const { return k_mul(a, b, p_); }
  Element invert(const Element& a) const { return k_inv(a, p_); }
  bool equal(const Element& a, const Element& b) const { return a == b; }

  /// Right-multiplication permutation w -> w * x on element indices.
  Permutation right_action(const KElement& x) const;
  /// Element indices of the closure of `gens` (contains the identity).
  std::vector<std::size_t> closure(const std::vector<KElement>& gens) const;

 private:
  KParams p_;
  std::vector<KElement> elements_;
  std::unordered_map<KElement, std::size_t, KElementHash> index_;
};

struct ToyConjugator {
  Permutation z;
  std::size_t domain_order = 0;
  std::size_t checked_pairs = 0;  // (domain element, carrier point) pairs verified
};

/// A permutation z of the carrier with z^-1 rho(x) z = rho(pi(x)) for every x
/// in the closure of Dom(pi), rho the right-regular action. Built by matching
/// the orbits of the domain action to those of the range action, then
/// verified pointwise. Throws olive::Error when the orders differ or no such
/// permutation exists.
ToyConjugator toy_conjugator(const ToyGroup& group, const PartialIso& pi);

}  // namespace olive
