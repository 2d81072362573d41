#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "olive/kgroup.hpp"
#include "olive/ladder.hpp"
#include "olive/words.hpp"

namespace olive {

/// Symbolic z_s^sign.
struct FormalConj {
  SPair s;
  int sign = 1;
  friend bool operator==(const FormalConj&, const FormalConj&) = default;
};

using CoordValue = std::variant<KElement, FormalConj>;

/// One value per triple of J, in the order of J_of.
using ProductElement = std::vector<CoordValue>;

struct WitnessFamily {
  Ladder ladder;
  KParams params;
  std::vector<Triple> J;
  std::vector<std::array<ProductElement, kTupleWidth>> tuples;  // tuples[beta][k]
};

/// Value of x_{beta,k} at coordinate t: z_{l,k} if beta = t_l, the identity
/// if beta is not in t (k < 5), and z_{s(t,beta)} for k = 5.
CoordValue pi6(const Triple& t, int beta, int k, const Ladder& f, const KParams& p);

/// Needs a two-colored ladder and quotiented parameters with m >= 5.
WitnessFamily build_witness(const Ladder& f, const KParams& p);

/// Normalizes products of concrete elements and formal conjugators using
/// z_s^-1 c z_s = pi_s(c) when the support of c lies in the subgroup induced
/// by Dom(pi_s), z_s c z_s^-1 = pi_s^-1(c) for c supported in the range, and
/// z_s^e z_s^-e = e. Anything left unresolved is Undecided.
class RelativeEvaluator {
 public:
  /// One rule per S_* pair, using pi_s.
  explicit RelativeEvaluator(const KParams& p);
  /// Explicit rule table, for instances where pi_s does not apply.
  RelativeEvaluator(const KParams& p, const std::map<SPair, PartialIso>& rules);

  const KParams& params() const { return p_; }

  /// Concrete value, or nullopt for Undecided.
  std::optional<KElement> eval(const std::vector<CoordValue>& factors) const;
  std::optional<KElement> eval(const Word& w, const std::map<Generator, CoordValue>& assignment) const;

 private:
  KParams p_;
  std::map<SPair, InducedRelabel> rules_;
};

enum class Truth { True, False, Undecided };

struct ClauseReport {
  std::size_t phi_instances = 0;   // (alpha, beta, coordinate) checks of phi_{f_beta(alpha)}
  std::size_t psi_eq_instances = 0;
  std::size_t psi_neq_instances = 0;
  std::size_t failures = 0;
  std::size_t undecided = 0;
  std::string first_failure;

  bool pass() const { return failures == 0 && undecided == 0; }
};

/// phi_{f_beta(alpha)}[g_alpha, g_beta] at every coordinate for alpha < beta,
/// and for (a,b,c) in J the equation of psi[g_a, g_b, g_c] at every coordinate
/// plus its inequation at the coordinate (a,b,c).
ClauseReport verify_clause_b(const WitnessFamily& w, const RelativeEvaluator& ev, const OliveFormulas& formulas);

/// Generators x_{a,k}, k < 5, a < lambda, erased outside X; freely reduced.
/// Throws olive::Error if X contains {x_{a,0}, x_{b,1}, x_{c,4}} for a
/// triple of J, std::invalid_argument for generators outside that alphabet.
Word g5_retract(const Ladder& f, const std::set<Generator>& X, const Word& w);

struct Quadruple {
  int i0, i1, i2, i3;
  friend bool operator==(const Quadruple&, const Quadruple&) = default;
};

/// All (i0..i3) in [0,lambda)^4 at which phi0[g_i0,g_i1], phi1[g_i1,g_i2],
/// phi1[g_i1,g_i3] and psi[g_i0,g_i2,g_i3] are all established. Needs
/// lambda <= 12.
std::vector<Quadruple> forbidden_scan(const WitnessFamily& w, const RelativeEvaluator& ev, const OliveFormulas& formulas);

}  // namespace olive
