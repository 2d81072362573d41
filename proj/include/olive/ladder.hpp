#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "olive/spair.hpp"
#include "olive/words.hpp"

namespace olive {

/// f = <f_alpha : alpha < lambda>, f_alpha : alpha -> {0..iota-1}.
/// rows[alpha] holds f_alpha, so rows[0] is empty.
struct Ladder {
  int lambda = 0;
  int iota = 2;
  std::vector<std::vector<int>> rows;

  /// f_alpha(delta), delta < alpha.
  int f(int alpha, int delta) const { return rows[static_cast<std::size_t>(alpha)][static_cast<std::size_t>(delta)]; }

  /// Throws std::invalid_argument on a bad shape or color.
  void validate() const;

  static Ladder zeros(int lambda, int iota = 2);
  friend bool operator==(const Ladder&, const Ladder&) = default;
};

struct Triple {
  int a = 0, b = 0, c = 0;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

std::string to_string(const Triple& t);

/// Number of two-colored ladders of height lambda: 2^(lambda(lambda-1)/2).
std::uint64_t ladder_count(int lambda);

/// Ladder number `code` in the enumeration of two-colored ladders: bit
/// C(alpha,2) + delta of `code` is f_alpha(delta).
Ladder ladder_from_code(int lambda, std::uint64_t code);

Ladder random_ladder(int lambda, std::mt19937_64& rng, int iota = 2);

/// True iff f_gamma is constantly 0 on the closed interval [alpha, beta].
bool interval_zero(const Ladder& f, int alpha, int beta, int gamma);

/// All (alpha, beta, gamma), alpha < beta < gamma < lambda, with
/// f_gamma zero on [alpha, beta]; lexicographic order. Needs iota = 2.
std::vector<Triple> J_of(const Ladder& f);

/// (u1, u2) with u1 = {l : t_l < beta, f_beta(t_l) = 0} and
/// u2 = {l : beta < t_l, f_{t_l}(beta) = 1}. Throws std::invalid_argument if
/// t is not in J or beta is out of range.
SPair s_pair(const Triple& t, int beta, const Ladder& f);

struct GammaSets {
  std::vector<std::pair<int, int>> gamma0;  // (alpha, beta), f_beta(alpha) = 0
  std::vector<std::pair<int, int>> gamma1;  // (alpha, beta), f_beta(alpha) = 1
  std::vector<Triple> gamma2;               // sigma(x_{a,0}, x_{b,1}, x_{c,4}) = e
};

GammaSets gamma_sets(const Ladder& f);

/// Finite map between x-generators, kept sorted by source.
using PartialGenMap = std::vector<std::pair<Generator, Generator>>;

/// x_{a,0} -> x_{a,2} for a < beta with f_beta(a) = 0, and x_{c,1} -> x_{c,3},
/// x_{c,4} -> x_{c,4} for c > beta with f_c(beta) = 1.
PartialGenMap F_beta(int beta, const Ladder& f);

/// True iff {x_{a,0}, x_{b,1}, x_{c,4}} is a subset of `gens` for some
/// triple of gamma2; the first such triple is stored in `hit`.
bool contains_gamma2_triple(const std::vector<Generator>& gens, const std::vector<Triple>& gamma2,
                            std::optional<Triple>* hit = nullptr);

struct PartialMapReport {
  bool pass = false;
  bool function = false;   // no source listed twice with different images
  bool injective = false;
  std::optional<Triple> domain_hit;
  std::optional<Triple> range_hit;
};

/// Well-definedness, injectivity, and the freeness criterion: neither the
/// domain nor the range contains all three generators of a gamma2 equation.
PartialMapReport check_partial_map(const PartialGenMap& map, const Ladder& f);
PartialMapReport check_F_beta(int beta, const Ladder& f);

}  // namespace olive
