#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "olive/ladder.hpp"

namespace olive {

/// eta in {0,1}^n and k = (k0, k1) for the vocabulary {P, Q0, Q1}, Q_i of
/// arity k_i + 1.
struct OliveSignature {
  std::vector<int> eta;
  std::array<int, 2> k{2, 2};

  int n() const { return static_cast<int>(eta.size()); }
  int arity(int iota) const { return k[static_cast<std::size_t>(iota)] + 1; }

  /// eta(0) = 0, eta^-1{0} not an initial segment, |eta^-1{i}| >= k_i >= 1,
  /// n >= k0 + k1 >= 3. Throws std::invalid_argument.
  void validate() const;
  /// validate() plus k_i >= 2, needed by the class-level checks.
  void validate_strict() const;

  friend bool operator==(const OliveSignature&, const OliveSignature&) = default;
};

/// (0,1,0,1), (2,2).
OliveSignature default_signature();

using Tuple = std::vector<int>;

/// Finite structure over {P, Q0, Q1}. rel[0] = P, rel[1] = Q0, rel[2] = Q1.
struct FinStructure {
  OliveSignature sig;
  int size = 0;
  std::array<std::set<Tuple>, 3> rel;

  std::set<Tuple>& P() { return rel[0]; }
  const std::set<Tuple>& P() const { return rel[0]; }
  std::set<Tuple>& Q(int iota) { return rel[static_cast<std::size_t>(iota) + 1]; }
  const std::set<Tuple>& Q(int iota) const { return rel[static_cast<std::size_t>(iota) + 1]; }

  std::size_t arity(std::size_t r) const { return r == 0 ? 2 : static_cast<std::size_t>(sig.arity(static_cast<int>(r) - 1)); }

  /// Indices in range and arities matching; throws std::invalid_argument.
  void validate() const;
  /// Restriction to the listed elements, renumbered in list order.
  FinStructure induced(const std::vector<int>& elements) const;

  friend bool operator==(const FinStructure&, const FinStructure&) = default;
};

/// Universe {0..n}, P = all increasing pairs, Q_i = tuples (l_0 < ... <
/// l_{k-1}, l) with k = k_i, l_j in eta^-1{i}, l_{k-1} < l <= n. Q_i is empty
/// when k_i = 1.
FinStructure build_Nstar(const OliveSignature& sig);

/// Injective map preserving and reflecting every relation, found by
/// backtracking; nullopt if none exists. Throws std::invalid_argument on a
/// signature mismatch.
std::optional<std::vector<int>> embeds(const FinStructure& a, const FinStructure& b);

/// Universe lambda, P = increasing pairs, Q_i = increasing tuples
/// (a_0, ..., a_{k-1}, b) with f_b constantly i on [a_0, a_{k-1}].
FinStructure model_from_ladder(const Ladder& f, const OliveSignature& sig);

/// Union of m1 and m2 glued along `shared` (pairs of m1 index, m2 index).
/// The elements of m1 keep their indices; the others of m2 follow in order.
/// Throws olive::Error if the shared parts do not induce the same structure.
FinStructure disjoint_union(const FinStructure& m1, const FinStructure& m2, const std::vector<std::pair<int, int>>& shared);

struct AmalgamReport {
  bool pass = false;
  std::vector<std::string> precondition_failures;
  bool omits_nstar = false;
  bool extends_edges = false;
  FinStructure result;
};

/// Edges of the 4-cycle, in the order expected by nsop4_amalgam.
inline constexpr std::array<std::pair<int, int>, 4> kCycleEdges{{{0, 1}, {1, 2}, {2, 3}, {0, 3}}};

/// parts[l] lives on A_l; edges[e] lives on A_i followed by A_j for
/// kCycleEdges[e] = (i, j). The union lives on A_0, A_1, A_2, A_3 in order.
AmalgamReport nsop4_amalgam(const std::array<FinStructure, 4>& parts, const std::array<FinStructure, 4>& edges);

struct ClassOliveReport {
  OliveSignature sig;
  int lambda_max = 0;
  std::uint64_t ladders = 0;        // ladders of height lambda_max
  std::uint64_t ladders_total = 0;  // ladders of every height 1..lambda_max
  std::uint64_t membership_failures = 0;
  std::uint64_t embeddings_found = 0;
  std::string first_failure;

  bool pass() const { return membership_failures == 0 && embeddings_found == 0; }
};

/// For every two-colored ladder of height at most lambda_max (<= 6): the
/// model contains the pattern the ladder demands and omits N*.
ClassOliveReport check_class_olive(const OliveSignature& sig, int lambda_max);

/// One ladder: required P and Q tuples present, and N* does not embed.
/// Returns an empty string on success, else a description.
std::string check_ladder_model(const Ladder& f, const OliveSignature& sig, const FinStructure& nstar);

/// Structure on `size` points with each possible tuple present with
/// probability `density` (P irreflexive, Q tuples over distinct points).
FinStructure random_structure(const OliveSignature& sig, int size, double density, std::mt19937_64& rng);

}  // namespace olive
