#pragma once

#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace olive {

/// Finite expanded tree on nodes 0..nodes-1. The tree order is given by a
/// parent array (-1 for roots); the linear order lists the nodes from least
/// to greatest.
struct ExpandedTree {
  int nodes = 0;
  std::vector<int> parent;
  std::vector<int> linear_order;
  std::vector<int> P;
  std::vector<std::pair<int, int>> F[2];  // (point of P, image)

  friend bool operator==(const ExpandedTree&, const ExpandedTree&) = default;
};

struct EtrViolation {
  char clause = '?';  // 'a' .. 'h'
  std::string witness;

  friend bool operator==(const EtrViolation&, const EtrViolation&) = default;
};

/// Violations of the axioms, in clause order; empty iff the tree is in K_etr.
/// Throws olive::Error on malformed input (array sizes, node indices out of
/// range) before any axiom is checked.
std::vector<EtrViolation> validate_etr(const ExpandedTree& t);

/// Restriction to P with Q_iota = {(eta, nu) : F_iota(eta) <=_tr nu}. Pairs
/// are in node ids.
struct FlatStructure {
  std::vector<int> points;
  std::set<std::pair<int, int>> tree_less;  // eta <_tr nu
  std::set<std::pair<int, int>> lin_less;   // eta <_lin nu
  std::set<std::pair<int, int>> Q[2];
};

/// Throws olive::Error unless validate_etr(t) is empty.
FlatStructure derive_ftr(const ExpandedTree& t);

/// Tree order as a reachability query: a <=_tr b.
bool tree_leq(const ExpandedTree& t, int a, int b);

/// Random member of K_etr with `p_nodes` points of P. Each P node gets
/// its two successors, each successor gets up to two P children, and the
/// linear order is the in-order walk (F_0 side, node, F_1 side).
ExpandedTree random_etr(int p_nodes, std::mt19937_64& rng);

}  // namespace olive
