#include "olive/etr.hpp"

#include <algorithm>
#include <functional>

#include "olive/error.hpp"

namespace olive {

namespace {

std::string node(int x) { return std::to_string(x); }

std::string pair_str(int a, int b) { return "(" + node(a) + "," + node(b) + ")"; }

void check_shape(const ExpandedTree& t) {
  const auto n = static_cast<std::size_t>(t.nodes);
  if (t.nodes < 0) throw Error("tree: negative node count");
  if (t.parent.size() != n) throw Error("tree: parent array has " + std::to_string(t.parent.size()) + " entries for " + node(t.nodes) + " nodes");
  if (t.linear_order.size() != n) throw Error("tree: linear order must list every node once");
  auto in_range = [&](int x) { return x >= 0 && x < t.nodes; };
  for (std::size_t x = 0; x < n; ++x)
    if (t.parent[x] != -1 && !in_range(t.parent[x])) throw Error("tree: parent of " + node(static_cast<int>(x)) + " out of range");
  for (int x : t.linear_order)
    if (!in_range(x)) throw Error("tree: linear order mentions unknown node " + node(x));
  for (int l = 0; l < 2; ++l)
    for (const auto& [s, img] : t.F[l])
      if (!in_range(s) || !in_range(img)) throw Error("tree: F" + node(l) + " entry " + pair_str(s, img) + " out of range");
}

// True if following parents from x never reaches a root.
bool hangs_off_cycle(const ExpandedTree& t, int x) {
  for (int steps = 0; steps <= t.nodes; ++steps) {
    if (x == -1) return false;
    x = t.parent[static_cast<std::size_t>(x)];
  }
  return true;
}

}  // namespace

bool tree_leq(const ExpandedTree& t, int a, int b) {
  for (int y = b, steps = 0; y != -1 && steps <= t.nodes; y = t.parent[static_cast<std::size_t>(y)], ++steps)
    if (y == a) return true;
  return false;
}

std::vector<EtrViolation> validate_etr(const ExpandedTree& t) {
  check_shape(t);
  std::vector<EtrViolation> out;
  const auto n = static_cast<std::size_t>(t.nodes);

  // (a) parent links give a well founded tree: no cycles.
  for (int x = 0; x < t.nodes; ++x)
    if (hangs_off_cycle(t, x)) {
      out.push_back({'a', "node " + node(x) + " lies on or below a parent cycle"});
      break;
    }
  const bool tree_ok = out.empty();

  // (b) P is a set of nodes.
  std::vector<char> inP(n, 0);
  for (int x : t.P) {
    if (x < 0 || x >= t.nodes) {
      out.push_back({'b', "P mentions unknown node " + node(x)});
      continue;
    }
    if (inP[static_cast<std::size_t>(x)]) out.push_back({'b', "P lists node " + node(x) + " twice"});
    inP[static_cast<std::size_t>(x)] = 1;
  }

  // (c) F_l is a one-to-one function from P into the complement of P.
  std::vector<int> image[2];
  for (int l = 0; l < 2; ++l) {
    image[l].assign(n, -1);
    std::vector<int> hit(n, -1);
    const std::string name = "F" + node(l);
    for (const auto& [s, img] : t.F[l]) {
      const auto su = static_cast<std::size_t>(s), iu = static_cast<std::size_t>(img);
      if (!inP[su]) out.push_back({'c', name + " defined at " + node(s) + " outside P"});
      if (image[l][su] != -1) out.push_back({'c', name + " has two values at " + node(s)});
      image[l][su] = img;
      if (inP[iu]) out.push_back({'c', name + pair_str(s, img) + " lands in P"});
      if (hit[iu] != -1 && hit[iu] != s) out.push_back({'c', name + " is not one-to-one at " + node(img)});
      hit[iu] = s;
    }
    for (std::size_t s = 0; s < n; ++s)
      if (inP[s] && image[l][s] == -1) out.push_back({'c', name + " undefined at " + node(static_cast<int>(s))});
  }

  // (d) every node is in exactly one of P, Rang F_0, Rang F_1.
  {
    std::vector<int> cover(n, 0);
    for (std::size_t x = 0; x < n; ++x) cover[x] += inP[x];
    for (int l = 0; l < 2; ++l) {
      std::vector<char> in_range(n, 0);
      for (const auto& [s, img] : t.F[l]) in_range[static_cast<std::size_t>(img)] = 1;
      for (std::size_t x = 0; x < n; ++x) cover[x] += in_range[x];
    }
    for (std::size_t x = 0; x < n; ++x)
      if (cover[x] != 1)
        out.push_back({'d', "node " + node(static_cast<int>(x)) + " lies in " + std::to_string(cover[x]) + " of P, Rang F0, Rang F1"});
  }

  // (e) F_l(s) is an immediate successor of s.
  for (int l = 0; l < 2; ++l)
    for (const auto& [s, img] : t.F[l])
      if (t.parent[static_cast<std::size_t>(img)] != s) out.push_back({'e', "F" + node(l) + pair_str(s, img) + " is not a child"});

  // (f) above a point of P, everything passes through F_0 or F_1 of it.
  // With a parent array it suffices to look at children.
  for (std::size_t x = 0; x < n; ++x) {
    const int s = t.parent[x];
    if (s == -1 || !inP[static_cast<std::size_t>(s)]) continue;
    const auto su = static_cast<std::size_t>(s);
    if (image[0][su] != static_cast<int>(x) && image[1][su] != static_cast<int>(x))
      out.push_back({'f', "child " + node(static_cast<int>(x)) + " of " + node(s) + " avoids F0 and F1"});
  }

  // (g) the linear order lists every node exactly once.
  std::vector<int> pos(n, -1);
  bool lin_ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = static_cast<std::size_t>(t.linear_order[i]);
    if (pos[x] != -1) {
      out.push_back({'g', "node " + node(static_cast<int>(x)) + " appears twice in the linear order"});
      lin_ok = false;
    }
    pos[x] = static_cast<int>(i);
  }

  // (h) t_0 <_lin s <_lin t_1 whenever F_l(s) <=_tr t_l.
  if (tree_ok && lin_ok) {
    for (int s : t.P) {
      if (s < 0 || s >= t.nodes) continue;
      const auto su = static_cast<std::size_t>(s);
      for (int l = 0; l < 2; ++l) {
        const int root = image[l][su];
        if (root < 0) continue;
        for (int x = 0; x < t.nodes; ++x) {
          if (!tree_leq(t, root, x)) continue;
          const bool ok = l == 0 ? pos[static_cast<std::size_t>(x)] < pos[su] : pos[su] < pos[static_cast<std::size_t>(x)];
          if (!ok) out.push_back({'h', "node " + node(x) + " above F" + node(l) + "(" + node(s) + ") is on the wrong side of " + node(s)});
        }
      }
    }
  }

  std::stable_sort(out.begin(), out.end(), [](const EtrViolation& a, const EtrViolation& b) { return a.clause < b.clause; });
  return out;
}

FlatStructure derive_ftr(const ExpandedTree& t) {
  const auto bad = validate_etr(t);
  if (!bad.empty()) throw Error("derive_ftr: not an expanded tree, clause (" + std::string(1, bad.front().clause) + "): " + bad.front().witness);

  FlatStructure out;
  out.points = t.P;
  std::sort(out.points.begin(), out.points.end());
  std::vector<int> pos(static_cast<std::size_t>(t.nodes));
  for (std::size_t i = 0; i < t.linear_order.size(); ++i) pos[static_cast<std::size_t>(t.linear_order[i])] = static_cast<int>(i);
  std::vector<int> image[2];
  for (int l = 0; l < 2; ++l) {
    image[l].assign(static_cast<std::size_t>(t.nodes), -1);
    for (const auto& [s, img] : t.F[l]) image[l][static_cast<std::size_t>(s)] = img;
  }

  for (int a : out.points)
    for (int b : out.points) {
      if (a != b && tree_leq(t, a, b)) out.tree_less.emplace(a, b);
      if (pos[static_cast<std::size_t>(a)] < pos[static_cast<std::size_t>(b)]) out.lin_less.emplace(a, b);
      for (int l = 0; l < 2; ++l)
        if (tree_leq(t, image[l][static_cast<std::size_t>(a)], b)) out.Q[l].emplace(a, b);
    }
  return out;
}

ExpandedTree random_etr(int p_nodes, std::mt19937_64& rng) {
  ExpandedTree t;
  std::vector<std::vector<int>> children;
  auto add = [&](int parent) {
    t.parent.push_back(parent);
    children.emplace_back();
    if (parent >= 0) children[static_cast<std::size_t>(parent)].push_back(t.nodes);
    return t.nodes++;
  };

  std::vector<int> frontier;  // successors waiting for P children
  std::uniform_int_distribution<int> kids(0, 2);
  int made = 0;
  auto grow = [&](int parent) {
    const int s = add(parent);
    t.P.push_back(s);
    ++made;
    for (int l = 0; l < 2; ++l) {
      const int img = add(s);
      t.F[l].emplace_back(s, img);
      frontier.push_back(img);
    }
  };

  if (p_nodes > 0) grow(-1);
  while (made < p_nodes && !frontier.empty()) {
    std::uniform_int_distribution<std::size_t> pick(0, frontier.size() - 1);
    const auto at = pick(rng);
    const int f = frontier[at];
    // The last open successor always grows, so exactly p_nodes points appear.
    const int count = std::min(frontier.size() == 1 ? std::max(1, kids(rng)) : kids(rng), p_nodes - made);
    for (int c = 0; c < count; ++c) grow(f);
    frontier.erase(frontier.begin() + static_cast<std::ptrdiff_t>(at));
  }

  std::vector<char> inP(static_cast<std::size_t>(t.nodes), 0);
  for (int s : t.P) inP[static_cast<std::size_t>(s)] = 1;
  std::function<void(int)> walk = [&](int x) {
    const auto& ch = children[static_cast<std::size_t>(x)];
    if (inP[static_cast<std::size_t>(x)]) {
      walk(ch[0]);
      t.linear_order.push_back(x);
      walk(ch[1]);
    } else {
      t.linear_order.push_back(x);
      for (int c : ch) walk(c);
    }
  };
  for (int x = 0; x < t.nodes; ++x)
    if (t.parent[static_cast<std::size_t>(x)] == -1) walk(x);
  return t;
}

}  // namespace olive
