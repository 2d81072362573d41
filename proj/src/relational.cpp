#include "olive/relational.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "olive/error.hpp"

namespace olive {

void OliveSignature::validate() const {
  const int len = n();
  if (len < 1) throw std::invalid_argument("signature: eta must be nonempty");
  for (int v : eta)
    if (v != 0 && v != 1) throw std::invalid_argument("signature: eta must be 0/1 valued");
  if (eta[0] != 0) throw std::invalid_argument("signature: eta(0) must be 0");
  int zeros_prefix = 0;
  while (zeros_prefix < len && eta[static_cast<std::size_t>(zeros_prefix)] == 0) ++zeros_prefix;
  const auto zeros = static_cast<int>(std::count(eta.begin(), eta.end(), 0));
  if (zeros == zeros_prefix) throw std::invalid_argument("signature: eta^-1{0} must not be an initial segment");
  const int counts[2] = {zeros, len - zeros};
  for (int iota = 0; iota < 2; ++iota) {
    const int ki = k[static_cast<std::size_t>(iota)];
    if (ki < 1) throw std::invalid_argument("signature: k entries must be at least 1");
    if (counts[iota] < ki)
      throw std::invalid_argument("signature: eta^-1{" + std::to_string(iota) + "} has fewer than k" + std::to_string(iota) + " points");
  }
  if (k[0] + k[1] < 3 || len < k[0] + k[1]) throw std::invalid_argument("signature: need n >= k0 + k1 >= 3");
}

void OliveSignature::validate_strict() const {
  validate();
  if (k[0] < 2 || k[1] < 2) throw std::invalid_argument("signature: class-level checks need k0, k1 >= 2");
}

OliveSignature default_signature() { return OliveSignature{{0, 1, 0, 1}, {2, 2}}; }

void FinStructure::validate() const {
  if (size < 0) throw std::invalid_argument("structure: negative universe size");
  for (std::size_t r = 0; r < 3; ++r)
    for (const auto& t : rel[r]) {
      if (t.size() != arity(r)) throw std::invalid_argument("structure: tuple of wrong arity");
      for (int x : t)
        if (x < 0 || x >= size) throw std::invalid_argument("structure: tuple entry out of range");
    }
}

FinStructure FinStructure::induced(const std::vector<int>& elements) const {
  std::vector<int> where(static_cast<std::size_t>(size), -1);
  for (std::size_t i = 0; i < elements.size(); ++i) where.at(static_cast<std::size_t>(elements[i])) = static_cast<int>(i);
  FinStructure out;
  out.sig = sig;
  out.size = static_cast<int>(elements.size());
  for (std::size_t r = 0; r < 3; ++r)
    for (const auto& t : rel[r]) {
      Tuple image;
      for (int x : t) {
        if (where[static_cast<std::size_t>(x)] < 0) break;
        image.push_back(where[static_cast<std::size_t>(x)]);
      }
      if (image.size() == t.size()) out.rel[r].insert(std::move(image));
    }
  return out;
}

namespace {

// Calls fn on every strictly increasing sequence of length len drawn from pool.
void increasing(const std::vector<int>& pool, int len, const std::function<void(const Tuple&)>& fn) {
  Tuple cur;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (static_cast<int>(cur.size()) == len) {
      fn(cur);
      return;
    }
    for (std::size_t i = from; i < pool.size(); ++i) {
      cur.push_back(pool[i]);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

std::vector<int> range(int n) {
  std::vector<int> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = i;
  return out;
}

bool constant_on(const Ladder& f, int beta, int lo, int hi, int value) {
  for (int d = lo; d <= hi; ++d)
    if (f.f(beta, d) != value) return false;
  return true;
}

}  // namespace

FinStructure build_Nstar(const OliveSignature& sig) {
  sig.validate();
  const int n = sig.n();
  FinStructure s;
  s.sig = sig;
  s.size = n + 1;
  for (int i = 0; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) s.P().insert({i, j});
  for (int iota = 0; iota < 2; ++iota) {
    const int k = sig.k[static_cast<std::size_t>(iota)];
    if (k < 2) continue;
    std::vector<int> pool;
    for (int l = 0; l < n; ++l)
      if (sig.eta[static_cast<std::size_t>(l)] == iota) pool.push_back(l);
    increasing(pool, k, [&](const Tuple& head) {
      for (int last = head.back() + 1; last <= n; ++last) {
        Tuple t = head;
        t.push_back(last);
        s.Q(iota).insert(std::move(t));
      }
    });
  }
  return s;
}

std::optional<std::vector<int>> embeds(const FinStructure& a, const FinStructure& b) {
  if (!(a.sig == b.sig)) throw std::invalid_argument("embeds: signature mismatch");
  if (a.size > b.size) return std::nullopt;

  // Tuples of a indexed by their largest entry; tuples of b by each entry.
  std::vector<std::vector<std::pair<std::size_t, const Tuple*>>> a_last(static_cast<std::size_t>(a.size));
  std::vector<std::vector<std::pair<std::size_t, const Tuple*>>> b_touch(static_cast<std::size_t>(b.size));
  for (std::size_t r = 0; r < 3; ++r) {
    for (const auto& t : a.rel[r]) a_last[static_cast<std::size_t>(*std::max_element(t.begin(), t.end()))].emplace_back(r, &t);
    for (const auto& t : b.rel[r]) {
      Tuple seen;
      for (int x : t)
        if (std::find(seen.begin(), seen.end(), x) == seen.end()) {
          seen.push_back(x);
          b_touch[static_cast<std::size_t>(x)].emplace_back(r, &t);
        }
    }
  }

  std::vector<int> h(static_cast<std::size_t>(a.size), -1);
  std::vector<int> inv(static_cast<std::size_t>(b.size), -1);

  auto consistent = [&](int i) {
    for (const auto& [r, t] : a_last[static_cast<std::size_t>(i)]) {
      Tuple image;
      for (int x : *t) image.push_back(h[static_cast<std::size_t>(x)]);
      if (!b.rel[r].contains(image)) return false;
    }
    for (const auto& [r, t] : b_touch[static_cast<std::size_t>(h[static_cast<std::size_t>(i)])]) {
      Tuple pre;
      for (int y : *t) {
        const int x = inv[static_cast<std::size_t>(y)];
        if (x < 0) break;
        pre.push_back(x);
      }
      if (pre.size() == t->size() && !a.rel[r].contains(pre)) return false;
    }
    return true;
  };

  std::function<bool(int)> place = [&](int i) {
    if (i == a.size) return true;
    for (int y = 0; y < b.size; ++y) {
      if (inv[static_cast<std::size_t>(y)] >= 0) continue;
      h[static_cast<std::size_t>(i)] = y;
      inv[static_cast<std::size_t>(y)] = i;
      if (consistent(i) && place(i + 1)) return true;
      inv[static_cast<std::size_t>(y)] = -1;
      h[static_cast<std::size_t>(i)] = -1;
    }
    return false;
  };

  if (place(0)) return h;
  return std::nullopt;
}

FinStructure model_from_ladder(const Ladder& f, const OliveSignature& sig) {
  f.validate();
  sig.validate();
  if (f.iota != 2) throw std::invalid_argument("model_from_ladder: needs a two-colored ladder");
  FinStructure m;
  m.sig = sig;
  m.size = f.lambda;
  for (int a = 0; a < f.lambda; ++a)
    for (int b = a + 1; b < f.lambda; ++b) m.P().insert({a, b});
  for (int iota = 0; iota < 2; ++iota) {
    const int k = sig.k[static_cast<std::size_t>(iota)];
    if (k < 2) continue;
    increasing(range(f.lambda), k + 1, [&](const Tuple& t) {
      if (constant_on(f, t.back(), t.front(), t[static_cast<std::size_t>(k - 1)], iota)) m.Q(iota).insert(t);
    });
  }
  return m;
}

FinStructure disjoint_union(const FinStructure& m1, const FinStructure& m2, const std::vector<std::pair<int, int>>& shared) {
  if (!(m1.sig == m2.sig)) throw std::invalid_argument("disjoint_union: signature mismatch");
  std::vector<int> s1, s2;
  std::vector<int> to_result(static_cast<std::size_t>(m2.size), -1);
  for (const auto& [x1, x2] : shared) {
    if (x1 < 0 || x1 >= m1.size || x2 < 0 || x2 >= m2.size) throw std::invalid_argument("disjoint_union: shared index out of range");
    if (to_result[static_cast<std::size_t>(x2)] >= 0) throw std::invalid_argument("disjoint_union: shared index repeated");
    s1.push_back(x1);
    s2.push_back(x2);
    to_result[static_cast<std::size_t>(x2)] = x1;
  }
  if (!(m1.induced(s1) == m2.induced(s2))) throw Error("disjoint_union: the overlap is not a common induced substructure");

  FinStructure out = m1;
  for (int x = 0; x < m2.size; ++x)
    if (to_result[static_cast<std::size_t>(x)] < 0) to_result[static_cast<std::size_t>(x)] = out.size++;
  for (std::size_t r = 0; r < 3; ++r)
    for (const auto& t : m2.rel[r]) {
      Tuple image;
      for (int x : t) image.push_back(to_result[static_cast<std::size_t>(x)]);
      out.rel[r].insert(std::move(image));
    }
  return out;
}

AmalgamReport nsop4_amalgam(const std::array<FinStructure, 4>& parts, const std::array<FinStructure, 4>& edges) {
  AmalgamReport rep;
  const auto& sig = parts[0].sig;
  const FinStructure nstar = build_Nstar(sig);

  std::array<int, 4> offset{};
  int total = 0;
  for (int l = 0; l < 4; ++l) {
    offset[static_cast<std::size_t>(l)] = total;
    total += parts[static_cast<std::size_t>(l)].size;
  }
  auto block = [&](int l) {
    std::vector<int> out;
    for (int x = 0; x < parts[static_cast<std::size_t>(l)].size; ++x) out.push_back(offset[static_cast<std::size_t>(l)] + x);
    return out;
  };

  for (int l = 0; l < 4; ++l) {
    const auto& m = parts[static_cast<std::size_t>(l)];
    if (!(m.sig == sig)) rep.precondition_failures.push_back("part " + std::to_string(l) + ": signature mismatch");
    else if (embeds(nstar, m)) rep.precondition_failures.push_back("part " + std::to_string(l) + ": contains N*");
  }
  for (std::size_t e = 0; e < 4; ++e) {
    const auto [i, j] = kCycleEdges[e];
    const auto& m = edges[e];
    const std::string name = "edge {" + std::to_string(i) + "," + std::to_string(j) + "}";
    const int si = parts[static_cast<std::size_t>(i)].size, sj = parts[static_cast<std::size_t>(j)].size;
    if (!(m.sig == sig) || m.size != si + sj) {
      rep.precondition_failures.push_back(name + ": wrong signature or universe size");
      continue;
    }
    if (embeds(nstar, m)) rep.precondition_failures.push_back(name + ": contains N*");
    std::vector<int> first, second;
    for (int x = 0; x < si; ++x) first.push_back(x);
    for (int x = 0; x < sj; ++x) second.push_back(si + x);
    if (!(m.induced(first) == parts[static_cast<std::size_t>(i)]) || !(m.induced(second) == parts[static_cast<std::size_t>(j)]))
      rep.precondition_failures.push_back(name + ": does not extend its parts");
  }
  if (!rep.precondition_failures.empty()) return rep;

  FinStructure& u = rep.result;
  u.sig = sig;
  u.size = total;
  std::array<std::vector<int>, 4> globals;
  for (std::size_t e = 0; e < 4; ++e) {
    const auto [i, j] = kCycleEdges[e];
    auto g = block(i);
    const auto gj = block(j);
    g.insert(g.end(), gj.begin(), gj.end());
    for (std::size_t r = 0; r < 3; ++r)
      for (const auto& t : edges[e].rel[r]) {
        Tuple image;
        for (int x : t) image.push_back(g[static_cast<std::size_t>(x)]);
        u.rel[r].insert(std::move(image));
      }
    globals[e] = std::move(g);
  }

  rep.omits_nstar = !embeds(nstar, u).has_value();
  rep.extends_edges = true;
  for (std::size_t e = 0; e < 4; ++e)
    if (!(u.induced(globals[e]) == edges[e])) rep.extends_edges = false;
  rep.pass = rep.omits_nstar && rep.extends_edges;
  return rep;
}

std::string check_ladder_model(const Ladder& f, const OliveSignature& sig, const FinStructure& nstar) {
  const FinStructure m = model_from_ladder(f, sig);
  for (int a = 0; a < f.lambda; ++a)
    for (int b = a + 1; b < f.lambda; ++b)
      if (!m.P().contains({a, b})) return "P(" + std::to_string(a) + "," + std::to_string(b) + ") missing";

  // Every increasing (k+1)-tuple whose last row is constant iota on the
  // span of the others must be in Q_iota.
  for (int iota = 0; iota < 2; ++iota) {
    const int k = sig.k[static_cast<std::size_t>(iota)];
    std::string missing;
    increasing(range(f.lambda), k + 1, [&](const Tuple& t) {
      bool demanded = true;
      for (int d = t.front(); d <= t[static_cast<std::size_t>(k - 1)]; ++d) demanded = demanded && f.f(t.back(), d) == iota;
      if (demanded && !m.Q(iota).contains(t) && missing.empty()) missing = "Q" + std::to_string(iota) + " tuple missing";
    });
    if (!missing.empty()) return missing;
  }
  if (auto h = embeds(nstar, m)) return "N* embeds";
  return {};
}

ClassOliveReport check_class_olive(const OliveSignature& sig, int lambda_max) {
  sig.validate_strict();
  if (lambda_max < 1 || lambda_max > 6) throw std::invalid_argument("check_class_olive: lambda_max must be in 1..6");
  ClassOliveReport rep;
  rep.sig = sig;
  rep.lambda_max = lambda_max;
  const FinStructure nstar = build_Nstar(sig);
  for (int lambda = 1; lambda <= lambda_max; ++lambda) {
    const auto count = ladder_count(lambda);
    if (lambda == lambda_max) rep.ladders = count;
    rep.ladders_total += count;
    for (std::uint64_t code = 0; code < count; ++code) {
      const auto problem = check_ladder_model(ladder_from_code(lambda, code), sig, nstar);
      if (problem.empty()) continue;
      if (problem == "N* embeds")
        ++rep.embeddings_found;
      else
        ++rep.membership_failures;
      if (rep.first_failure.empty()) rep.first_failure = "lambda " + std::to_string(lambda) + " code " + std::to_string(code) + ": " + problem;
    }
  }
  return rep;
}

FinStructure random_structure(const OliveSignature& sig, int size, double density, std::mt19937_64& rng) {
  std::bernoulli_distribution keep(density);
  FinStructure s;
  s.sig = sig;
  s.size = size;
  for (std::size_t r = 0; r < 3; ++r) {
    const auto ar = s.arity(r);
    Tuple cur;
    std::vector<char> used(static_cast<std::size_t>(size), 0);
    std::function<void()> rec = [&]() {
      if (cur.size() == ar) {
        if (keep(rng)) s.rel[r].insert(cur);
        return;
      }
      for (int x = 0; x < size; ++x) {
        if (used[static_cast<std::size_t>(x)]) continue;
        used[static_cast<std::size_t>(x)] = 1;
        cur.push_back(x);
        rec();
        cur.pop_back();
        used[static_cast<std::size_t>(x)] = 0;
      }
    };
    rec();
  }
  return s;
}

}  // namespace olive
