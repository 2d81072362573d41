#include "olive/kgroup.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <random>
#include <stdexcept>

#include "olive/error.hpp"

namespace olive {

std::pair<std::size_t, std::size_t> pair_unrank(std::size_t rank) {
  auto b = static_cast<std::size_t>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(rank))) / 2.0);
  while (b * (b - 1) / 2 > rank) --b;
  while ((b + 1) * b / 2 <= rank) ++b;
  return {rank - b * (b - 1) / 2, b};
}

KParams KParams::make(int m) {
  if (m < 1) throw std::invalid_argument("KParams: m must be positive");
  KParams p;
  p.m = m;
  p.n[2] = 3 * static_cast<std::size_t>(m);
  p.n[1] = p.n[2] * (p.n[2] - 1) / 2;
  p.n[0] = p.n[1] * (p.n[1] - 1) / 2;
  return p;
}

KParams toy_params() { return KParams::make(1); }

namespace {

void check_shape(const KElement& a, const KParams& p, const char* who) {
  for (int j = 0; j < 3; ++j)
    if (a.v[j].size() != p.n[j]) throw std::invalid_argument(std::string(who) + ": dimension mismatch at level " + std::to_string(j));
}

}  // namespace

KElement k_identity(const KParams& p) { return KElement{{BitVec(p.n[0]), BitVec(p.n[1]), BitVec(p.n[2])}}; }

KElement k_generator(int level, std::size_t index, const KParams& p) {
  if (level < 0 || level > 2) throw std::out_of_range("k_generator: level must be 0, 1 or 2");
  if (index >= p.n[level]) throw std::out_of_range("k_generator: index out of range");
  if (level == 0 && p.quotient_mask == index) throw std::out_of_range("k_generator: index is the quotient bit");
  auto g = k_identity(p);
  g.v[level].set(index);
  return g;
}

KElement z_gen(int i, int k, const KParams& p) {
  if (i < 0 || i > 2 || k < 0 || k >= p.m) throw std::out_of_range("z_gen: (i,k) out of range");
  return k_generator(2, static_cast<std::size_t>(p.m * i + k), p);
}

KElement apply_mask(KElement a, const KParams& p) {
  if (p.quotient_mask) a.v[0].reset(*p.quotient_mask);
  return a;
}

// Collecting A2 A1 A0 B2 B1 B0. Each b in B2 (ascending) passes the letters
// a > b of A2; the emitted level-1 letters f1{b,a} arrive ascending just to
// the left of the current level-1 block L and are then sorted into it, each
// s toggling f0{l,s} for every l < s in L. Finally the letters of B1 are
// sorted into L from the right, toggling f0{q,l} for q in B1, l in L, q < l.
KElement k_mul(const KElement& a, const KElement& b, const KParams& p) {
  check_shape(a, p, "k_mul");
  check_shape(b, p, "k_mul");

  BitVec level1 = a.v[1];
  BitVec level0 = a.v[0] ^ b.v[0];
  const auto a2 = a.v[2].set_bits();

  b.v[2].for_each_set([&](std::size_t y) {
    auto first = std::upper_bound(a2.begin(), a2.end(), y);
    if (first == a2.end()) return;
    BitVec emitted(p.n[1]);
    for (auto it = first; it != a2.end(); ++it) {
      const std::size_t s = pair_rank(y, *it);
      level0.xor_shifted(s * (s - 1) / 2, level1, s);
      emitted.set(s);
    }
    level1 ^= emitted;
  });

  level1.for_each_set([&](std::size_t l) { level0.xor_shifted(l * (l - 1) / 2, b.v[1], l); });
  level1 ^= b.v[1];

  KElement out{{std::move(level0), std::move(level1), a.v[2] ^ b.v[2]}};
  return apply_mask(std::move(out), p);
}

KElement k_inv(const KElement& a, const KParams& p) {
  check_shape(a, p, "k_inv");
  KElement probe = k_identity(p);
  probe.v[2] = a.v[2];
  probe.v[1] = k_mul(a, probe, p).v[1];
  probe.v[0] = k_mul(a, probe, p).v[0];
  return probe;
}

std::array<KElement, 3> ell_star_triple(const KParams& p) {
  return {z_gen(0, 0, p), z_gen(1, 1 % p.m, p), z_gen(2, 4 % p.m, p)};
}

std::size_t compute_ell_star(const KParams& p, SigmaVariant v) {
  if (p.quotient_mask) throw std::invalid_argument("compute_ell_star: parameters are already quotiented");
  const KContext ctx(p);
  const auto triple = ell_star_triple(p);
  Assignment<KContext> asg;
  asg.emplace(Generator::var("x"), triple[0]);
  asg.emplace(Generator::var("y"), triple[1]);
  asg.emplace(Generator::var("z"), triple[2]);
  const auto value = evaluate(sigma_star(v), asg, ctx);

  if (value.is_identity()) throw Error("compute_ell_star(" + to_string(v) + "): result is identity");
  if (!value.v[2].none() || !value.v[1].none() || value.v[0].count() != 1)
    throw Error("compute_ell_star(" + to_string(v) + "): result is not a single level-0 generator (support sizes " +
                std::to_string(value.v[2].count()) + "/" + std::to_string(value.v[1].count()) + "/" +
                std::to_string(value.v[0].count()) + ")");
  return value.v[0].set_bits().front();
}

KParams make_K2(const KParams& p, SigmaVariant v) {
  KParams q = p;
  q.quotient_mask = compute_ell_star(p, v);
  q.variant = v;
  return q;
}

KElement random_k_element(std::mt19937_64& rng, const KParams& p, double density) {
  if (!(density >= 0.0 && density <= 1.0)) throw std::invalid_argument("random_k_element: density must be in [0,1]");
  KElement e = k_identity(p);
  for (auto& level : e.v) {
    if (density == 0.5) {
      // One engine call per 64 bits; clear the tail past size().
      for (std::size_t w = 0; w < level.num_words(); ++w) level.data()[w] = rng();
      if (const auto tail = level.size() % BitVec::kWordBits; tail != 0)
        level.data()[level.num_words() - 1] &= (BitVec::word_type{1} << tail) - 1;
    } else if (density >= 1.0) {
      for (std::size_t i = 0; i < level.size(); ++i) level.set(i);
    } else if (density > 0.0) {
      // Gaps between set bits are geometric.
      std::geometric_distribution<std::size_t> gap(density);
      for (std::size_t i = gap(rng); i < level.size(); i += 1 + gap(rng)) level.set(i);
    }
  }
  return apply_mask(e, p);
}

KElement k_commutator(const KElement& a, const KElement& b, const KParams& p) {
  return k_mul(k_mul(k_mul(k_inv(a, p), k_inv(b, p), p), a, p), b, p);
}

namespace {

std::string gen_name(int level, std::size_t i) { return "y" + std::to_string(level) + "_" + std::to_string(i); }

std::string describe(const KElement& e) { return e.v[2].to_hex() + ":" + e.v[1].to_hex() + ":" + e.v[0].to_hex(); }

}  // namespace

RelationCheck check_relations(const KParams& p) {
  RelationCheck r;
  auto fail = [&](const std::string& what) {
    ++r.failures;
    if (r.first_failure.empty()) r.first_failure = what;
  };
  auto live = [&](int level, std::size_t i) { return !(level == 0 && p.quotient_mask && *p.quotient_mask == i); };

  for (int j1 = 0; j1 < 3; ++j1)
    for (std::size_t l1 = 0; l1 < p.n[static_cast<std::size_t>(j1)]; ++l1) {
      if (!live(j1, l1)) continue;
      const auto g = k_generator(j1, l1, p);
      ++r.checked;
      if (!k_mul(g, g, p).is_identity()) fail(gen_name(j1, l1) + "^2 != e");
      for (int j2 = 0; j2 < 3; ++j2)
        for (std::size_t l2 = 0; l2 < p.n[static_cast<std::size_t>(j2)]; ++l2) {
          if (!live(j2, l2) || (j1 == j2 && l1 == l2)) continue;
          const auto c = k_commutator(g, k_generator(j2, l2, p), p);
          KElement expected = k_identity(p);
          if (j1 == j2 && j1 > 0) expected.v[static_cast<std::size_t>(j1 - 1)].set(pair_rank(std::min(l1, l2), std::max(l1, l2)));
          expected = apply_mask(expected, p);
          ++r.checked;
          if (!(c == expected)) fail("[" + gen_name(j1, l1) + "," + gen_name(j2, l2) + "] = " + describe(c));
        }
    }
  return r;
}

AssociativityCheck check_associativity(const KParams& p, std::size_t samples, std::uint64_t seed, double density) {
  AssociativityCheck r;
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < samples; ++t) {
    const auto a = random_k_element(rng, p, density);
    const auto b = random_k_element(rng, p, density);
    const auto c = random_k_element(rng, p, density);
    ++r.samples;
    const auto left = k_mul(k_mul(a, b, p), c, p);
    const auto right = k_mul(a, k_mul(b, c, p), p);
    if (left == right) continue;
    ++r.failures;
    if (r.first_failure.empty()) {
      std::string where;
      for (int j = 2; j >= 0 && where.empty(); --j) {
        const auto diff = (left.v[static_cast<std::size_t>(j)] ^ right.v[static_cast<std::size_t>(j)]).set_bits();
        if (!diff.empty())
          where = std::to_string(diff.size()) + " level-" + std::to_string(j) + " bits, first " + gen_name(j, diff.front());
      }
      r.first_failure = "sample " + std::to_string(t) + ": (ab)c and a(bc) differ in " + where;
      if (p.total_bits() <= 64) r.first_failure += " (a=" + describe(a) + " b=" + describe(b) + " c=" + describe(c) + ")";
    }
  }
  return r;
}

std::string fingerprint(const KParams& p) {
  const std::string text = "m=" + std::to_string(p.m) + ";n=" + std::to_string(p.n[0]) + "," + std::to_string(p.n[1]) + "," +
                           std::to_string(p.n[2]) + ";mask=" + (p.quotient_mask ? std::to_string(*p.quotient_mask) : "none") +
                           ";variant=" + to_string(p.variant);
  // FNV-1a, 64 bit.
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---------------------------------------------------------------------------

bool in_S_star(const SPair& s) {
  if (s.u1 > 7 || s.u2 > 7) return false;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      if (s.in_first(a) && s.in_second(b) && !(a < b)) return false;
  return !(s == SPair::of({0}, {1, 2}));
}

std::vector<SPair> enumerate_S_star() {
  std::vector<SPair> out;
  for (std::uint8_t u1 = 0; u1 < 8; ++u1)
    for (std::uint8_t u2 = 0; u2 < 8; ++u2)
      if (SPair s{u1, u2}; in_S_star(s)) out.push_back(s);
  return out;
}

PartialIso pi_s_unchecked(const SPair& s, const KParams& p) {
  if (p.m < 5) throw std::invalid_argument("pi_s: needs m >= 5");
  const auto m = static_cast<std::size_t>(p.m);
  PartialIso pi;
  for (std::size_t l = 0; l < 3; ++l) {
    if (s.in_first(static_cast<int>(l))) pi.map.emplace_back(m * l + 0, m * l + 2);
    if (s.in_second(static_cast<int>(l))) {
      pi.map.emplace_back(m * l + 1, m * l + 3);
      pi.map.emplace_back(m * l + 4, m * l + 4);
    }
  }
  return pi;
}

PartialIso pi_s(const SPair& s, const KParams& p) {
  if (!in_S_star(s)) throw std::invalid_argument("pi_s: " + to_string(s) + " is not in S_*");
  return pi_s_unchecked(s, p);
}

InducedRelabel induce(const PartialIso& pi, const KParams& p) {
  InducedRelabel r;
  for (int j = 0; j < 3; ++j) {
    r.forward[j].assign(p.n[j], -1);
    r.backward[j].assign(p.n[j], -1);
  }
  auto put = [&r](int level, std::size_t from, std::size_t to) {
    auto& f = r.forward[level][from];
    auto& b = r.backward[level][to];
    if ((f != -1 && f != static_cast<std::int64_t>(to)) || (b != -1 && b != static_cast<std::int64_t>(from))) r.injective = false;
    f = static_cast<std::int64_t>(to);
    b = static_cast<std::int64_t>(from);
  };

  std::vector<std::pair<std::size_t, std::size_t>> level2;
  for (const auto& [from, to] : pi.map) {
    if (from >= p.n[2] || to >= p.n[2]) throw std::out_of_range("induce: generator index out of range");
    put(2, from, to);
    level2.emplace_back(from, to);
  }
  std::vector<std::pair<std::size_t, std::size_t>> level1;
  for (std::size_t i = 0; i < level2.size(); ++i)
    for (std::size_t k = i + 1; k < level2.size(); ++k) {
      const auto from = pair_rank(level2[i].first, level2[k].first);
      const auto to = pair_rank(level2[i].second, level2[k].second);
      put(1, from, to);
      level1.emplace_back(from, to);
    }
  for (std::size_t i = 0; i < level1.size(); ++i)
    for (std::size_t k = i + 1; k < level1.size(); ++k)
      put(0, pair_rank(level1[i].first, level1[k].first), pair_rank(level1[i].second, level1[k].second));
  return r;
}

namespace {

std::optional<KElement> relabel_with(const KElement& x, const std::array<std::vector<std::int64_t>, 3>& table, const KParams& p) {
  KElement out = k_identity(p);
  for (int j = 0; j < 3; ++j) {
    bool ok = true;
    x.v[j].for_each_set([&](std::size_t i) {
      const auto t = table[j][i];
      if (t < 0)
        ok = false;
      else
        out.v[j].set(static_cast<std::size_t>(t));
    });
    if (!ok) return std::nullopt;
  }
  return apply_mask(std::move(out), p);
}

}  // namespace

std::optional<KElement> relabel(const KElement& x, const InducedRelabel& r, const KParams& p) {
  return relabel_with(x, r.forward, p);
}

std::optional<KElement> relabel_inverse(const KElement& x, const InducedRelabel& r, const KParams& p) {
  return relabel_with(x, r.backward, p);
}

PartialIsoCheck verify_partial_iso(const PartialIso& pi, const KParams& p, std::size_t samples, std::uint64_t seed) {
  PartialIsoCheck out;
  const auto r = induce(pi, p);
  out.injective = r.injective;
  if (!r.injective) {
    out.detail = "induced relabeling is not injective";
    return out;
  }

  out.mask_respected = true;
  if (p.quotient_mask) {
    const auto star = static_cast<std::int64_t>(*p.quotient_mask);
    const auto fwd = r.forward[0][*p.quotient_mask];
    const auto bwd = r.backward[0][*p.quotient_mask];
    out.mask_respected = (fwd == -1 && bwd == -1) || (fwd == star && bwd == star);
    if (!out.mask_respected) {
      out.detail = "quotient index " + std::to_string(star) + " hit on one side only (forward " + std::to_string(fwd) +
                   ", backward " + std::to_string(bwd) + ")";
    }
  }

  if (!pi.map.empty()) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, pi.map.size() - 1);
    std::uniform_int_distribution<int> length(1, 16);
    for (std::size_t t = 0; t < samples; ++t) {
      KElement x = k_identity(p);
      KElement y = k_identity(p);
      const int len = length(rng);
      for (int i = 0; i < len; ++i) {
        const auto& [from, to] = pi.map[pick(rng)];
        x = k_mul(x, k_generator(2, from, p), p);
        y = k_mul(y, k_generator(2, to, p), p);
      }
      ++out.hom_samples;
      const auto image = relabel(x, r, p);
      if (!image || !(*image == y)) {
        if (out.hom_failures == 0 && out.detail.empty()) out.detail = "homomorphism check failed on sample " + std::to_string(t);
        ++out.hom_failures;
      }
    }
  }

  out.pass = out.injective && out.mask_respected && out.hom_failures == 0;
  return out;
}

// ---------------------------------------------------------------------------

ToyGroup::ToyGroup(KParams p) : p_(std::move(p)) {
  if (p_.total_bits() > 24) throw std::invalid_argument("ToyGroup: instance too large to materialize");
  std::vector<KElement> gens;
  for (int j = 0; j < 3; ++j)
    for (std::size_t i = 0; i < p_.n[j]; ++i)
      if (!(j == 0 && p_.quotient_mask == i)) gens.push_back(k_generator(j, i, p_));

  std::unordered_map<KElement, std::size_t, KElementHash> seen;
  std::vector<KElement> found{k_identity(p_)};
  seen.emplace(found.front(), 0);
  for (std::size_t head = 0; head < found.size(); ++head)
    for (const auto& g : gens) {
      auto next = k_mul(found[head], g, p_);
      if (seen.emplace(next, found.size()).second) found.push_back(std::move(next));
    }

  auto key = [](const KElement& e) {
    std::uint64_t k = 0;
    int shift = 0;
    for (int j = 2; j >= 0; --j) {
      for (std::size_t i = 0; i < e.v[j].size(); ++i)
        if (e.v[j].test(i)) k |= std::uint64_t{1} << (shift + static_cast<int>(i));
      shift += static_cast<int>(e.v[j].size());
    }
    return k;
  };
  std::sort(found.begin(), found.end(), [&](const KElement& a, const KElement& b) { return key(a) < key(b); });
  elements_ = std::move(found);
  for (std::size_t i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i], i);
}

std::size_t ToyGroup::index_of(const KElement& x) const {
  auto it = index_.find(x);
  if (it == index_.end()) throw Error("ToyGroup: element outside the carrier");
  return it->second;
}

Permutation ToyGroup::right_action(const KElement& x) const {
  Permutation perm(elements_.size());
  for (std::size_t w = 0; w < elements_.size(); ++w)
    perm[w] = static_cast<std::uint32_t>(index_of(k_mul(elements_[w], x, p_)));
  return perm;
}

std::vector<std::size_t> ToyGroup::closure(const std::vector<KElement>& gens) const {
  std::vector<char> in(elements_.size(), 0);
  std::vector<std::size_t> found{index_of(identity())};
  in[found.front()] = 1;
  for (std::size_t head = 0; head < found.size(); ++head)
    for (const auto& g : gens) {
      const auto next = index_of(k_mul(elements_[found[head]], g, p_));
      if (!in[next]) {
        in[next] = 1;
        found.push_back(next);
      }
    }
  std::sort(found.begin(), found.end());
  return found;
}

ToyConjugator toy_conjugator(const ToyGroup& group, const PartialIso& pi) {
  const auto& p = group.params();
  const auto r = induce(pi, p);
  if (!r.injective) throw Error("toy_conjugator: induced relabeling is not injective");

  std::vector<KElement> dom_gens, ran_gens;
  for (const auto& [from, to] : pi.map) {
    dom_gens.push_back(k_generator(2, from, p));
    ran_gens.push_back(k_generator(2, to, p));
  }
  const auto dom = group.closure(dom_gens);
  const auto ran = group.closure(ran_gens);
  if (dom.size() != ran.size())
    throw Error("toy_conjugator: domain and range subgroups have different orders (" + std::to_string(dom.size()) + " vs " +
                std::to_string(ran.size()) + ")");

  std::vector<Permutation> rho, rho_image;
  for (auto d : dom) {
    const auto image = relabel(group.elements()[d], r, p);
    if (!image) throw Error("toy_conjugator: domain element outside the induced relabeling");
    rho.push_back(group.right_action(group.elements()[d]));
    rho_image.push_back(group.right_action(*image));
  }

  // Orbit by orbit: send the smallest unassigned point w0 to a free target t
  // and propagate z(w x) = z(w) pi(x); on a clash undo and try the next t.
  const std::size_t n = group.order();
  constexpr std::uint32_t kUnset = UINT32_MAX;
  Permutation z(n, kUnset);
  std::vector<char> used(n, 0);

  auto propagate = [&](std::uint32_t w0, std::uint32_t t, std::vector<std::uint32_t>& touched) {
    z[w0] = t;
    used[t] = 1;
    touched.push_back(w0);
    std::deque<std::uint32_t> queue{w0};
    while (!queue.empty()) {
      const auto w = queue.front();
      queue.pop_front();
      for (std::size_t x = 0; x < rho.size(); ++x) {
        const auto src = rho[x][w];
        const auto dst = rho_image[x][z[w]];
        if (z[src] == kUnset) {
          if (used[dst]) return false;
          z[src] = dst;
          used[dst] = 1;
          touched.push_back(src);
          queue.push_back(src);
        } else if (z[src] != dst) {
          return false;
        }
      }
    }
    return true;
  };

  for (std::uint32_t w0 = 0; w0 < n; ++w0) {
    if (z[w0] != kUnset) continue;
    std::vector<std::uint32_t> order;
    if (!used[w0]) order.push_back(w0);
    for (std::uint32_t t = 0; t < n; ++t)
      if (!used[t] && t != w0) order.push_back(t);
    bool placed = false;
    for (auto t : order) {
      std::vector<std::uint32_t> touched;
      if (propagate(w0, t, touched)) {
        placed = true;
        break;
      }
      for (auto w : touched) {
        used[z[w]] = 0;
        z[w] = kUnset;
      }
    }
    if (!placed) throw Error("toy_conjugator: no permutation intertwines the domain and range actions");
  }

  ToyConjugator out;
  out.domain_order = dom.size();
  for (std::size_t x = 0; x < rho.size(); ++x)
    for (std::size_t w = 0; w < n; ++w) {
      if (z[rho[x][w]] != rho_image[x][z[w]]) throw Error("toy_conjugator: pointwise verification failed");
      ++out.checked_pairs;
    }
  out.z = std::move(z);
  return out;
}

}  // namespace olive
