#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "olive/error.hpp"
#include "olive/relational.hpp"

using namespace olive;

namespace {

// Tries every injective map a -> b.
bool embeds_bruteforce(const FinStructure& a, const FinStructure& b) {
  if (a.size > b.size) return false;
  std::vector<int> pool(static_cast<std::size_t>(b.size));
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<char> chosen(static_cast<std::size_t>(b.size), 0);
  std::fill(chosen.begin(), chosen.begin() + a.size, 1);
  // Every a.size-subset of b, in every order.
  std::sort(chosen.begin(), chosen.end(), std::greater<>());
  do {
    std::vector<int> subset;
    for (int y = 0; y < b.size; ++y)
      if (chosen[static_cast<std::size_t>(y)]) subset.push_back(y);
    do {
      if (b.induced(subset) == a) return true;
    } while (std::next_permutation(subset.begin(), subset.end()));
  } while (std::prev_permutation(chosen.begin(), chosen.end()));
  return false;
}

bool is_embedding(const std::vector<int>& h, const FinStructure& a, const FinStructure& b) {
  std::vector<int> sorted = h;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  return b.induced(h) == a;
}

FinStructure random_substructure(const FinStructure& b, int size, std::mt19937_64& rng) {
  std::vector<int> idx(static_cast<std::size_t>(b.size));
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(static_cast<std::size_t>(size));
  return b.induced(idx);
}

FinStructure point(const OliveSignature& sig) {
  FinStructure s;
  s.sig = sig;
  s.size = 1;
  return s;
}

}  // namespace

TEST_CASE("signature validation") {
  CHECK_NOTHROW(default_signature().validate_strict());
  CHECK_NOTHROW((OliveSignature{{0, 1, 0}, {2, 1}}).validate());
  CHECK_THROWS_AS((OliveSignature{{0, 1, 0}, {2, 1}}).validate_strict(), std::invalid_argument);
  CHECK_THROWS_AS((OliveSignature{{0, 0, 1, 1}, {2, 2}}).validate(), std::invalid_argument);
  CHECK_THROWS_AS((OliveSignature{{1, 0, 0, 1}, {2, 2}}).validate(), std::invalid_argument);
  CHECK_THROWS_AS((OliveSignature{{0, 1, 0, 1}, {3, 2}}).validate(), std::invalid_argument);
  CHECK_THROWS_AS((OliveSignature{{0, 1, 0}, {1, 1}}).validate(), std::invalid_argument);
}

TEST_CASE("build_Nstar") {
  const auto n = build_Nstar(default_signature());
  CHECK(n.size == 5);
  CHECK(n.P().size() == 10);
  CHECK(n.Q(0) == std::set<Tuple>{{0, 2, 3}, {0, 2, 4}});
  CHECK(n.Q(1) == std::set<Tuple>{{1, 3, 4}});

  const auto m = build_Nstar(OliveSignature{{0, 1, 0}, {2, 1}});
  CHECK(m.Q(0) == std::set<Tuple>{{0, 2, 3}});
  CHECK(m.Q(1).empty());
  CHECK(m.P().contains({0, 1}));
  CHECK_NOTHROW(m.validate());
}

TEST_CASE("embeds basics") {
  const auto n = build_Nstar(default_signature());
  const auto id = embeds(n, n);
  REQUIRE(id.has_value());
  CHECK(is_embedding(*id, n, n));
  CHECK_FALSE(embeds(n, point(default_signature())).has_value());
  CHECK_THROWS_AS(embeds(n, build_Nstar(OliveSignature{{0, 1, 0}, {2, 1}})), std::invalid_argument);

  // Induced: adding a relation to the target breaks the identity copy.
  FinStructure extra = n;
  extra.Q(1).insert({0, 1, 2});
  CHECK_FALSE(embeds(n, extra).has_value());
}

TEST_CASE("embeds agrees with the all-injections oracle") {
  std::mt19937_64 rng(99);
  const auto sig = default_signature();
  int positive = 0;
  for (int t = 0; t < 300; ++t) {
    const int nb = 1 + static_cast<int>(rng() % 6);
    const auto b = random_structure(sig, nb, 0.3 + 0.1 * (t % 5), rng);
    const int na = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(nb));
    FinStructure a = random_substructure(b, na, rng);
    if (t % 3 == 0) a = random_structure(sig, na, 0.3, rng);
    if (t % 7 == 0 && !a.P().empty()) a.P().erase(a.P().begin());

    const auto h = embeds(a, b);
    CHECK(h.has_value() == embeds_bruteforce(a, b));
    if (h) {
      CHECK(is_embedding(*h, a, b));
      ++positive;
    }
  }
  CHECK(positive > 50);
}

TEST_CASE("embedding chains compose") {
  std::mt19937_64 rng(7);
  const auto sig = default_signature();
  for (int t = 0; t < 100; ++t) {
    const auto c = random_structure(sig, 7, 0.4, rng);
    const auto b = random_substructure(c, 5, rng);
    const auto a = random_substructure(b, 3, rng);
    const auto ab = embeds(a, b);
    const auto bc = embeds(b, c);
    REQUIRE(ab.has_value());
    REQUIRE(bc.has_value());
    std::vector<int> composed;
    for (int x : *ab) composed.push_back((*bc)[static_cast<std::size_t>(x)]);
    CHECK(is_embedding(composed, a, c));
    CHECK(embeds(a, c).has_value());
  }
}

TEST_CASE("model_from_ladder") {
  const auto sig = default_signature();
  const auto two = model_from_ladder(Ladder::zeros(2), sig);
  CHECK(two.P() == std::set<Tuple>{{0, 1}});
  CHECK(two.Q(0).empty());
  CHECK(two.Q(1).empty());

  const auto zero = model_from_ladder(Ladder::zeros(3), sig);
  CHECK(zero.Q(0) == std::set<Tuple>{{0, 1, 2}});
  CHECK(zero.Q(1).empty());

  const Ladder ones{3, 2, {{}, {0}, {1, 1}}};
  const auto one = model_from_ladder(ones, sig);
  CHECK(one.Q(1) == std::set<Tuple>{{0, 1, 2}});
  CHECK(one.Q(0).empty());

  // f_2 = (0,1) is not constant on [0,1].
  const auto mixed = model_from_ladder(Ladder{3, 2, {{}, {0}, {0, 1}}}, sig);
  CHECK(mixed.Q(0).empty());
  CHECK(mixed.Q(1).empty());
}

TEST_CASE("ladder models omit N*") {
  const auto sig = default_signature();
  const auto nstar = build_Nstar(sig);
  CHECK(embeds(nstar, nstar).has_value());

  const auto rep = check_class_olive(sig, 5);
  CHECK(rep.ladders == 1024);
  CHECK_MESSAGE(rep.pass(), rep.first_failure);
  CHECK(check_class_olive(sig, 2).pass());
  CHECK_THROWS_AS(check_class_olive(OliveSignature{{0, 0, 1, 1}, {2, 2}}, 3), std::invalid_argument);
  CHECK_THROWS_AS(check_class_olive(sig, 7), std::invalid_argument);

  std::mt19937_64 rng(3);
  for (int t = 0; t < 30; ++t) {
    const Ladder f = random_ladder(7 + t % 4, rng);
    CHECK(check_ladder_model(f, sig, nstar).empty());
  }

  // A ladder model with an N* copy planted on top.
  FinStructure planted = model_from_ladder(Ladder::zeros(6), sig);
  planted.Q(0) = nstar.Q(0);
  planted.Q(1) = nstar.Q(1);
  CHECK(embeds(nstar, planted).has_value());
}

TEST_CASE("disjoint_union") {
  const auto sig = default_signature();
  const auto pt = point(sig);
  const auto two = disjoint_union(pt, pt, {});
  CHECK(two.size == 2);
  CHECK(two.P().empty());

  std::mt19937_64 rng(11);
  const auto nstar = build_Nstar(sig);
  for (int t = 0; t < 40; ++t) {
    const auto m = model_from_ladder(random_ladder(5, rng), sig);
    std::vector<std::pair<int, int>> all;
    for (int x = 0; x < m.size; ++x) all.emplace_back(x, x);
    CHECK(disjoint_union(m, m, all) == m);

    const auto n = model_from_ladder(random_ladder(3, rng), sig);
    const auto u = disjoint_union(m, n, {});
    CHECK(u.size == 8);
    CHECK_FALSE(embeds(nstar, u).has_value());
  }

  FinStructure e1 = point(sig), e2 = point(sig);
  e1.size = e2.size = 2;
  e1.P().insert({0, 1});
  CHECK_THROWS_AS(disjoint_union(e1, e2, {{0, 0}, {1, 1}}), Error);
}

TEST_CASE("nsop4 amalgam") {
  const auto sig = default_signature();
  std::array<FinStructure, 4> parts;
  for (auto& p : parts) p = point(sig);
  std::array<FinStructure, 4> edges;
  for (std::size_t e = 0; e < 4; ++e) edges[e] = disjoint_union(parts[0], parts[0], {});
  auto rep = nsop4_amalgam(parts, edges);
  CHECK(rep.pass);
  CHECK(rep.result.size == 4);

  // Ordered edges, each edge model a ladder model on two points.
  for (std::size_t e = 0; e < 4; ++e) edges[e].P().insert({0, 1});
  rep = nsop4_amalgam(parts, edges);
  CHECK(rep.pass);
  CHECK(rep.result.P() == std::set<Tuple>{{0, 1}, {1, 2}, {2, 3}, {0, 3}});

  // An edge model containing N* violates the precondition.
  const auto nstar = build_Nstar(sig);
  std::array<FinStructure, 4> big_parts = parts;
  big_parts[0] = nstar.induced({0, 1});
  big_parts[1] = nstar.induced({2, 3, 4});
  edges[0] = nstar;
  rep = nsop4_amalgam(big_parts, edges);
  CHECK_FALSE(rep.pass);
  CHECK_FALSE(rep.precondition_failures.empty());
}
