#include <doctest.h>

#include <random>

#include "olive/error.hpp"
#include "olive/witness.hpp"

using namespace olive;

namespace {

const KParams& k2() {
  static const KParams p = make_K2(KParams::make(6));
  return p;
}

const RelativeEvaluator& evaluator() {
  static const RelativeEvaluator ev(k2());
  return ev;
}

Ladder four() {
  Ladder f = Ladder::zeros(4);
  f.rows[3][2] = 1;
  return f;
}

bool is_concrete(const CoordValue& v, const KElement& e) {
  const auto* c = std::get_if<KElement>(&v);
  return c && *c == e;
}

}  // namespace

TEST_CASE("pi6 case split") {
  const Ladder f = four();
  const Triple t{0, 1, 3};
  CHECK(is_concrete(pi6(t, 2, 2, f, k2()), k_identity(k2())));
  CHECK(is_concrete(pi6(t, 1, 3, f, k2()), z_gen(1, 3, k2())));
  CHECK(is_concrete(pi6(t, 3, 4, f, k2()), z_gen(2, 4, k2())));
  const auto conj = pi6(t, 2, 5, f, k2());
  REQUIRE(std::holds_alternative<FormalConj>(conj));
  CHECK(std::get<FormalConj>(conj).s == s_pair(t, 2, f));
  CHECK_THROWS_AS(pi6({0, 2, 3}, 1, 0, f, k2()), std::invalid_argument);
}

TEST_CASE("build_witness shapes") {
  const auto w2 = build_witness(Ladder::zeros(2), k2());
  CHECK(w2.J.empty());
  CHECK(w2.tuples.size() == 2);
  CHECK(w2.tuples[1][0].empty());
  CHECK(verify_clause_b(w2, evaluator(), olive_formulas()).pass());

  const auto w3 = build_witness(Ladder::zeros(3), k2());
  CHECK(w3.J.size() == 1);
  for (const auto& tuple : w3.tuples)
    for (const auto& g : tuple) CHECK(g.size() == 1);

  std::mt19937_64 rng(5);
  const Ladder f = random_ladder(5, rng);
  const auto w5 = build_witness(f, k2());
  CHECK(w5.J == J_of(f));
  CHECK(w5.tuples[4][5].size() == w5.J.size());
  CHECK_THROWS_AS(build_witness(f, KParams::make(6)), std::invalid_argument);
}

TEST_CASE("relative evaluation rules") {
  const auto& p = k2();
  const SPair s = SPair::of({0, 1}, {2});
  const FormalConj zi{s, -1}, z{s, 1};
  CHECK(evaluator().eval({zi, k_identity(p), z}) == k_identity(p));
  CHECK(evaluator().eval({zi, z_gen(0, 0, p), z}) == z_gen(0, 2, p));
  CHECK(evaluator().eval({z, z_gen(0, 2, p), zi}) == z_gen(0, 0, p));
  CHECK(evaluator().eval({zi, z_gen(2, 4, p), z}) == z_gen(2, 4, p));
  CHECK_FALSE(evaluator().eval({zi, z_gen(2, 0, p), z}).has_value());
  CHECK_FALSE(evaluator().eval({z, FormalConj{SPair{}, 1}}).has_value());
  CHECK(evaluator().eval({z, zi, z_gen(1, 1, p)}) == z_gen(1, 1, p));

  // Nested conjugation by two different pairs.
  const FormalConj ti{SPair::of({0}, {}), -1}, t{SPair::of({0}, {}), 1};
  const auto both = k_mul(z_gen(0, 0, p), z_gen(2, 1, p), p);
  CHECK(evaluator().eval({ti, z, z_gen(0, 2, p), zi, t}) == z_gen(0, 2, p));
  CHECK_FALSE(evaluator().eval({ti, zi, z_gen(0, 0, p), z, t}).has_value());
  CHECK(evaluator().eval({zi, both, z}) == k_mul(z_gen(0, 2, p), z_gen(2, 3, p), p));
}

TEST_CASE("clause (b) holds on every ladder of height at most 4 and on sampled height 5") {
  const auto formulas = olive_formulas();
  for (int lambda = 1; lambda <= 4; ++lambda)
    for (std::uint64_t code = 0; code < ladder_count(lambda); ++code) {
      const auto rep = verify_clause_b(build_witness(ladder_from_code(lambda, code), k2()), evaluator(), formulas);
      CHECK_MESSAGE(rep.pass(), "lambda ", lambda, " code ", code, ": ", rep.first_failure);
    }
  for (std::uint64_t code = 0; code < 1024; code += 37) {
    const auto rep = verify_clause_b(build_witness(ladder_from_code(5, code), k2()), evaluator(), formulas);
    CHECK_MESSAGE(rep.pass(), "code ", code, ": ", rep.first_failure);
    CHECK(rep.undecided == 0);
  }
  const Ladder one{2, 2, {{}, {1}}};
  const auto rep = verify_clause_b(build_witness(one, k2()), evaluator(), formulas);
  CHECK(rep.pass());
  CHECK(rep.phi_instances == 0);
}

TEST_CASE("mutated families are rejected") {
  const auto formulas = olive_formulas();
  auto w = build_witness(Ladder::zeros(4), k2());
  for (int beta = 0; beta < 4; ++beta) std::swap(w.tuples[static_cast<std::size_t>(beta)][3], w.tuples[static_cast<std::size_t>(beta)][4]);
  const auto rep = verify_clause_b(w, evaluator(), formulas);
  CHECK_FALSE(rep.pass());
  CHECK_FALSE(rep.first_failure.empty());
}

TEST_CASE("g5 retraction certificates") {
  const Ladder f = four();
  CHECK(g5_retract(f, {}, Word{}).empty());

  // (0,2,3) is not in J since f_3(2) = 1.
  std::set<Generator> X;
  for (int xi : {0, 2, 3})
    for (int l = 0; l < 5; ++l) X.insert(Generator::x(xi, l));
  const Word w1 = instantiate(sigma_star(), Word::of(Generator::x(0, 0)), Word::of(Generator::x(2, 1)), Word::of(Generator::x(3, 4)));
  CHECK_FALSE(g5_retract(f, X, w1).empty());

  std::set<Generator> upper;
  for (int xi = 0; xi < 4; ++xi)
    for (int l = 1; l < 5; ++l) upper.insert(Generator::x(xi, l));
  const Word w2 = instantiate(sigma_star(), Word::of(Generator::x(0, 2)), Word::of(Generator::x(1, 3)), Word::of(Generator::x(3, 4)));
  CHECK_FALSE(g5_retract(f, upper, w2).empty());

  std::set<Generator> all;
  for (int xi = 0; xi < 4; ++xi)
    for (int l = 0; l < 5; ++l) all.insert(Generator::x(xi, l));
  CHECK_THROWS_AS(g5_retract(f, all, Word{}), Error);
  CHECK_THROWS_AS(g5_retract(f, {Generator::x(0, 5)}, Word{}), std::invalid_argument);
}

TEST_CASE("sigma(x_a0, x_b1, x_c4) is certified nontrivial outside J") {
  for (int lambda = 3; lambda <= 6; ++lambda)
    for (std::uint64_t code = 0; code < ladder_count(lambda); ++code) {
      const Ladder f = ladder_from_code(lambda, code);
      for (int a = 0; a < lambda; ++a)
        for (int b = a + 1; b < lambda; ++b)
          for (int c = b + 1; c < lambda; ++c) {
            if (interval_zero(f, a, b, c)) continue;
            std::set<Generator> X;
            for (int xi : {a, b, c})
              for (int l = 0; l < 5; ++l) X.insert(Generator::x(xi, l));
            const Word w = instantiate(sigma_star(), Word::of(Generator::x(a, 0)), Word::of(Generator::x(b, 1)), Word::of(Generator::x(c, 4)));
            REQUIRE_FALSE(g5_retract(f, X, w).empty());
          }
    }
}

TEST_CASE("no forbidden configuration in built families") {
  const auto formulas = olive_formulas();
  for (std::uint64_t code = 0; code < 64; code += 5)
    CHECK(forbidden_scan(build_witness(ladder_from_code(4, code), k2()), evaluator(), formulas).empty());
  CHECK_THROWS_AS(forbidden_scan(build_witness(Ladder::zeros(13), k2()), evaluator(), formulas), std::invalid_argument);
}

TEST_CASE("relative evaluation agrees with materialized conjugators on the toy") {
  const KParams toy = make_K2(toy_params());
  const ToyGroup group(toy);
  const PartialIso pi{{{0, 1}, {1, 2}}};
  const auto conj = toy_conjugator(group, pi);
  const SPair label = SPair::of({0}, {});
  const RelativeEvaluator ev(toy, {{label, pi}});

  Permutation zinv(conj.z.size());
  for (std::size_t i = 0; i < conj.z.size(); ++i) zinv[conj.z[i]] = static_cast<std::uint32_t>(i);
  // Point map of a*b is "a then b".
  auto compose = [](const Permutation& a, const Permutation& b) {
    Permutation out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = b[a[i]];
    return out;
  };

  const auto dom = group.closure({k_generator(2, 0, toy), k_generator(2, 1, toy)});
  const auto ran = group.closure({k_generator(2, 1, toy), k_generator(2, 2, toy)});
  std::size_t decided = 0;
  for (auto d : dom) {
    const auto& c = group.elements()[d];
    const auto r = ev.eval({FormalConj{label, -1}, c, FormalConj{label, 1}});
    REQUIRE(r.has_value());
    CHECK(compose(compose(zinv, group.right_action(c)), conj.z) == group.right_action(*r));
    ++decided;
  }
  for (auto d : ran) {
    const auto& c = group.elements()[d];
    const auto r = ev.eval({FormalConj{label, 1}, c, FormalConj{label, -1}});
    REQUIRE(r.has_value());
    CHECK(compose(compose(conj.z, group.right_action(c)), zinv) == group.right_action(*r));
  }
  CHECK(decided == dom.size());
}
