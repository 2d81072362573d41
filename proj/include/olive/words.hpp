#pragma once

#include <array>
#include <compare>
#include <concepts>
#include <cstdint>
#include <map>
#include <optional>
#include <ranges>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "olive/spair.hpp"

namespace olive {

// ---------------------------------------------------------------------------
// Generators and words
// ---------------------------------------------------------------------------

enum class GenSort : std::uint8_t { Var, XGen, YGen, ZConj, Opaque };

/// A typed atom of the free group. Equality and ordering are structural.
///
///   Var(name)      formula / word variables ("x", "y5", ...)
///   XGen(α, k)     x_{α,k}, k < 6
///   YGen(j, ℓ)     y_{j,ℓ}, j ≤ 2
///   ZConj(s)       formal conjugator z_s
///   Opaque(id)     anything else
struct Generator {
  GenSort sort = GenSort::Var;
  int i = 0;
  int j = 0;
  std::string name;

  static Generator var(std::string name);
  static Generator x(int alpha, int k);
  static Generator y(int level, int index);
  static Generator conj(SPair s);
  static Generator opaque(int id);

  friend auto operator<=>(const Generator&, const Generator&) = default;
  friend bool operator==(const Generator&, const Generator&) = default;
};

struct Letter {
  Generator gen;
  int sign = 1;  // +1 or -1

  friend bool operator==(const Letter&, const Letter&) = default;
};

struct Word {
  std::vector<Letter> letters;

  Word() = default;
  explicit Word(std::vector<Letter> ls) : letters(std::move(ls)) {}
  static Word of(const Generator& g, int sign = 1) { return Word({Letter{g, sign}}); }

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }

  friend bool operator==(const Word&, const Word&) = default;
};

/// Concatenation, no reduction.
Word operator*(Word lhs, const Word& rhs);
Word inverse(const Word& w);

/// Free reduction: the unique word with no adjacent g g^-1 or g^-1 g.
Word reduce(const Word& w);

/// [u,v] = u^-1 v^-1 u v, reduced.
Word commutator(const Word& u, const Word& v);

/// Replaces every generator that has an entry in `images`; others are kept.
Word substitute(const Word& w, const std::map<Generator, Word>& images);

std::set<Generator> generators_of(const Word& w);

std::string to_string(const Generator& g);
std::string to_string(const Word& w);

/// Whitespace-separated identifiers, each with an optional "^-1" suffix.
/// "x.A.K", "y.J.L", "zs.U1.U2" (digits or "_"), and "g.ID" denote the typed
/// sorts; any other identifier is a variable.
Word parse_word(std::string_view text);

// ---------------------------------------------------------------------------
// sigma_* and formulas
// ---------------------------------------------------------------------------

enum class SigmaVariant : std::uint8_t {
  Repaired,      // [[x,y],[x,z]]
  Literal,  // [[x,y],z]
  RawPrinted,    // (x^-1 y^-1 x^-1 y)^-1 z^-1 (x^-1 y^-1 x y) z
};

std::string to_string(SigmaVariant v);
SigmaVariant parse_sigma_variant(std::string_view name);

/// sigma_* over the variables x, y, z.
Word sigma_star(SigmaVariant v = SigmaVariant::Repaired);

/// sigma(a, b, c): substitutes x, y, z and reduces.
Word instantiate(const Word& sigma, const Word& a, const Word& b, const Word& c);

/// Sufficient symbolic certificate that `w` evaluates to the identity in every
/// group whenever `v` does: w with v erased freely reduces to the empty word.
bool verify_vanishing(const Word& w, const Generator& v);

inline constexpr int kTupleWidth = 6;

/// x_k, y_k or z_k as a formula variable ("x3").
Generator tuple_var(char tuple, int k);

enum class Relation : std::uint8_t { Eq, Neq };

struct AtomicFormula {
  Word lhs;
  Word rhs;
  Relation kind = Relation::Eq;
};

/// Conjunction of atomic formulas over x0..x5, y0..y5, z0..z5.
struct Formula {
  std::vector<AtomicFormula> conjuncts;
};

/// Throws std::invalid_argument if a variable outside the three tuples occurs.
void validate(const Formula& f);

/// The three formulas of the group witness, m = 6:
///   phi0(x,y) :  y5^-1 x0 y5 = x2
///   phi1(x,y) :  x5^-1 y1 x5 = y3  and  x5^-1 y4 x5 = y4
///   psi(x,y,z):  sigma(x0,y1,z4) = e  and  sigma(x2,y3,z4) != e
struct OliveFormulas {
  Formula phi0;
  Formula phi1;
  Formula psi;
  Word sigma;
};

OliveFormulas olive_formulas(const Word& sigma);
inline OliveFormulas olive_formulas(SigmaVariant v = SigmaVariant::Repaired) { return olive_formulas(sigma_star(v)); }

/// Adds tuple_var(tuple, k) -> gens[k] for k < 6 to `binding`.
void bind_tuple(std::map<Generator, Word>& binding, char tuple, const std::array<Generator, kTupleWidth>& gens);

// ---------------------------------------------------------------------------
// Evaluation in abstract groups
// ---------------------------------------------------------------------------

template <class G>
concept GroupContext = requires(const G& g, const typename G::Element& a) {
  typename G::Element;
  { g.identity() } -> std::convertible_to<typename G::Element>;
  { g.multiply(a, a) } -> std::convertible_to<typename G::Element>;
  { g.invert(a) } -> std::convertible_to<typename G::Element>;
  { g.equal(a, a) } -> std::convertible_to<bool>;
};

/// A context whose carrier can be listed; searches require it.
template <class G>
concept FiniteGroupContext = GroupContext<G> && requires(const G& g) {
  { g.elements() } -> std::ranges::random_access_range;
};

template <GroupContext G>
using Assignment = std::map<Generator, typename G::Element>;

/// Left-to-right product of the letters' values.
template <GroupContext G>
typename G::Element evaluate(const Word& w, const Assignment<G>& assignment, const G& ctx) {
  auto acc = ctx.identity();
  for (const auto& letter : w.letters) {
    auto it = assignment.find(letter.gen);
    if (it == assignment.end()) throw std::invalid_argument("evaluate: unassigned generator " + to_string(letter.gen));
    acc = ctx.multiply(acc, letter.sign > 0 ? it->second : ctx.invert(it->second));
  }
  return acc;
}

template <GroupContext G>
bool holds(const AtomicFormula& a, const Assignment<G>& assignment, const G& ctx) {
  const bool same = ctx.equal(evaluate(a.lhs, assignment, ctx), evaluate(a.rhs, assignment, ctx));
  return a.kind == Relation::Eq ? same : !same;
}

template <GroupContext G>
bool holds(const Formula& f, const Assignment<G>& assignment, const G& ctx) {
  for (const auto& a : f.conjuncts)
    if (!holds(a, assignment, ctx)) return false;
  return true;
}

/// Exhaustive search for an assignment of the generators of `w` on which it
/// does not evaluate to the identity.
template <FiniteGroupContext G>
std::optional<Assignment<G>> find_nonvanishing_witness(const Word& w, const G& ctx) {
  const auto gens = generators_of(w);
  const std::vector<Generator> vars(gens.begin(), gens.end());
  const auto& carrier = ctx.elements();
  const std::size_t order = std::ranges::size(carrier);
  if (order == 0) return std::nullopt;

  std::vector<std::size_t> odometer(vars.size(), 0);
  Assignment<G> assignment;
  for (;;) {
    for (std::size_t v = 0; v < vars.size(); ++v) assignment.insert_or_assign(vars[v], carrier[odometer[v]]);
    if (!ctx.equal(evaluate(w, assignment, ctx), ctx.identity())) return assignment;
    std::size_t v = 0;
    while (v < vars.size() && ++odometer[v] == order) odometer[v++] = 0;
    if (v == vars.size()) return std::nullopt;
  }
}

/// Truth values of the four formulas of the forbidden configuration.
struct FormulaReport {
  bool phi0_01 = false;  // phi0[a0, a1]
  bool phi1_12 = false;  // phi1[a1, a2]
  bool phi1_13 = false;  // phi1[a1, a3]
  bool psi_023 = false;  // psi[a0, a2, a3]

  bool all() const { return phi0_01 && phi1_12 && phi1_13 && psi_023; }
};

template <GroupContext G>
FormulaReport check_formulas(const G& ctx, std::span<const typename G::Element> a0, std::span<const typename G::Element> a1,
                             std::span<const typename G::Element> a2, std::span<const typename G::Element> a3,
                             const OliveFormulas& formulas) {
  for (auto t : {a0, a1, a2, a3})
    if (t.size() != kTupleWidth) throw std::invalid_argument("check_formulas: tuples must have length 6");

  auto bind = [](std::initializer_list<std::pair<char, std::span<const typename G::Element>>> roles) {
    Assignment<G> asg;
    for (const auto& [name, tuple] : roles)
      for (int k = 0; k < kTupleWidth; ++k) asg.insert_or_assign(tuple_var(name, k), tuple[static_cast<std::size_t>(k)]);
    return asg;
  };

  FormulaReport r;
  r.phi0_01 = holds(formulas.phi0, bind({{'x', a0}, {'y', a1}}), ctx);
  r.phi1_12 = holds(formulas.phi1, bind({{'x', a1}, {'y', a2}}), ctx);
  r.phi1_13 = holds(formulas.phi1, bind({{'x', a1}, {'y', a3}}), ctx);
  r.psi_023 = holds(formulas.psi, bind({{'x', a0}, {'y', a2}, {'z', a3}}), ctx);
  return r;
}

struct ForbiddenSample {
  std::size_t trials = 0;
  std::size_t hypotheses = 0;  // phi0[a0,a1], phi1[a1,a2], phi1[a1,a3] all held
  std::size_t psi_eq = 0;      // additionally sigma(a00, a21, a34) = e
  std::size_t full = 0;        // all four formulas held

  ForbiddenSample& operator+=(const ForbiddenSample& o) {
    trials += o.trials;
    hypotheses += o.hypotheses;
    psi_eq += o.psi_eq;
    full += o.full;
    return *this;
  }
};

/// Random search for the forbidden configuration with the three phi
/// hypotheses planted: with c = a1[5], set a0[2] = c^-1 a0[0] c,
/// a2[3] = c^-1 a2[1] c, a3[3] = c^-1 a3[1] c, and take a2[4], a3[4] from
/// elements found to commute with c. `draw()` returns a random element.
template <GroupContext G, class Draw>
ForbiddenSample sample_forbidden(const G& ctx, Draw&& draw, std::size_t trials, const OliveFormulas& formulas) {
  using E = typename G::Element;
  auto conj = [&](const E& c, const E& g) { return ctx.multiply(ctx.multiply(ctx.invert(c), g), c); };
  auto commuting = [&](const E& c) {
    for (int attempt = 0; attempt < 8; ++attempt) {
      E g = draw();
      if (ctx.equal(ctx.multiply(g, c), ctx.multiply(c, g))) return g;
    }
    return c;
  };

  ForbiddenSample s;
  std::array<std::vector<E>, 4> a;
  for (std::size_t t = 0; t < trials; ++t) {
    for (auto& tuple : a) {
      tuple.clear();
      for (int k = 0; k < kTupleWidth; ++k) tuple.push_back(draw());
    }
    const E c = a[1][5];
    a[0][2] = conj(c, a[0][0]);
    a[2][3] = conj(c, a[2][1]);
    a[3][3] = conj(c, a[3][1]);
    a[2][4] = commuting(c);
    a[3][4] = commuting(c);

    const auto r = check_formulas<G>(ctx, a[0], a[1], a[2], a[3], formulas);
    ++s.trials;
    if (!(r.phi0_01 && r.phi1_12 && r.phi1_13)) continue;
    ++s.hypotheses;
    Assignment<G> first;
    first.insert_or_assign(Generator::var("x"), a[0][0]);
    first.insert_or_assign(Generator::var("y"), a[2][1]);
    first.insert_or_assign(Generator::var("z"), a[3][4]);
    if (ctx.equal(evaluate(formulas.sigma, first, ctx), ctx.identity())) ++s.psi_eq;
    if (r.psi_023) ++s.full;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Symbolic impossibility of the forbidden configuration
// ---------------------------------------------------------------------------

struct ImpossibilityCertificate {
  bool pass = false;
  bool conjugation_is_homomorphism = false;
  std::vector<std::string> rules;  // "x.0.0 -> x.0.2"
  std::string source;              // sigma(a00, a21, a34)
  std::string rewritten;           // image of source after applying the rules
  std::string target;              // sigma(a02, a23, a34)
};

/// Works in the free group on a_{l,k} = XGen(l,k), l < 4, k < 6. Reads the
/// hypothesis equations of phi0[a0,a1], phi1[a1,a2], phi1[a1,a3] as rules
/// g -> h for conjugation by a_{1,5}, checks that conjugation acts
/// letterwise (so it is a homomorphism on words), and passes iff pushing
/// sigma(a00, a21, a34) through the rules yields sigma(a02, a23, a34).
/// Rules whose source generator is in `suppressed` are dropped.
ImpossibilityCertificate impossibility_certificate(const Word& sigma, const std::set<Generator>& suppressed = {});
inline ImpossibilityCertificate impossibility_certificate(SigmaVariant v) { return impossibility_certificate(sigma_star(v)); }

}  // namespace olive
