#include "olive/witness.hpp"

#include <stdexcept>

#include "olive/error.hpp"

namespace olive {

CoordValue pi6(const Triple& t, int beta, int k, const Ladder& f, const KParams& p) {
  if (k < 0 || k >= kTupleWidth) throw std::out_of_range("pi6: component out of range");
  if (k == 5) return FormalConj{s_pair(t, beta, f), 1};
  if (!interval_zero(f, t.a, t.b, t.c)) throw std::invalid_argument("pi6: " + to_string(t) + " is not in J");
  const int members[3] = {t.a, t.b, t.c};
  for (int l = 0; l < 3; ++l)
    if (members[l] == beta) return z_gen(l, k, p);
  return k_identity(p);
}

WitnessFamily build_witness(const Ladder& f, const KParams& p) {
  f.validate();
  if (f.iota != 2) throw std::invalid_argument("build_witness: needs a two-colored ladder");
  if (!p.quotient_mask) throw std::invalid_argument("build_witness: parameters must be quotiented");
  if (p.m < 5) throw std::invalid_argument("build_witness: needs m >= 5");

  WitnessFamily w;
  w.ladder = f;
  w.params = p;
  w.J = J_of(f);
  w.tuples.resize(static_cast<std::size_t>(f.lambda));
  for (int beta = 0; beta < f.lambda; ++beta)
    for (int k = 0; k < kTupleWidth; ++k) {
      auto& g = w.tuples[static_cast<std::size_t>(beta)][static_cast<std::size_t>(k)];
      g.reserve(w.J.size());
      for (const auto& t : w.J) g.push_back(pi6(t, beta, k, f, p));
    }
  return w;
}

// ---------------------------------------------------------------------------

RelativeEvaluator::RelativeEvaluator(const KParams& p) : p_(p) {
  for (const auto& s : enumerate_S_star()) rules_.emplace(s, induce(pi_s(s, p), p));
}

RelativeEvaluator::RelativeEvaluator(const KParams& p, const std::map<SPair, PartialIso>& rules) : p_(p) {
  for (const auto& [s, pi] : rules) rules_.emplace(s, induce(pi, p));
}

std::optional<KElement> RelativeEvaluator::eval(const std::vector<CoordValue>& factors) const {
  std::vector<CoordValue> out;

  auto push_concrete = [&](KElement c) {
    if (c.is_identity()) return;
    if (!out.empty())
      if (auto* back = std::get_if<KElement>(&out.back())) {
        *back = k_mul(*back, c, p_);
        if (back->is_identity()) out.pop_back();
        return;
      }
    out.emplace_back(std::move(c));
  };

  for (const auto& item : factors) {
    if (const auto* c = std::get_if<KElement>(&item)) {
      push_concrete(*c);
      continue;
    }
    const auto& z = std::get<FormalConj>(item);
    if (!out.empty())
      if (const auto* prev = std::get_if<FormalConj>(&out.back()); prev && prev->s == z.s && prev->sign == -z.sign) {
        out.pop_back();
        continue;
      }
    if (out.size() >= 2)
      if (const auto* open = std::get_if<FormalConj>(&out[out.size() - 2]); open && open->s == z.s && open->sign == -z.sign)
        if (auto rule = rules_.find(z.s); rule != rules_.end()) {
          const auto& inner = std::get<KElement>(out.back());
          auto image = open->sign < 0 ? relabel(inner, rule->second, p_) : relabel_inverse(inner, rule->second, p_);
          if (image) {
            out.pop_back();
            out.pop_back();
            push_concrete(std::move(*image));
            continue;
          }
        }
    out.emplace_back(z);
  }

  if (out.empty()) return k_identity(p_);
  if (out.size() == 1)
    if (const auto* c = std::get_if<KElement>(&out.front())) return *c;
  return std::nullopt;
}

std::optional<KElement> RelativeEvaluator::eval(const Word& w, const std::map<Generator, CoordValue>& assignment) const {
  std::vector<CoordValue> factors;
  factors.reserve(w.size());
  for (const auto& letter : w.letters) {
    auto it = assignment.find(letter.gen);
    if (it == assignment.end()) throw std::invalid_argument("eval: unassigned generator " + to_string(letter.gen));
    if (letter.sign > 0) {
      factors.push_back(it->second);
    } else if (const auto* c = std::get_if<KElement>(&it->second)) {
      factors.emplace_back(k_inv(*c, p_));
    } else {
      auto z = std::get<FormalConj>(it->second);
      z.sign = -z.sign;
      factors.emplace_back(z);
    }
  }
  return eval(factors);
}

// ---------------------------------------------------------------------------

namespace {

using Binding = std::map<Generator, CoordValue>;

void bind(Binding& b, char role, const std::array<ProductElement, kTupleWidth>& tuple, std::size_t coord) {
  for (int k = 0; k < kTupleWidth; ++k) b.insert_or_assign(tuple_var(role, k), tuple[static_cast<std::size_t>(k)][coord]);
}

Truth atom_at(const AtomicFormula& atom, const Binding& b, const RelativeEvaluator& ev) {
  const auto lhs = ev.eval(atom.lhs, b);
  const auto rhs = ev.eval(atom.rhs, b);
  if (!lhs || !rhs) return Truth::Undecided;
  const bool same = *lhs == *rhs;
  return (atom.kind == Relation::Eq) == same ? Truth::True : Truth::False;
}

struct Roles {
  const std::array<ProductElement, kTupleWidth>* x = nullptr;
  const std::array<ProductElement, kTupleWidth>* y = nullptr;
  const std::array<ProductElement, kTupleWidth>* z = nullptr;
};

Binding binding_at(const Roles& r, std::size_t coord) {
  Binding b;
  if (r.x) bind(b, 'x', *r.x, coord);
  if (r.y) bind(b, 'y', *r.y, coord);
  if (r.z) bind(b, 'z', *r.z, coord);
  return b;
}

// Truth of a formula in the product: equations coordinatewise, inequations
// at some coordinate.
Truth formula_in_product(const Formula& phi, const Roles& r, std::size_t coords, const RelativeEvaluator& ev) {
  bool undecided = false;
  for (const auto& atom : phi.conjuncts) {
    if (atom.kind == Relation::Eq) {
      for (std::size_t c = 0; c < coords; ++c) {
        const auto t = atom_at(atom, binding_at(r, c), ev);
        if (t == Truth::False) return Truth::False;
        if (t == Truth::Undecided) undecided = true;
      }
    } else {
      bool witnessed = false;
      for (std::size_t c = 0; c < coords && !witnessed; ++c) {
        const auto t = atom_at(atom, binding_at(r, c), ev);
        if (t == Truth::True) witnessed = true;
        if (t == Truth::Undecided) undecided = true;
      }
      if (!witnessed && !undecided) return Truth::False;
      if (!witnessed) undecided = true;
    }
  }
  return undecided ? Truth::Undecided : Truth::True;
}

}  // namespace

ClauseReport verify_clause_b(const WitnessFamily& w, const RelativeEvaluator& ev, const OliveFormulas& formulas) {
  ClauseReport rep;
  const auto& f = w.ladder;
  const std::size_t coords = w.J.size();

  auto record = [&](Truth t, const std::string& what) {
    if (t == Truth::True) return;
    if (t == Truth::False)
      ++rep.failures;
    else
      ++rep.undecided;
    if (rep.first_failure.empty()) rep.first_failure = what + (t == Truth::False ? ": false" : ": undecided");
  };

  for (int beta = 1; beta < f.lambda; ++beta)
    for (int alpha = 0; alpha < beta; ++alpha) {
      const int iota = f.f(beta, alpha);
      const Formula& phi = iota == 0 ? formulas.phi0 : formulas.phi1;
      const Roles r{&w.tuples[static_cast<std::size_t>(alpha)], &w.tuples[static_cast<std::size_t>(beta)], nullptr};
      for (std::size_t c = 0; c < coords; ++c) {
        const auto b = binding_at(r, c);
        for (const auto& atom : phi.conjuncts) {
          ++rep.phi_instances;
          record(atom_at(atom, b, ev), "phi" + std::to_string(iota) + "[" + std::to_string(alpha) + "," + std::to_string(beta) +
                                           "] at " + to_string(w.J[c]));
        }
      }
    }

  for (std::size_t at = 0; at < coords; ++at) {
    const auto& t = w.J[at];
    const Roles r{&w.tuples[static_cast<std::size_t>(t.a)], &w.tuples[static_cast<std::size_t>(t.b)],
                  &w.tuples[static_cast<std::size_t>(t.c)]};
    const std::string name = "psi" + to_string(t);
    for (const auto& atom : formulas.psi.conjuncts) {
      if (atom.kind == Relation::Eq) {
        for (std::size_t c = 0; c < coords; ++c) {
          ++rep.psi_eq_instances;
          record(atom_at(atom, binding_at(r, c), ev), name + " equation at " + to_string(w.J[c]));
        }
      } else {
        ++rep.psi_neq_instances;
        record(atom_at(atom, binding_at(r, at), ev), name + " inequation at " + to_string(t));
      }
    }
  }
  return rep;
}

Word g5_retract(const Ladder& f, const std::set<Generator>& X, const Word& w) {
  auto check = [&](const Generator& g) {
    if (g.sort != GenSort::XGen || g.j >= 5 || g.i >= f.lambda)
      throw std::invalid_argument("g5_retract: " + to_string(g) + " is not a generator x_{a,k}, a < lambda, k < 5");
  };
  for (const auto& g : X) check(g);
  for (const auto& letter : w.letters) check(letter.gen);

  std::optional<Triple> hit;
  if (contains_gamma2_triple(std::vector<Generator>(X.begin(), X.end()), J_of(f), &hit))
    throw Error("g5_retract: X contains all generators of the equation for " + to_string(*hit));

  Word image;
  for (const auto& letter : w.letters)
    if (X.contains(letter.gen)) image.letters.push_back(letter);
  return reduce(image);
}

std::vector<Quadruple> forbidden_scan(const WitnessFamily& w, const RelativeEvaluator& ev, const OliveFormulas& formulas) {
  const int lambda = w.ladder.lambda;
  if (lambda > 12) throw std::invalid_argument("forbidden_scan: lambda must be at most 12");
  const std::size_t coords = w.J.size();
  const auto n = static_cast<std::size_t>(lambda);
  auto tuple = [&](int i) { return &w.tuples[static_cast<std::size_t>(i)]; };

  std::vector<char> phi0(n * n), phi1(n * n);
  for (int i = 0; i < lambda; ++i)
    for (int j = 0; j < lambda; ++j) {
      const Roles r{tuple(i), tuple(j), nullptr};
      phi0[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)] =
          formula_in_product(formulas.phi0, r, coords, ev) == Truth::True;
      phi1[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)] =
          formula_in_product(formulas.phi1, r, coords, ev) == Truth::True;
    }

  std::map<std::array<int, 3>, bool> psi;
  auto psi_holds = [&](int a, int b, int c) {
    auto [it, fresh] = psi.try_emplace({a, b, c}, false);
    if (fresh) it->second = formula_in_product(formulas.psi, Roles{tuple(a), tuple(b), tuple(c)}, coords, ev) == Truth::True;
    return it->second;
  };

  std::vector<Quadruple> found;
  for (int i0 = 0; i0 < lambda; ++i0)
    for (int i1 = 0; i1 < lambda; ++i1) {
      if (!phi0[static_cast<std::size_t>(i0) * n + static_cast<std::size_t>(i1)]) continue;
      for (int i2 = 0; i2 < lambda; ++i2) {
        if (!phi1[static_cast<std::size_t>(i1) * n + static_cast<std::size_t>(i2)]) continue;
        for (int i3 = 0; i3 < lambda; ++i3)
          if (phi1[static_cast<std::size_t>(i1) * n + static_cast<std::size_t>(i3)] && psi_holds(i0, i2, i3))
            found.push_back({i0, i1, i2, i3});
      }
    }
  return found;
}

}  // namespace olive
