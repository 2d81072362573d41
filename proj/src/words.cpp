#include "olive/words.hpp"

#include <cctype>
#include <charconv>
#include <random>
#include <sstream>

namespace olive {

std::string to_string(const SPair& s) {
  auto set = [](std::uint8_t mask) {
    std::string out = "{";
    bool first = true;
    for (int l = 0; l < 3; ++l) {
      if (!((mask >> l) & 1u)) continue;
      if (!first) out += ',';
      out += static_cast<char>('0' + l);
      first = false;
    }
    return out + "}";
  };
  return "(" + set(s.u1) + "," + set(s.u2) + ")";
}

// --- generators ------------------------------------------------------------

namespace {

bool valid_var_name(std::string_view name) {
  if (name.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_')) return false;
  for (char c : name)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

}  // namespace

Generator Generator::var(std::string name) {
  if (!valid_var_name(name)) throw std::invalid_argument("Generator::var: bad name '" + name + "'");
  Generator g;
  g.sort = GenSort::Var;
  g.name = std::move(name);
  return g;
}

Generator Generator::x(int alpha, int k) {
  if (alpha < 0 || k < 0 || k >= kTupleWidth) throw std::out_of_range("Generator::x: index out of range");
  return Generator{GenSort::XGen, alpha, k, {}};
}

Generator Generator::y(int level, int index) {
  if (level < 0 || level > 2 || index < 0) throw std::out_of_range("Generator::y: index out of range");
  return Generator{GenSort::YGen, level, index, {}};
}

Generator Generator::conj(SPair s) {
  if (s.u1 > 7 || s.u2 > 7) throw std::out_of_range("Generator::conj: subsets of {0,1,2} only");
  return Generator{GenSort::ZConj, s.u1, s.u2, {}};
}

Generator Generator::opaque(int id) {
  if (id < 0) throw std::out_of_range("Generator::opaque: negative id");
  return Generator{GenSort::Opaque, id, 0, {}};
}

std::string to_string(const Generator& g) {
  auto digits = [](int mask) {
    std::string out;
    for (int l = 0; l < 3; ++l)
      if ((mask >> l) & 1) out += static_cast<char>('0' + l);
    return out.empty() ? std::string("_") : out;
  };
  switch (g.sort) {
    case GenSort::Var:
      return g.name;
    case GenSort::XGen:
      return "x." + std::to_string(g.i) + "." + std::to_string(g.j);
    case GenSort::YGen:
      return "y." + std::to_string(g.i) + "." + std::to_string(g.j);
    case GenSort::ZConj:
      return "zs." + digits(g.i) + "." + digits(g.j);
    case GenSort::Opaque:
      return "g." + std::to_string(g.i);
  }
  return {};
}

std::string to_string(const Word& w) {
  std::string out;
  for (const auto& l : w.letters) {
    if (!out.empty()) out += ' ';
    out += to_string(l.gen);
    if (l.sign < 0) out += "^-1";
  }
  return out;
}

namespace {

int parse_int(std::string_view s, std::string_view token) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw std::invalid_argument("parse_word: bad index in '" + std::string(token) + "'");
  return v;
}

int parse_mask(std::string_view s, std::string_view token) {
  if (s == "_") return 0;
  int mask = 0;
  for (char c : s) {
    if (c < '0' || c > '2') throw std::invalid_argument("parse_word: bad subset in '" + std::string(token) + "'");
    mask |= 1 << (c - '0');
  }
  return mask;
}

Generator parse_generator(std::string_view token) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto dot = token.find('.', start);
    parts.push_back(token.substr(start, dot - start));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  if (parts.size() == 1) return Generator::var(std::string(token));

  const auto head = parts[0];
  if (head == "x" && parts.size() == 3) return Generator::x(parse_int(parts[1], token), parse_int(parts[2], token));
  if (head == "y" && parts.size() == 3) return Generator::y(parse_int(parts[1], token), parse_int(parts[2], token));
  if (head == "zs" && parts.size() == 3) {
    SPair s;
    s.u1 = static_cast<std::uint8_t>(parse_mask(parts[1], token));
    s.u2 = static_cast<std::uint8_t>(parse_mask(parts[2], token));
    return Generator::conj(s);
  }
  if (head == "g" && parts.size() == 2) return Generator::opaque(parse_int(parts[1], token));
  throw std::invalid_argument("parse_word: unknown generator '" + std::string(token) + "'");
}

}  // namespace

Word parse_word(std::string_view text) {
  Word w;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == text.size()) break;
    std::size_t end = pos;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
    std::string_view token = text.substr(pos, end - pos);
    int sign = 1;
    if (const auto caret = token.find('^'); caret != std::string_view::npos) {
      if (token.substr(caret) != "^-1") throw std::invalid_argument("parse_word: only ^-1 exponents are allowed");
      token = token.substr(0, caret);
      sign = -1;
    }
    w.letters.push_back({parse_generator(token), sign});
    pos = end;
  }
  return w;
}

// --- free group ------------------------------------------------------------

Word operator*(Word lhs, const Word& rhs) {
  lhs.letters.insert(lhs.letters.end(), rhs.letters.begin(), rhs.letters.end());
  return lhs;
}

Word inverse(const Word& w) {
  Word out;
  out.letters.reserve(w.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) out.letters.push_back({it->gen, -it->sign});
  return out;
}

Word reduce(const Word& w) {
  Word out;
  out.letters.reserve(w.size());
  for (const auto& l : w.letters) {
    if (!out.letters.empty() && out.letters.back().gen == l.gen && out.letters.back().sign == -l.sign)
      out.letters.pop_back();
    else
      out.letters.push_back(l);
  }
  return out;
}

Word commutator(const Word& u, const Word& v) { return reduce(inverse(u) * inverse(v) * u * v); }

Word substitute(const Word& w, const std::map<Generator, Word>& images) {
  Word out;
  for (const auto& l : w.letters) {
    auto it = images.find(l.gen);
    if (it == images.end()) {
      out.letters.push_back(l);
    } else {
      const Word piece = l.sign > 0 ? it->second : inverse(it->second);
      out.letters.insert(out.letters.end(), piece.letters.begin(), piece.letters.end());
    }
  }
  return out;
}

std::set<Generator> generators_of(const Word& w) {
  std::set<Generator> out;
  for (const auto& l : w.letters) out.insert(l.gen);
  return out;
}

// --- sigma_* -----------------------------------------------------------------

std::string to_string(SigmaVariant v) {
  switch (v) {
    case SigmaVariant::Repaired:
      return "repaired";
    case SigmaVariant::Literal:
      return "literal";
    case SigmaVariant::RawPrinted:
      return "raw-printed";
  }
  return {};
}

SigmaVariant parse_sigma_variant(std::string_view name) {
  if (name == "repaired") return SigmaVariant::Repaired;
  if (name == "literal") return SigmaVariant::Literal;
  if (name == "raw-printed") return SigmaVariant::RawPrinted;
  throw std::invalid_argument("unknown sigma variant '" + std::string(name) + "'");
}

Word sigma_star(SigmaVariant v) {
  const Word x = Word::of(Generator::var("x"));
  const Word y = Word::of(Generator::var("y"));
  const Word z = Word::of(Generator::var("z"));
  switch (v) {
    case SigmaVariant::Repaired:
      return commutator(commutator(x, y), commutator(x, z));
    case SigmaVariant::Literal:
      return commutator(commutator(x, y), z);
    case SigmaVariant::RawPrinted: {
      const Word xi = inverse(x), yi = inverse(y), zi = inverse(z);
      return reduce(inverse(xi * yi * xi * y) * zi * (xi * yi * x * y) * z);
    }
  }
  throw std::invalid_argument("sigma_star: unknown variant");
}

Word instantiate(const Word& sigma, const Word& a, const Word& b, const Word& c) {
  return reduce(substitute(sigma, {{Generator::var("x"), a}, {Generator::var("y"), b}, {Generator::var("z"), c}}));
}

bool verify_vanishing(const Word& w, const Generator& v) { return reduce(substitute(w, {{v, Word{}}})).empty(); }

// --- formulas --------------------------------------------------------------

Generator tuple_var(char tuple, int k) {
  if ((tuple != 'x' && tuple != 'y' && tuple != 'z') || k < 0 || k >= kTupleWidth)
    throw std::out_of_range("tuple_var: expected x/y/z with index < 6");
  return Generator::var(std::string(1, tuple) + std::to_string(k));
}

void validate(const Formula& f) {
  auto check = [](const Word& w) {
    for (const auto& l : w.letters) {
      const auto& g = l.gen;
      const bool ok = g.sort == GenSort::Var && g.name.size() == 2 &&
                      (g.name[0] == 'x' || g.name[0] == 'y' || g.name[0] == 'z') && g.name[1] >= '0' &&
                      g.name[1] < '0' + kTupleWidth;
      if (!ok) throw std::invalid_argument("formula variable outside x0..x5, y0..y5, z0..z5: " + to_string(g));
    }
  };
  for (const auto& a : f.conjuncts) {
    check(a.lhs);
    check(a.rhs);
  }
}

void bind_tuple(std::map<Generator, Word>& binding, char tuple, const std::array<Generator, kTupleWidth>& gens) {
  for (int k = 0; k < kTupleWidth; ++k) binding.insert_or_assign(tuple_var(tuple, k), Word::of(gens[static_cast<std::size_t>(k)]));
}

OliveFormulas olive_formulas(const Word& sigma) {
  auto v = [](char t, int k) { return Word::of(tuple_var(t, k)); };
  auto conj = [](const Word& by, const Word& w) { return inverse(by) * w * by; };

  OliveFormulas f;
  f.sigma = sigma;
  f.phi0.conjuncts.push_back({conj(v('y', 5), v('x', 0)), v('x', 2), Relation::Eq});
  f.phi1.conjuncts.push_back({conj(v('x', 5), v('y', 1)), v('y', 3), Relation::Eq});
  f.phi1.conjuncts.push_back({conj(v('x', 5), v('y', 4)), v('y', 4), Relation::Eq});
  f.psi.conjuncts.push_back({instantiate(sigma, v('x', 0), v('y', 1), v('z', 4)), Word{}, Relation::Eq});
  f.psi.conjuncts.push_back({instantiate(sigma, v('x', 2), v('y', 3), v('z', 4)), Word{}, Relation::Neq});
  for (const auto* phi : {&f.phi0, &f.phi1, &f.psi}) validate(*phi);
  return f;
}

// --- impossibility certificate ----------------------------------------------------------

namespace {

std::array<Generator, kTupleWidth> a_tuple(int l) {
  std::array<Generator, kTupleWidth> t;
  for (int k = 0; k < kTupleWidth; ++k) t[static_cast<std::size_t>(k)] = Generator::x(l, k);
  return t;
}

Word random_word(std::mt19937_64& rng, std::size_t len) {
  std::uniform_int_distribution<int> l_dist(0, 3), k_dist(0, kTupleWidth - 1), s_dist(0, 1);
  Word w;
  for (std::size_t i = 0; i < len; ++i) w.letters.push_back({Generator::x(l_dist(rng), k_dist(rng)), s_dist(rng) ? 1 : -1});
  return w;
}

}  // namespace

ImpossibilityCertificate impossibility_certificate(const Word& sigma, const std::set<Generator>& suppressed) {
  const OliveFormulas formulas = olive_formulas(sigma);
  const Generator pivot = Generator::x(1, 5);
  const Word c = Word::of(pivot);

  // Hypotheses phi0[a0,a1], phi1[a1,a2], phi1[a1,a3], each conjunct read as
  // a_{1,5}^-1 g a_{1,5} = h.
  std::map<Generator, Word> rules;
  auto harvest = [&](const Formula& phi, int xl, int yl) {
    std::map<Generator, Word> binding;
    bind_tuple(binding, 'x', a_tuple(xl));
    bind_tuple(binding, 'y', a_tuple(yl));
    for (const auto& atom : phi.conjuncts) {
      const Word lhs = reduce(substitute(atom.lhs, binding));
      const Word rhs = reduce(substitute(atom.rhs, binding));
      const bool conj_shape = atom.kind == Relation::Eq && lhs.size() == 3 && lhs.letters[0].gen == pivot &&
                              lhs.letters[0].sign < 0 && lhs.letters[2].gen == pivot && lhs.letters[2].sign > 0 &&
                              lhs.letters[1].sign > 0;
      if (!conj_shape) continue;
      const Generator& src = lhs.letters[1].gen;
      if (!suppressed.contains(src)) rules.insert_or_assign(src, rhs);
    }
  };
  harvest(formulas.phi0, 0, 1);
  harvest(formulas.phi1, 1, 2);
  harvest(formulas.phi1, 1, 3);

  ImpossibilityCertificate cert;
  for (const auto& [g, h] : rules) cert.rules.push_back(to_string(g) + " -> " + to_string(h));

  const Word source = instantiate(sigma, Word::of(Generator::x(0, 0)), Word::of(Generator::x(2, 1)), Word::of(Generator::x(3, 4)));
  const Word target = instantiate(sigma, Word::of(Generator::x(0, 2)), Word::of(Generator::x(2, 3)), Word::of(Generator::x(3, 4)));

  // Conjugation by the pivot is the letterwise substitution g -> c^-1 g c, so
  // it commutes with concatenation and reduction.
  std::map<Generator, Word> letterwise;
  for (int l = 0; l < 4; ++l)
    for (int k = 0; k < kTupleWidth; ++k) {
      const Generator g = Generator::x(l, k);
      letterwise.emplace(g, inverse(c) * Word::of(g) * c);
    }
  auto conj_whole = [&](const Word& w) { return reduce(inverse(c) * w * c); };
  auto conj_letters = [&](const Word& w) { return reduce(substitute(w, letterwise)); };
  bool hom = conj_whole(source) == conj_letters(source);
  std::mt19937_64 rng(0x5eed58);
  for (int trial = 0; trial < 256 && hom; ++trial) {
    const Word u = random_word(rng, 1 + static_cast<std::size_t>(trial % 12));
    const Word v = random_word(rng, 1 + static_cast<std::size_t>(trial % 7));
    hom = conj_letters(u * v) == reduce(conj_letters(u) * conj_letters(v)) && conj_whole(u) == conj_letters(u) &&
          reduce(c * conj_whole(u) * inverse(c)) == reduce(u);
  }
  cert.conjugation_is_homomorphism = hom;

  std::map<Generator, Word> images = letterwise;
  for (const auto& [g, h] : rules) images.insert_or_assign(g, h);
  const Word rewritten = reduce(substitute(source, images));

  cert.source = to_string(source);
  cert.rewritten = to_string(rewritten);
  cert.target = to_string(target);
  cert.pass = hom && rewritten == target;
  return cert;
}

}  // namespace olive
