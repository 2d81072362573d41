#include "olive/ladder.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace olive {

void Ladder::validate() const {
  if (lambda < 1) throw std::invalid_argument("ladder: lambda must be positive");
  if (iota < 1) throw std::invalid_argument("ladder: iota must be positive");
  if (rows.size() != static_cast<std::size_t>(lambda)) throw std::invalid_argument("ladder: expected one row per alpha < lambda");
  for (std::size_t alpha = 0; alpha < rows.size(); ++alpha) {
    if (rows[alpha].size() != alpha)
      throw std::invalid_argument("ladder: row " + std::to_string(alpha) + " must have " + std::to_string(alpha) + " entries");
    for (int v : rows[alpha])
      if (v < 0 || v >= iota) throw std::invalid_argument("ladder: color out of range in row " + std::to_string(alpha));
  }
}

Ladder Ladder::zeros(int lambda, int iota) {
  Ladder f;
  f.lambda = lambda;
  f.iota = iota;
  for (int alpha = 0; alpha < lambda; ++alpha) f.rows.emplace_back(static_cast<std::size_t>(alpha), 0);
  f.validate();
  return f;
}

std::string to_string(const Triple& t) {
  return "(" + std::to_string(t.a) + "," + std::to_string(t.b) + "," + std::to_string(t.c) + ")";
}

std::uint64_t ladder_count(int lambda) {
  const int bits = lambda * (lambda - 1) / 2;
  if (bits >= 64) throw std::out_of_range("ladder_count: too many ladders to count in 64 bits");
  return std::uint64_t{1} << bits;
}

Ladder ladder_from_code(int lambda, std::uint64_t code) {
  if (code >= ladder_count(lambda)) throw std::out_of_range("ladder_from_code: code out of range");
  Ladder f = Ladder::zeros(lambda);
  int bit = 0;
  for (int alpha = 1; alpha < lambda; ++alpha)
    for (int delta = 0; delta < alpha; ++delta, ++bit)
      f.rows[static_cast<std::size_t>(alpha)][static_cast<std::size_t>(delta)] = static_cast<int>((code >> bit) & 1u);
  return f;
}

Ladder random_ladder(int lambda, std::mt19937_64& rng, int iota) {
  Ladder f = Ladder::zeros(lambda, iota);
  std::uniform_int_distribution<int> color(0, iota - 1);
  for (auto& row : f.rows)
    for (auto& v : row) v = color(rng);
  return f;
}

bool interval_zero(const Ladder& f, int alpha, int beta, int gamma) {
  for (int d = alpha; d <= beta; ++d)
    if (f.f(gamma, d) != 0) return false;
  return true;
}

std::vector<Triple> J_of(const Ladder& f) {
  if (f.iota != 2) throw std::invalid_argument("J_of: needs a two-colored ladder");
  std::vector<Triple> out;
  for (int a = 0; a < f.lambda; ++a)
    for (int b = a + 1; b < f.lambda; ++b)
      for (int c = b + 1; c < f.lambda; ++c)
        if (interval_zero(f, a, b, c)) out.push_back({a, b, c});
  return out;
}

SPair s_pair(const Triple& t, int beta, const Ladder& f) {
  if (!(0 <= t.a && t.a < t.b && t.b < t.c && t.c < f.lambda) || !interval_zero(f, t.a, t.b, t.c))
    throw std::invalid_argument("s_pair: " + to_string(t) + " is not in J");
  if (beta < 0 || beta >= f.lambda) throw std::invalid_argument("s_pair: beta out of range");
  SPair s;
  const int members[3] = {t.a, t.b, t.c};
  for (int l = 0; l < 3; ++l) {
    const int x = members[l];
    if (x < beta && f.f(beta, x) == 0) s.u1 = static_cast<std::uint8_t>(s.u1 | (1u << l));
    if (beta < x && f.f(x, beta) == 1) s.u2 = static_cast<std::uint8_t>(s.u2 | (1u << l));
  }
  return s;
}

GammaSets gamma_sets(const Ladder& f) {
  if (f.iota != 2) throw std::invalid_argument("gamma_sets: needs a two-colored ladder");
  GammaSets g;
  for (int b = 1; b < f.lambda; ++b)
    for (int a = 0; a < b; ++a) (f.f(b, a) == 0 ? g.gamma0 : g.gamma1).emplace_back(a, b);
  g.gamma2 = J_of(f);
  return g;
}

PartialGenMap F_beta(int beta, const Ladder& f) {
  if (beta < 0 || beta >= f.lambda) throw std::invalid_argument("F_beta: beta out of range");
  PartialGenMap map;
  for (int a = 0; a < beta; ++a)
    if (f.f(beta, a) == 0) map.emplace_back(Generator::x(a, 0), Generator::x(a, 2));
  for (int c = beta + 1; c < f.lambda; ++c)
    if (f.f(c, beta) == 1) {
      map.emplace_back(Generator::x(c, 1), Generator::x(c, 3));
      map.emplace_back(Generator::x(c, 4), Generator::x(c, 4));
    }
  std::sort(map.begin(), map.end());
  return map;
}

bool contains_gamma2_triple(const std::vector<Generator>& gens, const std::vector<Triple>& gamma2, std::optional<Triple>* hit) {
  const std::set<Generator> have(gens.begin(), gens.end());
  for (const auto& t : gamma2)
    if (have.contains(Generator::x(t.a, 0)) && have.contains(Generator::x(t.b, 1)) && have.contains(Generator::x(t.c, 4))) {
      if (hit) *hit = t;
      return true;
    }
  return false;
}

PartialMapReport check_partial_map(const PartialGenMap& map, const Ladder& f) {
  PartialMapReport r;
  std::map<Generator, Generator> forward;
  std::map<Generator, Generator> backward;
  r.function = true;
  r.injective = true;
  for (const auto& [from, to] : map) {
    if (auto [it, fresh] = forward.emplace(from, to); !fresh && !(it->second == to)) r.function = false;
    if (auto [it, fresh] = backward.emplace(to, from); !fresh && !(it->second == from)) r.injective = false;
  }
  std::vector<Generator> dom, ran;
  for (const auto& [from, to] : forward) dom.push_back(from);
  for (const auto& [to, from] : backward) ran.push_back(to);
  const auto gamma2 = J_of(f);
  contains_gamma2_triple(dom, gamma2, &r.domain_hit);
  contains_gamma2_triple(ran, gamma2, &r.range_hit);
  r.pass = r.function && r.injective && !r.domain_hit && !r.range_hit;
  return r;
}

PartialMapReport check_F_beta(int beta, const Ladder& f) { return check_partial_map(F_beta(beta, f), f); }

}  // namespace olive
