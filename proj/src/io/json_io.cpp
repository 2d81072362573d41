#include <fstream>

#include "olive/error.hpp"
#include "olive/io.hpp"

namespace olive::io {

namespace {

json tuples(const std::set<Tuple>& rel) {
  json out = json::array();
  for (const auto& t : rel) out.push_back(t);
  return out;
}

std::set<Tuple> tuples_from(const json& j, const char* key) {
  std::set<Tuple> out;
  if (!j.contains(key)) return out;
  for (const auto& t : j.at(key)) out.insert(t.get<Tuple>());
  return out;
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

}  // namespace

json to_json(const KElement& e) { return {{"l2", e.v[2].to_hex()}, {"l1", e.v[1].to_hex()}, {"l0", e.v[0].to_hex()}}; }

KElement kelement_from_json(const json& j, const KParams& p) {
  KElement e;
  e.v[2] = BitVec::from_hex(j.at("l2").get<std::string>(), p.n[2]);
  e.v[1] = BitVec::from_hex(j.at("l1").get<std::string>(), p.n[1]);
  e.v[0] = BitVec::from_hex(j.at("l0").get<std::string>(), p.n[0]);
  return apply_mask(e, p);
}

json to_json(const Ladder& f) {
  json rows = json::array();
  for (int a = 1; a < f.lambda; ++a) rows.push_back(f.rows[static_cast<std::size_t>(a)]);
  return {{"lambda", f.lambda}, {"iota", f.iota}, {"rows", rows}};
}

Ladder ladder_from_json(const json& j) {
  Ladder f;
  f.lambda = j.at("lambda").get<int>();
  f.iota = get_or(j, "iota", 2);
  f.rows.assign(1, {});
  for (const auto& row : j.at("rows")) f.rows.push_back(row.get<std::vector<int>>());
  if (f.lambda == 0 && f.rows.size() == 1) f.rows.clear();
  f.validate();
  return f;
}

json to_json(const OliveSignature& sig) { return {{"eta", sig.eta}, {"k", sig.k}}; }

OliveSignature signature_from_json(const json& j) {
  OliveSignature sig;
  sig.eta = j.at("eta").get<std::vector<int>>();
  sig.k = j.at("k").get<std::array<int, 2>>();
  return sig;
}

json to_json(const FinStructure& s) {
  return {{"signature", to_json(s.sig)}, {"universe", s.size}, {"P", tuples(s.rel[0])}, {"Q0", tuples(s.rel[1])}, {"Q1", tuples(s.rel[2])}};
}

FinStructure structure_from_json(const json& j) {
  FinStructure s;
  s.sig = signature_from_json(j.at("signature"));
  s.size = j.at("universe").get<int>();
  s.rel[0] = tuples_from(j, "P");
  s.rel[1] = tuples_from(j, "Q0");
  s.rel[2] = tuples_from(j, "Q1");
  s.validate();
  return s;
}

json to_json(const ExpandedTree& t) {
  return {{"nodes", t.nodes}, {"parent", t.parent}, {"linear_order", t.linear_order}, {"P", t.P}, {"F0", t.F[0]}, {"F1", t.F[1]}};
}

ExpandedTree tree_from_json(const json& j) {
  if (!j.is_object()) throw Error("tree file: expected a JSON object");
  ExpandedTree t;
  t.parent = get_or(j, "parent", std::vector<int>{});
  t.nodes = get_or(j, "nodes", static_cast<int>(t.parent.size()));
  t.linear_order = get_or(j, "linear_order", std::vector<int>{});
  t.P = get_or(j, "P", std::vector<int>{});
  t.F[0] = get_or(j, "F0", std::vector<std::pair<int, int>>{});
  t.F[1] = get_or(j, "F1", std::vector<std::pair<int, int>>{});
  return t;
}

json to_json(const SPair& s) {
  json u1 = json::array(), u2 = json::array();
  for (int l = 0; l < 3; ++l) {
    if (s.in_first(l)) u1.push_back(l);
    if (s.in_second(l)) u2.push_back(l);
  }
  return {{"u1", u1}, {"u2", u2}};
}

json to_json(const Triple& t) { return json::array({t.a, t.b, t.c}); }

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error("cannot parse " + path + ": " + e.what());
  }
}

}  // namespace olive::io
