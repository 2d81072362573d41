#include <algorithm>
#include <numeric>
#include <random>

#include "common.hpp"
#include "olive/error.hpp"
#include "olive/etr.hpp"
#include "olive/relational.hpp"

namespace olive::commands {

namespace {

OliveSignature signature_of(const RunConfig& cfg) {
  OliveSignature sig{cfg.eta, cfg.k};
  sig.validate();
  return sig;
}

int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

double any_density(std::mt19937_64& rng) { return std::uniform_real_distribution<double>(0.15, 0.85)(rng); }

// A member of T^0: a ladder model half of the time, otherwise a random
// structure, redrawn until it omits N*.
FinStructure random_member(const OliveSignature& sig, int max_size, const FinStructure& nstar, std::mt19937_64& rng) {
  if (rng() % 2 == 0) {
    const int lambda = uniform(rng, 1, max_size);
    return model_from_ladder(random_ladder(lambda, rng), sig);
  }
  for (;;) {
    auto s = random_structure(sig, uniform(rng, 1, max_size), any_density(rng), rng);
    if (!embeds(nstar, s)) return s;
  }
}

// Overwrites the relations among the first base.size points of s with base.
void impose_prefix(FinStructure& s, const FinStructure& base) {
  for (auto& rel : s.rel)
    std::erase_if(rel, [&](const Tuple& t) { return std::all_of(t.begin(), t.end(), [&](int x) { return x < base.size; }); });
  for (std::size_t r = 0; r < 3; ++r) s.rel[r].insert(base.rel[r].begin(), base.rel[r].end());
}

struct Tally {
  std::size_t instances = 0;
  std::size_t failures = 0;
  std::size_t nontrivial = 0;  // results with at least five points
  std::string first_failure;

  void fail(std::string what) {
    ++failures;
    if (first_failure.empty()) first_failure = std::move(what);
  }
  json to_json() const {
    return {{"instances", instances}, {"failures", failures}, {"nontrivial", nontrivial}, {"first_failure", first_failure}};
  }
};

Tally union_trials(const OliveSignature& sig, std::size_t count, std::mt19937_64& rng) {
  const auto nstar = build_Nstar(sig);
  Tally t;
  for (std::size_t i = 0; i < count; ++i) {
    const FinStructure m1 = random_member(sig, 5, nstar, rng);
    std::vector<int> shared_ids(static_cast<std::size_t>(m1.size));
    std::iota(shared_ids.begin(), shared_ids.end(), 0);
    std::shuffle(shared_ids.begin(), shared_ids.end(), rng);
    shared_ids.resize(static_cast<std::size_t>(uniform(rng, 0, std::min(2, m1.size))));
    const FinStructure base = m1.induced(shared_ids);

    FinStructure m2;
    do {
      m2 = random_member(sig, 5, nstar, rng);
      if (m2.size < base.size) m2.size = base.size;
      impose_prefix(m2, base);
    } while (embeds(nstar, m2));

    std::vector<std::pair<int, int>> shared;
    for (std::size_t j = 0; j < shared_ids.size(); ++j) shared.emplace_back(shared_ids[j], static_cast<int>(j));
    const FinStructure u = disjoint_union(m1, m2, shared);

    ++t.instances;
    if (u.size >= nstar.size) ++t.nontrivial;
    std::vector<int> first(static_cast<std::size_t>(m1.size));
    std::iota(first.begin(), first.end(), 0);
    std::vector<int> second;
    for (int x = 0; x < m2.size; ++x) second.push_back(x < base.size ? shared_ids[static_cast<std::size_t>(x)] : m1.size + x - base.size);
    if (embeds(nstar, u)) t.fail("instance " + std::to_string(i) + ": union contains N*");
    else if (!(u.induced(first) == m1) || !(u.induced(second) == m2)) t.fail("instance " + std::to_string(i) + ": union does not extend its parts");
  }
  return t;
}

Tally amalgam_trials(const OliveSignature& sig, std::size_t count, std::mt19937_64& rng) {
  const auto nstar = build_Nstar(sig);
  Tally t;
  for (std::size_t i = 0; i < count; ++i) {
    std::array<FinStructure, 4> parts;
    for (auto& part : parts) part = random_structure(sig, uniform(rng, 1, 3), any_density(rng), rng);

    std::array<FinStructure, 4> edges;
    for (std::size_t e = 0; e < 4; ++e) {
      const auto [a, b] = kCycleEdges[e];
      const auto& pa = parts[static_cast<std::size_t>(a)];
      const auto& pb = parts[static_cast<std::size_t>(b)];
      const FinStructure plain = disjoint_union(pa, pb, {});
      // Random cross tuples, redrawn while the edge model contains N*.
      for (int attempt = 0;; ++attempt) {
        FinStructure cand = random_structure(sig, plain.size, attempt < 40 ? any_density(rng) : 0.0, rng);
        for (std::size_t r = 0; r < 3; ++r)
          std::erase_if(cand.rel[r], [&](const Tuple& tup) {
            const bool left = std::all_of(tup.begin(), tup.end(), [&](int x) { return x < pa.size; });
            const bool right = std::all_of(tup.begin(), tup.end(), [&](int x) { return x >= pa.size; });
            return left || right;
          });
        for (std::size_t r = 0; r < 3; ++r) cand.rel[r].insert(plain.rel[r].begin(), plain.rel[r].end());
        if (!embeds(nstar, cand)) {
          edges[e] = std::move(cand);
          break;
        }
      }
    }

    const auto rep = nsop4_amalgam(parts, edges);
    ++t.instances;
    if (rep.result.size >= nstar.size) ++t.nontrivial;
    if (!rep.pass) {
      std::string why = rep.precondition_failures.empty() ? (rep.omits_nstar ? "union does not extend an edge model" : "union contains N*")
                                                          : rep.precondition_failures.front();
      t.fail("instance " + std::to_string(i) + ": " + why);
    }
  }
  return t;
}

}  // namespace

CommandResult relational_olive(const RunConfig& cfg) {
  const OliveSignature sig{cfg.eta, cfg.k};
  const int lambda_max = cfg.lambda_max.value_or(5);
  const auto rep = check_class_olive(sig, lambda_max);
  json report{{"signature", io::to_json(sig)},
              {"lambda_max", lambda_max},
              {"ladders", rep.ladders},
              {"ladders_total", rep.ladders_total},
              {"membership_failures", rep.membership_failures},
              {"embeddings_found", rep.embeddings_found},
              {"first_failure", rep.first_failure}};
  return finish(std::move(report), rep.pass());
}

CommandResult nstar_build(const RunConfig& cfg) {
  const auto sig = signature_of(cfg);
  const auto nstar = build_Nstar(sig);
  const bool self = embeds(nstar, nstar).has_value();
  return finish({{"signature", io::to_json(sig)}, {"structure", io::to_json(nstar)}, {"embeds_in_itself", self}}, self);
}

CommandResult amalgam_check(const RunConfig& cfg) {
  const auto sig = signature_of(cfg);
  sig.validate_strict();
  const std::size_t count = cfg.count.value_or(200);
  std::mt19937_64 rng(cfg.seed);
  const auto unions = union_trials(sig, count, rng);
  const auto amalgams = amalgam_trials(sig, count, rng);
  json report{{"signature", io::to_json(sig)}, {"count", count}, {"disjoint_union", unions.to_json()}, {"nsop4_amalgam", amalgams.to_json()}};
  return finish(std::move(report), unions.failures == 0 && amalgams.failures == 0);
}

CommandResult etr_validate(const RunConfig& cfg) {
  if (cfg.input.empty()) throw UsageError("etr-validate needs a tree file");
  json data;
  try {
    data = io::read_file(cfg.input);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  ExpandedTree tree;
  try {
    tree = io::tree_from_json(data);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  json report{{"nodes", tree.nodes}, {"points", tree.P.size()}};
  std::vector<EtrViolation> violations;
  try {
    violations = validate_etr(tree);
  } catch (const Error& e) {
    report["structural_error"] = e.what();
    return finish(std::move(report), false);
  }
  json list = json::array();
  for (const auto& v : violations) list.push_back({{"clause", std::string(1, v.clause)}, {"witness", v.witness}});
  report["violations"] = list;
  if (violations.empty()) {
    const auto flat = derive_ftr(tree);
    report["ftr"] = {{"points", flat.points}, {"Q0", flat.Q[0]}, {"Q1", flat.Q[1]}};
  }
  return finish(std::move(report), violations.empty());
}

}  // namespace olive::commands
