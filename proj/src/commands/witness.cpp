#include <random>

#include "common.hpp"
#include "olive/parallel.hpp"
#include "olive/witness.hpp"

namespace olive::commands {

namespace {

struct LadderBatch {
  int lambda = 0;
  bool exhaustive = false;
  std::vector<Ladder> ladders;
};

LadderBatch select_ladders(const RunConfig& cfg, int max_lambda) {
  if (!cfg.lambda) throw UsageError("--lambda is required");
  LadderBatch b;
  b.lambda = *cfg.lambda;
  if (b.lambda < 1 || b.lambda > max_lambda) throw UsageError("--lambda must be in 1.." + std::to_string(max_lambda));
  b.exhaustive = cfg.exhaustive;
  if (b.exhaustive) {
    if (b.lambda > 6) throw UsageError("--exhaustive needs --lambda <= 6");
    for (std::uint64_t code = 0; code < ladder_count(b.lambda); ++code) b.ladders.push_back(ladder_from_code(b.lambda, code));
  } else {
    std::mt19937_64 rng(cfg.seed);
    for (std::size_t i = 0; i < cfg.count.value_or(100); ++i) b.ladders.push_back(random_ladder(b.lambda, rng));
  }
  return b;
}

json batch_header(const LadderBatch& b, const KParams& p, const RunConfig& cfg) {
  json h{{"lambda", b.lambda},
         {"mode", b.exhaustive ? "exhaustive" : "sampled"},
         {"ladders", b.ladders.size()},
         {"variant", to_string(cfg.variant)},
         {"params", fingerprint(p)}};
  return h;
}

}  // namespace

CommandResult witness_verify(const RunConfig& cfg) {
  const auto batch = select_ladders(cfg, 12);
  const KParams p = make_K2(KParams::make(cfg.m), cfg.variant);
  const RelativeEvaluator ev(p);
  const auto formulas = olive_formulas(cfg.variant);

  const auto reports = parallel_map<ClauseReport>(batch.ladders.size(), [&](std::size_t i) {
    return verify_clause_b(build_witness(batch.ladders[i], p), ev, formulas);
  });

  json report = batch_header(batch, p, cfg);
  std::size_t failures = 0, undecided = 0, phi = 0, psi_eq = 0, psi_neq = 0, failed_ladders = 0;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    failures += r.failures;
    undecided += r.undecided;
    phi += r.phi_instances;
    psi_eq += r.psi_eq_instances;
    psi_neq += r.psi_neq_instances;
    if (!r.pass()) {
      if (failed_ladders == 0) report["first_failure"] = {{"ladder", io::to_json(batch.ladders[i])}, {"detail", r.first_failure}};
      ++failed_ladders;
    }
  }
  report["failures"] = failures;
  report["undecided"] = undecided;
  report["failed_ladders"] = failed_ladders;
  report["phi_instances"] = phi;
  report["psi_eq_instances"] = psi_eq;
  report["psi_neq_instances"] = psi_neq;
  return finish(std::move(report), failures == 0 && undecided == 0);
}

CommandResult forbidden_scan(const RunConfig& cfg) {
  const auto batch = select_ladders(cfg, 12);
  const KParams p = make_K2(KParams::make(cfg.m), cfg.variant);
  const RelativeEvaluator ev(p);
  const auto formulas = olive_formulas(cfg.variant);

  const auto found = parallel_map<std::vector<Quadruple>>(batch.ladders.size(), [&](std::size_t i) {
    return olive::forbidden_scan(build_witness(batch.ladders[i], p), ev, formulas);
  });

  json report = batch_header(batch, p, cfg);
  std::size_t total = 0, hit_ladders = 0;
  for (std::size_t i = 0; i < found.size(); ++i) {
    if (found[i].empty()) continue;
    if (hit_ladders == 0) {
      const auto& q = found[i].front();
      report["first_finding"] = {{"ladder", io::to_json(batch.ladders[i])}, {"quadruple", {q.i0, q.i1, q.i2, q.i3}}};
    }
    ++hit_ladders;
    total += found[i].size();
  }
  report["findings"] = total;
  report["ladders_with_findings"] = hit_ladders;
  return finish(std::move(report), total == 0);
}

namespace {

struct NegativeTally {
  std::size_t checks = 0;
  std::size_t exceptions = 0;
  std::string first_exception;

  void fail(std::string what) {
    ++exceptions;
    if (first_exception.empty()) first_exception = std::move(what);
  }
};

// Both certificates for one ladder: triples outside J with the generators
// of their three indices, and every triple with the generators of levels
// 1..4 of all indices.
NegativeTally negative_for(const Ladder& f, const Word& sigma) {
  NegativeTally t;
  std::set<Generator> upper;
  for (int xi = 0; xi < f.lambda; ++xi)
    for (int l = 1; l < 5; ++l) upper.insert(Generator::x(xi, l));

  for (int a = 0; a < f.lambda; ++a)
    for (int b = a + 1; b < f.lambda; ++b)
      for (int c = b + 1; c < f.lambda; ++c) {
        const std::string where = to_string(Triple{a, b, c});
        auto x = [](int xi, int l) { return Word::of(Generator::x(xi, l)); };
        if (!interval_zero(f, a, b, c)) {
          std::set<Generator> X;
          for (int xi : {a, b, c})
            for (int l = 0; l < 5; ++l) X.insert(Generator::x(xi, l));
          ++t.checks;
          try {
            if (g5_retract(f, X, instantiate(sigma, x(a, 0), x(b, 1), x(c, 4))).empty()) t.fail(where + " levels 0,1,4: retraction is empty");
          } catch (const std::exception& e) {
            t.fail(where + " levels 0,1,4: " + e.what());
          }
        }
        ++t.checks;
        try {
          if (g5_retract(f, upper, instantiate(sigma, x(a, 2), x(b, 3), x(c, 4))).empty()) t.fail(where + " levels 2,3,4: retraction is empty");
        } catch (const std::exception& e) {
          t.fail(where + " levels 2,3,4: " + e.what());
        }
      }
  return t;
}

}  // namespace

CommandResult g5_negative_check(const RunConfig& cfg) {
  const int lambda_max = cfg.lambda_max.value_or(6);
  if (lambda_max < 1 || lambda_max > 7) throw UsageError("--lambda-max must be in 1..7");
  const Word sigma = sigma_star(cfg.variant);

  std::vector<Ladder> ladders;
  for (int lambda = 1; lambda <= lambda_max; ++lambda)
    for (std::uint64_t code = 0; code < ladder_count(lambda); ++code) ladders.push_back(ladder_from_code(lambda, code));
  const auto tallies = parallel_map<NegativeTally>(ladders.size(), [&](std::size_t i) { return negative_for(ladders[i], sigma); });

  NegativeTally total;
  json first;
  for (std::size_t i = 0; i < tallies.size(); ++i) {
    total.checks += tallies[i].checks;
    if (tallies[i].exceptions && first.is_null())
      first = {{"ladder", io::to_json(ladders[i])}, {"detail", tallies[i].first_exception}};
    total.exceptions += tallies[i].exceptions;
  }
  json report{{"lambda_max", lambda_max}, {"variant", to_string(cfg.variant)}, {"ladders", ladders.size()},
              {"checks", total.checks}, {"exceptions", total.exceptions}};
  if (!first.is_null()) report["first_exception"] = first;
  return finish(std::move(report), total.exceptions == 0);
}

}  // namespace olive::commands
