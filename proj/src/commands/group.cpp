#include "common.hpp"
#include "olive/error.hpp"
#include "olive/groups.hpp"
#include "olive/kgroup.hpp"
#include "olive/parallel.hpp"

namespace olive::commands {

CommandResult sigma_check(const RunConfig& cfg) {
  const Word sigma = sigma_star(cfg.variant);
  json report{{"variant", to_string(cfg.variant)}, {"sigma", to_string(sigma)}};

  bool pass = true;
  json vanishing;
  for (const char* v : {"x", "y", "z"}) {
    const bool ok = verify_vanishing(sigma, Generator::var(v));
    vanishing[v] = ok;
    pass = pass && ok;
  }
  report["vanishing"] = vanishing;

  const SymmetricGroup s4(4);
  const auto witness = find_nonvanishing_witness(sigma, s4);
  json nonvanishing{{"group", "S4"}, {"found", witness.has_value()}};
  if (witness) {
    json assignment;
    for (const auto& [g, perm] : *witness) assignment[to_string(g)] = std::vector<int>(perm.begin(), perm.end());
    nonvanishing["assignment"] = assignment;
  }
  report["nonvanishing_witness"] = nonvanishing;
  pass = pass && witness.has_value();

  const auto cert = impossibility_certificate(cfg.variant);
  report["impossibility_certificate"] = {{"pass", cert.pass},
                              {"conjugation_is_homomorphism", cert.conjugation_is_homomorphism},
                              {"source", cert.source},
                              {"rewritten", cert.rewritten},
                              {"target", cert.target}};
  pass = pass && cert.pass;
  return finish(std::move(report), pass);
}

namespace {

json relation_json(const RelationCheck& r) {
  return {{"checked", r.checked}, {"failures", r.failures}, {"first_failure", r.first_failure}};
}

json associativity_json(const AssociativityCheck& r) {
  return {{"samples", r.samples}, {"failures", r.failures}, {"first_failure", r.first_failure}};
}

// Splits the sample budget into fixed chunks so the result does not depend
// on the number of workers.
AssociativityCheck associativity(const KParams& p, std::size_t samples, std::uint64_t seed) {
  constexpr std::size_t kChunk = 10000;
  const std::size_t chunks = (samples + kChunk - 1) / kChunk;
  const auto parts = parallel_map<AssociativityCheck>(chunks, [&](std::size_t c) {
    const std::size_t n = std::min(kChunk, samples - c * kChunk);
    return check_associativity(p, n, seed + c);
  });
  AssociativityCheck total;
  for (const auto& part : parts) {
    total.samples += part.samples;
    total.failures += part.failures;
    if (total.first_failure.empty() && !part.first_failure.empty()) total.first_failure = part.first_failure;
  }
  return total;
}

json sigma_value(const KElement& x, const KElement& y, const KElement& z, const KParams& p, SigmaVariant v) {
  Assignment<KContext> asg{{Generator::var("x"), x}, {Generator::var("y"), y}, {Generator::var("z"), z}};
  const auto value = evaluate(sigma_star(v), asg, KContext(p));
  return {{"identity", value.is_identity()}, {"value", io::to_json(value)}};
}

}  // namespace

CommandResult kgroup_selftest(const RunConfig& cfg) {
  json report;
  bool pass = true;
  if (cfg.toy) {
    const std::size_t samples = cfg.count.value_or(100000);
    const KParams p = toy_params();
    const ToyGroup k1(p);
    const ToyGroup k2(make_K2(p, cfg.variant));
    const auto rel = check_relations(p);
    const auto assoc = associativity(p, samples, cfg.seed);
    report["mode"] = "toy";
    report["params"] = fingerprint(p);
    report["order"] = k1.order();
    report["quotient_order"] = k2.order();
    report["relations"] = relation_json(rel);
    report["associativity"] = associativity_json(assoc);
    pass = k1.order() == 512 && rel.failures == 0 && assoc.failures == 0;
  } else {
    const std::size_t samples = cfg.count.value_or(1000000);
    const KParams p = KParams::make(cfg.m);
    report["mode"] = "full";
    report["params"] = fingerprint(p);
    report["n"] = p.n;
    const auto assoc = associativity(p, samples, cfg.seed);
    report["associativity"] = associativity_json(assoc);
    pass = assoc.failures == 0;

    const auto star = compute_ell_star(p, cfg.variant);
    const auto [a, b] = pair_unrank(star);
    report["ell_star"] = {{"index", star}, {"pair", {a, b}}};
    const KParams q = make_K2(p, cfg.variant);
    report["quotient_params"] = fingerprint(q);
    if (cfg.m >= 5) {
      const auto low = sigma_value(z_gen(0, 0, q), z_gen(1, 1, q), z_gen(2, 4, q), q, cfg.variant);
      const auto high = sigma_value(z_gen(0, 2, q), z_gen(1, 3, q), z_gen(2, 4, q), q, cfg.variant);
      report["sigma_z00_z11_z24"] = low;
      report["sigma_z02_z13_z24"] = high;
      pass = pass && low["identity"].get<bool>() && !high["identity"].get<bool>();
    }
  }
  report["variant"] = to_string(cfg.variant);
  return finish(std::move(report), pass);
}

CommandResult partial_iso_check(const RunConfig& cfg) {
  const std::size_t samples = cfg.count.value_or(10000);
  const KParams p = make_K2(KParams::make(cfg.m), cfg.variant);
  const auto pairs = enumerate_S_star();
  const auto checks = parallel_map<PartialIsoCheck>(pairs.size(), [&](std::size_t i) {
    return verify_partial_iso(pi_s(pairs[i], p), p, samples, cfg.seed + i);
  });

  bool pass = true;
  json rows = json::array();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& c = checks[i];
    rows.push_back({{"pair", to_string(pairs[i])},
                    {"pass", c.pass},
                    {"injective", c.injective},
                    {"mask_respected", c.mask_respected},
                    {"hom_samples", c.hom_samples},
                    {"hom_failures", c.hom_failures},
                    {"detail", c.detail}});
    pass = pass && c.pass;
  }

  const SPair excluded = SPair::of({0}, {1, 2});
  const auto ex = verify_partial_iso(pi_s_unchecked(excluded, p), p, samples, cfg.seed);
  pass = pass && !ex.pass;
  json report{{"params", fingerprint(p)},
              {"variant", to_string(cfg.variant)},
              {"samples", samples},
              {"pairs", rows},
              {"excluded",
               {{"pair", to_string(excluded)}, {"pass", ex.pass}, {"mask_respected", ex.mask_respected}, {"detail", ex.detail}}}};
  return finish(std::move(report), pass);
}

CommandResult toy_conjugator(const RunConfig& cfg) {
  const KParams p = make_K2(toy_params(), cfg.variant);
  const ToyGroup group(p);
  const PartialIso pi{{{0, 1}, {1, 2}}};
  json report{{"params", fingerprint(p)}, {"variant", to_string(cfg.variant)}, {"order", group.order()}, {"map", pi.map}};
  const auto conj = olive::toy_conjugator(group, pi);
  report["domain_order"] = conj.domain_order;
  report["checked_pairs"] = conj.checked_pairs;
  report["z"] = conj.z;
  return finish(std::move(report), conj.checked_pairs == conj.domain_order * group.order());
}

}  // namespace olive::commands
