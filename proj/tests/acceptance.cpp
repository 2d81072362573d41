// Acceptance run: one line per criterion, "criterion N: PASS|FAIL (time) detail".
// With no arguments every criterion runs; "--criterion N" runs one.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <string>

#include "olive/commands.hpp"
#include "olive/error.hpp"
#include "olive/etr.hpp"
#include "olive/groups.hpp"
#include "olive/io.hpp"
#include "olive/kgroup.hpp"
#include "olive/ladder.hpp"
#include "olive/parallel.hpp"
#include "olive/relational.hpp"
#include "olive/witness.hpp"
#include "olive/words.hpp"

using namespace olive;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string num(std::size_t n) { return std::to_string(n); }

// Appends "name ok" or "name FAILED(why)" to the detail list.
struct Details {
  bool pass = true;
  std::string text;

  void add(const std::string& name, bool ok, const std::string& why = {}) {
    if (!text.empty()) text += "; ";
    text += name + (ok ? "" : " FAILED") + (why.empty() ? "" : " [" + why + "]");
    pass = pass && ok;
  }
  Outcome done() const { return {pass, text}; }
};

// ---------------------------------------------------------------------------

Outcome criterion1() {
  const auto t0 = Clock::now();
  Details d;
  const Word sigma = sigma_star(SigmaVariant::Repaired);
  for (const char* v : {"x", "y", "z"}) d.add(std::string("vanishing in ") + v, verify_vanishing(sigma, Generator::var(v)));
  const SymmetricGroup s4(4);
  d.add("nonvanishing witness in S4", find_nonvanishing_witness(sigma, s4).has_value());
  const double t = seconds_since(t0);
  d.add("runtime < 5 s", t < 5.0, std::to_string(t) + " s");
  return d.done();
}

Outcome criterion2() {
  const auto t0 = Clock::now();
  Details d;
  const KParams toy = toy_params();
  const ToyGroup group(toy);
  d.add("toy closure has 512 elements", group.order() == 512, num(group.order()));

  const auto rel = check_relations(toy);
  d.add("relations over " + num(rel.checked) + " generator pairs", rel.failures == 0, rel.first_failure);

  auto assoc = [](const KParams& p, std::size_t samples, std::uint64_t seed) {
    constexpr std::size_t kChunk = 10000;
    const auto parts = parallel_map<AssociativityCheck>(samples / kChunk, [&](std::size_t c) { return check_associativity(p, kChunk, seed + c); });
    AssociativityCheck total;
    for (const auto& part : parts) {
      total.samples += part.samples;
      total.failures += part.failures;
      if (total.first_failure.empty()) total.first_failure = part.first_failure;
    }
    return total;
  };
  const auto small = assoc(toy, 100000, 20);
  d.add("associativity on " + num(small.samples) + " toy triples", small.failures == 0,
        num(small.failures) + " failures; " + small.first_failure);
  const auto full = assoc(KParams::make(6), 1000000, 21);
  d.add("associativity on " + num(full.samples) + " m=6 triples", full.failures == 0,
        num(full.failures) + " failures; " + full.first_failure);

  const double t = seconds_since(t0);
  d.add("runtime < 60 s", t < 60.0, std::to_string(t) + " s");
  return d.done();
}

Outcome criterion3() {
  const auto t0 = Clock::now();
  Details d;
  const KParams q = make_K2(KParams::make(6), SigmaVariant::Repaired);
  auto sigma_is_e = [&](const KElement& x, const KElement& y, const KElement& z) {
    Assignment<KContext> asg{{Generator::var("x"), x}, {Generator::var("y"), y}, {Generator::var("z"), z}};
    return evaluate(sigma_star(SigmaVariant::Repaired), asg, KContext(q)).is_identity();
  };
  d.add("sigma(z00,z11,z24) = e", sigma_is_e(z_gen(0, 0, q), z_gen(1, 1, q), z_gen(2, 4, q)));
  d.add("sigma(z02,z13,z24) != e", !sigma_is_e(z_gen(0, 2, q), z_gen(1, 3, q), z_gen(2, 4, q)));
  const double t = seconds_since(t0);
  d.add("runtime < 5 s", t < 5.0, std::to_string(t) + " s");
  return d.done();
}

Outcome criterion4() {
  const auto t0 = Clock::now();
  Details d;
  const KParams q = make_K2(KParams::make(6), SigmaVariant::Repaired);
  const auto pairs = enumerate_S_star();
  const auto checks = parallel_map<PartialIsoCheck>(pairs.size(), [&](std::size_t i) { return verify_partial_iso(pi_s(pairs[i], q), q, 10000, 400 + i); });
  std::size_t bad = 0;
  std::string first;
  for (std::size_t i = 0; i < pairs.size(); ++i)
    if (!checks[i].pass) {
      ++bad;
      if (first.empty()) first = to_string(pairs[i]) + ": " + checks[i].detail;
    }
  d.add("verify_partial_iso on all " + num(pairs.size()) + " pairs of S*", bad == 0, first);
  const auto excluded = verify_partial_iso(pi_s_unchecked(SPair::of({0}, {1, 2}), q), q, 10000, 499);
  d.add("excluded pair rejected", !excluded.pass, excluded.detail);

  // Independent pointwise check of the materialized conjugator.
  const KParams toy = make_K2(toy_params(), SigmaVariant::Repaired);
  const ToyGroup group(toy);
  const PartialIso pi{{{0, 1}, {1, 2}}};
  try {
    const auto conj = toy_conjugator(group, pi);
    const auto rel = induce(pi, toy);
    Permutation zinv(conj.z.size());
    for (std::size_t i = 0; i < conj.z.size(); ++i) zinv[conj.z[i]] = static_cast<std::uint32_t>(i);
    const auto dom = group.closure({k_generator(2, 0, toy), k_generator(2, 1, toy)});
    std::size_t mismatches = 0;
    for (auto idx : dom) {
      const auto& x = group.elements()[idx];
      const auto image = relabel(x, rel, toy);
      if (!image) {
        ++mismatches;
        continue;
      }
      // Point map of a product is "left factor first".
      const auto rho_x = group.right_action(x), rho_img = group.right_action(*image);
      for (std::size_t w = 0; w < conj.z.size(); ++w)
        if (conj.z[rho_x[zinv[w]]] != rho_img[w]) {
          ++mismatches;
          break;
        }
    }
    d.add("toy conjugator z^-1 x z = pi(x) on all " + num(dom.size()) + " domain elements", mismatches == 0 && dom.size() == conj.domain_order,
          num(mismatches) + " mismatches");
  } catch (const Error& e) {
    d.add("toy conjugator", false, e.what());
  }
  const double t = seconds_since(t0);
  d.add("runtime < 30 s", t < 30.0, std::to_string(t) + " s");
  return d.done();
}

Outcome criterion5() {
  const auto t0 = Clock::now();
  Details d;
  const KParams q = make_K2(KParams::make(6), SigmaVariant::Repaired);
  const RelativeEvaluator ev(q);
  const auto formulas = olive_formulas(SigmaVariant::Repaired);

  std::vector<Ladder> ladders;
  for (std::uint64_t code = 0; code < ladder_count(5); ++code) ladders.push_back(ladder_from_code(5, code));
  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) ladders.push_back(random_ladder(8, rng));

  struct PerLadder {
    ClauseReport clause;
    std::size_t findings = 0;
  };
  const auto results = parallel_map<PerLadder>(ladders.size(), [&](std::size_t i) {
    const auto w = build_witness(ladders[i], q);
    return PerLadder{verify_clause_b(w, ev, formulas), forbidden_scan(w, ev, formulas).size()};
  });
  std::size_t failures = 0, undecided = 0, findings = 0;
  std::string first;
  for (const auto& r : results) {
    failures += r.clause.failures;
    undecided += r.clause.undecided;
    findings += r.findings;
    if (first.empty() && !r.clause.pass()) first = r.clause.first_failure;
  }
  d.add("clause (b) on 1024 ladders at lambda 5 and 100 at lambda 8", failures == 0, num(failures) + " failures; " + first);
  d.add("no undecided instances", undecided == 0, num(undecided));
  d.add("forbidden_scan empty", findings == 0, num(findings) + " findings");
  const double t = seconds_since(t0);
  d.add("runtime < 600 s", t < 600.0, std::to_string(t) + " s");
  return d.done();
}

Outcome criterion6() {
  RunConfig cfg;
  cfg.command = "g5-negative-check";
  cfg.lambda_max = 6;
  const auto r = run_command(cfg);
  Details d;
  d.add("retraction certificates on " + std::to_string(r.report.value("checks", std::size_t{0})) + " instances", r.exit_code == 0,
        r.report.contains("first_exception") ? r.report["first_exception"].dump() : "");
  return d.done();
}

Outcome criterion7() {
  Details d;
  std::size_t checked = 0, failed = 0;
  std::string first;
  auto check = [&](const Ladder& f) {
    for (int beta = 0; beta < f.lambda; ++beta) {
      ++checked;
      if (!check_F_beta(beta, f).pass) {
        ++failed;
        if (first.empty()) first = io::to_json(f).dump() + " beta " + std::to_string(beta);
      }
    }
  };
  for (int lambda = 1; lambda <= 6; ++lambda)
    for (std::uint64_t code = 0; code < ladder_count(lambda); ++code) check(ladder_from_code(lambda, code));
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> height(1, 12);
  for (int i = 0; i < 1000; ++i) check(random_ladder(height(rng), rng));
  d.add("check_F_beta on " + num(checked) + " (ladder, beta) pairs", failed == 0, first);
  return d.done();
}

// Every injective map from a's points into b's, by subsets and orderings.
bool embeds_by_injections(const FinStructure& a, const FinStructure& b) {
  if (a.size > b.size) return false;
  std::vector<int> image(static_cast<std::size_t>(a.size));
  std::vector<char> used(static_cast<std::size_t>(b.size), 0);
  std::function<bool(std::size_t)> rec = [&](std::size_t i) {
    if (i == image.size()) return b.induced(image) == a;
    for (int y = 0; y < b.size; ++y) {
      if (used[static_cast<std::size_t>(y)]) continue;
      used[static_cast<std::size_t>(y)] = 1;
      image[i] = y;
      const bool found = rec(i + 1);
      used[static_cast<std::size_t>(y)] = 0;
      if (found) return true;
    }
    return false;
  };
  return rec(0);
}

Outcome criterion8() {
  const auto t0 = Clock::now();
  Details d;
  const auto sig = default_signature();
  const auto cls = check_class_olive(sig, 5);
  d.add("all " + num(cls.ladders) + " ladder models at lambda 5 omit N*", cls.pass() && cls.ladders == 1024, cls.first_failure);

  std::mt19937_64 rng(88);
  std::size_t disagreements = 0, positives = 0;
  for (int t = 0; t < 500; ++t) {
    const int nb = 1 + static_cast<int>(rng() % 6);
    const auto b = random_structure(sig, nb, 0.2 + 0.15 * (t % 5), rng);
    const int na = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(nb));
    FinStructure a;
    if (t % 2 == 0) {
      std::vector<int> pick(static_cast<std::size_t>(nb));
      std::iota(pick.begin(), pick.end(), 0);
      std::shuffle(pick.begin(), pick.end(), rng);
      pick.resize(static_cast<std::size_t>(na));
      a = b.induced(pick);
      if (t % 6 == 0 && !a.P().empty()) a.P().erase(a.P().begin());
    } else {
      a = random_structure(sig, na, 0.3, rng);
    }
    const bool fast = embeds(a, b).has_value();
    positives += fast;
    disagreements += fast != embeds_by_injections(a, b);
  }
  d.add("embeds agrees with the injection oracle on 500 pairs (" + num(positives) + " embeddable)", disagreements == 0,
        num(disagreements) + " disagreements");

  RunConfig cfg;
  cfg.command = "amalgam-check";
  cfg.count = 200;
  cfg.seed = 8;
  const auto r = run_command(cfg);
  const auto& rep = r.report;
  d.add("disjoint_union keeps omission on 200 instances", rep.contains("disjoint_union") && rep["disjoint_union"]["failures"] == 0,
        rep.contains("disjoint_union") ? rep["disjoint_union"]["first_failure"].get<std::string>() : rep.dump());
  d.add("nsop4_amalgam passes on 200 instances", rep.contains("nsop4_amalgam") && rep["nsop4_amalgam"]["failures"] == 0,
        rep.contains("nsop4_amalgam") ? rep["nsop4_amalgam"]["first_failure"].get<std::string>() : rep.dump());
  const double t = seconds_since(t0);
  d.add("runtime < 600 s", t < 600.0, std::to_string(t) + " s");
  return d.done();
}

Outcome criterion9() {
  Details d;
  for (auto v : {SigmaVariant::Repaired, SigmaVariant::Literal}) {
    const auto cert = impossibility_certificate(v);
    d.add("symbolic certificate (" + to_string(v) + ")", cert.pass);
  }

  const auto formulas = olive_formulas(SigmaVariant::Repaired);
  struct Source {
    std::string name;
    std::size_t trials;
    std::function<ForbiddenSample(std::size_t, std::uint64_t)> run;
  };
  auto sym = [&](int n) {
    return [n, &formulas](std::size_t trials, std::uint64_t seed) {
      const SymmetricGroup g(n);
      std::mt19937_64 rng(seed);
      std::uniform_int_distribution<std::size_t> pick(0, g.elements().size() - 1);
      return sample_forbidden(g, [&] { return g.elements()[pick(rng)]; }, trials, formulas);
    };
  };
  auto toy = [&](bool quotient) {
    return [quotient, &formulas](std::size_t trials, std::uint64_t seed) {
      const KParams p = quotient ? make_K2(toy_params()) : toy_params();
      const KContext ctx(p);
      std::mt19937_64 rng(seed);
      return sample_forbidden(ctx, [&] { return random_k_element(rng, p); }, trials, formulas);
    };
  };
  const std::vector<Source> sources{{"toy K", 200000, toy(false)}, {"toy K quotient", 200000, toy(true)}, {"S3", 100000, sym(3)},
                                    {"S4", 250000, sym(4)},        {"S5", 250000, sym(5)}};
  std::size_t total = 0;
  for (std::size_t s = 0; s < sources.size(); ++s) {
    constexpr std::size_t kChunk = 10000;
    const auto parts = parallel_map<ForbiddenSample>(sources[s].trials / kChunk, [&](std::size_t c) { return sources[s].run(kChunk, 9000 + 100 * s + c); });
    ForbiddenSample sum;
    for (const auto& p : parts) sum += p;
    total += sum.trials;
    d.add(sources[s].name + ": " + num(sum.full) + " full configurations in " + num(sum.trials) + " tuples (" + num(sum.hypotheses) +
              " with the hypotheses, " + num(sum.psi_eq) + " also with the first psi equation)",
          sum.full == 0);
  }
  d.add("tuples sampled: " + num(total), total == 1000000);
  return d.done();
}

Outcome criterion10() {
  const auto dir = std::filesystem::temp_directory_path() / "olive_acceptance";
  std::filesystem::create_directories(dir);
  const auto tree_path = (dir / "tree.json").string();
  {
    std::mt19937_64 rng(10);
    std::ofstream(tree_path) << io::to_json(random_etr(6, rng)).dump();
  }

  auto cfg = [](std::string command, std::uint64_t seed) {
    RunConfig c;
    c.command = std::move(command);
    c.seed = seed;
    return c;
  };
  std::vector<RunConfig> runs;
  runs.push_back(cfg("sigma-check", 1));
  {
    auto c = cfg("kgroup-selftest", 2);
    c.toy = true;
    c.count = 20000;
    runs.push_back(c);
  }
  {
    auto c = cfg("kgroup-selftest", 3);
    c.count = 40000;
    runs.push_back(c);
  }
  {
    auto c = cfg("partial-iso-check", 4);
    c.count = 500;
    runs.push_back(c);
  }
  runs.push_back(cfg("toy-conjugator", 5));
  for (const char* name : {"witness-verify", "forbidden-scan"}) {
    auto c = cfg(name, 6);
    c.lambda = 6;
    c.count = 30;
    runs.push_back(c);
  }
  {
    auto c = cfg("g5-negative-check", 7);
    c.lambda_max = 5;
    runs.push_back(c);
  }
  {
    auto c = cfg("relational-olive", 8);
    c.lambda_max = 4;
    runs.push_back(c);
  }
  runs.push_back(cfg("nstar-build", 9));
  {
    auto c = cfg("amalgam-check", 10);
    c.count = 60;
    runs.push_back(c);
  }
  {
    auto c = cfg("etr-validate", 11);
    c.input = tree_path;
    runs.push_back(c);
  }

  Details d;
  std::size_t covered = 0;
  for (const auto& c : runs) {
    set_thread_count(1);
    const auto a = run_command(c);
    set_thread_count(4);
    const auto b = run_command(c);
    set_thread_count(0);
    const bool same = a.report.dump(2) == b.report.dump(2) && a.exit_code == b.exit_code;
    if (!same) d.add(c.command, false, "reports differ between 1 and 4 threads");
    covered += same;
  }
  d.add(num(covered) + " of " + num(runs.size()) + " subcommands byte-identical across 1 and 4 threads", covered == runs.size());
  std::set<std::string> names;
  for (const auto& c : runs) names.insert(c.command);
  d.add("every subcommand covered", names.size() == command_names().size());
  std::filesystem::remove_all(dir);
  return d.done();
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                       criterion6, criterion7, criterion8, criterion9, criterion10};
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      selected.push_back(std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]...\n", argv[0]);
      return 2;
    }
  }
  if (selected.empty())
    for (int i = 1; i <= static_cast<int>(criteria.size()); ++i) selected.push_back(i);

  int failed = 0;
  for (int n : selected) {
    if (n < 1 || n > static_cast<int>(criteria.size())) {
      std::fprintf(stderr, "no criterion %d\n", n);
      return 2;
    }
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[static_cast<std::size_t>(n - 1)]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %d: %s (%.2f s) %s\n", n, o.pass ? "PASS" : "FAIL", seconds_since(t0), o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
