#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "olive/commands.hpp"

namespace {

struct Flags {
  std::string variant = "repaired";
  std::string output;
};

void add_common(CLI::App* sub, olive::RunConfig& cfg, Flags& flags) {
  sub->add_option("--seed", cfg.seed, "64-bit seed (default 0)");
  sub->add_option("--variant", flags.variant, "sigma_* variant: repaired, literal, raw-printed");
  sub->add_option("--m", cfg.m, "tier parameter m (default 6)");
  sub->add_option("-o,--output", flags.output, "also write the report to this file");
}

template <class T>
CLI::Option* add_optional(CLI::App* sub, const std::string& name, std::optional<T>& target, const std::string& help) {
  return sub->add_option_function<T>(name, [&target](const T& v) { target = v; }, help);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite verification of olive-property witnesses"};
  app.require_subcommand(1);
  olive::RunConfig cfg;
  Flags flags;

  auto* sigma = app.add_subcommand("sigma-check", "sigma_* vanishing certificates and a nonvanishing witness in S4");
  auto* kself = app.add_subcommand("kgroup-selftest", "relations and associativity of the tiered group");
  kself->add_flag("--toy", cfg.toy, "use the toy parameters (m = 1)");
  add_optional(kself, "--count", cfg.count, "associativity samples (default 1e5 toy, 1e6 full)");
  auto* piso = app.add_subcommand("partial-iso-check", "the partial isomorphisms pi_s on the quotient");
  add_optional(piso, "--count", cfg.count, "random products per pair (default 10000)");
  auto* conj = app.add_subcommand("toy-conjugator", "materialize a conjugator in the toy quotient");

  auto* wit = app.add_subcommand("witness-verify", "build and verify the product witness for ladders");
  auto* scan = app.add_subcommand("forbidden-scan", "scan witness families for the forbidden configuration");
  for (auto* sub : {wit, scan}) {
    add_optional(sub, "--lambda", cfg.lambda, "ladder height")->required();
    sub->add_flag("--exhaustive", cfg.exhaustive, "every ladder of this height (lambda <= 6)");
    add_optional(sub, "--count", cfg.count, "number of seeded random ladders (default 100)");
  }

  auto* g5 = app.add_subcommand("g5-negative-check", "retraction certificates for triples outside J");
  add_optional(g5, "--lambda-max", cfg.lambda_max, "largest ladder height (default 6)");

  auto* rel = app.add_subcommand("relational-olive", "ladder models omit N* for every ladder");
  add_optional(rel, "--lambda-max", cfg.lambda_max, "largest ladder height, at most 6 (default 5)");
  auto* nstar = app.add_subcommand("nstar-build", "print the forbidden structure N*");
  auto* amal = app.add_subcommand("amalgam-check", "disjoint unions and 4-cycle amalgams on random instances");
  add_optional(amal, "--count", cfg.count, "instances of each kind (default 200)");
  for (auto* sub : {rel, nstar, amal}) {
    sub->add_option("--eta", cfg.eta, "eta as a list of 0/1 (default 0 1 0 1)")->delimiter(',');
    sub->add_option("--k", cfg.k, "k0 k1 (default 2 2)")->delimiter(',');
  }

  auto* etr = app.add_subcommand("etr-validate", "check the expanded-tree axioms on a JSON tree file");
  etr->add_option("file", cfg.input, "tree file")->required();

  for (auto* sub : app.get_subcommands({})) add_common(sub, cfg, flags);

  try {
    app.parse(argc, argv);
    cfg.variant = olive::parse_sigma_variant(flags.variant);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  const auto result = olive::run_command(cfg);
  const std::string text = result.report.dump(2) + "\n";
  std::cout << text;
  if (!flags.output.empty()) {
    std::ofstream out(flags.output);
    if (!out) {
      std::cerr << "cannot write " << flags.output << "\n";
      return 2;
    }
    out << text;
  }
  return result.exit_code;
}
