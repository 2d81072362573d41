#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "olive/commands.hpp"
#include "olive/etr.hpp"
#include "olive/io.hpp"
#include "olive/relational.hpp"

using namespace olive;

namespace {

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path.string();
}

RunConfig etr_config(const std::string& path) {
  RunConfig c;
  c.command = "etr-validate";
  c.input = path;
  return c;
}

}  // namespace

TEST_CASE("json round trips") {
  std::mt19937_64 rng(3);
  const KParams p = toy_params();
  for (int i = 0; i < 20; ++i) {
    const auto x = random_k_element(rng, p);
    CHECK(io::kelement_from_json(io::to_json(x), p) == x);
  }
  const auto f = random_ladder(7, rng);
  CHECK(io::ladder_from_json(io::to_json(f)) == f);
  const auto sig = default_signature();
  CHECK(io::signature_from_json(io::to_json(sig)) == sig);
  const auto s = random_structure(sig, 5, 0.4, rng);
  CHECK(io::structure_from_json(io::to_json(s)) == s);
  const auto t = random_etr(5, rng);
  CHECK(io::tree_from_json(io::to_json(t)) == t);
}

TEST_CASE("exit codes") {
  RunConfig unknown;
  unknown.command = "no-such-command";
  CHECK(run_command(unknown).exit_code == 2);

  RunConfig missing_lambda;
  missing_lambda.command = "witness-verify";
  CHECK(run_command(missing_lambda).exit_code == 2);

  CHECK(run_command(etr_config("/nonexistent/tree.json")).exit_code == 2);
  CHECK(run_command(etr_config(write_temp("olive_bad.json", "{not json"))).exit_code == 2);

  const auto empty = run_command(etr_config(write_temp("olive_empty.json", "{}")));
  CHECK(empty.exit_code == 0);
  CHECK(empty.report["violations"].empty());

  // Node index past the end is structural, not an axiom violation.
  const auto broken = run_command(etr_config(write_temp("olive_broken.json", R"({"parent":[-1,5]})")));
  CHECK(broken.exit_code == 1);
  CHECK(broken.report.contains("structural_error"));

  // P = {0}, F0(0) = F1(0) = 1: not an exact cover of the children.
  const auto bad = run_command(etr_config(write_temp("olive_cover.json",
      R"({"parent":[-1,0],"linear_order":[0,1],"P":[0],"F0":[[0,1]],"F1":[[0,1]]})")));
  CHECK(bad.exit_code == 1);
  CHECK_FALSE(bad.report["violations"].empty());
}

TEST_CASE("reports carry command and seed") {
  RunConfig c;
  c.command = "nstar-build";
  c.seed = 17;
  const auto r = run_command(c);
  CHECK(r.exit_code == 0);
  CHECK(r.report["command"] == "nstar-build");
  CHECK(r.report["seed"] == 17);
}
