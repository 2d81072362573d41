#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "olive/words.hpp"

namespace olive {

/// Options shared by all subcommands. Unset optionals take the per-command
/// defaults listed in the CLI help.
struct RunConfig {
  std::string command;
  std::uint64_t seed = 0;
  int m = 6;
  SigmaVariant variant = SigmaVariant::Repaired;
  bool toy = false;
  std::optional<int> lambda;
  std::optional<int> lambda_max;
  bool exhaustive = false;
  std::optional<std::size_t> count;
  std::vector<int> eta{0, 1, 0, 1};
  std::array<int, 2> k{2, 2};
  std::string input;
};

struct CommandResult {
  nlohmann::json report;
  int exit_code = 0;  // 0 all contracts hold, 1 a contract failed, 2 usage error
};

/// Thrown for bad flags or inputs; run_command turns it into exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::vector<std::string>& command_names();

/// Dispatches on cfg.command. Never throws: errors become reports with an
/// "error" field.
CommandResult run_command(const RunConfig& cfg);

namespace commands {
CommandResult sigma_check(const RunConfig& cfg);
CommandResult kgroup_selftest(const RunConfig& cfg);
CommandResult partial_iso_check(const RunConfig& cfg);
CommandResult toy_conjugator(const RunConfig& cfg);
CommandResult witness_verify(const RunConfig& cfg);
CommandResult g5_negative_check(const RunConfig& cfg);
CommandResult forbidden_scan(const RunConfig& cfg);
CommandResult relational_olive(const RunConfig& cfg);
CommandResult nstar_build(const RunConfig& cfg);
CommandResult amalgam_check(const RunConfig& cfg);
CommandResult etr_validate(const RunConfig& cfg);
}  // namespace commands

}  // namespace olive
