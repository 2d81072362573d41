#include <functional>
#include <map>

#include "olive/commands.hpp"
#include "olive/error.hpp"

namespace olive {

namespace {

using Handler = std::function<CommandResult(const RunConfig&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table{
      {"sigma-check", commands::sigma_check},
      {"kgroup-selftest", commands::kgroup_selftest},
      {"partial-iso-check", commands::partial_iso_check},
      {"toy-conjugator", commands::toy_conjugator},
      {"witness-verify", commands::witness_verify},
      {"g5-negative-check", commands::g5_negative_check},
      {"forbidden-scan", commands::forbidden_scan},
      {"relational-olive", commands::relational_olive},
      {"nstar-build", commands::nstar_build},
      {"amalgam-check", commands::amalgam_check},
      {"etr-validate", commands::etr_validate},
  };
  return table;
}

CommandResult failure(const RunConfig& cfg, const std::string& kind, const std::string& message, int code) {
  return {{{"command", cfg.command}, {"seed", cfg.seed}, {"pass", false}, {"error", {{"kind", kind}, {"message", message}}}}, code};
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : handlers()) out.push_back(name);
    return out;
  }();
  return names;
}

CommandResult run_command(const RunConfig& cfg) {
  const auto it = handlers().find(cfg.command);
  if (it == handlers().end()) return failure(cfg, "usage", "unknown command '" + cfg.command + "'", 2);
  try {
    auto result = it->second(cfg);
    result.report["command"] = cfg.command;
    result.report["seed"] = cfg.seed;
    return result;
  } catch (const UsageError& e) {
    return failure(cfg, "usage", e.what(), 2);
  } catch (const std::invalid_argument& e) {
    return failure(cfg, "usage", e.what(), 2);
  } catch (const std::out_of_range& e) {
    return failure(cfg, "usage", e.what(), 2);
  } catch (const nlohmann::json::exception& e) {
    return failure(cfg, "usage", e.what(), 2);
  } catch (const Error& e) {
    return failure(cfg, "contract", e.what(), 1);
  } catch (const std::exception& e) {
    return failure(cfg, "internal", e.what(), 1);
  }
}

}  // namespace olive
