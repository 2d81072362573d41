#pragma once

#include "olive/commands.hpp"
#include "olive/io.hpp"

namespace olive::commands {

using nlohmann::json;

inline int exit_for(bool pass) { return pass ? 0 : 1; }

inline CommandResult finish(json report, bool pass) {
  report["pass"] = pass;
  return {std::move(report), exit_for(pass)};
}

}  // namespace olive::commands
