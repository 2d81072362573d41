#pragma once

#include <stdexcept>
#include <string>

namespace olive {

/// Raised when a computation reaches a state its contract rules out, e.g. a
/// parameter set for which the tiered group does not produce a quotient
/// generator. Input validation uses std::invalid_argument / std::out_of_range.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace olive
