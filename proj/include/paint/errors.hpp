#pragma once

#include <stdexcept>
#include <string>

namespace paint {

/// Invalid scenario, parameters or initial configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A protocol precondition was broken (duplicate positions, misuse of a
/// decision helper).
class ProtocolViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace paint
