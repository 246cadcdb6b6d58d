#pragma once

#include <stdexcept>
#include <string>

namespace znls {

// Bad experiment configuration (unknown key, malformed line, ...).  CLI exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An operation precondition was violated.  CLI exit code 2.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace znls
