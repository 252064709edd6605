#pragma once

#include <stdexcept>
#include <string>

namespace micropolar {

// Failure classes map onto distinct CLI exit codes.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BlowupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace micropolar
