#pragma once

#include <stdexcept>
#include <string>

namespace epkit {

// Malformed or inconsistent input (bad spec, unknown vertex, broken precondition).
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// A precondition does not hold for the given instance.
class PreconditionFailed : public InvalidInput {
 public:
  explicit PreconditionFailed(const std::string& what) : InvalidInput(what) {}
};

// A desk-scale size guard refused to run an exponential search.
class GuardExceeded : public std::runtime_error {
 public:
  explicit GuardExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Raised by the driver when it reaches the flat-wall case without a fallback.
class Unimplemented : public std::runtime_error {
 public:
  explicit Unimplemented(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace epkit
