#pragma once

#include <stdexcept>
#include <string>

namespace ifskit {

// Malformed user input: bad config files, out-of-range CLI values,
// parameters outside the family domain, empty clouds. CLI exit code 1.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// A mathematical precondition does not hold: non-contractive map where a
// contraction is required, non-similarity where ball images must be exact,
// s that is not a Moran root. CLI exit code 2.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// A computation would exceed its resource limits (point budget).
// CLI exit code 3.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ifskit
