#pragma once

#include <stdexcept>
#include <string>

namespace lgv {

// Precondition / domain violations (bad angles, malformed specs, mismatched sizes).
class contract_error : public std::domain_error {
 public:
  explicit contract_error(const std::string& what) : std::domain_error(what) {}
};

// Enumeration would exceed the configured size guard.
class resource_error : public std::runtime_error {
 public:
  explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

// Internal numeric checks failed (probabilities off by more than tolerance, etc).
class consistency_error : public std::runtime_error {
 public:
  explicit consistency_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lgv
