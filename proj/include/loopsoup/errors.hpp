#pragma once

#include <stdexcept>
#include <string>

namespace loopsoup {

// Error taxonomy mirrored by the CLI exit codes:
//   config_error -> 2, numerical_error -> 3, resource_error -> 4.
// Plain domain violations reuse std::domain_error.

class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

class resource_error : public std::runtime_error {
 public:
  explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace loopsoup
