#pragma once

#include <stdexcept>
#include <string>

namespace baga {

// Bad numeric parameter (probability out of range, non-positive constant, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Operation applied to a plasmid with the wrong schema.
class SchemaError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Malformed or incomplete run configuration. `key_path` names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key_path, const std::string& what)
      : std::runtime_error(key_path.empty() ? what : key_path + ": " + what),
        key_path_(std::move(key_path)) {}

  const std::string& key_path() const noexcept { return key_path_; }

 private:
  std::string key_path_;
};

// Regression could not be computed (too few points, non-positive counts).
class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace baga
