#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tumorsim {

/// Raised when an argument violates an operation's precondition.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a semi-infinite depth integral cannot be bounded or resolved.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by the integrator when the state stops being finite or exceeds the
/// blow-up threshold. Carries the step at which it happened and the last
/// finite norms so partial diagnostics can be reported.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(const std::string& what, std::size_t step_index, double time,
              double last_a1, double last_a1_hom)
      : std::runtime_error(what),
        step_index_(step_index),
        time_(time),
        last_a1_(last_a1),
        last_a1_hom_(last_a1_hom) {}

  std::size_t step_index() const noexcept { return step_index_; }
  double time() const noexcept { return time_; }
  double last_a1() const noexcept { return last_a1_; }
  double last_a1_hom() const noexcept { return last_a1_hom_; }

 private:
  std::size_t step_index_;
  double time_;
  double last_a1_;
  double last_a1_hom_;
};

/// Configuration text rejected by the parser; names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& key, const std::string& what)
      : std::runtime_error(what), key_(key) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace tumorsim
