#pragma once

#include <stdexcept>
#include <string>

namespace wasnem {

// Invalid or inconsistent configuration. what() renders the single-line
// machine-parsable form "layer:field:message".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string layer, std::string field, const std::string& message);

  const std::string& layer() const noexcept { return layer_; }
  const std::string& field() const noexcept { return field_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string layer_;
  std::string field_;
  std::string message_;
};

// A model input outside the domain of a formula (negative window, non-radix-2
// FFT, non-integral convolution output, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The quantity requested is infinite: a link that never succeeds (q_x = 1) or
// a node that consumes nothing (infinite lifetime).
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wasnem
