#pragma once

#include <stdexcept>
#include <string>

namespace bogl {

// Input outside an operation's mathematical domain.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Malformed or unknown configuration.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Caller misuse that is not a domain issue (e.g. too few snapshots).
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// NaN or overflow in a computed result.
struct NumericFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// NaN or overflow during time stepping.
struct IntegrationFailure : NumericFailure {
  IntegrationFailure(const std::string& what, double t) : NumericFailure(what), time(t) {}
  double time;
};

}  // namespace bogl
