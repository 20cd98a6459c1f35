#pragma once

#include <stdexcept>
#include <string>

namespace rulebasis {

/// Malformed input data (FIMI or CSV). Carries the offending location in the message.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller violated an operation's precondition: unknown ids, invalid plans, bad options.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Well-formed request that cannot be carried out on this data (e.g. mining an empty table).
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rulebasis
