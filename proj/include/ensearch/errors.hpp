#pragma once

#include <stdexcept>
#include <string>

namespace ensearch {

// Caller violated a precondition (bad index, wrong tuple length, n out of range).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed external input: system files, polynomial expressions, checkpoints.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured work cap would be exceeded. Raised instead of returning a
// partial answer.
class ResourceCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ensearch
