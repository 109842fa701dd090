#pragma once

#include <stdexcept>
#include <string>

namespace snawb {

// Base for all engine errors. Validation problems that users can fix are
// reported as diagnostic lists instead; exceptions mark contract violations
// (unknown ids, mismatched inputs, programming errors).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

class InputMismatchError : public Error {
 public:
  using Error::Error;
};

}  // namespace snawb
