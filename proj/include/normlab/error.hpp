#pragma once

#include <stdexcept>
#include <string>

namespace normlab {

enum class ErrorKind {
  MalformedInput,   // non-finite coordinates, unparsable numbers
  InvalidExponent,
  Configuration,    // exponent or dimension mismatch, bad config document
  DegenerateInput,  // zero operator or zero vector where a direction is needed
  Precondition,
  InvalidDegree,
  InvalidShape,
  Refused,          // oracle asked to work outside its deliberate scale
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace normlab
