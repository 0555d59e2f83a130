#pragma once

#include <stdexcept>
#include <string>

namespace chromatile {

// Base class of every error raised for bad inputs or infeasible requests.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: parse errors, dimension mismatches, violated preconditions.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Well-formed input for which the construction cannot be carried out
// (non-representable moduli, shifts out of range, pigeonhole failure).
class Infeasible : public Error {
 public:
  using Error::Error;
};

// A produced object failed its certificate check.
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

// Two writes disagreed on the color of one edge. Always an internal bug.
class WriteConflict : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace chromatile
