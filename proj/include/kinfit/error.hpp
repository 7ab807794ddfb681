#pragma once

#include <stdexcept>
#include <string>

namespace kinfit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Malformed file content; the message carries the line/field context.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Well-formed input that violates a model or observation invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class DegenerateConfiguration : public Error {
 public:
  using Error::Error;
};

class NumericalFailure : public Error {
 public:
  using Error::Error;
};

class UnsupportedSkeleton : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace kinfit
