#pragma once

#include <stdexcept>
#include <string>

namespace cevian {

/// Base of every domain error raised by the library. The CLI maps these to
/// exit code 3; anything else escaping a command is a bug.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PrecisionTooLow : public Error {
 public:
  using Error::Error;
};

class DegenerateConfig : public Error {
 public:
  using Error::Error;
};

class DegenerateTriangle : public Error {
 public:
  using Error::Error;
};

class PointOutside : public Error {
 public:
  using Error::Error;
};

class CenterNotInterior : public Error {
 public:
  using Error::Error;
};

class InvalidRelation : public Error {
 public:
  using Error::Error;
};

class UnsatisfiablePredicate : public Error {
 public:
  using Error::Error;
};

class ZeroInput : public Error {
 public:
  using Error::Error;
};

class StoreFailure : public Error {
 public:
  using Error::Error;
};

class SchemaMismatch : public Error {
 public:
  using Error::Error;
};

class TooFewPoints : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace cevian
