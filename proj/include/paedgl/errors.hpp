#pragma once

#include <stdexcept>
#include <string>

namespace paedgl {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Tensor/vector dimensions do not line up.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// A function argument is outside its documented domain.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Out-of-range element access (clause index, vocab id, ...).
class IndexError : public Error {
 public:
  using Error::Error;
};

// A fixed-capacity container (DGL vector, document length) would overflow.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Malformed input file; message carries line number and field.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Invalid or contradictory configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Checkpoint and corpus/config disagree on shapes or vocabulary.
class CompatibilityError : public Error {
 public:
  using Error::Error;
};

// A supposedly deterministic computation produced two different results.
class DeterminismError : public Error {
 public:
  using Error::Error;
};

// Training produced a non-finite loss.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

// Filesystem failure (missing file, short read, ...).
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace paedgl
