#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sl0mca {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Vector lengths or grid shapes do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A Gram matrix that must be inverted is (numerically) singular.
class SingularityError : public Error {
 public:
  using Error::Error;
};

// A scalar parameter is outside its valid range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Input is valid in shape but degenerate (e.g. all-zero where a scale is needed).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

// Data read from a file is well-formed but violates a content rule.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class UnsupportedFormatError : public IoError {
 public:
  using IoError::IoError;
};

// Malformed file contents; carries the byte offset where parsing stopped.
class ParseError : public IoError {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : IoError(what + " (at byte offset " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace sl0mca
