#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tropfw {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Vectors of mismatched length.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Caller passed an argument outside an operation's domain.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Point is not in the Bergman fan (or not ultrametric) where that is required.
class NotInFanError : public Error {
 public:
  using Error::Error;
};

// Degenerate input: a point constant on every circuit (w_min undefined), a
// polytope with a coordinate that is -infinity in every vertex, a tree with
// no internal edge, or a zero total perturbation.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

// An exhaustive search would exceed its size guard.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Input text could not be parsed; offset is a byte position into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " (at byte " + std::to_string(offset) + ")"), message_(what), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }
  // what() without the offset suffix.
  const std::string& message() const noexcept { return message_; }

 private:
  std::string message_;
  std::size_t offset_;
};

// Configuration file violates its schema; key is the offending key path.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& key, const std::string& what)
      : Error(key + ": " + what), key_(key), message_(what) {}

  const std::string& key() const noexcept { return key_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string key_;
  std::string message_;
};

}  // namespace tropfw
