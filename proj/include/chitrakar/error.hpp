#pragma once

#include <stdexcept>
#include <string>

namespace chitrakar {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class DecodeError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class UnsupportedParameter : public Error {
 public:
  using Error::Error;
};

// The stipple source has no dark pixel to sample from.
class NoStippleMass : public Error {
 public:
  using Error::Error;
};

// An algorithmic invariant was violated (e.g. an uncross move that does not
// shorten the tour).
class InvariantError : public Error {
 public:
  using Error::Error;
};

// Wraps an error raised inside one pipeline stage.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& what)
      : Error(stage + ": " + what), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace chitrakar
