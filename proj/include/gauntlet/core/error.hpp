#pragma once

#include <stdexcept>
#include <string>

namespace gauntlet {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration detected at construction or load time.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A selection references tiles outside the round, or repeats a tile.
class InvalidSelection : public Error {
 public:
  using Error::Error;
};

/// Malformed PGM / base64 / wire payload.
class FormatError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Problem too large for exhaustive enumeration.
class SizeError : public Error {
 public:
  using Error::Error;
};

}  // namespace gauntlet
