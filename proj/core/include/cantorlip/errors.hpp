#pragma once

#include <stdexcept>
#include <string>

namespace cantorlip {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A mask, index or point does not fit the ambient level, or two operands
/// live at incompatible levels.
class LevelError : public Error {
 public:
  using Error::Error;
};

/// An operation that needs two distinct points received the same point.
class UndefinedPairError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// The request is well formed but outside what the exact algorithms accept
/// (for example exhaustive vertex enumeration above the dimension limit).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

}  // namespace cantorlip
