#pragma once

#include <stdexcept>
#include <string>

namespace discrex {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied value broke an operation's precondition.
class PreconditionError : public Error {
public:
  using Error::Error;
};

/// Malformed input: unknown names, bad literals, broken JSON documents.
class InputError : public Error {
public:
  using Error::Error;
};

/// A decision graph or circuit failed structural validation.
class ValidationError : public Error {
public:
  using Error::Error;
};

/// Enumeration or resolution budget exceeded.
class CapacityError : public Error {
public:
  using Error::Error;
};

} // namespace discrex
