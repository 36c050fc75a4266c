#pragma once

#include <stdexcept>
#include <string>

namespace funcerr {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A field was asked for a derivative it does not advertise.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

/// Arguments violate an operation's precondition (conformity level, gamma <= 0, ...).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Elliptic/parabolic mismatch or an invalid box.
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace funcerr
