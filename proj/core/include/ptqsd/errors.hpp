// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace ptqsd {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter is outside its documented domain (non-finite, wrong range, ...).
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// |r sin(theta)| >= s: the spectrum is no longer real and the propagator
/// closed form does not apply.
class BrokenRegime : public InvalidParameter {
 public:
  using InvalidParameter::InvalidParameter;
};

/// The evolved pair is not orthogonal at the requested time, so no
/// unambiguous POVM exists there.
class NotDiscriminating : public Error {
 public:
  using Error::Error;
};

/// Two of the three input states coincide or are orthogonal.
class DegenerateTriple : public Error {
 public:
  using Error::Error;
};

/// alpha is below the critical value, the states never become orthogonal.
class NoOrthogonalityTime : public Error {
 public:
  using Error::Error;
};

/// An internal numeric invariant failed; indicates upstream corruption.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace ptqsd
