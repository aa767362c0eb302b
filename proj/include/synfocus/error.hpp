// Copyright 2026 The synfocus Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace synfocus {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad geometry, bad sizes, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed (solver did not converge, non-finite output).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Malformed or invalid experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace synfocus
