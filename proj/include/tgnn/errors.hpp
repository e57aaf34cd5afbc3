// Copyright 2026 The tgnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tgnn {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value violates the invariants of its type (bad edge endpoint, label
/// dimension mismatch, duplicate registry entry, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A name lookup (template, proposition, node id) failed.
class NotFound : public Error {
 public:
  using Error::Error;
};

/// Exhaustive procedures refuse inputs above their desk-scale limits.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

/// Formula text could not be parsed. `position()` is a byte offset into the
/// input.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace tgnn
