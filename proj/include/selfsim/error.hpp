// Copyright 2026 The selfsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace selfsim {

enum class ErrorKind {
  NonFinite,
  OutOfDomain,
  ZeroField,
  AsymmetricGrid,
  ZeroNorm,
  DegenerateBase,
  Unstable,
  SingularSystem,
  NegativeConcentration,
  OutOfRegime,
  InvalidExponents,
  DomainError,
  InvalidArgument,
  Config,
  UnknownOracle,
  Io,
};

const char* to_string(ErrorKind kind) noexcept;

/// Numerical failures (Unstable, NonFinite, ...) are distinguished from
/// configuration problems by `is_numeric()`; the CLI maps them to exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  bool is_numeric() const noexcept;

 private:
  ErrorKind kind_;
};

}  // namespace selfsim
