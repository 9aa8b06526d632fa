// Copyright 2026 The selfsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "selfsim/error.hpp"

namespace selfsim {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::ZeroField: return "ZeroField";
    case ErrorKind::AsymmetricGrid: return "AsymmetricGrid";
    case ErrorKind::ZeroNorm: return "ZeroNorm";
    case ErrorKind::DegenerateBase: return "DegenerateBase";
    case ErrorKind::Unstable: return "Unstable";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::NegativeConcentration: return "NegativeConcentration";
    case ErrorKind::OutOfRegime: return "OutOfRegime";
    case ErrorKind::InvalidExponents: return "InvalidExponents";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Config: return "Config";
    case ErrorKind::UnknownOracle: return "UnknownOracle";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

bool Error::is_numeric() const noexcept {
  switch (kind_) {
    case ErrorKind::NonFinite:
    case ErrorKind::ZeroField:
    case ErrorKind::ZeroNorm:
    case ErrorKind::DegenerateBase:
    case ErrorKind::Unstable:
    case ErrorKind::SingularSystem:
    case ErrorKind::NegativeConcentration:
      return true;
    default:
      return false;
  }
}

}  // namespace selfsim
