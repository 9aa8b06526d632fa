// Copyright 2026 The selfsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <istream>
#include <string>

#include "selfsim/engine.hpp"

namespace selfsim {

/// Parses `[model] [grid] [rg] [output]` sections of `key = value` lines.
/// Unknown sections or keys raise Error(Config).
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_string(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Inverse of parse_config, for reproducibility copies next to results.
std::string format_config(const ExperimentConfig& cfg);

}  // namespace selfsim
