// Copyright 2026 The pivring Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace pivring {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Image or grid sizes that do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Invalid parameters (pattern larger than window, zero density, bad config file...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed or unreadable input data (PGM files, reference CSVs).
class InputError : public Error {
 public:
  using Error::Error;
};

/// The ring simulation ran out of events while work was still pending.
class SimulationDeadlock : public Error {
 public:
  SimulationDeadlock(const std::string& what, std::vector<std::string> stalled)
      : Error(what), stalled_modules_(std::move(stalled)) {}

  const std::vector<std::string>& stalled_modules() const noexcept { return stalled_modules_; }

 private:
  std::vector<std::string> stalled_modules_;
};

}  // namespace pivring
