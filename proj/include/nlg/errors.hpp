// Copyright 2026 The nlgames Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace nlg {

// Every library failure carries the process exit code the CLI reports for it.
class Error : public std::runtime_error {
 public:
  Error(const std::string& what, int exit_code)
      : std::runtime_error(what), exit_code_(exit_code) {}
  int exit_code() const noexcept { return exit_code_; }

 private:
  int exit_code_;
};

class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(what, 2) {}
};

class GuardExceeded : public Error {
 public:
  explicit GuardExceeded(const std::string& what) : Error(what, 3) {}
};

class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, double gap)
      : Error(what, 4), gap_(gap) {}
  double gap() const noexcept { return gap_; }

 private:
  double gap_;
};

class VerificationFailure : public Error {
 public:
  explicit VerificationFailure(const std::string& what) : Error(what, 5) {}
};

}  // namespace nlg
