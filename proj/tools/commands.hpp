// Copyright 2026 The nlgames Authors
// SPDX-License-Identifier: Apache-2.0

// Command implementations behind the nlg executable. Each returns a report
// object; `main.cpp` only parses flags and prints.

#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "nlg/errors.hpp"

namespace nlg::cli {

using nlohmann::json;

struct Report {
  json doc;
  int exit_code = 0;
};

struct BoundArgs {
  std::string game;
  std::string method = "all";  // sdp | brute | oracle | all
  double tol = 1e-9;
  long max_iterations = 200000;
  int restarts = 8;
  std::uint64_t seed = 1;
};

struct SosArgs {
  std::string game;
  int verify_dim = 4;
  int realizations = 5;
  std::uint64_t seed = 1;
  double tol = 1e-9;
};

struct CompileArgs {
  std::string game;
  std::string scheme = "pad";
  std::string prover = "honest";  // honest | classical
  long rounds = 10000;
  std::uint64_t seed = 1;
  bool exact = false;
  double delta = 0.0;
  int kappa = 64;
  std::string transcript;  // line-delimited records when non-empty
};

struct SelftestArgs {
  std::string family;  // elegant | mnx | satwap
  double mu = 0, nu = 0, chi = 0;
  int d = 3;
  bool eps_sweep = false;
  double delta = 0.0;
  std::uint64_t seed = 1;
};

struct SatwapArgs {
  int d = 3;
  int realizations = 3;
  std::uint64_t seed = 1;
};

Report cmd_bound(const BoundArgs& a);
Report cmd_sos(const SosArgs& a);
Report cmd_compile(const CompileArgs& a);
Report cmd_selftest(const SelftestArgs& a);
Report cmd_satwap(const SatwapArgs& a);

// Report without the wall-clock field, for reproducibility checks.
json numeric_payload(const json& report);

Report error_report(const std::string& command, const std::string& message, int code);

// Runs `body`, mapping library errors to their exit codes.
template <class F>
Report guarded(const std::string& command, F&& body) {
  try {
    return body();
  } catch (const nlg::Error& e) {
    return error_report(command, e.what(), e.exit_code());
  } catch (const json::exception& e) {
    return error_report(command, e.what(), 2);
  }
}

}  // namespace nlg::cli
