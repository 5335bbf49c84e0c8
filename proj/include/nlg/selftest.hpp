// Copyright 2026 The nlgames Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nlg/compiled.hpp"

namespace nlg {

// Normalized states with nonnegative weights summing to one.
struct WeightedStates {
  std::vector<double> weights;
  std::vector<CVec> states;
};

// Post-measurement states of the branch x, or of all branches averaged
// uniformly over x when x < 0.
WeightedStates prover_states(const HonestProver& p, int x = -1);

double anticommutator_residual(const CMat& b1, const CMat& b2, double target,
                               const WeightedStates& states);
// Sum of weights * |op psi|^2.
double weighted_norm(const CMat& op, const WeightedStates& states);

struct ResidualCheck {
  std::string name;
  double value = 0;
  std::optional<double> bound;  // empty for residuals reported without a claim
  bool pass() const { return !bound || value <= *bound + 1e-12; }
};

struct SelfTestReport {
  std::string family;
  double eps = 0;    // score deficit
  double delta = 0;  // encryption slack
  std::vector<ResidualCheck> residuals;
  std::map<std::string, double> info;
  std::vector<double> extracted;  // Jordan block angles when available
  bool pass = false;

  const ResidualCheck& at(const std::string& name) const;
};

// Angles of the 2x2 blocks shared by two binary observables, ascending.
std::vector<double> jordan_extract(const CMat& b1, const CMat& b2);

SelfTestReport mnx_selftest(const HonestProver& p, const MnxParams& params, double delta);
SelfTestReport elegant_selftest(const HonestProver& p, double delta);
SelfTestReport satwap_selftest_residuals(const HonestProver& p, int d);

// exp(i t H) m exp(-i t H) for Hermitian H.
CMat conjugate_by_flow(const CMat& m, const CMat& h, double t);

// Optimal provers with one of Bob's observables rotated by theta.
HonestProver perturbed_elegant_prover(double theta);
HonestProver perturbed_mnx_prover(const MnxParams& params, double theta);
HonestProver perturbed_satwap_prover(int d, double theta);

}  // namespace nlg
