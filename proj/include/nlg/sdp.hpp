// Copyright 2026 The nlgames Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "nlg/game.hpp"

namespace nlg {

struct SdpSolution {
  Mat qtilde;      // unit-diagonal Gram matrix, size nA + nB
  Vec lambda;      // diagonal dual certificate, dual-feasible by construction
  double primal_value = 0;
  double dual_value = 0;  // sum(lambda) / 2
  double gap = 0;
  long iterations = 0;
  bool converged = false;

  Vec lambda_a(Eigen::Index nA) const { return lambda.head(nA); }
  Vec lambda_b(Eigen::Index nA) const { return lambda.tail(lambda.size() - nA); }
};

struct SdpOptions {
  double tol = 1e-9;
  long max_iterations = 200000;
  bool throw_on_failure = true;
  int max_size = 64;
};

// (1/2) [[0, phi], [phi^T, 0]]
Mat lifted_matrix(const Mat& phi);

SdpSolution solve_xor_sdp(const BellFunctional& fn, const SdpOptions& opt = {});
inline SdpSolution solve_xor_sdp(const BellFunctional& fn, double tol) {
  SdpOptions opt;
  opt.tol = tol;
  return solve_xor_sdp(fn, opt);
}

double dual_feasibility_defect(const Vec& lambda, const BellFunctional& fn);
double slackness_residual(const SdpSolution& sol, const BellFunctional& fn);

// Best value of sum phi(x,y) <a_x, b_y> over unit vectors in R^dim found by
// alternating best responses from random starts.
double vector_strategy_oracle(const BellFunctional& fn, int dim, int restarts,
                              std::uint64_t seed);

}  // namespace nlg
