// Copyright 2026 The nlgames Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "nlg/sdp.hpp"
#include "nlg/strategy.hpp"

namespace nlg {

constexpr double kLambdaFloor = 1e-12;

// xi 1 - B = sum_x (lambda_x / 2) (A_x - sum_y F(x,y) B_y)^2 + P(B), with
// P(B) = offset 1 - sum G(y,y') B_y B_y'.
struct SosCertificate {
  Mat phi;
  Vec lambda_a;
  Vec lambda_b;
  Mat F;
  Mat G;
  double offset = 0;
  double xi_q = 0;
  std::vector<Eigen::Index> dropped_rows;  // zero rows of phi; no square emitted

  bool keeps(Eigen::Index x) const;
};

SosCertificate build_sos(const BellFunctional& fn, const SdpSolution& sol);
// Same construction from a dual-feasible multiplier vector (Alice then Bob).
SosCertificate build_sos(const BellFunctional& fn, const Vec& lambda);
// Closed-form certificate for elegant(): four squares of weight sqrt(3)/2.
SosCertificate elegant_certificate();

// min eigenvalue of Lambda_B - phi^T Lambda_A^{-1} phi.
double schur_defect(const SosCertificate& cert);

// Frobenius residual of the operator identity with A_x (x) 1 and 1 (x) B_y.
double verify_sos_identity(const SosCertificate& cert, const QuantumStrategy& realization);

CMat bob_poly_operator(const SosCertificate& cert, const std::vector<CMat>& bob);
double bob_poly_psd_defect(const SosCertificate& cert, const std::vector<CMat>& bob);

// Column i of u (in R^nA) and of v (in R^nB).
struct FactorVectors {
  Mat u;
  Mat v;
};

FactorVectors factor_vectors(const BellFunctional& fn, const SdpSolution& sol);

struct FactorDefects {
  double uu;      // |sum u u^T - Lambda_A / 2|
  double uv;      // |sum u v^T - phi / 2|
  double vv_psd;  // min eig of Lambda_B / 2 - sum v v^T
};
FactorDefects factor_defects(const FactorVectors& ov, const BellFunctional& fn,
                             const SdpSolution& sol);

// Right side minus left side of the vector inequality for the strategy
// vectors A_x|psi>, B_y|psi>. Nonnegative up to rounding.
double factor_slack(const FactorVectors& ov, const BellFunctional& fn, const SdpSolution& sol,
                    const QuantumStrategy& s);

}  // namespace nlg
