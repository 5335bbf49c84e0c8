// Copyright 2026 The nlgames Authors
// SPDX-License-Identifier: Apache-2.0

#include "nlg/sos.hpp"

#include <algorithm>
#include <cmath>

#include "nlg/errors.hpp"

namespace nlg {

bool SosCertificate::keeps(Eigen::Index x) const {
  return std::find(dropped_rows.begin(), dropped_rows.end(), x) == dropped_rows.end();
}

SosCertificate build_sos(const BellFunctional& fn, const SdpSolution& sol) {
  return build_sos(fn, sol.lambda);
}

SosCertificate build_sos(const BellFunctional& fn, const Vec& lambda) {
  const auto nA = fn.nA(), nB = fn.nB();
  if (lambda.size() != nA + nB) throw InputError("multipliers do not match functional");
  SosCertificate c;
  c.phi = fn.phi;
  c.lambda_a = lambda.head(nA).cwiseMax(kLambdaFloor);
  c.lambda_b = lambda.tail(nB).cwiseMax(0.0);
  c.F = Mat::Zero(nA, nB);
  c.G = Mat::Zero(nB, nB);
  double kept = 0.0;
  for (Eigen::Index x = 0; x < nA; ++x) {
    if (fn.phi.row(x).isZero(0.0)) {
      c.dropped_rows.push_back(x);
      continue;
    }
    c.F.row(x) = fn.phi.row(x) / c.lambda_a(x);
    c.G += fn.phi.row(x).transpose() * fn.phi.row(x) / (2.0 * c.lambda_a(x));
    kept += c.lambda_a(x);
  }
  c.offset = c.lambda_b.sum() / 2.0;
  c.xi_q = kept / 2.0 + c.offset;
  return c;
}

SosCertificate elegant_certificate() {
  Vec lambda(7);
  lambda << Vec::Constant(4, std::sqrt(3.0)), Vec::Constant(3, 4.0 / std::sqrt(3.0));
  return build_sos(elegant(), lambda);
}

double schur_defect(const SosCertificate& cert) {
  return min_eigenvalue(Mat(Mat(cert.lambda_b.asDiagonal()) - 2.0 * cert.G));
}

CMat bob_poly_operator(const SosCertificate& cert, const std::vector<CMat>& bob) {
  if (Eigen::Index(bob.size()) != cert.G.rows()) throw InputError("wrong number of Bob observables");
  const auto d = bob.front().rows();
  CMat p = cert.offset * CMat::Identity(d, d);
  for (Eigen::Index y = 0; y < cert.G.rows(); ++y)
    for (Eigen::Index z = 0; z < cert.G.cols(); ++z)
      if (cert.G(y, z) != 0.0) p -= cert.G(y, z) * bob[y] * bob[z];
  return p;
}

double bob_poly_psd_defect(const SosCertificate& cert, const std::vector<CMat>& bob) {
  for (const auto& b : bob)
    if (!is_binary_observable(b)) throw InputError("Bob observable is not binary");
  return min_eigenvalue(bob_poly_operator(cert, bob));
}

double verify_sos_identity(const SosCertificate& cert, const QuantumStrategy& r) {
  const auto nA = cert.phi.rows(), nB = cert.phi.cols();
  if (Eigen::Index(r.alice.size()) != nA || Eigen::Index(r.bob.size()) != nB)
    throw InputError("realization shape does not match certificate");
  for (const auto& m : r.alice)
    if (!is_binary_observable(m)) throw InputError("realization has a non-binary observable");
  for (const auto& m : r.bob)
    if (!is_binary_observable(m)) throw InputError("realization has a non-binary observable");

  const auto dA = r.alice.front().rows(), dB = r.bob.front().rows();
  std::vector<CMat> A, B;
  for (const auto& m : r.alice) A.push_back(lift_left(m, dB));
  for (const auto& m : r.bob) B.push_back(lift_right(m, dA));
  const auto n = dA * dB;

  CMat lhs = cert.xi_q * CMat::Identity(n, n);
  for (Eigen::Index x = 0; x < nA; ++x)
    for (Eigen::Index y = 0; y < nB; ++y) lhs -= cert.phi(x, y) * A[x] * B[y];

  CMat rhs = lift_right(bob_poly_operator(cert, r.bob), dA);
  for (Eigen::Index x = 0; x < nA; ++x) {
    if (!cert.keeps(x)) continue;
    CMat p = A[x];
    for (Eigen::Index y = 0; y < nB; ++y) p -= cert.F(x, y) * B[y];
    rhs += cert.lambda_a(x) / 2.0 * p * p;
  }
  return (lhs - rhs).norm();
}

FactorVectors factor_vectors(const BellFunctional& fn, const SdpSolution& sol) {
  const auto nA = fn.nA();
  Vec la = sol.lambda_a(nA).cwiseMax(kLambdaFloor);
  FactorVectors ov;
  ov.u = Mat((la / 2.0).cwiseSqrt().asDiagonal());
  ov.v = fn.phi.transpose() * (2.0 * la).cwiseSqrt().cwiseInverse().asDiagonal();
  return ov;
}

FactorDefects factor_defects(const FactorVectors& ov, const BellFunctional& fn,
                             const SdpSolution& sol) {
  const auto nA = fn.nA();
  Vec la = sol.lambda_a(nA).cwiseMax(kLambdaFloor);
  Vec lb = sol.lambda_b(nA);
  FactorDefects d;
  d.uu = (ov.u * ov.u.transpose() - Mat(la.asDiagonal()) / 2.0).norm();
  d.uv = (ov.u * ov.v.transpose() - fn.phi / 2.0).norm();
  d.vv_psd = min_eigenvalue(Mat(Mat(lb.asDiagonal()) / 2.0 - ov.v * ov.v.transpose()));
  return d;
}

double factor_slack(const FactorVectors& ov, const BellFunctional& fn, const SdpSolution& sol,
                    const QuantumStrategy& s) {
  const auto nA = fn.nA(), nB = fn.nB();
  const auto dA = s.state.dA, dB = s.state.dB;
  std::vector<CVec> a, b;
  for (const auto& m : s.alice) a.push_back(apply_local(s.state, m, CMat::Identity(dB, dB)));
  for (const auto& m : s.bob) b.push_back(apply_local(s.state, CMat::Identity(dA, dA), m));

  double lhs = 0.0;
  for (Eigen::Index i = 0; i < nA; ++i) {
    CVec w = CVec::Zero(s.state.dim());
    for (Eigen::Index j = 0; j < nA; ++j) w += ov.u(j, i) * a[j];
    for (Eigen::Index j = 0; j < nB; ++j) w -= ov.v(j, i) * b[j];
    lhs += w.squaredNorm();
  }
  double pairing = 0.0;
  for (Eigen::Index i = 0; i < nA; ++i)
    for (Eigen::Index j = 0; j < nB; ++j) pairing += fn.phi(i, j) * a[i].dot(b[j]).real();
  double rhs = sol.lambda_a(nA).cwiseMax(kLambdaFloor).sum() / 2.0 +
               sol.lambda_b(nA).sum() / 2.0 - pairing;
  return rhs - lhs;
}

}  // namespace nlg
