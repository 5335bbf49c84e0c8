// Copyright 2026 The nlgames Authors
// SPDX-License-Identifier: Apache-2.0

// Small dense helpers shared by every module. All of them take Eigen
// expressions and work for real and complex scalars alike.

#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <numbers>
#include <complex>
#include <random>

namespace nlg {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Derived>
using PlainOf = typename Derived::PlainObject;

template <typename A, typename B>
auto kron(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  using Scalar = typename Eigen::ScalarBinaryOpTraits<typename A::Scalar,
                                                      typename B::Scalar>::ReturnType;
  DenseMatrix<Scalar> out = Eigen::kroneckerProduct(a.template cast<Scalar>().eval(),
                                                    b.template cast<Scalar>().eval());
  return out;
}

// Lifts a one-party operator onto the bipartite space dA x dB.
template <typename Derived>
CMat lift_left(const Eigen::MatrixBase<Derived>& a, Eigen::Index dB) {
  return kron(a.template cast<cplx>().eval(), CMat::Identity(dB, dB));
}

template <typename Derived>
CMat lift_right(const Eigen::MatrixBase<Derived>& b, Eigen::Index dA) {
  return kron(CMat::Identity(dA, dA), b.template cast<cplx>().eval());
}

template <typename Derived>
PlainOf<Derived> hermitian_part(const Eigen::MatrixBase<Derived>& m) {
  return (m + m.adjoint()) / typename Derived::Scalar(2);
}

template <typename Derived>
PlainOf<Derived> anticommutator(const Eigen::MatrixBase<Derived>& a,
                                const Eigen::MatrixBase<Derived>& b) {
  return a * b + b * a;
}

template <typename Derived>
double min_eigenvalue(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<PlainOf<Derived>> es(hermitian_part(m),
                                                     Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

template <typename Derived>
double max_eigenvalue(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<PlainOf<Derived>> es(hermitian_part(m),
                                                     Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

template <typename Derived>
double operator_norm(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<PlainOf<Derived>> svd(m);
  return svd.singularValues()(0);
}

// Projection of a Hermitian matrix onto the PSD cone.
template <typename Derived>
PlainOf<Derived> psd_part(const Eigen::MatrixBase<Derived>& m) {
  Eigen::SelfAdjointEigenSolver<PlainOf<Derived>> es(hermitian_part(m));
  auto w = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
}

// Sign function of a Hermitian matrix; zero eigenvalues map to +1.
template <typename Derived>
PlainOf<Derived> hermitian_sign(const Eigen::MatrixBase<Derived>& m) {
  Eigen::SelfAdjointEigenSolver<PlainOf<Derived>> es(hermitian_part(m));
  Vec s = es.eigenvalues().unaryExpr([](double v) { return v >= 0.0 ? 1.0 : -1.0; });
  return es.eigenvectors() * s.asDiagonal() * es.eigenvectors().adjoint();
}

// Nearest unitary in Frobenius norm (polar factor).
template <typename Derived>
PlainOf<Derived> unitary_part(const Eigen::MatrixBase<Derived>& m) {
  Eigen::JacobiSVD<PlainOf<Derived>> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

template <typename Derived>
double unitarity_defect(const Eigen::MatrixBase<Derived>& m) {
  return (m.adjoint() * m - PlainOf<Derived>::Identity(m.rows(), m.cols())).norm();
}

// m^k for k >= 0; negative k uses the adjoint, valid for unitaries.
template <typename Derived>
PlainOf<Derived> unitary_power(const Eigen::MatrixBase<Derived>& m, int k) {
  PlainOf<Derived> base = k < 0 ? PlainOf<Derived>(m.adjoint()) : PlainOf<Derived>(m);
  PlainOf<Derived> out = PlainOf<Derived>::Identity(m.rows(), m.cols());
  for (int i = 0; i < std::abs(k); ++i) out = out * base;
  return out;
}

inline cplx root_of_unity(int d, double k) {
  return std::polar(1.0, 2.0 * std::numbers::pi * k / d);
}

// Haar-random unitary via QR of a complex Ginibre matrix.
template <typename Rng>
CMat random_unitary(Eigen::Index n, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMat z(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) z(i, j) = cplx(g(rng), g(rng));
  Eigen::HouseholderQR<CMat> qr(z);
  CMat q = qr.householderQ();
  CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < n; ++i) {
    double a = std::abs(r(i, i));
    if (a > 0) q.col(i) *= r(i, i) / a;
  }
  return q;
}

}  // namespace nlg
