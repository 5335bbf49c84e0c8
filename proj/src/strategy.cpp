// Copyright 2026 The nlgames Authors
// SPDX-License-Identifier: Apache-2.0

#include "nlg/strategy.hpp"

#include <algorithm>
#include <cmath>

#include "nlg/errors.hpp"

namespace nlg {

CMat StateVector::as_matrix() const {
  return Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      amplitudes.data(), dA, dB);
}

StateVector make_state(CVec amplitudes, Eigen::Index dA, Eigen::Index dB) {
  if (dA < 1 || dB < 1 || amplitudes.size() != dA * dB)
    throw InputError("state length does not match bipartition");
  if (std::abs(amplitudes.norm() - 1.0) > 1e-12) throw InputError("state is not normalized");
  return {std::move(amplitudes), dA, dB};
}

StateVector maximally_entangled(Eigen::Index d) {
  CVec v = CVec::Zero(d * d);
  for (Eigen::Index i = 0; i < d; ++i) v(i * d + i) = 1.0 / std::sqrt(double(d));
  return {v, d, d};
}

StateVector product_zero(Eigen::Index dA, Eigen::Index dB) {
  CVec v = CVec::Zero(dA * dB);
  v(0) = 1.0;
  return {v, dA, dB};
}

bool is_binary_observable(const CMat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  if ((m - m.adjoint()).norm() > 1e-12 * std::max(1.0, m.norm()) + 1e-12) return false;
  return (m * m - CMat::Identity(m.rows(), m.cols())).norm() <= tol;
}

bool is_generalized_observable(const CMat& m, int d, double tol) {
  if (m.rows() != m.cols() || d < 2) return false;
  if (unitarity_defect(m) > tol) return false;
  CMat id = CMat::Identity(m.rows(), m.cols());
  if ((unitary_power(m, d) - id).norm() > tol) return false;
  return (m.adjoint() - unitary_power(m, d - 1)).norm() <= tol;
}

void check_strategy(const QuantumStrategy& s) {
  const auto dA = s.state.dA, dB = s.state.dB;
  if (s.state.amplitudes.size() != dA * dB) throw InputError("state does not match bipartition");
  if (std::abs(s.state.amplitudes.norm() - 1.0) > 1e-10) throw InputError("state is not normalized");
  if (s.order < 2) throw InputError("observable order must be at least 2");
  auto valid = [&](const CMat& m) {
    return s.order == 2 ? is_binary_observable(m, 1e-8) : is_generalized_observable(m, s.order);
  };
  for (const auto& a : s.alice) {
    if (a.rows() != dA || a.cols() != dA) throw InputError("Alice observable has wrong size");
    if (!valid(a)) throw InputError("Alice observable is not an observable of the given order");
  }
  for (const auto& b : s.bob) {
    if (b.rows() != dB || b.cols() != dB) throw InputError("Bob observable has wrong size");
    if (!valid(b)) throw InputError("Bob observable is not an observable of the given order");
  }
}

namespace pauli {
CMat x() {
  CMat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
CMat y() {
  CMat m(2, 2);
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}
CMat z() {
  CMat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}
}  // namespace pauli

CVec apply_local(const StateVector& psi, const CMat& a, const CMat& b) {
  CMat m = a * psi.as_matrix() * b.transpose();
  CVec out(psi.dim());
  Eigen::Map<Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      out.data(), psi.dA, psi.dB) = m;
  return out;
}

cplx expectation(const StateVector& psi, const CMat& a, const CMat& b) {
  CMat m = psi.as_matrix();
  return (m.adjoint() * a * m * b.transpose()).trace();
}

double correlator(const QuantumStrategy& s, Eigen::Index x, Eigen::Index y) {
  if (x < 0 || x >= Eigen::Index(s.alice.size()) || y < 0 || y >= Eigen::Index(s.bob.size()))
    throw InputError("correlator index out of range");
  cplx v = expectation(s.state, s.alice[x], s.bob[y]);
  if (std::abs(v.imag()) > 1e-10) throw VerificationFailure("correlator is not real");
  return v.real();
}

Mat correlation_matrix(const QuantumStrategy& s) {
  Mat c(s.alice.size(), s.bob.size());
  for (Eigen::Index x = 0; x < c.rows(); ++x)
    for (Eigen::Index y = 0; y < c.cols(); ++y) c(x, y) = correlator(s, x, y);
  return c;
}

double bias_of_strategy(const BellFunctional& fn, const QuantumStrategy& s) {
  if (Eigen::Index(s.alice.size()) != fn.nA() || Eigen::Index(s.bob.size()) != fn.nB())
    throw InputError("strategy shape does not match functional");
  return correlation_matrix(s).cwiseProduct(fn.phi).sum();
}

std::vector<CMat> alice_from_bob(const BellFunctional& fn, const std::vector<CMat>& bob) {
  if (Eigen::Index(bob.size()) != fn.nB()) throw InputError("wrong number of Bob observables");
  const auto d = bob.front().rows();
  std::vector<CMat> alice;
  for (Eigen::Index x = 0; x < fn.nA(); ++x) {
    CMat m = CMat::Zero(d, d);
    for (Eigen::Index y = 0; y < fn.nB(); ++y) m += fn.phi(x, y) * bob[y].transpose();
    if (m.norm() == 0.0) throw InputError("Alice combination vanishes for x = " + std::to_string(x));
    alice.push_back(hermitian_sign(m));
  }
  return alice;
}

std::vector<CMat> alice_from_bob(const BellFunctional& fn, const std::vector<CMat>& bob,
                                 const Vec& lambda_a) {
  if (lambda_a.size() != fn.nA()) throw InputError("lambda_a has wrong length");
  if ((lambda_a.array() <= 0.0).any()) throw InputError("lambda_a must be positive");
  return alice_from_bob(fn, bob);
}

QuantumStrategy best_response_strategy(const BellFunctional& fn, std::vector<CMat> bob) {
  QuantumStrategy s;
  s.state = maximally_entangled(bob.front().rows());
  s.alice = alice_from_bob(fn, bob);
  s.bob = std::move(bob);
  return s;
}

QuantumStrategy chsh_optimal_strategy() {
  return best_response_strategy(chsh(), {pauli::x(), pauli::z()});
}

QuantumStrategy mnx_optimal_strategy(const MnxParams& p) {
  if (mnx_quantum_bound(p) < 1e-12) throw InputError("degenerate parameters: quantum bound is 0");
  CMat b1 = std::cos(p.mu) * pauli::x() + std::sin(p.mu) * pauli::z();
  return best_response_strategy(mnx_functional(p), {pauli::x(), b1});
}

QuantumStrategy elegant_optimal_strategy() {
  return best_response_strategy(elegant(), {pauli::x(), pauli::y(), pauli::z()});
}

std::vector<CMat> clifford_generators(int qubits) {
  if (qubits < 1) throw InputError("need at least one qubit");
  const CMat id = CMat::Identity(2, 2);
  auto chain = [&](int pos, const CMat& site) {
    CMat m = CMat::Identity(1, 1);
    for (int q = 0; q < qubits; ++q) m = kron(m, q < pos ? pauli::z() : q == pos ? site : id).eval();
    return m;
  };
  std::vector<CMat> g;
  for (int q = 0; q < qubits; ++q) {
    g.push_back(chain(q, pauli::x()));
    g.push_back(chain(q, pauli::y()));
  }
  g.push_back(chain(qubits, id));
  return g;
}

QuantumStrategy strategy_from_gram(const BellFunctional& fn, const Mat& qtilde, double rank_tol,
                                   int max_qubits) {
  const auto nB = fn.nB();
  if (qtilde.rows() != fn.nA() + nB || qtilde.cols() != qtilde.rows())
    throw InputError("Gram matrix does not match the functional");
  Eigen::SelfAdjointEigenSolver<Mat> es(Mat(qtilde.bottomRightCorner(nB, nB)));
  const Vec& w = es.eigenvalues();
  const int rank = std::max<int>(1, int((w.array() > rank_tol).count()));
  const int qubits = std::max(1, rank / 2);
  if (qubits > max_qubits) throw GuardExceeded("Gram rank needs too many qubits");
  Mat vecs = es.eigenvectors().rightCols(rank) * w.tail(rank).cwiseMax(0.0).cwiseSqrt().asDiagonal();
  const auto gens = clifford_generators(qubits);
  const auto dim = gens.front().rows();
  std::vector<CMat> bob;
  for (Eigen::Index y = 0; y < nB; ++y) {
    Vec r = vecs.row(y).transpose();
    if (r.norm() == 0.0) throw InputError("degenerate Gram vector");
    r.normalize();
    CMat b = CMat::Zero(dim, dim);
    for (int k = 0; k < rank; ++k) b += r(k) * gens[k];
    bob.push_back(b);
  }
  return best_response_strategy(fn, std::move(bob));
}

}  // namespace nlg
