// Copyright 2026 The nlgames Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "nlg/game.hpp"

namespace nlg {

// Pure bipartite state; amplitude (i, j) lives at index i * dB + j.
struct StateVector {
  CVec amplitudes;
  Eigen::Index dA = 1, dB = 1;

  Eigen::Index dim() const { return dA * dB; }
  // Amplitudes reshaped into a dA x dB matrix.
  CMat as_matrix() const;
};

StateVector make_state(CVec amplitudes, Eigen::Index dA, Eigen::Index dB);
StateVector maximally_entangled(Eigen::Index d);
StateVector product_zero(Eigen::Index dA, Eigen::Index dB);

// Observables are stored as matrices. Binary ones are Hermitian involutions;
// generalized ones of order d are unitaries with A^d = 1.
struct QuantumStrategy {
  StateVector state;
  std::vector<CMat> alice;
  std::vector<CMat> bob;
  int order = 2;
};

bool is_binary_observable(const CMat& m, double tol = 1e-10);
bool is_generalized_observable(const CMat& m, int d, double tol = 1e-8);
void check_strategy(const QuantumStrategy& s);

namespace pauli {
CMat x();
CMat y();
CMat z();
}  // namespace pauli

// <psi| A (x) B |psi> without forming the tensor product.
cplx expectation(const StateVector& psi, const CMat& a, const CMat& b);
CVec apply_local(const StateVector& psi, const CMat& a, const CMat& b);

double correlator(const QuantumStrategy& s, Eigen::Index x, Eigen::Index y);
Mat correlation_matrix(const QuantumStrategy& s);
double bias_of_strategy(const BellFunctional& fn, const QuantumStrategy& s);

// A_x = sign(sum_y phi(x,y) B_y^T), the best response on a maximally
// entangled state.
std::vector<CMat> alice_from_bob(const BellFunctional& fn, const std::vector<CMat>& bob,
                                 const Vec& lambda_a);
std::vector<CMat> alice_from_bob(const BellFunctional& fn, const std::vector<CMat>& bob);
QuantumStrategy best_response_strategy(const BellFunctional& fn, std::vector<CMat> bob);

QuantumStrategy chsh_optimal_strategy();
QuantumStrategy mnx_optimal_strategy(const MnxParams& p);
QuantumStrategy elegant_optimal_strategy();

// Pairwise anticommuting Hermitian unitaries on n qubits, 2n + 1 of them.
std::vector<CMat> clifford_generators(int qubits);

// Strategy read off an SDP Gram matrix: Bob's vectors become combinations of
// Clifford generators on a maximally entangled state, Alice best-responds.
// A Bob block of rank r needs max(1, ceil((r - 1) / 2)) qubits per side.
QuantumStrategy strategy_from_gram(const BellFunctional& fn, const Mat& qtilde,
                                   double rank_tol = 1e-6, int max_qubits = 6);

template <typename Rng>
CMat random_binary_observable(Eigen::Index n, Rng& rng) {
  CMat u = random_unitary(n, rng);
  Vec s(n);
  std::bernoulli_distribution coin(0.5);
  for (Eigen::Index i = 0; i < n; ++i) s(i) = coin(rng) ? 1.0 : -1.0;
  return hermitian_part(CMat(u * s.asDiagonal() * u.adjoint()));
}

template <typename Rng>
CMat random_generalized_observable(Eigen::Index n, int d, Rng& rng) {
  CMat u = random_unitary(n, rng);
  CVec s(n);
  std::uniform_int_distribution<int> pick(0, d - 1);
  for (Eigen::Index i = 0; i < n; ++i) s(i) = root_of_unity(d, pick(rng));
  return u * s.asDiagonal() * u.adjoint();
}

}  // namespace nlg
