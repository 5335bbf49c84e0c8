// Copyright 2026 The nlgames Authors
// SPDX-License-Identifier: Apache-2.0

#include "nlg/satwap.hpp"

#include <cmath>
#include <numbers>

#include "nlg/errors.hpp"

namespace nlg {

namespace {

void check_order(int d) {
  if (d < 2) throw InputError("SATWAP needs d >= 2");
  if (d > kMaxSatwapOrder) throw GuardExceeded("SATWAP order exceeds guard");
}

}  // namespace

SatwapGame satwap_game(int d) {
  check_order(d);
  SatwapGame g;
  g.d = d;
  g.a.assign(d, cplx(0));
  for (int k = 1; k < d; ++k) g.a[k] = root_of_unity(d, (2.0 * k - d) / 8.0) / std::sqrt(2.0);
  return g;
}

cplx SatwapGame::coefficient(int x, int y, int k) const {
  if (x == 0 && y == 0) return a[k];
  if (x == 0 && y == 1) return std::conj(a[k]) * root_of_unity(d, k);
  if (x == 1 && y == 0) return std::conj(a[k]);
  return a[k];
}

GenCorrelatorTable::GenCorrelatorTable(int d) : d_(d), v_(4 * d * d, cplx(0)) {}

GenCorrelatorTable generalized_correlators(const QuantumStrategy& s) {
  if (s.alice.size() != 2 || s.bob.size() != 2) throw InputError("SATWAP needs two inputs each");
  const int d = s.order;
  GenCorrelatorTable t(d);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int k = 0; k < d; ++k) {
        CMat ak = unitary_power(s.alice[x], k);
        for (int l = 0; l < d; ++l)
          t(x, y, k, l) = expectation(s.state, ak, unitary_power(s.bob[y], l));
      }
  return t;
}

double satwap_value(const GenCorrelatorTable& table, const SatwapGame& g) {
  if (table.d() != g.d) throw InputError("correlator table order does not match game");
  cplx v = 0;
  for (int k = 1; k < g.d; ++k)
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) v += g.coefficient(x, y, k) * table(x, y, k, g.d - k);
  if (std::abs(v.imag()) > 1e-8) throw VerificationFailure("SATWAP value is not real");
  return v.real();
}

SatwapBounds satwap_bounds(int d) {
  check_order(d);
  const double pi = std::numbers::pi;
  auto cot = [](double t) { return 1.0 / std::tan(t); };
  return {0.5 * (3.0 * cot(pi / (4.0 * d)) - cot(3.0 * pi / (4.0 * d))) - 2.0, 2.0 * (d - 1)};
}

OutcomeFunctional satwap_functional(int d) {
  SatwapGame g = satwap_game(d);
  OutcomeFunctional f("satwap", 2, 2, d);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
          cplx s = 0;
          for (int k = 1; k < d; ++k)
            s += g.coefficient(x, y, k) * root_of_unity(d, double(a * k + b * (d - k)));
          f(a, b, x, y) = s.real();
        }
  return f;
}

ZdTd zd_td(int d) {
  check_order(d);
  CMat Z = CMat::Zero(d, d), T(d, d);
  for (int i = 0; i < d; ++i) Z(i, i) = root_of_unity(d, i);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double sign = ((i == 0) != (j == 0)) ? -1.0 : 1.0;
      T(i, j) = -(2.0 / d) * sign * root_of_unity(d, (i + j + 1) / 2.0);
      if (i == j) T(i, j) += root_of_unity(d, i + 0.5);
    }
  const CMat id = CMat::Identity(d, d);
  if (unitarity_defect(T) > 1e-8 || (unitary_power(T, d) - id).norm() > 1e-8)
    throw VerificationFailure("T is not a generalized observable");
  return {Z, T};
}

QuantumStrategy satwap_optimal_strategy(int d) {
  SatwapGame g = satwap_game(d);
  auto [Z, T] = zd_td(d);
  const cplx a1 = g.a[1], w = g.omega();
  // Complex conjugates of C_1^(1) and C_2^(1), moved to Alice's side.
  CMat A1 = std::conj(a1) * Z + a1 * std::conj(w) * T;
  CMat A2 = a1 * Z + std::conj(a1) * T;
  QuantumStrategy s;
  s.state = maximally_entangled(d);
  s.order = d;
  for (CMat* m : {&A1, &A2}) {
    CMat u = unitary_part(*m);
    if ((u - *m).norm() > 1e-6) throw VerificationFailure("Alice combination is far from unitary");
    s.alice.push_back(u);
  }
  s.bob = {Z, T};
  return s;
}

std::pair<CMat, CMat> c_operators(const SatwapGame& g, const std::vector<CMat>& bob, int k) {
  if (k < 1 || k >= g.d) throw InputError("order k out of range");
  if (bob.size() != 2) throw InputError("SATWAP needs two Bob observables");
  CMat b1 = unitary_power(bob[0], -k), b2 = unitary_power(bob[1], -k);
  const cplx a = g.a[k];
  return {a * b1 + std::conj(a) * root_of_unity(g.d, k) * b2, std::conj(a) * b1 + a * b2};
}

CMat satwap_operator(const SatwapGame& g, const QuantumStrategy& s) {
  const auto dA = s.state.dA, dB = s.state.dB;
  CMat op = CMat::Zero(dA * dB, dA * dB);
  for (int k = 1; k < g.d; ++k)
    for (int x = 0; x < 2; ++x) {
      CMat ak = unitary_power(s.alice[x], k);
      for (int y = 0; y < 2; ++y)
        op += g.coefficient(x, y, k) * kron(ak, unitary_power(s.bob[y], g.d - k));
    }
  return op;
}

double satwap_sos_residual(int d, const QuantumStrategy& s) {
  SatwapGame g = satwap_game(d);
  if (s.alice.size() != 2 || s.bob.size() != 2) throw InputError("SATWAP needs two inputs each");
  for (const auto* side : {&s.alice, &s.bob})
    for (const auto& m : *side)
      if (!is_generalized_observable(m, d)) throw InputError("observable is not of order d");
  const auto dA = s.state.dA, dB = s.state.dB, n = dA * dB;
  const double beta_q = satwap_bounds(d).quantum;

  CMat lhs = beta_q * CMat::Identity(n, n) - satwap_operator(g, s);
  CMat rhs = CMat::Zero(n, n);
  for (int k = 1; k < d; ++k) {
    auto [c1, c2] = c_operators(g, s.bob, k);
    const CMat* cs[2] = {&c1, &c2};
    for (int x = 0; x < 2; ++x) {
      CMat p = lift_left(unitary_power(s.alice[x], k).adjoint().eval(), dB) -
               lift_right(*cs[x], dA);
      rhs += 0.5 * p.adjoint() * p;
    }
  }
  return (lhs - rhs).norm();
}

}  // namespace nlg
