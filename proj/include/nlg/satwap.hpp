// Copyright 2026 The nlgames Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>
#include <vector>

#include "nlg/strategy.hpp"

namespace nlg {

constexpr int kMaxSatwapOrder = 16;

// Two-input, d-outcome inequality built from generalized correlators.
struct SatwapGame {
  int d = 2;
  std::vector<cplx> a;  // a[k] for k = 1..d-1; a[0] is unused

  cplx omega() const { return root_of_unity(d, 1); }
  // Coefficient of <A_x^k B_y^{d-k}> in the Bell expression (x, y in {0, 1}).
  cplx coefficient(int x, int y, int k) const;
};

SatwapGame satwap_game(int d);

// Entries <A_x^k B_y^l> for x, y in {0, 1} and k, l in 0..d-1.
class GenCorrelatorTable {
 public:
  explicit GenCorrelatorTable(int d);
  int d() const { return d_; }
  cplx& operator()(int x, int y, int k, int l) { return v_[index(x, y, k, l)]; }
  cplx operator()(int x, int y, int k, int l) const { return v_[index(x, y, k, l)]; }

 private:
  std::size_t index(int x, int y, int k, int l) const {
    return ((static_cast<std::size_t>(x) * 2 + y) * d_ + k) * d_ + l;
  }
  int d_;
  std::vector<cplx> v_;
};

GenCorrelatorTable generalized_correlators(const QuantumStrategy& s);
double satwap_value(const GenCorrelatorTable& table, const SatwapGame& g);

struct SatwapBounds {
  double classical;
  double quantum;
};
SatwapBounds satwap_bounds(int d);

// Same expression as a functional on outcome probabilities.
OutcomeFunctional satwap_functional(int d);

struct ZdTd {
  CMat Z;
  CMat T;
};
ZdTd zd_td(int d);

QuantumStrategy satwap_optimal_strategy(int d);

// C_1^(k) and C_2^(k) built from Bob's two observables.
std::pair<CMat, CMat> c_operators(const SatwapGame& g, const std::vector<CMat>& bob, int k);

// Frobenius residual of beta_q 1 - B = (1/2) sum_{x,k} P_{x,k}^dag P_{x,k} with
// P_{x,k} = (A_x^k)^dag (x) 1 - 1 (x) C_x^(k).
double satwap_sos_residual(int d, const QuantumStrategy& s);

// Bell operator sum_k [...] on the full space.
CMat satwap_operator(const SatwapGame& g, const QuantumStrategy& s);

}  // namespace nlg
