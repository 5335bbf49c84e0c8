// Copyright 2026 The nlgames Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlg/linalg.hpp"

namespace nlg {

enum class Normalization { game, raw };

struct GameSource {
  Mat q;  // question distribution
  Eigen::MatrixXi f;  // 1 where the players must answer differently
};

// Correlation functional sum_xy phi(x, y) <A_x B_y> over binary observables.
struct BellFunctional {
  std::string name;
  Mat phi;
  Normalization normalization = Normalization::raw;
  std::optional<GameSource> source;

  Eigen::Index nA() const { return phi.rows(); }
  Eigen::Index nB() const { return phi.cols(); }
};

BellFunctional make_functional(std::string name, Mat phi);
BellFunctional functional_from_game(const Mat& q, const Eigen::MatrixXi& f,
                                    std::string name = "game");

struct Guards {
  int max_binary_players = 24;           // nA + nB for sign enumeration
  double max_outcome_assignments = 1e8;  // d^nA * d^nB
};

double classical_bias(const BellFunctional& fn, const Guards& guards = {});

// Bias to winning probability; raw functionals are passed through and
// flagged when outside [-1, 1].
struct WinProb {
  double value;
  bool out_of_range;
};
WinProb bias_to_winprob(double xi);

// Two-party functional with d outcomes per party: sum of
// coeff(a, b, x, y) p(a, b | x, y).
class OutcomeFunctional {
 public:
  OutcomeFunctional(std::string name, int nA, int nB, int d);

  const std::string& name() const { return name_; }
  int nA() const { return nA_; }
  int nB() const { return nB_; }
  int d() const { return d_; }

  double& operator()(int a, int b, int x, int y) { return coeff_[index(a, b, x, y)]; }
  double operator()(int a, int b, int x, int y) const { return coeff_[index(a, b, x, y)]; }

  // Largest coefficient available for the question pair (x, y).
  double best(int x, int y) const;

 private:
  std::size_t index(int a, int b, int x, int y) const {
    return ((static_cast<std::size_t>(x) * nB_ + y) * d_ + a) * d_ + b;
  }
  std::string name_;
  int nA_, nB_, d_;
  std::vector<double> coeff_;
};

OutcomeFunctional outcome_functional(const BellFunctional& fn);
double classical_score_d(const OutcomeFunctional& game, const Guards& guards = {});

struct MnxParams {
  double mu = 0, nu = 0, chi = 0;
  bool violates() const;
};

BellFunctional mnx_functional(const MnxParams& p);
double mnx_quantum_bound(const MnxParams& p);

// Catalog.
BellFunctional chsh();
BellFunctional elegant();       // unit weights, classical bound 6
BellFunctional elegant_game();  // uniform 4x3 game with the same signs
Eigen::MatrixXi elegant_signs();

}  // namespace nlg
