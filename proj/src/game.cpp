// Copyright 2026 The nlgames Authors
// SPDX-License-Identifier: Apache-2.0

#include "nlg/game.hpp"

#include <cmath>
#include <limits>

#include "nlg/errors.hpp"

namespace nlg {

BellFunctional make_functional(std::string name, Mat phi) {
  if (phi.rows() < 1 || phi.cols() < 1)
    throw InputError("functional needs at least one question per player");
  if (!phi.allFinite()) throw InputError("functional has non-finite entries");
  BellFunctional fn;
  fn.name = std::move(name);
  fn.phi = std::move(phi);
  return fn;
}

BellFunctional functional_from_game(const Mat& q, const Eigen::MatrixXi& f, std::string name) {
  if (q.rows() != f.rows() || q.cols() != f.cols())
    throw InputError("q and f shapes differ");
  if (q.size() == 0) throw InputError("empty question set");
  if (!q.allFinite() || q.minCoeff() < 0.0) throw InputError("q has negative entries");
  if (std::abs(q.sum() - 1.0) > 1e-12) throw InputError("q does not sum to 1");
  if ((f.array() != 0 && f.array() != 1).any()) throw InputError("f entries must be 0 or 1");

  Mat sign = (1 - 2 * f.array()).cast<double>();
  BellFunctional fn = make_functional(std::move(name), q.cwiseProduct(sign));
  fn.normalization = Normalization::game;
  fn.source = GameSource{q, f};
  return fn;
}

double classical_bias(const BellFunctional& fn, const Guards& guards) {
  const auto nA = fn.nA(), nB = fn.nB();
  if (nA + nB > guards.max_binary_players)
    throw GuardExceeded("classical enumeration over " + std::to_string(nA + nB) +
                        " binary players exceeds guard");
  // Enumerate Alice; Bob best-responds column by column.
  double best = -std::numeric_limits<double>::infinity();
  Vec a(nA);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << nA); ++mask) {
    for (Eigen::Index x = 0; x < nA; ++x) a(x) = (mask >> x) & 1 ? -1.0 : 1.0;
    double v = (fn.phi.transpose() * a).cwiseAbs().sum();
    best = std::max(best, v);
  }
  return best;
}

WinProb bias_to_winprob(double xi) {
  return {(1.0 + xi) / 2.0, xi < -1.0 || xi > 1.0};
}

OutcomeFunctional::OutcomeFunctional(std::string name, int nA, int nB, int d)
    : name_(std::move(name)), nA_(nA), nB_(nB), d_(d) {
  if (nA < 1 || nB < 1 || d < 2) throw InputError("bad outcome functional shape");
  coeff_.assign(static_cast<std::size_t>(nA) * nB * d * d, 0.0);
}

double OutcomeFunctional::best(int x, int y) const {
  double m = -std::numeric_limits<double>::infinity();
  for (int a = 0; a < d_; ++a)
    for (int b = 0; b < d_; ++b) m = std::max(m, (*this)(a, b, x, y));
  return m;
}

OutcomeFunctional outcome_functional(const BellFunctional& fn) {
  OutcomeFunctional g(fn.name, static_cast<int>(fn.nA()), static_cast<int>(fn.nB()), 2);
  for (int x = 0; x < g.nA(); ++x)
    for (int y = 0; y < g.nB(); ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) g(a, b, x, y) = (a == b ? 1.0 : -1.0) * fn.phi(x, y);
  return g;
}

double classical_score_d(const OutcomeFunctional& game, const Guards& guards) {
  const int nA = game.nA(), nB = game.nB(), d = game.d();
  double count = std::pow(double(d), nA) * std::pow(double(d), nB);
  if (count > guards.max_outcome_assignments)
    throw GuardExceeded("classical enumeration of " + std::to_string(count) +
                        " assignments exceeds guard");
  std::vector<int> a(nA, 0);
  double best = -std::numeric_limits<double>::infinity();
  while (true) {
    double total = 0.0;
    for (int y = 0; y < nB; ++y) {
      double col = -std::numeric_limits<double>::infinity();
      for (int b = 0; b < d; ++b) {
        double s = 0.0;
        for (int x = 0; x < nA; ++x) s += game(a[x], b, x, y);
        col = std::max(col, s);
      }
      total += col;
    }
    best = std::max(best, total);
    int i = 0;
    while (i < nA && ++a[i] == d) a[i++] = 0;
    if (i == nA) break;
  }
  return best;
}

bool MnxParams::violates() const {
  return std::cos(mu + chi) * std::cos(mu + nu) * std::cos(nu) * std::cos(chi) < 0.0;
}

BellFunctional mnx_functional(const MnxParams& p) {
  using std::cos;
  Mat phi(2, 2);
  phi(0, 0) = cos(p.mu + p.nu) * cos(p.mu + p.chi) * cos(p.chi);
  phi(0, 1) = -cos(p.nu) * cos(p.chi) * cos(p.mu + p.chi);
  phi(1, 0) = -cos(p.mu + p.nu) * cos(p.mu + p.chi) * cos(p.nu);
  phi(1, 1) = cos(p.nu) * cos(p.chi) * cos(p.mu + p.nu);
  return make_functional("mnx", phi);
}

double mnx_quantum_bound(const MnxParams& p) {
  return std::abs(std::sin(p.mu) * std::sin(p.chi - p.nu) * std::sin(p.mu + p.nu + p.chi));
}

BellFunctional chsh() {
  Mat q = Mat::Constant(2, 2, 0.25);
  Eigen::MatrixXi f(2, 2);
  f << 0, 0, 0, 1;
  return functional_from_game(q, f, "chsh");
}

Eigen::MatrixXi elegant_signs() {
  Eigen::MatrixXi s(4, 3);
  s << 1, 1, 1,
       1, -1, -1,
       -1, 1, -1,
       -1, -1, 1;
  return s;
}

BellFunctional elegant() {
  return make_functional("elegant", elegant_signs().cast<double>());
}

BellFunctional elegant_game() {
  Mat q = Mat::Constant(4, 3, 1.0 / 12.0);
  Eigen::MatrixXi f = (elegant_signs().array() < 0).cast<int>();
  return functional_from_game(q, f, "elegant_game");
}

}  // namespace nlg
