// Copyright 2026 The nlgames Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "nlg/compiled.hpp"
#include "nlg/errors.hpp"
#include "nlg/satwap.hpp"
#include "nlg/sos.hpp"

namespace nlg {

// Compiled-game moments. corr(x, k, y, l) = <A_x^(k), B_y^(l)> and
// bob(y, l, y', l') = E_x E sum_a <psi_a| B_y^l B_y'^l' |psi_a>, for all
// orders 0..d-1 (order 0 is the identity).
class CryptoMomentMatrix {
 public:
  CryptoMomentMatrix(int nA, int nB, int d);

  int nA() const { return nA_; }
  int nB() const { return nB_; }
  int d() const { return d_; }

  cplx& corr(int x, int k, int y, int l) { return corr_[ci(x, k, y, l)]; }
  cplx corr(int x, int k, int y, int l) const { return corr_[ci(x, k, y, l)]; }
  cplx& bob(int y, int l, int z, int m) { return bob_[bi(y, l, z, m)]; }
  cplx bob(int y, int l, int z, int m) const { return bob_[bi(y, l, z, m)]; }

  Mat c_block() const;   // real part of corr(x, 1, y, 1)
  CMat s_block() const;  // bob(y, 1, y', 1) for binary games, bob(y, d-1, y', 1) otherwise

 private:
  std::size_t ci(int x, int k, int y, int l) const {
    return ((static_cast<std::size_t>(x) * d_ + k) * nB_ + y) * d_ + l;
  }
  std::size_t bi(int y, int l, int z, int m) const {
    return ((static_cast<std::size_t>(y) * d_ + l) * nB_ + z) * d_ + m;
  }
  int nA_, nB_, d_;
  std::vector<cplx> corr_, bob_;
};

CryptoMomentMatrix build_moment_matrix(const HonestProver& p);
CryptoMomentMatrix build_moment_matrix(const ClassicalProver& p, int d, double leakage);
inline CryptoMomentMatrix build_moment_matrix(const HonestProver& p, const BellFunctional& fn,
                                              const SecurityConfig& cfg) {
  check_config(cfg);
  if (p.strategy.alice.size() != std::size_t(fn.nA()) || p.strategy.bob.size() != std::size_t(fn.nB()))
    throw InputError("prover does not match functional");
  return build_moment_matrix(p);
}

// Generator of the observable algebra: identity, A_x^(k) or B_y^(l).
struct Symbol {
  enum class Kind { identity, alice, bob };
  Kind kind = Kind::identity;
  int index = 0;
  int order = 0;

  static Symbol one() { return {}; }
  static Symbol A(int x, int k = 1) { return {Kind::alice, x, k}; }
  static Symbol B(int y, int l = 1) { return {Kind::bob, y, l}; }
  Symbol adjoint(int d) const;
};

struct Monomial {
  cplx coef;
  Symbol left, right;
};

class Degree2Poly {
 public:
  explicit Degree2Poly(int d = 2) : d_(d) {}
  int d() const { return d_; }
  const std::vector<Monomial>& terms() const { return terms_; }
  Degree2Poly& add(cplx coef, Symbol left, Symbol right = Symbol::one());
  Degree2Poly& operator+=(const Degree2Poly& other);
  Degree2Poly& operator*=(cplx s);

 private:
  int d_;
  std::vector<Monomial> terms_;
};

Degree2Poly operator+(Degree2Poly a, const Degree2Poly& b);
Degree2Poly operator*(cplx s, Degree2Poly a);

// Linear form c0 1 + alpha A_x^(k) + sum_j beta_j B_{y_j}^(l_j). It holds at
// most one Alice generator, so its hermitian square never multiplies two
// different first-round observables.
class LinearForm {
 public:
  explicit LinearForm(int d = 2) : d_(d) {}
  int d() const { return d_; }
  LinearForm& identity(cplx c);
  LinearForm& alice(int x, int k, cplx c);
  LinearForm& bob(int y, int l, cplx c);
  Degree2Poly hermitian_square() const;

 private:
  int d_;
  cplx id_ = 0;
  bool has_alice_ = false;
  Monomial alice_{};
  std::vector<Monomial> bob_;
};

cplx pseudo_expect(const Degree2Poly& p, const CryptoMomentMatrix& m);

// Sum_xy phi(x,y) A_x B_y.
Degree2Poly game_polynomial(const BellFunctional& fn);
Degree2Poly satwap_polynomial(const SatwapGame& g);

// Round-off allowed below -delta before a square counts as negative.
inline constexpr double kTermTolerance = 1e-9;

struct TermCheck {
  std::vector<std::string> names;
  std::vector<double> values;   // E[P^dag P] per square
  std::vector<double> weights;  // multiplier of each square in the decomposition
  double bob_value = 0;         // E[P(B)] for the Bob-only polynomial
  double identity_residual = 0; // |xi - E[B_g] - sum weights * values - bob_value|
  bool pass = false;
};

TermCheck sos_term_check(const SosCertificate& cert, const CryptoMomentMatrix& m, double delta);
TermCheck satwap_term_check(const SatwapGame& g, const CryptoMomentMatrix& m, double delta);

// Squares (A_x - sum_y F(x,y) B_y) of the certificate, one per kept x.
std::vector<LinearForm> certificate_squares(const SosCertificate& cert);
std::vector<LinearForm> satwap_squares(const SatwapGame& g);

struct BoundReport {
  double compiled_bias;
  double xi_q;
  double excess;
  bool pass;
};
BoundReport compiled_bound_report(const BellFunctional& fn, const CryptoMomentMatrix& m,
                                  const SecurityConfig& cfg);
BoundReport compiled_satwap_report(const SatwapGame& g, const CryptoMomentMatrix& m,
                                   const SecurityConfig& cfg);

// Correlator estimates from transcripts, for sampled runs.
struct CorrelatorEstimate {
  Mat mean;
  Mat stderr_;
  Eigen::MatrixXi counts;
};
CorrelatorEstimate sampled_correlators(const CompiledRun& run, int nA, int nB);

}  // namespace nlg
