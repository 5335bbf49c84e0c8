// Copyright 2026 The nlgames Authors
// SPDX-License-Identifier: Apache-2.0

#include "nlg/sdp.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "nlg/errors.hpp"

namespace nlg {

Mat lifted_matrix(const Mat& phi) {
  const auto nA = phi.rows(), nB = phi.cols();
  Mat t = Mat::Zero(nA + nB, nA + nB);
  t.topRightCorner(nA, nB) = phi / 2.0;
  t.bottomLeftCorner(nB, nA) = phi.transpose() / 2.0;
  return t;
}

double dual_feasibility_defect(const Vec& lambda, const BellFunctional& fn) {
  if (lambda.size() != fn.nA() + fn.nB()) throw InputError("lambda has wrong length");
  Mat m = Mat(lambda.asDiagonal()) / 2.0 - lifted_matrix(fn.phi);
  return min_eigenvalue(m);
}

double slackness_residual(const SdpSolution& sol, const BellFunctional& fn) {
  Mat m = Mat(sol.lambda.asDiagonal()) / 2.0 - lifted_matrix(fn.phi);
  return std::abs((sol.qtilde * m).trace());
}

namespace {

// Certified primal/dual pair from an ADMM iterate: the Gram matrix is
// rescaled to unit diagonal and the multiplier is shifted until feasible.
struct Certified {
  Mat q;
  Vec lambda;
  double primal, dual;
};

Certified certify(const Mat& X, const Vec& y, const Mat& C) {
  const auto n = X.rows();
  Vec dg = X.diagonal().cwiseMax(1e-300);
  Vec s = dg.cwiseSqrt().cwiseInverse();
  Mat q = s.asDiagonal() * X * s.asDiagonal();
  q = (q + q.transpose()) / 2.0;
  q.diagonal().setOnes();

  // Lambda/2 + C >= 0 with C = -lifted; lambda = -2y to start.
  Vec lambda = -2.0 * y;
  double m = min_eigenvalue(Mat(Mat(lambda.asDiagonal()) / 2.0 + C));
  double margin = 8.0 * std::numeric_limits<double>::epsilon() * n *
                  std::max(1.0, C.cwiseAbs().maxCoeff());
  lambda.array() += 2.0 * std::max(0.0, -m) + margin;
  return {q, lambda, -(C.cwiseProduct(q)).sum(), lambda.sum() / 2.0};
}

}  // namespace

SdpSolution solve_xor_sdp(const BellFunctional& fn, const SdpOptions& opt) {
  const auto nA = fn.nA(), nB = fn.nB(), n = nA + nB;
  if (n > opt.max_size) throw GuardExceeded("SDP size exceeds guard");
  if (!(opt.tol >= 1e-12 && opt.tol <= 1e-3)) throw InputError("tol must lie in [1e-12, 1e-3]");
  if (opt.max_iterations < 1) throw InputError("max_iterations must be positive");

  SdpSolution sol;
  const double scale = fn.phi.cwiseAbs().maxCoeff();
  if (scale == 0.0) {
    sol.qtilde = Mat::Identity(n, n);
    sol.lambda = Vec::Zero(n);
    sol.converged = true;
    return sol;
  }

  // Standard form: min <C, X> s.t. diag(X) = 1, X >= 0, with C = -lifted/scale.
  const Mat C = -lifted_matrix(fn.phi / scale);
  const double tol = opt.tol / scale;
  Mat X = Mat::Identity(n, n);
  Mat S = Mat::Zero(n, n);
  Vec y = Vec::Zero(n);
  // Fixed penalty; the problem is rescaled so entries of C are O(1).
  const double mu = 0.3;
  const double rho = 1.6;
  const int check_every = 20;
  double best_gap = std::numeric_limits<double>::infinity();
  Certified best{};

  long it = 0;
  for (; it < opt.max_iterations; ++it) {
    y = -(mu * (X.diagonal() - Vec::Ones(n)) + (S - C).diagonal());
    Mat V = C - Mat(y.asDiagonal()) - mu * X;
    V = (V + V.transpose()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Mat> es(V);
    const Vec& w = es.eigenvalues();
    const Mat& U = es.eigenvectors();
    S = U * w.cwiseMax(0.0).asDiagonal() * U.transpose();
    Mat Xnew = U * (-w).cwiseMax(0.0).asDiagonal() * U.transpose() / mu;
    X = (1.0 - rho) * X + rho * Xnew;

    if (it % check_every == 0) {
      Certified c = certify(Xnew, y, C);
      double gap = c.dual - c.primal;
      if (gap < best_gap) {
        best_gap = gap;
        best = c;
      }
      if (gap <= tol) {
        ++it;
        break;
      }
    }
  }

  sol.qtilde = best.q;
  sol.lambda = best.lambda * scale;
  sol.primal_value = best.primal * scale;
  sol.dual_value = best.dual * scale;
  sol.gap = sol.dual_value - sol.primal_value;
  sol.iterations = it;
  sol.converged = best_gap <= tol;
  if (!sol.converged && opt.throw_on_failure) {
    std::ostringstream os;
    os << "SDP did not converge after " << it << " iterations; best gap " << sol.gap;
    throw NonConvergence(os.str(), sol.gap);
  }
  return sol;
}

double vector_strategy_oracle(const BellFunctional& fn, int dim, int restarts,
                              std::uint64_t seed) {
  if (dim < 1) throw InputError("dim must be positive");
  if (dim == 1) return classical_bias(fn);
  const Mat& phi = fn.phi;
  const auto nA = fn.nA(), nB = fn.nB();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);

  auto normalize_cols = [](Mat& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      double nrm = m.col(j).norm();
      if (nrm > 0) m.col(j) /= nrm;
    }
  };

  double best = -std::numeric_limits<double>::infinity();
  for (int r = 0; r < std::max(1, restarts); ++r) {
    Mat a(dim, nA), b(dim, nB);
    for (Eigen::Index i = 0; i < b.size(); ++i) b.data()[i] = g(rng);
    normalize_cols(b);
    a.setZero();
    double value = -std::numeric_limits<double>::infinity();
    for (int it = 0; it < 20000; ++it) {
      Mat ta = b * phi.transpose();
      for (Eigen::Index x = 0; x < nA; ++x)
        if (ta.col(x).norm() > 0) a.col(x) = ta.col(x).normalized();
      Mat tb = a * phi;
      for (Eigen::Index y = 0; y < nB; ++y)
        if (tb.col(y).norm() > 0) b.col(y) = tb.col(y).normalized();
      double v = (a.transpose() * b).cwiseProduct(phi).sum();
      if (v - value < 1e-15 * std::max(1.0, std::abs(v))) {
        value = std::max(value, v);
        break;
      }
      value = v;
    }
    best = std::max(best, value);
  }
  return best;
}

}  // namespace nlg
