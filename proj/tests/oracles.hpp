// Test-side reference computations, written independently of the library.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

// max over a in {+-1}^nA, b in {+-1}^nB of a^T phi b.
inline double classical_bias(const Eigen::MatrixXd& phi) {
  const int nA = int(phi.rows()), nB = int(phi.cols());
  double best = -1e300;
  for (long ma = 0; ma < (1L << nA); ++ma)
    for (long mb = 0; mb < (1L << nB); ++mb) {
      double v = 0;
      for (int x = 0; x < nA; ++x)
        for (int y = 0; y < nB; ++y)
          v += ((ma >> x & 1) ? -1.0 : 1.0) * ((mb >> y & 1) ? -1.0 : 1.0) * phi(x, y);
      best = std::max(best, v);
    }
  return best;
}

// Seesaw over unit vectors in R^dim: a lower bound on the quantum bias that
// reaches the optimum for dim >= nA + nB given enough restarts.
inline double seesaw_bias(const Eigen::MatrixXd& phi, int dim, int restarts, unsigned seed) {
  std::srand(seed);
  double best = -1e300;
  for (int r = 0; r < restarts; ++r) {
    Eigen::MatrixXd b = Eigen::MatrixXd::Random(dim, phi.cols());
    b.colwise().normalize();
    double val = 0;
    for (int it = 0; it < 2000; ++it) {
      Eigen::MatrixXd a = b * phi.transpose();
      for (int i = 0; i < a.cols(); ++i) if (a.col(i).norm() > 0) a.col(i).normalize();
      Eigen::MatrixXd nb = a * phi;
      for (int i = 0; i < nb.cols(); ++i) if (nb.col(i).norm() > 0) nb.col(i).normalize();
      b = nb;
      const double v = (a.transpose() * b).cwiseProduct(phi).sum();
      if (std::abs(v - val) < 1e-15) break;
      val = v;
    }
    best = std::max(best, val);
  }
  return best;
}

inline double mnx_bound(double mu, double nu, double chi) {
  return std::abs(std::sin(mu) * std::sin(chi - nu) * std::sin(mu + nu + chi));
}

}  // namespace oracle
