// Copyright 2026 The nlgames Authors
// SPDX-License-Identifier: Apache-2.0

#include "nlg/selftest.hpp"

#include <algorithm>
#include <cmath>

#include "nlg/errors.hpp"
#include "nlg/satwap.hpp"

namespace nlg {

const ResidualCheck& SelfTestReport::at(const std::string& name) const {
  for (const auto& r : residuals)
    if (r.name == name) return r;
  throw InputError("no residual named " + name);
}

WeightedStates prover_states(const HonestProver& p, int x) {
  check_prover(p);
  const int nA = int(p.first_round.size());
  if (x >= nA) throw InputError("x out of range");
  WeightedStates ws;
  for (int xx = 0; xx < nA; ++xx) {
    if (x >= 0 && xx != x) continue;
    const double wx = x >= 0 ? 1.0 : 1.0 / nA;
    for (std::size_t br = 0; br < p.first_round[xx].size(); ++br)
      for (const auto& [a, psi] : post_measurement_states(p, xx, br)) {
        const double n2 = psi.squaredNorm();
        if (n2 <= 0.0) continue;
        ws.weights.push_back(wx * p.first_round[xx][br].weight * n2);
        ws.states.push_back(psi / std::sqrt(n2));
      }
  }
  return ws;
}

double weighted_norm(const CMat& op, const WeightedStates& states) {
  double total = 0.0, wsum = 0.0;
  for (std::size_t i = 0; i < states.states.size(); ++i) {
    if (op.cols() != states.states[i].size()) throw InputError("operator and state sizes differ");
    total += states.weights[i] * (op * states.states[i]).squaredNorm();
    wsum += states.weights[i];
  }
  if (std::abs(wsum - 1.0) > 1e-10) throw InputError("state weights do not sum to 1");
  return total;
}

double anticommutator_residual(const CMat& b1, const CMat& b2, double target,
                               const WeightedStates& states) {
  if (!is_binary_observable(b1, 1e-8) || !is_binary_observable(b2, 1e-8))
    throw InputError("anticommutator residual needs binary observables");
  CMat op = target * CMat::Identity(b1.rows(), b1.cols()) - anticommutator(b1, b2);
  return weighted_norm(op, states);
}

std::vector<double> jordan_extract(const CMat& b1, const CMat& b2) {
  if (b1.rows() != b2.rows() || !is_binary_observable(b1, 1e-8) || !is_binary_observable(b2, 1e-8))
    throw InputError("Jordan extraction needs two binary observables of equal size");
  CMat half = anticommutator(b1, b2) / cplx(2.0);
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(half), Eigen::EigenvaluesOnly);
  std::vector<double> ang;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    ang.push_back(std::acos(std::clamp(es.eigenvalues()(i), -1.0, 1.0)));
  std::sort(ang.begin(), ang.end());
  // Each 2x2 block contributes its angle twice.
  std::vector<double> blocks;
  for (std::size_t i = 0; i < ang.size(); i += 2) blocks.push_back(ang[i]);
  return blocks;
}

namespace {

double clamp_deficit(double eps) {
  if (eps < -1e-9) throw VerificationFailure("score exceeds the quantum bound");
  return std::max(0.0, eps);
}

void finish(SelfTestReport& r) {
  r.pass = std::all_of(r.residuals.begin(), r.residuals.end(),
                       [](const ResidualCheck& c) { return c.pass(); });
}

}  // namespace

SelfTestReport mnx_selftest(const HonestProver& p, const MnxParams& params, double delta) {
  using std::cos;
  using std::sin;
  if (delta < 0) throw InputError("delta must be nonnegative");
  const double mu = params.mu, nu = params.nu, chi = params.chi;
  const double beta_q = mnx_quantum_bound(params);
  if (beta_q < 1e-12) throw InputError("degenerate parameters: quantum bound is 0");
  if (!params.violates()) throw InputError("parameters do not violate the classical bound");
  if (p.strategy.bob.size() != 2 || p.strategy.alice.size() != 2 || p.strategy.order != 2)
    throw InputError("prover does not match a 2x2 binary game");

  BellFunctional fn = mnx_functional(params);
  SelfTestReport r;
  r.family = "mnx";
  r.delta = delta;
  r.eps = clamp_deficit(beta_q - exact_compiled_bias(fn, p));

  const double sm = sin(mu);
  const double c0 = -cos(chi) * cos(mu + chi) / (2.0 * sm);
  const double c1 = cos(nu) * cos(mu + nu) / (2.0 * sm);
  const double sigma = c0 >= 0 ? 1.0 : -1.0;
  // Effective weights of the two squares and their Bob combinations.
  const double w[2] = {std::abs(c0) * sm * sm, std::abs(c1) * sm * sm};
  const double cb[2][2] = {{cos(mu + nu), -cos(nu)}, {cos(mu + chi), -cos(chi)}};

  const auto dA = p.strategy.state.dA;
  const CMat B0 = p.strategy.bob[0], B1 = p.strategy.bob[1];
  const CMat L0 = lift_right(B0, dA), L1 = lift_right(B1, dA);
  const auto n = L0.rows();
  const CMat id = CMat::Identity(n, n);

  for (int x = 0; x < 2; ++x) {
    const WeightedStates ws = prover_states(p, x);
    const CMat hat = -sigma * (cb[x][0] * L0 + cb[x][1] * L1) / sm;
    // sum_a |(hat - (-1)^a) psi_a|^2, recomputed per outcome.
    double sq = 0.0;
    std::size_t i = 0;
    for (std::size_t br = 0; br < p.first_round[x].size(); ++br)
      for (const auto& [a, psi] : post_measurement_states(p, x, br)) {
        const double sgn = a == 0 ? 1.0 : -1.0;
        sq += p.first_round[x][br].weight * ((hat - sgn * id) * psi).squaredNorm();
        ++i;
      }
    const double kx = -cb[x][0] * cb[x][1] / (sm * sm);
    const double nb = (std::abs(cb[x][0]) + std::abs(cb[x][1])) / std::abs(sm);
    const double sos_bound = r.eps / w[x] + (w[0] + w[1]) / w[x] * delta;
    const double eta = (1.0 + nb) * (1.0 + nb) / (kx * kx) * sos_bound;
    const std::string tag = "_x" + std::to_string(x);
    r.residuals.push_back({"square" + tag, sq, sos_bound});
    r.residuals.push_back({"anticomm" + tag,
                           anticommutator_residual(L0, L1, 2.0 * cos(mu), ws), eta});
    const double cx = x == 0 ? c0 : c1;
    r.info["eta_closed_form" + tag] =
        sm * sm * (2.0 * cos(mu) + 1.0 / (cb[x][0] * -cb[x][1])) * (r.eps / cx + (c0 + c1) / cx * delta);
    r.info["c" + std::to_string(x)] = cx;
  }
  r.info["beta_q"] = beta_q;
  r.extracted = jordan_extract(B0, B1);
  finish(r);
  return r;
}

SelfTestReport elegant_selftest(const HonestProver& p, double delta) {
  if (delta < 0) throw InputError("delta must be nonnegative");
  if (p.strategy.bob.size() != 3 || p.strategy.alice.size() != 4 || p.strategy.order != 2)
    throw InputError("prover does not match the 4x3 elegant functional");
  SelfTestReport r;
  r.family = "elegant";
  r.delta = delta;
  const double beta_q = 4.0 * std::sqrt(3.0);
  r.eps = clamp_deficit(beta_q - exact_compiled_bias(elegant(), p));
  const double bound = 6.0 * (3.0 + std::sqrt(3.0)) * r.eps + 36.0 * (1.0 + std::sqrt(3.0)) * delta;
  const auto dA = p.strategy.state.dA;
  const WeightedStates ws = prover_states(p);
  const int pairs[3][2] = {{0, 1}, {1, 2}, {0, 2}};
  for (const auto& pr : pairs) {
    const CMat bi = lift_right(p.strategy.bob[pr[0]], dA), bj = lift_right(p.strategy.bob[pr[1]], dA);
    r.residuals.push_back({"anticomm_" + std::to_string(pr[0]) + std::to_string(pr[1]),
                           anticommutator_residual(bi, bj, 0.0, ws), bound});
  }
  r.info["beta_q"] = beta_q;
  finish(r);
  return r;
}

SelfTestReport satwap_selftest_residuals(const HonestProver& p, int d) {
  if (d < 2 || d > 8) throw InputError("SATWAP self-test supports 2 <= d <= 8");
  if (p.strategy.order != d || p.strategy.bob.size() != 2) throw InputError("prover does not match d");
  SatwapGame g = satwap_game(d);
  SelfTestReport r;
  r.family = "satwap";
  r.eps = clamp_deficit(satwap_bounds(d).quantum - exact_compiled_value(compiled_satwap(d), p));
  const auto dA = p.strategy.state.dA;
  const WeightedStates ws = prover_states(p);
  std::vector<std::pair<CMat, CMat>> cs(d);
  for (int k = 1; k < d; ++k) {
    auto [c1, c2] = c_operators(g, p.strategy.bob, k);
    cs[k] = {lift_right(c1, dA), lift_right(c2, dA)};
  }
  const auto n = cs[1].first.rows();
  const CMat id = CMat::Identity(n, n);
  for (int x = 0; x < 2; ++x) {
    const CMat& base = x == 0 ? cs[1].first : cs[1].second;
    CMat pw = id;
    for (int k = 1; k < d; ++k) {
      pw = pw * base;
      const CMat& ck = x == 0 ? cs[k].first : cs[k].second;
      const CMat& cinv = x == 0 ? cs[d - k].first : cs[d - k].second;
      const std::string tag = "_x" + std::to_string(x) + "_k" + std::to_string(k);
      r.residuals.push_back({"power" + tag, weighted_norm(pw - ck, ws), std::nullopt});
      r.residuals.push_back({"inverse" + tag, weighted_norm(cinv * ck - id, ws), std::nullopt});
    }
  }
  finish(r);
  return r;
}

CMat conjugate_by_flow(const CMat& m, const CMat& h, double t) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(h));
  CVec phase = (cplx(0, t) * es.eigenvalues().cast<cplx>()).array().exp();
  CMat u = es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
  return u * m * u.adjoint();
}

HonestProver perturbed_elegant_prover(double theta) {
  QuantumStrategy s = elegant_optimal_strategy();
  s.bob[2] = std::cos(theta) * pauli::z() + std::sin(theta) * pauli::x();
  return honest_prover(s);
}

HonestProver perturbed_mnx_prover(const MnxParams& params, double theta) {
  QuantumStrategy s = mnx_optimal_strategy(params);
  s.bob[1] = conjugate_by_flow(s.bob[1], pauli::y(), -theta / 2.0);
  return honest_prover(s);
}

HonestProver perturbed_satwap_prover(int d, double theta) {
  QuantumStrategy s = satwap_optimal_strategy(d);
  const auto n = s.bob[0].rows();
  CMat h = CMat::Zero(n, n);
  h(0, n - 1) = h(n - 1, 0) = 1.0;
  s.bob[0] = conjugate_by_flow(s.bob[0], h, theta);
  return honest_prover(s);
}

}  // namespace nlg
