#include <doctest.h>

#include <cmath>
#include <random>

#include "nlg/errors.hpp"
#include "nlg/sos.hpp"

using namespace nlg;

namespace {

QuantumStrategy random_realization(const BellFunctional& fn, Eigen::Index dA, Eigen::Index dB,
                                   std::mt19937_64& rng) {
  QuantumStrategy s;
  s.state = product_zero(dA, dB);
  for (Eigen::Index x = 0; x < fn.nA(); ++x) s.alice.push_back(random_binary_observable(dA, rng));
  for (Eigen::Index y = 0; y < fn.nB(); ++y) s.bob.push_back(random_binary_observable(dB, rng));
  return s;
}

BellFunctional random_functional(std::mt19937_64& rng, int nA, int nB) {
  std::normal_distribution<double> n01;
  Mat phi(nA, nB);
  for (auto& v : phi.reshaped()) v = n01(rng);
  return make_functional("r", phi);
}

}  // namespace

TEST_CASE("chsh certificate") {
  const BellFunctional fn = chsh();
  const SosCertificate c = build_sos(fn, solve_xor_sdp(fn));
  const double r = std::sqrt(0.5);
  Mat F(2, 2);
  F << r, r, r, -r;
  CHECK((c.F - F).norm() < 1e-6);
  CHECK(std::abs(c.xi_q - std::sqrt(2.0) / 2.0) < 1e-7);
  CHECK(verify_sos_identity(c, chsh_optimal_strategy()) < 1e-12);
  CHECK(schur_defect(c) >= -1e-9);
}

TEST_CASE("identity holds for arbitrary binary realizations") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 10; ++t) {
    const BellFunctional fn = random_functional(rng, 1 + t % 4, 1 + (t / 2) % 4);
    const SosCertificate c = build_sos(fn, solve_xor_sdp(fn));
    CHECK(schur_defect(c) >= -1e-9);
    for (int k = 0; k < 3; ++k) {
      const QuantumStrategy s = random_realization(fn, 1 + k, 2 + k, rng);
      CHECK(verify_sos_identity(c, s) < 1e-8);
      CHECK(bob_poly_psd_defect(c, s.bob) >= -1e-8);
    }
  }
}

TEST_CASE("offset and xi are consistent") {
  std::mt19937_64 rng(5);
  const BellFunctional fn = random_functional(rng, 3, 3);
  const SdpSolution sol = solve_xor_sdp(fn);
  const SosCertificate c = build_sos(fn, sol);
  CHECK(std::abs(c.offset - c.lambda_b.sum() / 2.0) < 1e-14);
  CHECK(std::abs(c.xi_q - sol.dual_value) < 1e-9);
  CHECK((c.G - c.G.transpose()).norm() < 1e-14);
}

TEST_CASE("single entry: Bob polynomial vanishes") {
  Mat phi(1, 1);
  phi << 1.0;
  const BellFunctional fn = make_functional("one", phi);
  const SosCertificate c = build_sos(fn, solve_xor_sdp(fn));
  std::mt19937_64 rng(1);
  for (int n = 1; n <= 4; ++n) CHECK(bob_poly_operator(c, {random_binary_observable(n, rng)}).norm() < 1e-12);
}

TEST_CASE("zero rows are dropped") {
  Mat phi(3, 2);
  phi << 1, 1, 0, 0, 1, -1;
  const BellFunctional fn = make_functional("gap", phi);
  const SosCertificate c = build_sos(fn, solve_xor_sdp(fn));
  REQUIRE(c.dropped_rows.size() == 1);
  CHECK(c.dropped_rows[0] == 1);
  CHECK_FALSE(c.keeps(1));
  std::mt19937_64 rng(9);
  CHECK(verify_sos_identity(c, random_realization(fn, 2, 2, rng)) < 1e-8);
}

TEST_CASE("elegant certificate has four equal squares") {
  const BellFunctional fn = elegant();
  const SosCertificate c = build_sos(fn, solve_xor_sdp(fn));
  CHECK((c.lambda_a.array() / 2.0 - std::sqrt(3.0) / 2.0).abs().maxCoeff() < 1e-5);
  CHECK((c.F.cwiseAbs().array() - 1.0 / std::sqrt(3.0)).abs().maxCoeff() < 1e-5);
  CHECK(verify_sos_identity(c, elegant_optimal_strategy()) < 1e-10);
}

TEST_CASE("vector inequality") {
  std::mt19937_64 rng(33);
  for (int t = 0; t < 6; ++t) {
    const BellFunctional fn = random_functional(rng, 2 + t % 3, 2 + t % 2);
    const SdpSolution sol = solve_xor_sdp(fn);
    const FactorVectors ov = factor_vectors(fn, sol);
    const FactorDefects d = factor_defects(ov, fn, sol);
    CHECK(d.uu < 1e-10);
    CHECK(d.uv < 1e-10);
    CHECK(d.vv_psd >= -1e-9);
    CHECK(factor_slack(ov, fn, sol, random_realization(fn, 2, 2, rng)) >= -1e-8);
  }
}

TEST_CASE("realization shape errors") {
  const BellFunctional fn = chsh();
  const SosCertificate c = build_sos(fn, solve_xor_sdp(fn));
  QuantumStrategy s = chsh_optimal_strategy();
  s.bob.pop_back();
  CHECK_THROWS_AS(verify_sos_identity(c, s), InputError);
  s = chsh_optimal_strategy();
  s.alice[0] = 0.5 * s.alice[0];
  CHECK_THROWS_AS(verify_sos_identity(c, s), InputError);
}
