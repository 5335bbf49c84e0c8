#include <doctest.h>

#include <cmath>
#include <random>

#include "nlg/errors.hpp"
#include "nlg/sdp.hpp"
#include "nlg/strategy.hpp"

using namespace nlg;

namespace {

cplx dense_expectation(const StateVector& psi, const CMat& a, const CMat& b) {
  return psi.amplitudes.dot(kron(a, b).eval() * psi.amplitudes);
}

}  // namespace

TEST_CASE("paulis and the maximally entangled state") {
  for (const CMat& p : {pauli::x(), pauli::y(), pauli::z()}) CHECK(is_binary_observable(p));
  CHECK(std::abs(anticommutator(pauli::x(), pauli::y()).norm()) < 1e-15);
  const StateVector phi = maximally_entangled(3);
  CHECK(phi.dim() == 9);
  CHECK(std::abs(phi.amplitudes.norm() - 1.0) < 1e-15);
  CHECK((phi.as_matrix() - CMat::Identity(3, 3) / std::sqrt(3.0)).norm() < 1e-15);
}

TEST_CASE("local expectation agrees with the dense tensor product") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n01;
  CVec amp(6);
  for (auto& v : amp) v = cplx(n01(rng), n01(rng));
  const StateVector psi = make_state(amp.normalized(), 2, 3);
  const CMat a = random_binary_observable(2, rng), b = random_binary_observable(3, rng);
  CHECK(std::abs(expectation(psi, a, b) - dense_expectation(psi, a, b)) < 1e-13);
  CHECK((apply_local(psi, a, b) - kron(a, b).eval() * psi.amplitudes).norm() < 1e-13);
}

TEST_CASE("correlators are invariant under local unitaries") {
  std::mt19937_64 rng(8);
  QuantumStrategy s = chsh_optimal_strategy();
  const Mat before = correlation_matrix(s);
  const CMat u = random_unitary(2, rng), v = random_unitary(2, rng);
  for (auto& a : s.alice) a = u * a * u.adjoint();
  for (auto& b : s.bob) b = v * b * v.adjoint();
  s.state = make_state(kron(u, v).eval() * s.state.amplitudes, 2, 2);
  CHECK((correlation_matrix(s) - before).norm() < 1e-12);
  // A global phase changes nothing either.
  s.state.amplitudes *= std::polar(1.0, 0.7);
  CHECK((correlation_matrix(s) - before).norm() < 1e-12);
}

TEST_CASE("catalog strategies reach their quantum values") {
  CHECK(std::abs(bias_of_strategy(chsh(), chsh_optimal_strategy()) - std::sqrt(2.0) / 2.0) < 1e-12);
  CHECK(std::abs(bias_of_strategy(elegant(), elegant_optimal_strategy()) - 4.0 * std::sqrt(3.0)) < 1e-12);
  const MnxParams p{1.1, 0.3, 0.6};
  CHECK(std::abs(bias_of_strategy(mnx_functional(p), mnx_optimal_strategy(p)) - mnx_quantum_bound(p)) < 1e-12);
  CHECK_THROWS_AS(mnx_optimal_strategy({1.1, 0.3, 0.3}), InputError);
}

TEST_CASE("clifford generators pairwise anticommute") {
  for (int q = 1; q <= 3; ++q) {
    const auto g = clifford_generators(q);
    REQUIRE(g.size() == std::size_t(2 * q + 1));
    for (std::size_t i = 0; i < g.size(); ++i) {
      CHECK(is_binary_observable(g[i]));
      for (std::size_t j = i + 1; j < g.size(); ++j) CHECK(anticommutator(g[i], g[j]).norm() < 1e-14);
    }
  }
}

TEST_CASE("Gram strategies attain the SDP value") {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> n01;
  for (int t = 0; t < 10; ++t) {
    const int nA = 2 + t % 6, nB = 2 + (t * 3) % 7;
    Mat phi(nA, nB);
    for (auto& v : phi.reshaped()) v = n01(rng);
    const BellFunctional fn = make_functional("r", phi);
    const SdpSolution sol = solve_xor_sdp(fn);
    const QuantumStrategy s = strategy_from_gram(fn, sol.qtilde);
    check_strategy(s);
    CHECK(std::abs(bias_of_strategy(fn, s) - sol.primal_value) < 1e-6);
  }
  const SdpSolution se = solve_xor_sdp(elegant());
  CHECK(std::abs(bias_of_strategy(elegant(), strategy_from_gram(elegant(), se.qtilde)) - 4.0 * std::sqrt(3.0)) < 1e-6);
  CHECK_THROWS_AS(strategy_from_gram(elegant(), Mat::Identity(3, 3)), InputError);
}

TEST_CASE("best responses are binary observables") {
  std::mt19937_64 rng(2);
  std::vector<CMat> bob;
  for (int y = 0; y < 3; ++y) bob.push_back(random_binary_observable(4, rng));
  const auto alice = alice_from_bob(elegant(), bob);
  for (const auto& a : alice) CHECK(is_binary_observable(a, 1e-9));
}

TEST_CASE("strategy validation") {
  QuantumStrategy s = chsh_optimal_strategy();
  check_strategy(s);
  QuantumStrategy bad = s;
  bad.bob[0] = CMat::Identity(2, 2) * 2.0;
  CHECK_THROWS_AS(check_strategy(bad), InputError);
  bad = s;
  bad.state.amplitudes *= 2.0;
  CHECK_THROWS_AS(check_strategy(bad), InputError);
  bad = s;
  bad.alice[0] = CMat::Identity(3, 3);
  CHECK_THROWS_AS(check_strategy(bad), InputError);
  CHECK_THROWS_AS(make_state(CVec::Ones(5), 2, 3), InputError);
}

TEST_CASE("generalized observables") {
  std::mt19937_64 rng(6);
  for (int d = 2; d <= 5; ++d) {
    const CMat m = random_generalized_observable(4, d, rng);
    CHECK(is_generalized_observable(m, d));
    CHECK((unitary_power(m, d) - CMat::Identity(4, 4)).norm() < 1e-10);
    CHECK((unitary_power(m, -1) - m.adjoint()).norm() < 1e-12);
  }
  CHECK_FALSE(is_generalized_observable(pauli::x() * 2.0, 2));
}
