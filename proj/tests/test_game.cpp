#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nlg/errors.hpp"
#include "nlg/game.hpp"
#include "nlg/game_io.hpp"
#include "oracles.hpp"

using namespace nlg;

TEST_CASE("chsh functional from the game table") {
  const BellFunctional fn = chsh();
  CHECK(fn.normalization == Normalization::game);
  Mat expect(2, 2);
  expect << 0.25, 0.25, 0.25, -0.25;
  CHECK((fn.phi - expect).norm() < 1e-15);
  CHECK(classical_bias(fn) == 0.5);
  CHECK(bias_to_winprob(0.5).value == doctest::Approx(0.75).epsilon(1e-15));
  const double q = std::sqrt(2.0) / 2.0;
  const double c = std::cos(std::numbers::pi / 8);
  CHECK(std::abs(bias_to_winprob(q).value - c * c) < 1e-12);
}

TEST_CASE("classical bias matches two-sided enumeration") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n01;
  for (int t = 0; t < 30; ++t) {
    const int nA = 1 + t % 5, nB = 1 + (t / 5) % 5;
    Mat phi(nA, nB);
    for (auto& v : phi.reshaped()) v = n01(rng);
    CHECK(std::abs(classical_bias(make_functional("r", phi)) - oracle::classical_bias(phi)) < 1e-12);
  }
}

TEST_CASE("elegant catalog") {
  CHECK(classical_bias(elegant()) == 6.0);
  CHECK(elegant_game().normalization == Normalization::game);
  CHECK(std::abs(classical_bias(elegant_game()) - 0.5) < 1e-12);
}

TEST_CASE("zero and sign-flip invariance") {
  CHECK(classical_bias(make_functional("z", Mat::Zero(3, 2))) == 0.0);
  Mat phi(2, 3);
  phi << 1, -2, 0.5, 3, 1, -1;
  Mat flipped = phi;
  flipped.row(1) *= -1;
  flipped.col(2) *= -1;
  CHECK(classical_bias(make_functional("a", phi)) == classical_bias(make_functional("b", flipped)));
  CHECK(classical_bias(make_functional("c", 2.5 * phi)) ==
        doctest::Approx(2.5 * classical_bias(make_functional("a", phi))));
}

TEST_CASE("input validation") {
  Mat q = Mat::Constant(2, 2, 0.3);
  Eigen::MatrixXi f = Eigen::MatrixXi::Zero(2, 2);
  CHECK_THROWS_AS(functional_from_game(q, f), InputError);
  Mat bad(1, 1);
  bad << std::nan("");
  CHECK_THROWS_AS(make_functional("nan", bad), InputError);
  CHECK_THROWS_AS(classical_bias(make_functional("wide", Mat::Ones(1, 30))), GuardExceeded);
}

TEST_CASE("winprob flags raw values out of range") {
  CHECK(bias_to_winprob(6.0).out_of_range);
  CHECK_FALSE(bias_to_winprob(-1.0).out_of_range);
}

TEST_CASE("outcome functional of an xor functional") {
  const BellFunctional fn = chsh();
  const OutcomeFunctional of = outcome_functional(fn);
  CHECK(of.d() == 2);
  CHECK(of(0, 0, 1, 1) == doctest::Approx(-0.25));
  CHECK(of(0, 1, 1, 1) == doctest::Approx(0.25));
  CHECK(std::abs(classical_score_d(of) - 0.5) < 1e-12);
}

TEST_CASE("mnx functional") {
  const MnxParams p{1.1, 0.3, 0.6};
  CHECK(p.violates());
  CHECK(mnx_quantum_bound(p) == doctest::Approx(oracle::mnx_bound(1.1, 0.3, 0.6)));
  CHECK(classical_bias(mnx_functional(p)) < mnx_quantum_bound(p));
  CHECK_FALSE(MnxParams{1.1, 0.3, 0.3}.violates());
}

TEST_CASE("game file parsing") {
  const GameSpec g = parse_game(R"({"name": "c", "kind": "xor", "q": [[0.25,0.25],[0.25,0.25]], "f": [[0,0],[0,1]]})");
  CHECK(g.is_xor());
  CHECK((g.functional().phi - chsh().phi).norm() < 1e-15);
  const GameSpec s = parse_game(R"({"kind": "satwap", "d": 4})");
  CHECK(s.satwap_order() == 4);
  CHECK_THROWS_AS(s.functional(), InputError);
  const GameSpec m = parse_game(R"({"kind": "mnx", "mu": 1.1, "nu": 0.3, "chi": 0.6})");
  REQUIRE(m.mnx);
  CHECK(m.mnx->mu == 1.1);
  CHECK(parse_game(R"({"phi": [[1]]})").kind == "functional");

  CHECK_THROWS_AS(parse_game("{not json"), InputError);
  CHECK_THROWS_AS(parse_game(R"({"kind": "xor", "q": [[1]]})"), InputError);
  CHECK_THROWS_AS(parse_game(R"({"kind": "xor", "q": [[1]], "f": [[2]]})"), InputError);
  CHECK_THROWS_AS(parse_game(R"({"kind": "functional", "phi": [[1, 2], [3]]})"), InputError);
  CHECK_THROWS_AS(parse_game(R"({"kind": "satwap"})"), InputError);
  CHECK_THROWS_AS(parse_game(R"({"kind": "poker"})"), InputError);
  CHECK_THROWS_AS(load_game("/nonexistent/game.json"), InputError);
}
