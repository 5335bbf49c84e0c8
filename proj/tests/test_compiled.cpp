#include <doctest.h>

#include <cmath>

#include "nlg/compiled.hpp"
#include "nlg/errors.hpp"
#include "nlg/satwap.hpp"
#include "nlg/sdp.hpp"

using namespace nlg;

TEST_CASE("completeness: exact compiled bias equals the nonlocal bias") {
  const HonestProver c = honest_prover(chsh_optimal_strategy());
  CHECK(std::abs(exact_compiled_bias(chsh(), c) - std::sqrt(2.0) / 2.0) < 1e-12);
  const HonestProver e = honest_prover(elegant_optimal_strategy());
  CHECK(std::abs(exact_compiled_bias(elegant(), e) - 4.0 * std::sqrt(3.0)) < 1e-12);
  const MnxParams p{0.9, -0.2, 0.9};
  REQUIRE(p.violates());
  const QuantumStrategy ms = mnx_optimal_strategy(p);
  CHECK(std::abs(exact_compiled_bias(mnx_functional(p), honest_prover(ms)) -
                 bias_of_strategy(mnx_functional(p), ms)) < 1e-12);
  const HonestProver s = honest_prover(satwap_optimal_strategy(3));
  CHECK(std::abs(exact_compiled_value(compiled_satwap(3), s) - 4.0) < 1e-9);
}

TEST_CASE("outcome projectors resolve the identity") {
  const ZdTd zt = zd_td(4);
  CMat sum = CMat::Zero(4, 4);
  for (int b = 0; b < 4; ++b) {
    const CMat p = outcome_projector(zt.T, 4, b);
    CHECK((p * p - p).norm() < 1e-10);
    sum += p;
  }
  CHECK((sum - CMat::Identity(4, 4)).norm() < 1e-10);
}

TEST_CASE("outcome distributions are probability tables") {
  const HonestProver p = honest_prover(satwap_optimal_strategy(3));
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      const Mat t = outcome_distribution(p, x, y);
      CHECK(t.minCoeff() >= -1e-12);
      CHECK(std::abs(t.sum() - 1.0) < 1e-12);
    }
}

TEST_CASE("crypto correlators match the nonlocal correlators for product Kraus maps") {
  const QuantumStrategy s = elegant_optimal_strategy();
  CHECK((crypto_correlators(honest_prover(s)) - correlation_matrix(s)).norm() < 1e-12);
}

TEST_CASE("weighted branches average") {
  HonestProver p = honest_prover(chsh_optimal_strategy());
  // Branch two measures in the opposite order: outcomes swap.
  for (auto& branches : p.first_round) {
    KrausBranch flipped = branches[0];
    std::swap(flipped.kraus[0], flipped.kraus[1]);
    branches[0].weight = 0.75;
    flipped.weight = 0.25;
    branches.push_back(flipped);
  }
  CHECK(std::abs(exact_compiled_bias(chsh(), p) - 0.5 * std::sqrt(2.0) / 2.0) < 1e-12);
  p.first_round[0][0].weight = 0.5;
  CHECK_THROWS_AS(check_prover(p), InputError);
}

TEST_CASE("classical soundness under hiding") {
  CHECK(best_classical_prover(compiled_game(chsh()), 0.0).value == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(best_classical_prover(compiled_game(elegant()), 0.0).value == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(best_classical_prover(compiled_satwap(3), 0.0).value ==
        doctest::Approx(satwap_bounds(3).classical).epsilon(1e-12));
}

TEST_CASE("leakage lets a classical prover win") {
  const CompiledGame g = compiled_game(chsh());
  const ClassicalSearch full = best_classical_prover(g, 1.0);
  CHECK(full.value == doctest::Approx(1.0));
  const ClassicalSearch half = best_classical_prover(g, 0.5);
  CHECK(half.value == doctest::Approx(0.75));
  CHECK(exact_classical_value(g, full.prover, 0.0) == doctest::Approx(0.5));
}

TEST_CASE("sampled runs agree with exact values") {
  const CompiledRun run = run_compiled(chsh(), honest_prover(chsh_optimal_strategy()),
                                       security_config("pad"), 40000, 3, true);
  const double c = std::cos(M_PI / 8);
  CHECK(std::abs(run.win_rate - c * c) < 4.0 * run.win_stderr);
  CHECK(std::abs(run.score_mean - std::sqrt(2.0) / 2.0) < 4.0 * run.score_stderr);
  REQUIRE(run.exact_correlators);
  CHECK((*run.exact_correlators - correlation_matrix(chsh_optimal_strategy())).norm() < 1e-12);
  CHECK(run.transcripts.size() == 40000);
}

TEST_CASE("runs are reproducible from the seed") {
  const ProverModel p = honest_prover(satwap_optimal_strategy(3));
  const CompiledRun a = run_compiled(compiled_satwap(3), p, security_config("pad"), 2000, 99);
  const CompiledRun b = run_compiled(compiled_satwap(3), p, security_config("pad"), 2000, 99);
  const CompiledRun c = run_compiled(compiled_satwap(3), p, security_config("pad"), 2000, 100);
  REQUIRE(a.transcripts.size() == b.transcripts.size());
  bool same = true, differs = false;
  for (std::size_t i = 0; i < a.transcripts.size(); ++i) {
    const auto &s = a.transcripts[i], &t = b.transcripts[i], &u = c.transcripts[i];
    same = same && s.x == t.x && s.nonce == t.nonce && s.a == t.a && s.y == t.y && s.b == t.b;
    differs = differs || s.nonce != u.nonce;
  }
  CHECK(same);
  CHECK(differs);
  CHECK(a.score_mean == b.score_mean);
}

TEST_CASE("attacking prover reads leaked questions") {
  const CompiledGame g = compiled_game(chsh());
  AttackingProver atk{best_classical_prover(g, 1.0).prover, [](const Ciphertext& ct) -> std::optional<int> {
                        if (ct.in_clear) return int(ct.payload);
                        return std::nullopt;
                      }};
  const CompiledRun hidden = run_compiled(g, atk, security_config("pad"), 20000, 4);
  const CompiledRun open = run_compiled(g, atk, security_config("leaky:1"), 20000, 4);
  CHECK(hidden.win_rate < 0.78);
  CHECK(open.win_rate > 0.99);
}

TEST_CASE("configuration and shape errors") {
  CHECK_THROWS_AS(security_config("pad", 0), InputError);
  CHECK_THROWS_AS(security_config("leaky:2"), InputError);
  CHECK(security_config("transparent").leakage_p == 1.0);
  CHECK(security_config("leaky:0.3").leakage_p == 0.3);
  CHECK_THROWS_AS(exact_compiled_value(compiled_satwap(3), honest_prover(chsh_optimal_strategy())), InputError);
  CHECK_THROWS_AS(run_compiled(chsh(), honest_prover(chsh_optimal_strategy()), {}, -1, 1), InputError);
}
