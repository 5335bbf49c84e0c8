#include <doctest.h>

#include <cmath>
#include <random>

#include "nlg/errors.hpp"
#include "nlg/pseudo_expectation.hpp"
#include "nlg/selftest.hpp"

using namespace nlg;

namespace {

double expect_real(const Degree2Poly& p, const CryptoMomentMatrix& m) { return pseudo_expect(p, m).real(); }

}  // namespace

TEST_CASE("normalization and game polynomial") {
  const HonestProver p = honest_prover(elegant_optimal_strategy());
  const CryptoMomentMatrix m = build_moment_matrix(p);
  CHECK(std::abs(expect_real(Degree2Poly(2).add(1.0, Symbol::one()), m) - 1.0) < 1e-14);
  CHECK(std::abs(expect_real(game_polynomial(elegant()), m) - exact_compiled_bias(elegant(), p)) < 1e-10);
  CHECK((m.c_block() - crypto_correlators(p)).norm() < 1e-12);
}

TEST_CASE("monomial rules") {
  const HonestProver p = honest_prover(chsh_optimal_strategy());
  const CryptoMomentMatrix m = build_moment_matrix(p);
  // A_x^2 = 1 for binary observables.
  CHECK(std::abs(pseudo_expect(Degree2Poly(2).add(1.0, Symbol::A(0), Symbol::A(0)), m) - 1.0) < 1e-14);
  // Products of B's are ordinary expectations; B_y^2 = 1.
  CHECK(std::abs(pseudo_expect(Degree2Poly(2).add(1.0, Symbol::B(1), Symbol::B(1)), m) - 1.0) < 1e-12);
  // A then B reads the crypto-correlator.
  CHECK(std::abs(pseudo_expect(Degree2Poly(2).add(1.0, Symbol::A(1), Symbol::B(0)), m).real() -
                 m.c_block()(1, 0)) < 1e-14);
  // Two Alice questions cannot be combined.
  CHECK_THROWS_AS(pseudo_expect(Degree2Poly(2).add(1.0, Symbol::A(0), Symbol::A(1)), m), InputError);
  LinearForm lf(2);
  lf.alice(0, 1, 1.0);
  CHECK_THROWS_AS(lf.alice(1, 1, 1.0), InputError);
}

TEST_CASE("Bob block is a Gram matrix") {
  const HonestProver p = honest_prover(elegant_optimal_strategy());
  const CryptoMomentMatrix m = build_moment_matrix(p);
  const CMat s = m.s_block();
  CHECK((s - s.adjoint()).norm() < 1e-14);
  CHECK(min_eigenvalue(s) >= -1e-12);
  CHECK((s.diagonal().array() - 1.0).abs().maxCoeff() < 1e-14);
}

TEST_CASE("squares are nonnegative for honest provers") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 5; ++t) {
    QuantumStrategy s;
    s.state = maximally_entangled(3);
    for (int x = 0; x < 3; ++x) s.alice.push_back(random_binary_observable(3, rng));
    for (int y = 0; y < 2; ++y) s.bob.push_back(random_binary_observable(3, rng));
    const CryptoMomentMatrix m = build_moment_matrix(honest_prover(s));
    std::normal_distribution<double> n01;
    for (int k = 0; k < 20; ++k) {
      LinearForm lf(2);
      lf.identity(cplx(n01(rng), n01(rng)));
      lf.alice(k % 3, 1, cplx(n01(rng), n01(rng)));
      lf.bob(0, 1, cplx(n01(rng), n01(rng)));
      lf.bob(1, 1, cplx(n01(rng), n01(rng)));
      const cplx v = pseudo_expect(lf.hermitian_square(), m);
      CHECK(v.real() >= -1e-9);
      CHECK(std::abs(v.imag()) < 1e-12);
    }
  }
}

TEST_CASE("certificate terms decompose the bias gap") {
  const BellFunctional fn = elegant();
  const SosCertificate cert = build_sos(fn, solve_xor_sdp(fn));
  for (double theta : {0.0, 0.1, 0.3}) {
    const HonestProver p = perturbed_elegant_prover(theta);
    const CryptoMomentMatrix m = build_moment_matrix(p);
    const TermCheck tc = sos_term_check(cert, m, 0.0);
    CHECK(tc.pass);
    CHECK(tc.identity_residual < 1e-10);
    REQUIRE(tc.values.size() == 4);
    double weighted = tc.bob_value;
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(tc.weights[i] == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-5));
      weighted += tc.weights[i] * tc.values[i];
    }
    const double eps = cert.xi_q - exact_compiled_bias(fn, p);
    CHECK(std::abs(weighted - eps) < 1e-8);
    if (theta == 0.0)
      for (double v : tc.values) CHECK(std::abs(v) < 1e-8);
  }
}

TEST_CASE("compiled bound verdicts") {
  const BellFunctional fn = chsh();
  const BoundReport honest = compiled_bound_report(fn, build_moment_matrix(honest_prover(chsh_optimal_strategy())), {});
  CHECK(honest.pass);
  CHECK(honest.excess <= 1e-9);
  const ClassicalSearch cs = best_classical_prover(compiled_game(fn), 1.0);
  const BoundReport leaked = compiled_bound_report(fn, build_moment_matrix(cs.prover, 2, 1.0), {});
  CHECK_FALSE(leaked.pass);
  CHECK(leaked.compiled_bias == doctest::Approx(1.0));
  const ClassicalSearch hidden = best_classical_prover(compiled_game(fn), 0.0);
  const CryptoMomentMatrix mh = build_moment_matrix(hidden.prover, 2, 0.0);
  CHECK(compiled_bound_report(fn, mh, {}).pass);
  const SosCertificate cert = build_sos(fn, solve_xor_sdp(fn));
  CHECK(sos_term_check(cert, mh, 0.0).pass);
}

TEST_CASE("satwap pseudo-expectation") {
  const SatwapGame g = satwap_game(3);
  const CryptoMomentMatrix m = build_moment_matrix(honest_prover(satwap_optimal_strategy(3)));
  CHECK(std::abs(expect_real(satwap_polynomial(g), m) - 4.0) < 1e-9);
  const TermCheck tc = satwap_term_check(g, m, 0.0);
  CHECK(tc.pass);
  CHECK(tc.identity_residual < 1e-10);
  CHECK(compiled_satwap_report(g, m, {}).pass);
  // Generalized observables: A^3 = 1 and orders wrap around.
  CHECK(std::abs(pseudo_expect(Degree2Poly(3).add(1.0, Symbol::A(0, 2), Symbol::A(0, 1)), m) - 1.0) < 1e-12);
  CHECK(std::abs(pseudo_expect(Degree2Poly(3).add(1.0, Symbol::A(0, 3)), m) - 1.0) < 1e-12);

  const HonestProver off = perturbed_satwap_prover(3, 0.2);
  const CryptoMomentMatrix mo = build_moment_matrix(off);
  const TermCheck to = satwap_term_check(g, mo, 0.0);
  CHECK(to.pass);
  CHECK(to.identity_residual < 1e-10);
  CHECK(expect_real(satwap_polynomial(g), mo) == doctest::Approx(exact_compiled_value(compiled_satwap(3), off)));
}

TEST_CASE("sampled correlators bracket the exact ones") {
  const HonestProver p = honest_prover(chsh_optimal_strategy());
  const CompiledRun run = run_compiled(chsh(), p, security_config("pad"), 40000, 8);
  const CorrelatorEstimate est = sampled_correlators(run, 2, 2);
  const Mat exact = crypto_correlators(p);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      CHECK(est.counts(x, y) > 0);
      CHECK(std::abs(est.mean(x, y) - exact(x, y)) < 5.0 * est.stderr_(x, y));
    }
}
