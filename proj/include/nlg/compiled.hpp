// Copyright 2026 The nlgames Authors
// SPDX-License-Identifier: Apache-2.0

// Single-prover compiled protocol. The verifier encrypts Alice's question,
// the prover answers it under encryption, then answers Bob's question in the
// clear. Homomorphic evaluation is simulated: the harness applies the
// prover's measurement for the true plaintext without revealing it.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nlg/scheme.hpp"
#include "nlg/strategy.hpp"

namespace nlg {

struct SecurityConfig {
  std::string scheme = "pad";
  int kappa = 64;
  double leakage_p = 0.0;  // probability that a ciphertext reveals its plaintext
  double delta_qhe = 0.0;  // slack allowed in pseudo-expectation checks
};

// Config whose leakage matches the scheme spec ("pad", "transparent", "leaky:P").
SecurityConfig security_config(const std::string& scheme, int kappa = 64, double delta_qhe = 0.0);
void check_config(const SecurityConfig& cfg);

// Scoring functional plus the distribution used to sample questions.
struct CompiledGame {
  OutcomeFunctional functional;
  Mat question_weights;
};

CompiledGame compiled_game(const BellFunctional& fn);
CompiledGame compiled_satwap(int d);

// First-round action for one plaintext: with probability `weight` (over the
// encryption randomness) the prover applies the Kraus family `kraus[a]`.
struct KrausBranch {
  double weight = 1.0;
  std::vector<CMat> kraus;
};

struct HonestProver {
  QuantumStrategy strategy;
  std::vector<std::vector<KrausBranch>> first_round;  // indexed by x
};

// Projective first round on Alice's register, second round with Bob's
// observables.
HonestProver honest_prover(const QuantumStrategy& s);
void check_prover(const HonestProver& p);

// Deterministic classical prover. `first` is evaluated under encryption, so
// the prover never learns x unless the ciphertext leaks it; `informed[x][y]`
// is then used in place of `second[y]`.
struct ClassicalProver {
  std::vector<int> first;
  std::vector<int> second;
  std::vector<std::vector<int>> informed;
};

// Classical prover that tries to read x off the ciphertext.
struct AttackingProver {
  ClassicalProver tables;
  std::function<std::optional<int>(const Ciphertext&)> decode;
};

using ProverModel = std::variant<HonestProver, ClassicalProver, AttackingProver>;

struct TranscriptRecord {
  int x;
  std::uint64_t nonce;
  int a;
  int y;
  int b;
  bool win;
  double score;  // unbiased per-round estimate of the functional value
};

struct CompiledRun {
  std::vector<TranscriptRecord> transcripts;
  std::optional<Mat> exact_correlators;
  SecurityConfig config;
  std::uint64_t seed = 0;
  double win_rate = 0, win_stderr = 0;
  double score_mean = 0, score_stderr = 0;
};

CompiledRun run_compiled(const CompiledGame& game, const ProverModel& prover,
                         const SecurityConfig& cfg, long rounds, std::uint64_t seed,
                         bool exact = false);
CompiledRun run_compiled(const BellFunctional& fn, const ProverModel& prover,
                         const SecurityConfig& cfg, long rounds, std::uint64_t seed,
                         bool exact = false);

std::vector<std::pair<int, CVec>> post_measurement_states(const HonestProver& p, int x,
                                                          std::size_t branch = 0);
CMat decrypted_observable(const HonestProver& p, int x, int k = 1);

// Projector onto the eigenvalue omega^b of a generalized observable.
CMat outcome_projector(const CMat& obs, int d, int b);

// p(a, b | x, y) as a d x d matrix, averaged over the encryption randomness.
Mat outcome_distribution(const HonestProver& p, int x, int y);

// <A_x, B_y> = E sum_a (-1)^a <psi_a|B_y|psi_a> for binary provers.
Mat crypto_correlators(const HonestProver& p);

double exact_compiled_value(const CompiledGame& game, const HonestProver& p);
double exact_compiled_bias(const BellFunctional& fn, const HonestProver& p,
                           const SecurityConfig& cfg = {});

double exact_classical_value(const CompiledGame& game, const ClassicalProver& p, double leakage);

struct ClassicalSearch {
  double value;
  ClassicalProver prover;
};
// Exhaustive search over the deterministic tables (first, second); informed
// answers are best responses.
ClassicalSearch best_classical_prover(const CompiledGame& game, double leakage);

}  // namespace nlg
