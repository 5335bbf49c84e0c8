// Copyright 2026 The nlgames Authors
// SPDX-License-Identifier: Apache-2.0

// Toy encryption schemes for the compiled protocol. None of these is secure
// in any cryptographic sense; the keyed pad is only statistically hiding
// against distinguishers that never see the key.

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <utility>

namespace nlg {

using Rng = std::mt19937_64;

// Independent stream for item `index` of a run seeded with `seed`.
Rng derived_rng(std::uint64_t seed, std::uint64_t index);

struct Ciphertext {
  std::uint64_t nonce = 0;
  std::uint64_t payload = 0;
  bool in_clear = false;  // payload is the plaintext itself
};

struct SecretKey {
  std::uint64_t bits = 0;
  int kappa = 0;
};

class Scheme {
 public:
  virtual ~Scheme() = default;
  virtual std::string name() const = 0;
  virtual SecretKey gen(int kappa, Rng& rng) const;
  virtual Ciphertext enc(const SecretKey& key, int plaintext, Rng& rng) const = 0;
  virtual int dec(const SecretKey& key, const Ciphertext& ct) const;
};

class TransparentScheme final : public Scheme {
 public:
  std::string name() const override { return "transparent"; }
  Ciphertext enc(const SecretKey& key, int plaintext, Rng& rng) const override;
};

class KeyedPadScheme : public Scheme {
 public:
  std::string name() const override { return "pad"; }
  Ciphertext enc(const SecretKey& key, int plaintext, Rng& rng) const override;
};

// Keyed pad that sends the plaintext in the clear with probability p.
class LeakyScheme final : public KeyedPadScheme {
 public:
  explicit LeakyScheme(double p);
  std::string name() const override;
  double leakage() const { return p_; }
  Ciphertext enc(const SecretKey& key, int plaintext, Rng& rng) const override;

 private:
  double p_;
};

// Parses "transparent", "pad", or "leaky:P".
std::unique_ptr<Scheme> make_scheme(const std::string& spec);

std::uint64_t keyed_pad(std::uint64_t key, std::uint64_t nonce);

// Two-message indistinguishability game with oracle access to encryption.
using EncryptionOracle = std::function<Ciphertext(int)>;

struct Distinguisher {
  std::function<std::pair<int, int>()> choose;
  std::function<int(const Ciphertext&, int m0, int m1, const EncryptionOracle&, Rng&)> guess;
};

Distinguisher frequency_distinguisher(int queries = 16);
Distinguisher peek_distinguisher();

struct AdvantageEstimate {
  double advantage;
  double stderr_;
  long trials;
};

AdvantageEstimate ind_cpa_experiment(const Scheme& scheme, const Distinguisher& dist, long trials,
                                     std::uint64_t seed, int kappa = 64);

}  // namespace nlg
