// Copyright 2026 The nlgames Authors
// SPDX-License-Identifier: Apache-2.0

#include "nlg/scheme.hpp"

#include <cmath>
#include <sstream>

#include "nlg/errors.hpp"

namespace nlg {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Rng derived_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(index),
                    std::uint32_t(index >> 32)};
  return Rng(seq);
}

std::uint64_t keyed_pad(std::uint64_t key, std::uint64_t nonce) {
  return splitmix64(key ^ splitmix64(nonce));
}

SecretKey Scheme::gen(int kappa, Rng& rng) const {
  if (kappa < 1 || kappa > 64) throw InputError("kappa must lie in [1, 64]");
  std::uint64_t mask = kappa == 64 ? ~0ULL : ((1ULL << kappa) - 1);
  return {rng() & mask, kappa};
}

int Scheme::dec(const SecretKey& key, const Ciphertext& ct) const {
  if (ct.in_clear) return static_cast<int>(ct.payload);
  return static_cast<int>(ct.payload ^ keyed_pad(key.bits, ct.nonce));
}

Ciphertext TransparentScheme::enc(const SecretKey&, int plaintext, Rng& rng) const {
  return {rng(), static_cast<std::uint64_t>(plaintext), true};
}

Ciphertext KeyedPadScheme::enc(const SecretKey& key, int plaintext, Rng& rng) const {
  std::uint64_t nonce = rng();
  return {nonce, static_cast<std::uint64_t>(plaintext) ^ keyed_pad(key.bits, nonce), false};
}

LeakyScheme::LeakyScheme(double p) : p_(p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("leakage must lie in [0, 1]");
}

std::string LeakyScheme::name() const {
  std::ostringstream os;
  os << "leaky:" << p_;
  return os.str();
}

Ciphertext LeakyScheme::enc(const SecretKey& key, int plaintext, Rng& rng) const {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (u(rng) < p_) return {rng(), static_cast<std::uint64_t>(plaintext), true};
  return KeyedPadScheme::enc(key, plaintext, rng);
}

std::unique_ptr<Scheme> make_scheme(const std::string& spec) {
  if (spec == "transparent") return std::make_unique<TransparentScheme>();
  if (spec == "pad") return std::make_unique<KeyedPadScheme>();
  if (spec.rfind("leaky:", 0) == 0) {
    std::size_t used = 0;
    double p = 0;
    try {
      p = std::stod(spec.substr(6), &used);
    } catch (const std::exception&) {
      throw InputError("bad leakage in scheme spec: " + spec);
    }
    if (used != spec.size() - 6) throw InputError("bad leakage in scheme spec: " + spec);
    return std::make_unique<LeakyScheme>(p);
  }
  throw InputError("unknown scheme: " + spec);
}

Distinguisher frequency_distinguisher(int queries) {
  Distinguisher d;
  d.choose = [] { return std::pair<int, int>{0, 1}; };
  // Compares the challenge's low payload bit with the majority low bit seen
  // for m0 under fresh encryptions.
  d.guess = [queries](const Ciphertext& ct, int m0, int, const EncryptionOracle& oracle, Rng&) {
    int ones = 0;
    for (int i = 0; i < queries; ++i) ones += int(oracle(m0).payload & 1);
    int majority = 2 * ones >= queries ? 1 : 0;
    return int(ct.payload & 1) == majority ? 0 : 1;
  };
  return d;
}

Distinguisher peek_distinguisher() {
  Distinguisher d;
  d.choose = [] { return std::pair<int, int>{0, 1}; };
  d.guess = [](const Ciphertext& ct, int m0, int, const EncryptionOracle&, Rng& rng) {
    if (ct.in_clear) return ct.payload == static_cast<std::uint64_t>(m0) ? 0 : 1;
    return std::bernoulli_distribution(0.5)(rng) ? 1 : 0;
  };
  return d;
}

AdvantageEstimate ind_cpa_experiment(const Scheme& scheme, const Distinguisher& dist, long trials,
                                     std::uint64_t seed, int kappa) {
  if (trials < 1000) throw InputError("IND-CPA experiment needs at least 1000 trials");
  long correct = 0;
  for (long t = 0; t < trials; ++t) {
    Rng rng = derived_rng(seed, static_cast<std::uint64_t>(t));
    SecretKey key = scheme.gen(kappa, rng);
    EncryptionOracle oracle = [&](int m) { return scheme.enc(key, m, rng); };
    auto [m0, m1] = dist.choose();
    int b = std::bernoulli_distribution(0.5)(rng) ? 1 : 0;
    Ciphertext ct = scheme.enc(key, b ? m1 : m0, rng);
    if (dist.guess(ct, m0, m1, oracle, rng) == b) ++correct;
  }
  double p = double(correct) / double(trials);
  return {p - 0.5, std::sqrt(p * (1.0 - p) / double(trials)), trials};
}

}  // namespace nlg
