// Copyright 2026 The nlgames Authors
// SPDX-License-Identifier: Apache-2.0

#include "nlg/compiled.hpp"

#include <cmath>
#include <limits>

#include "nlg/errors.hpp"
#include "nlg/satwap.hpp"

namespace nlg {

SecurityConfig security_config(const std::string& scheme, int kappa, double delta_qhe) {
  SecurityConfig cfg;
  cfg.scheme = scheme;
  cfg.kappa = kappa;
  cfg.delta_qhe = delta_qhe;
  auto s = make_scheme(scheme);
  if (scheme == "transparent") cfg.leakage_p = 1.0;
  if (auto* leaky = dynamic_cast<const LeakyScheme*>(s.get())) cfg.leakage_p = leaky->leakage();
  check_config(cfg);
  return cfg;
}

void check_config(const SecurityConfig& cfg) {
  if (!(cfg.leakage_p >= 0.0 && cfg.leakage_p <= 1.0)) throw InputError("leakage_p outside [0, 1]");
  if (!(cfg.delta_qhe >= 0.0)) throw InputError("delta_qhe must be nonnegative");
  if (cfg.kappa < 1 || cfg.kappa > 64) throw InputError("kappa must lie in [1, 64]");
}

CompiledGame compiled_game(const BellFunctional& fn) {
  Mat w = fn.source ? fn.source->q
                    : Mat::Constant(fn.nA(), fn.nB(), 1.0 / double(fn.nA() * fn.nB()));
  return {outcome_functional(fn), w};
}

CompiledGame compiled_satwap(int d) {
  return {satwap_functional(d), Mat::Constant(2, 2, 0.25)};
}

HonestProver honest_prover(const QuantumStrategy& s) {
  check_strategy(s);
  const int d = s.order;
  const auto dB = s.state.dB;
  HonestProver p;
  p.strategy = s;
  for (const auto& a : s.alice) {
    KrausBranch br;
    for (int o = 0; o < d; ++o) br.kraus.push_back(lift_left(outcome_projector(a, d, o), dB));
    p.first_round.push_back({br});
  }
  check_prover(p);
  return p;
}

void check_prover(const HonestProver& p) {
  check_strategy(p.strategy);
  const auto n = p.strategy.state.dim();
  const int d = p.strategy.order;
  if (p.first_round.size() != p.strategy.alice.size())
    throw InputError("first-round maps do not match Alice's question count");
  for (const auto& branches : p.first_round) {
    double total = 0.0;
    for (const auto& br : branches) {
      if (int(br.kraus.size()) != d) throw InputError("Kraus family needs one operator per outcome");
      CMat sum = CMat::Zero(n, n);
      for (const auto& k : br.kraus) {
        if (k.rows() != n || k.cols() != n) throw InputError("Kraus operator has wrong size");
        sum += k.adjoint() * k;
      }
      if ((sum - CMat::Identity(n, n)).norm() > 1e-10) throw InputError("Kraus family is not complete");
      if (br.weight < 0.0) throw InputError("negative branch weight");
      total += br.weight;
    }
    if (std::abs(total - 1.0) > 1e-12) throw InputError("branch weights do not sum to 1");
  }
}

CMat outcome_projector(const CMat& obs, int d, int b) {
  CMat out = CMat::Zero(obs.rows(), obs.cols());
  CMat pw = CMat::Identity(obs.rows(), obs.cols());
  for (int l = 0; l < d; ++l) {
    out += root_of_unity(d, -double(b) * l) * pw;
    pw = pw * obs;
  }
  out /= double(d);
  return hermitian_part(out);
}

std::vector<std::pair<int, CVec>> post_measurement_states(const HonestProver& p, int x,
                                                          std::size_t branch) {
  if (x < 0 || x >= int(p.first_round.size())) throw InputError("x out of range");
  const auto& brs = p.first_round[x];
  if (branch >= brs.size()) throw InputError("branch out of range");
  std::vector<std::pair<int, CVec>> out;
  for (std::size_t a = 0; a < brs[branch].kraus.size(); ++a)
    out.emplace_back(int(a), brs[branch].kraus[a] * p.strategy.state.amplitudes);
  return out;
}

CMat decrypted_observable(const HonestProver& p, int x, int k) {
  if (x < 0 || x >= int(p.first_round.size())) throw InputError("x out of range");
  const int d = p.strategy.order;
  const auto n = p.strategy.state.dim();
  CMat out = CMat::Zero(n, n);
  for (const auto& br : p.first_round[x])
    for (std::size_t a = 0; a < br.kraus.size(); ++a)
      out += br.weight * root_of_unity(d, double(k) * a) * br.kraus[a].adjoint() * br.kraus[a];
  return d == 2 ? hermitian_part(out) : out;
}

namespace {

std::vector<std::vector<CMat>> bob_projectors(const HonestProver& p) {
  const int d = p.strategy.order;
  const auto dA = p.strategy.state.dA;
  std::vector<std::vector<CMat>> out;
  for (const auto& b : p.strategy.bob) {
    std::vector<CMat> proj;
    for (int o = 0; o < d; ++o) proj.push_back(lift_right(outcome_projector(b, d, o), dA));
    out.push_back(proj);
  }
  return out;
}

// p(a, b | x, y, branch).
Mat branch_distribution(const HonestProver& p, const std::vector<std::vector<CMat>>& proj, int x,
                        std::size_t branch, int y) {
  const int d = p.strategy.order;
  Mat t(d, d);
  for (const auto& [a, psi] : post_measurement_states(p, x, branch))
    for (int b = 0; b < d; ++b) t(a, b) = (proj[y][b] * psi).squaredNorm();
  return t;
}

double prover_tables_score(const CompiledGame& g, const ClassicalProver& p, double leakage) {
  const auto& f = g.functional;
  double v = 0.0;
  for (int x = 0; x < f.nA(); ++x)
    for (int y = 0; y < f.nB(); ++y) {
      int informed = p.informed.empty() ? p.second[y] : p.informed[x][y];
      v += leakage * f(p.first[x], informed, x, y) + (1.0 - leakage) * f(p.first[x], p.second[y], x, y);
    }
  return v;
}

void check_tables(const CompiledGame& g, const ClassicalProver& p) {
  const auto& f = g.functional;
  auto in_range = [&](int v) { return v >= 0 && v < f.d(); };
  if (int(p.first.size()) != f.nA() || int(p.second.size()) != f.nB())
    throw InputError("classical prover tables do not match game");
  for (int v : p.first)
    if (!in_range(v)) throw InputError("classical answer out of range");
  for (int v : p.second)
    if (!in_range(v)) throw InputError("classical answer out of range");
  if (!p.informed.empty()) {
    if (int(p.informed.size()) != f.nA()) throw InputError("informed table has wrong shape");
    for (const auto& row : p.informed) {
      if (int(row.size()) != f.nB()) throw InputError("informed table has wrong shape");
      for (int v : row)
        if (!in_range(v)) throw InputError("classical answer out of range");
    }
  }
}

}  // namespace

Mat outcome_distribution(const HonestProver& p, int x, int y) {
  auto proj = bob_projectors(p);
  const int d = p.strategy.order;
  Mat t = Mat::Zero(d, d);
  for (std::size_t br = 0; br < p.first_round[x].size(); ++br)
    t += p.first_round[x][br].weight * branch_distribution(p, proj, x, br, y);
  return t;
}

Mat crypto_correlators(const HonestProver& p) {
  if (p.strategy.order != 2) throw InputError("crypto correlators need binary outcomes");
  const auto nA = p.strategy.alice.size(), nB = p.strategy.bob.size();
  Mat c(nA, nB);
  for (std::size_t x = 0; x < nA; ++x)
    for (std::size_t y = 0; y < nB; ++y) {
      Mat t = outcome_distribution(p, int(x), int(y));
      c(x, y) = t(0, 0) + t(1, 1) - t(0, 1) - t(1, 0);
    }
  return c;
}

double exact_compiled_value(const CompiledGame& game, const HonestProver& p) {
  check_prover(p);
  const auto& f = game.functional;
  if (int(p.strategy.alice.size()) != f.nA() || int(p.strategy.bob.size()) != f.nB() ||
      p.strategy.order != f.d())
    throw InputError("prover does not match game");
  double v = 0.0;
  for (int x = 0; x < f.nA(); ++x)
    for (int y = 0; y < f.nB(); ++y) {
      Mat t = outcome_distribution(p, x, y);
      for (int a = 0; a < f.d(); ++a)
        for (int b = 0; b < f.d(); ++b) v += f(a, b, x, y) * t(a, b);
    }
  return v;
}

double exact_compiled_bias(const BellFunctional& fn, const HonestProver& p,
                           const SecurityConfig& cfg) {
  check_config(cfg);
  return exact_compiled_value(compiled_game(fn), p);
}

double exact_classical_value(const CompiledGame& game, const ClassicalProver& p, double leakage) {
  check_tables(game, p);
  return prover_tables_score(game, p, leakage);
}

ClassicalSearch best_classical_prover(const CompiledGame& game, double leakage) {
  const auto& f = game.functional;
  const int nA = f.nA(), nB = f.nB(), d = f.d();
  if (std::pow(double(d), nA) * std::pow(double(d), nB) > 1e8)
    throw GuardExceeded("classical prover enumeration exceeds guard");
  ClassicalProver p;
  p.first.assign(nA, 0);
  p.second.assign(nB, 0);
  ClassicalSearch best{-std::numeric_limits<double>::infinity(), p};
  auto advance = [d](std::vector<int>& v) {
    std::size_t i = 0;
    while (i < v.size() && ++v[i] == d) v[i++] = 0;
    return i < v.size();
  };
  do {
    p.informed.assign(nA, std::vector<int>(nB, 0));
    for (int x = 0; x < nA; ++x)
      for (int y = 0; y < nB; ++y) {
        int arg = 0;
        for (int b = 1; b < d; ++b)
          if (f(p.first[x], b, x, y) > f(p.first[x], arg, x, y)) arg = b;
        p.informed[x][y] = arg;
      }
    std::fill(p.second.begin(), p.second.end(), 0);
    do {
      double v = prover_tables_score(game, p, leakage);
      if (v > best.value) best = {v, p};
    } while (advance(p.second));
  } while (advance(p.first));
  return best;
}

CompiledRun run_compiled(const CompiledGame& game, const ProverModel& prover,
                         const SecurityConfig& cfg, long rounds, std::uint64_t seed, bool exact) {
  check_config(cfg);
  if (rounds < 1) throw InputError("rounds must be positive");
  const auto& f = game.functional;
  const int nA = f.nA(), nB = f.nB(), d = f.d();
  auto scheme = make_scheme(cfg.scheme);

  // Per-(x, branch, y) joint answer tables for honest provers.
  std::vector<std::vector<std::vector<Mat>>> tables;
  if (const auto* hp = std::get_if<HonestProver>(&prover)) {
    check_prover(*hp);
    if (int(hp->strategy.alice.size()) != nA || int(hp->strategy.bob.size()) != nB ||
        hp->strategy.order != d)
      throw InputError("prover does not match game");
    auto proj = bob_projectors(*hp);
    tables.resize(nA);
    for (int x = 0; x < nA; ++x)
      for (std::size_t br = 0; br < hp->first_round[x].size(); ++br) {
        tables[x].emplace_back();
        for (int y = 0; y < nB; ++y) tables[x].back().push_back(branch_distribution(*hp, proj, x, br, y));
      }
  } else if (const auto* cp = std::get_if<ClassicalProver>(&prover)) {
    check_tables(game, *cp);
  } else {
    const auto& ap = std::get<AttackingProver>(prover);
    check_tables(game, ap.tables);
    if (!ap.decode) throw InputError("attacking prover needs a decoder");
  }

  std::vector<double> qw(game.question_weights.data(),
                         game.question_weights.data() + game.question_weights.size());
  // question_weights is column-major: index = x + nA * y.
  CompiledRun run;
  run.config = cfg;
  run.seed = seed;
  run.transcripts.reserve(rounds);
  double wins = 0, s1 = 0, s2 = 0;
  for (long r = 0; r < rounds; ++r) {
    Rng rng = derived_rng(seed, static_cast<std::uint64_t>(r));
    std::discrete_distribution<int> pick_q(qw.begin(), qw.end());
    int q = pick_q(rng);
    int x = q % nA, y = q / nA;
    SecretKey key = scheme->gen(cfg.kappa, rng);
    Ciphertext ct = scheme->enc(key, x, rng);

    int a = 0, b = 0;
    if (const auto* hp = std::get_if<HonestProver>(&prover)) {
      const auto& brs = hp->first_round[x];
      std::vector<double> bw;
      for (const auto& br : brs) bw.push_back(br.weight);
      std::size_t br = std::discrete_distribution<std::size_t>(bw.begin(), bw.end())(rng);
      const Mat& t = tables[x][br][y];
      std::vector<double> pa(t.data(), t.data() + t.size());
      int cell = std::discrete_distribution<int>(pa.begin(), pa.end())(rng);
      a = cell % d;
      b = cell / d;
    } else {
      const ClassicalProver* cp = std::get_if<ClassicalProver>(&prover);
      std::optional<int> known;
      if (cp) {
        if (ct.in_clear) known = static_cast<int>(ct.payload);
      } else {
        const auto& ap = std::get<AttackingProver>(prover);
        cp = &ap.tables;
        known = ap.decode(ct);
      }
      a = cp->first[x];
      if (known && *known >= 0 && *known < nA && !cp->informed.empty())
        b = cp->informed[*known][y];
      else
        b = cp->second[y];
    }

    Ciphertext a_ct = scheme->enc(key, a, rng);
    int a_dec = scheme->dec(key, a_ct);
    if (a_dec != a || scheme->dec(key, ct) != x)
      throw VerificationFailure("decryption did not invert encryption");

    const double val = f(a_dec, b, x, y);
    const bool win = val >= f.best(x, y) - 1e-12;
    const double score = val / game.question_weights(x, y);
    run.transcripts.push_back({x, ct.nonce, a_dec, y, b, win, score});
    wins += win;
    s1 += score;
    s2 += score * score;
  }
  const double n = double(rounds);
  run.win_rate = wins / n;
  run.win_stderr = std::sqrt(run.win_rate * (1.0 - run.win_rate) / n);
  run.score_mean = s1 / n;
  run.score_stderr = rounds > 1 ? std::sqrt(std::max(0.0, s2 / n - run.score_mean * run.score_mean) / (n - 1.0)) : 0.0;

  if (exact) {
    if (const auto* hp = std::get_if<HonestProver>(&prover); hp && d == 2)
      run.exact_correlators = crypto_correlators(*hp);
  }
  return run;
}

CompiledRun run_compiled(const BellFunctional& fn, const ProverModel& prover,
                         const SecurityConfig& cfg, long rounds, std::uint64_t seed, bool exact) {
  return run_compiled(compiled_game(fn), prover, cfg, rounds, seed, exact);
}

}  // namespace nlg
