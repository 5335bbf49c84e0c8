// Copyright 2026 The nlgames Authors
// SPDX-License-Identifier: Apache-2.0

#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

#include <Eigen/Core>

#include "nlg/game_io.hpp"
#include "nlg/pseudo_expectation.hpp"
#include "nlg/satwap.hpp"
#include "nlg/sdp.hpp"
#include "nlg/selftest.hpp"
#include "nlg/sos.hpp"

namespace nlg::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

template <class Derived>
json to_json(const Eigen::MatrixBase<Derived>& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(double(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

json vec_json(const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open game file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string hex_digest(const std::string& text) {
  std::ostringstream os;
  os << std::hex << std::hash<std::string>{}(text);
  return os.str();
}

// Assembles the common envelope around `results`.
class ReportBuilder {
 public:
  ReportBuilder(std::string command, json inputs, std::uint64_t seed, std::string extra = {})
      : start_(std::chrono::steady_clock::now()) {
    doc_["command"] = std::move(command);
    doc_["inputs"] = std::move(inputs);
    doc_["inputs_digest"] = hex_digest(doc_["inputs"].dump() + extra);
    doc_["seed"] = seed;
    doc_["versions"] = {{"nlg", kVersion},
                        {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                      std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                      std::to_string(EIGEN_MINOR_VERSION)}};
    doc_["results"] = json::object();
    doc_["tolerances"] = json::object();
  }

  json& results() { return doc_["results"]; }
  json& tolerances() { return doc_["tolerances"]; }

  Report finish(int exit_code = 0) {
    const auto dt = std::chrono::steady_clock::now() - start_;
    doc_["wall_time_s"] = std::chrono::duration<double>(dt).count();
    doc_["exit_code"] = exit_code;
    return {doc_, exit_code};
  }

 private:
  json doc_;
  std::chrono::steady_clock::time_point start_;
};

json sdp_json(const SdpSolution& s, int nA) {
  return {{"bias", s.primal_value},     {"dual", s.dual_value},
          {"gap", s.gap},               {"iterations", s.iterations},
          {"converged", s.converged},   {"lambda_a", vec_json(s.lambda_a(nA))},
          {"lambda_b", vec_json(s.lambda_b(nA))}};
}

json winprob_json(double bias) {
  const WinProb w = bias_to_winprob(bias);
  return {{"value", w.value}, {"out_of_range", w.out_of_range}};
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// Human-readable form of one certificate square.
std::string square_text(const SosCertificate& c, Eigen::Index x) {
  std::ostringstream os;
  os << fmt(c.lambda_a(x) / 2.0) << " * (A" << x;
  for (Eigen::Index y = 0; y < c.F.cols(); ++y) {
    const double f = c.F(x, y);
    if (f == 0.0) continue;
    os << (f < 0 ? " + " : " - ") << fmt(std::abs(f)) << " B" << y;
  }
  os << ")^2";
  return os.str();
}

json term_json(const TermCheck& t) {
  json rows = json::array();
  for (std::size_t i = 0; i < t.names.size(); ++i)
    rows.push_back({{"name", t.names[i]}, {"value", t.values[i]}, {"weight", t.weights[i]}});
  return {{"squares", rows},
          {"bob_value", t.bob_value},
          {"identity_residual", t.identity_residual},
          {"pass", t.pass}};
}

json bound_json(const BoundReport& b) {
  return {{"compiled_bias", b.compiled_bias},
          {"xi_q", b.xi_q},
          {"excess", b.excess},
          {"verdict", b.pass ? "pass" : "fail"}};
}

json selftest_json(const SelfTestReport& r) {
  json rows = json::array();
  for (const auto& c : r.residuals) {
    json row = {{"name", c.name}, {"value", c.value}, {"pass", c.pass()}};
    row["bound"] = c.bound ? json(*c.bound) : json(nullptr);
    rows.push_back(row);
  }
  json info = json::object();
  for (const auto& [k, v] : r.info) info[k] = v;
  return {{"family", r.family},  {"eps", r.eps},
          {"delta", r.delta},    {"residuals", rows},
          {"angles", r.extracted}, {"info", info},
          {"pass", r.pass}};
}

HonestProver honest_for(const GameSpec& g, const SdpSolution* sol) {
  if (!g.is_xor()) return honest_prover(satwap_optimal_strategy(g.satwap_order()));
  if (g.mnx) return honest_prover(mnx_optimal_strategy(*g.mnx));
  return honest_prover(strategy_from_gram(g.functional(), sol->qtilde));
}

json inputs_with_game(json inputs, const std::string& path, std::string& text) {
  text = read_file(path);
  inputs["game"] = path;
  return inputs;
}

}  // namespace

json numeric_payload(const json& report) {
  json copy = report;
  copy.erase("wall_time_s");
  return copy;
}

Report error_report(const std::string& command, const std::string& message, int code) {
  json doc = {{"command", command}, {"error", message}, {"exit_code", code}};
  return {doc, code};
}

Report cmd_bound(const BoundArgs& a) {
  return guarded("bound", [&] {
    if (a.method != "sdp" && a.method != "brute" && a.method != "oracle" && a.method != "all")
      throw InputError("unknown method '" + a.method + "'");
    std::string text;
    json inputs = inputs_with_game({{"method", a.method}, {"tol", a.tol}, {"max_iterations", a.max_iterations}, {"restarts", a.restarts}},
                                   a.game, text);
    ReportBuilder rb("bound", inputs, a.seed, text);
    const GameSpec g = parse_game(text);
    json& r = rb.results();
    r["game"] = g.name;
    rb.tolerances()["sdp_gap"] = a.tol;
    const bool all = a.method == "all";

    if (!g.is_xor()) {
      const int d = g.satwap_order();
      const SatwapBounds b = satwap_bounds(d);
      r["classical_formula"] = b.classical;
      r["quantum"] = b.quantum;
      if (all || a.method == "brute") {
        const double e = classical_score_d(satwap_functional(d));
        r["classical_enumerated"] = e;
        r["classical_delta"] = std::abs(e - b.classical);
      }
      return rb.finish();
    }

    const BellFunctional& fn = g.functional();
    r["normalization"] = fn.normalization == Normalization::game ? "game" : "raw";
    std::optional<SdpSolution> sol;
    if (all || a.method == "sdp" || a.method == "oracle") {
      SdpOptions opt;
      opt.tol = a.tol;
      opt.max_iterations = a.max_iterations;
      sol = solve_xor_sdp(fn, opt);
    }
    if (all || a.method == "sdp") {
      r["sdp"] = sdp_json(*sol, fn.nA());
      r["quantum_bias"] = sol->primal_value;
      if (fn.normalization == Normalization::game) r["quantum_winprob"] = winprob_json(sol->primal_value);
    }
    if (all || a.method == "brute") {
      const double c = classical_bias(fn);
      r["classical_bias"] = c;
      if (fn.normalization == Normalization::game) r["classical_winprob"] = winprob_json(c);
    }
    if (all || a.method == "oracle") {
      const double o = vector_strategy_oracle(fn, fn.nA() + fn.nB(), a.restarts, a.seed);
      r["oracle_bias"] = o;
      r["oracle_minus_sdp"] = o - sol->primal_value;
    }
    return rb.finish();
  });
}

Report cmd_sos(const SosArgs& a) {
  return guarded("sos", [&] {
    if (a.verify_dim < 1 || a.verify_dim > 16) throw InputError("verify-dim must be in [1, 16]");
    if (a.realizations < 0) throw InputError("realizations must be nonnegative");
    std::string text;
    json inputs = inputs_with_game(
        {{"verify_dim", a.verify_dim}, {"realizations", a.realizations}, {"tol", a.tol}}, a.game, text);
    ReportBuilder rb("sos", inputs, a.seed, text);
    const GameSpec g = parse_game(text);
    json& r = rb.results();
    r["game"] = g.name;
    Rng rng(a.seed);

    if (!g.is_xor()) {
      const int d = g.satwap_order();
      double worst = satwap_sos_residual(d, satwap_optimal_strategy(d));
      r["optimal_residual"] = worst;
      for (int i = 0; i < a.realizations; ++i) {
        QuantumStrategy s;
        s.order = d;
        s.state = maximally_entangled(a.verify_dim);
        for (int k = 0; k < 2; ++k) {
          s.alice.push_back(random_generalized_observable(a.verify_dim, d, rng));
          s.bob.push_back(random_generalized_observable(a.verify_dim, d, rng));
        }
        worst = std::max(worst, satwap_sos_residual(d, s));
      }
      r["max_identity_residual"] = worst;
      r["pass"] = worst <= 1e-8;
      rb.tolerances()["identity_residual"] = 1e-8;
      return rb.finish();
    }

    const BellFunctional& fn = g.functional();
    SdpOptions opt;
    opt.tol = a.tol;
    const SdpSolution sol = solve_xor_sdp(fn, opt);
    const SosCertificate c = build_sos(fn, sol);
    json polys = json::array();
    for (Eigen::Index x = 0; x < fn.nA(); ++x)
      if (c.keeps(x)) polys.push_back(square_text(c, x));
    r["certificate"] = {{"lambda_a", vec_json(c.lambda_a)},
                        {"lambda_b", vec_json(c.lambda_b)},
                        {"F", to_json(c.F)},
                        {"bob_poly_offset", c.offset},
                        {"bob_poly_matrix", to_json(c.G)},
                        {"xi_q", c.xi_q},
                        {"dropped_rows", c.dropped_rows},
                        {"squares", polys}};
    r["schur_defect"] = schur_defect(c);
    const FactorVectors ov = factor_vectors(fn, sol);
    const FactorDefects od = factor_defects(ov, fn, sol);
    r["factor"] = {{"uu", od.uu}, {"uv", od.uv}, {"vv_psd", od.vv_psd}};

    double worst = 0.0, bob_min = std::numeric_limits<double>::infinity();
    double slack_min = std::numeric_limits<double>::infinity(), bob_norm = 0.0;
    for (int i = 0; i < a.realizations; ++i) {
      QuantumStrategy s;
      s.state = maximally_entangled(a.verify_dim);
      for (Eigen::Index x = 0; x < fn.nA(); ++x) s.alice.push_back(random_binary_observable(a.verify_dim, rng));
      for (Eigen::Index y = 0; y < fn.nB(); ++y) s.bob.push_back(random_binary_observable(a.verify_dim, rng));
      worst = std::max(worst, verify_sos_identity(c, s));
      bob_min = std::min(bob_min, bob_poly_psd_defect(c, s.bob));
      bob_norm = std::max(bob_norm, operator_norm(bob_poly_operator(c, s.bob)));
      slack_min = std::min(slack_min, factor_slack(ov, fn, sol, s));
    }
    r["max_identity_residual"] = worst;
    r["min_bob_poly_eigenvalue"] = a.realizations > 0 ? json(bob_min) : json(nullptr);
    r["max_bob_poly_norm"] = bob_norm;
    r["min_factor_slack"] = a.realizations > 0 ? json(slack_min) : json(nullptr);
    const bool pass = worst <= 1e-8 && (a.realizations == 0 || bob_min >= -1e-8) &&
                      od.uu <= 1e-10 && od.uv <= 1e-10 && r["schur_defect"].get<double>() >= -1e-9;
    r["pass"] = pass;
    rb.tolerances() = {{"identity_residual", 1e-8}, {"bob_poly_eigenvalue", -1e-8},
                       {"factor_equalities", 1e-10}, {"schur_defect", -1e-9}};
    return rb.finish(pass ? 0 : 5);
  });
}

Report cmd_compile(const CompileArgs& a) {
  return guarded("compile", [&] {
    if (a.prover != "honest" && a.prover != "classical")
      throw InputError("unknown prover '" + a.prover + "'");
    if (a.rounds < 0) throw InputError("rounds must be nonnegative");
    std::string text;
    json inputs = inputs_with_game({{"scheme", a.scheme},
                                    {"prover", a.prover},
                                    {"rounds", a.rounds},
                                    {"exact", a.exact},
                                    {"delta", a.delta},
                                    {"kappa", a.kappa}},
                                   a.game, text);
    ReportBuilder rb("compile", inputs, a.seed, text);
    const GameSpec g = parse_game(text);
    const SecurityConfig cfg = security_config(a.scheme, a.kappa, a.delta);
    json& r = rb.results();
    r["game"] = g.name;
    r["leakage"] = cfg.leakage_p;
    rb.tolerances() = {{"delta", a.delta}, {"bound_slack", 1e-8}, {"term_tolerance", kTermTolerance}};

    std::optional<SdpSolution> sol;
    if (g.is_xor()) sol = solve_xor_sdp(g.functional());
    const CompiledGame game = g.is_xor() ? compiled_game(g.functional()) : compiled_satwap(g.satwap_order());
    const int d = game.functional.d();

    ProverModel prover;
    CryptoMomentMatrix moments(game.functional.nA(), game.functional.nB(), d);
    if (a.prover == "honest") {
      HonestProver hp = honest_for(g, sol ? &*sol : nullptr);
      moments = build_moment_matrix(hp);
      if (a.exact) {
        r["exact_value"] = exact_compiled_value(game, hp);
        if (g.is_xor()) r["exact_bias"] = exact_compiled_bias(g.functional(), hp, cfg);
      }
      prover = std::move(hp);
    } else {
      const ClassicalSearch cs = best_classical_prover(game, cfg.leakage_p);
      moments = build_moment_matrix(cs.prover, d, cfg.leakage_p);
      if (a.exact) r["exact_value"] = cs.value;
      r["classical_tables"] = {{"first", cs.prover.first}, {"second", cs.prover.second}};
      prover = cs.prover;
    }

    const CompiledRun run = run_compiled(game, prover, cfg, a.rounds, a.seed, a.exact);
    r["rounds"] = a.rounds;
    r["win_rate"] = run.win_rate;
    r["win_stderr"] = run.win_stderr;
    r["score_mean"] = run.score_mean;
    r["score_stderr"] = run.score_stderr;
    if (!a.transcript.empty()) {
      std::ofstream out(a.transcript);
      if (!out) throw InputError("cannot write transcript " + a.transcript);
      for (const auto& t : run.transcripts)
        out << json{{"x", t.x}, {"nonce", t.nonce}, {"a", t.a}, {"y", t.y}, {"b", t.b}, {"win", t.win}}.dump()
            << '\n';
      r["transcript"] = a.transcript;
    }

    BoundReport br;
    if (g.is_xor()) {
      const SosCertificate cert = build_sos(g.functional(), *sol);
      r["moment_matrix"] = {{"correlators", to_json(moments.c_block())},
                            {"bob_gram", to_json(CMat(moments.s_block()).real())}};
      r["pseudo_expectation"] = term_json(sos_term_check(cert, moments, a.delta));
      br = compiled_bound_report(g.functional(), moments, cfg);
    } else {
      const SatwapGame sg = satwap_game(g.satwap_order());
      r["pseudo_expectation"] = term_json(satwap_term_check(sg, moments, a.delta));
      br = compiled_satwap_report(sg, moments, cfg);
    }
    r["bound"] = bound_json(br);
    return rb.finish(br.pass ? 0 : 5);
  });
}

Report cmd_selftest(const SelftestArgs& a) {
  return guarded("selftest", [&] {
    if (a.delta < 0) throw InputError("delta must be nonnegative");
    json inputs = {{"family", a.family}, {"delta", a.delta}, {"eps_sweep", a.eps_sweep}};
    if (a.family == "mnx") inputs.update({{"mu", a.mu}, {"nu", a.nu}, {"chi", a.chi}});
    if (a.family == "satwap") inputs["d"] = a.d;
    ReportBuilder rb("selftest", inputs, a.seed);
    json& r = rb.results();
    const std::vector<double> thetas = {0.01, 0.05, 0.1, 0.2, 0.3};

    std::function<SelfTestReport(const HonestProver&)> certify;
    std::function<HonestProver(double)> perturbed;
    if (a.family == "elegant") {
      certify = [&](const HonestProver& p) { return elegant_selftest(p, a.delta); };
      perturbed = perturbed_elegant_prover;
    } else if (a.family == "mnx") {
      const MnxParams mp{a.mu, a.nu, a.chi};
      if (mnx_quantum_bound(mp) < 1e-12)
        throw InputError("degenerate parameters: quantum bound is 0, nothing to self-test");
      if (!mp.violates()) throw InputError("parameters do not violate the classical bound");
      certify = [=](const HonestProver& p) { return mnx_selftest(p, mp, a.delta); };
      perturbed = [=](double t) { return perturbed_mnx_prover(mp, t); };
    } else if (a.family == "satwap") {
      certify = [&](const HonestProver& p) { return satwap_selftest_residuals(p, a.d); };
      perturbed = [&](double t) { return perturbed_satwap_prover(a.d, t); };
    } else {
      throw InputError("unknown family '" + a.family + "'");
    }

    const HonestProver opt = perturbed(0.0);
    const SelfTestReport base = certify(opt);
    r["optimal"] = selftest_json(base);
    bool pass = base.pass;
    if (a.eps_sweep) {
      json rows = json::array();
      for (double t : thetas) {
        const SelfTestReport s = certify(perturbed(t));
        rows.push_back({{"theta", t}, {"report", selftest_json(s)}});
        pass = pass && s.pass;
      }
      r["sweep"] = rows;
    }
    r["pass"] = pass;
    rb.tolerances() = {{"residual_slack", 1e-12}, {"eps_clamp", 1e-9}};
    return rb.finish(pass ? 0 : 5);
  });
}

Report cmd_satwap(const SatwapArgs& a) {
  return guarded("satwap", [&] {
    ReportBuilder rb("satwap", {{"d", a.d}, {"realizations", a.realizations}}, a.seed);
    json& r = rb.results();
    const SatwapGame g = satwap_game(a.d);
    const SatwapBounds b = satwap_bounds(a.d);
    r["classical_formula"] = b.classical;
    r["quantum"] = b.quantum;
    if (a.d <= 4) r["classical_enumerated"] = classical_score_d(satwap_functional(a.d));

    const QuantumStrategy s = satwap_optimal_strategy(a.d);
    r["achieved"] = satwap_value(generalized_correlators(s), g);
    double worst = satwap_sos_residual(a.d, s);
    r["optimal_sos_residual"] = worst;
    Rng rng(a.seed);
    for (int i = 0; i < a.realizations; ++i) {
      QuantumStrategy q;
      q.order = a.d;
      q.state = maximally_entangled(3);
      for (int k = 0; k < 2; ++k) {
        q.alice.push_back(random_generalized_observable(3, a.d, rng));
        q.bob.push_back(random_generalized_observable(3, a.d, rng));
      }
      worst = std::max(worst, satwap_sos_residual(a.d, q));
    }
    r["max_sos_residual"] = worst;

    const ZdTd zt = zd_td(a.d);
    const CMat id = CMat::Identity(a.d, a.d);
    r["zd_td"] = {{"z_unitarity", unitarity_defect(zt.Z)},
                  {"t_unitarity", unitarity_defect(zt.T)},
                  {"z_power", (unitary_power(zt.Z, a.d) - id).norm()},
                  {"t_power", (unitary_power(zt.T, a.d) - id).norm()}};
    if (a.d <= 8) r["selftest"] = selftest_json(satwap_selftest_residuals(honest_prover(s), a.d));
    rb.tolerances() = {{"sos_residual", 1e-8}};
    return rb.finish();
  });
}

}  // namespace nlg::cli
