#include <doctest.h>

#include <cmath>
#include <fstream>
#include <string>

#include "commands.hpp"

using namespace nlg::cli;

namespace {

std::string game(const char* name) { return std::string(NLG_GAMES_DIR) + "/" + name + ".json"; }

}  // namespace

TEST_CASE("bound reports") {
  BoundArgs a;
  a.game = game("chsh");
  const Report r = cmd_bound(a);
  REQUIRE(r.exit_code == 0);
  const json& res = r.doc["results"];
  CHECK(res["classical_bias"].get<double>() == 0.5);
  CHECK(std::abs(res["quantum_bias"].get<double>() - std::sqrt(2.0) / 2.0) < 1e-7);
  CHECK(std::abs(res["quantum_winprob"]["value"].get<double>() - 0.8535533905932737) < 1e-7);
  CHECK(std::abs(res["oracle_minus_sdp"].get<double>()) < 1e-7);
  for (const char* key : {"command", "inputs", "inputs_digest", "seed", "versions", "wall_time_s", "tolerances"})
    CHECK(r.doc.contains(key));

  a.game = game("zero");
  const Report z = cmd_bound(a);
  CHECK(z.doc["results"]["quantum_bias"].get<double>() == 0.0);
  CHECK(z.doc["results"]["classical_bias"].get<double>() == 0.0);
  CHECK(z.doc["results"]["oracle_bias"].get<double>() == 0.0);

  a.game = game("satwap3");
  const Report s = cmd_bound(a);
  CHECK(s.doc["results"]["quantum"].get<double>() == 4.0);
  CHECK(s.doc["results"]["classical_delta"].get<double>() < 1e-9);
}

TEST_CASE("sos reports") {
  SosArgs a;
  a.game = game("chsh");
  const Report c = cmd_sos(a);
  CHECK(c.exit_code == 0);
  CHECK(c.doc["results"]["max_identity_residual"].get<double>() <= 1e-8);
  a.game = game("elegant");
  CHECK(cmd_sos(a).doc["results"]["certificate"]["squares"].size() == 4);
  a.game = game("single_entry");
  CHECK(cmd_sos(a).doc["results"]["max_bob_poly_norm"].get<double>() < 1e-12);
  a.game = game("satwap3");
  CHECK(cmd_sos(a).doc["results"]["pass"].get<bool>());
}

TEST_CASE("compile reports") {
  CompileArgs a;
  a.game = game("chsh");
  a.exact = true;
  a.rounds = 2000;
  const Report h = cmd_compile(a);
  CHECK(h.exit_code == 0);
  CHECK(std::abs(h.doc["results"]["exact_bias"].get<double>() - std::sqrt(2.0) / 2.0) < 1e-9);
  CHECK(h.doc["results"]["bound"]["verdict"] == "pass");

  a.prover = "classical";
  a.scheme = "leaky:1";
  const Report c = cmd_compile(a);
  CHECK(c.exit_code == 5);
  CHECK(c.doc["results"]["win_rate"].get<double>() > 0.99);
  CHECK(c.doc["results"]["bound"]["verdict"] == "fail");

  CompileArgs s;
  s.game = game("satwap3");
  s.exact = true;
  s.rounds = 500;
  const Report sw = cmd_compile(s);
  CHECK(std::abs(sw.doc["results"]["exact_value"].get<double>() - 4.0) < 1e-9);
}

TEST_CASE("transcripts are line-delimited records") {
  CompileArgs a;
  a.game = game("chsh");
  a.rounds = 50;
  a.transcript = "cli_transcript.jsonl";
  REQUIRE(cmd_compile(a).exit_code == 0);
  std::ifstream in(a.transcript);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    const json rec = json::parse(line);
    for (const char* key : {"x", "nonce", "a", "y", "b", "win"}) CHECK(rec.contains(key));
    ++n;
  }
  CHECK(n == 50);
}

TEST_CASE("selftest reports") {
  SelftestArgs a;
  a.family = "elegant";
  a.eps_sweep = true;
  const Report e = cmd_selftest(a);
  CHECK(e.exit_code == 0);
  double last = -1.0;
  for (const auto& row : e.doc["results"]["sweep"]) {
    const double v = row["report"]["residuals"][2]["value"].get<double>();
    CHECK(v > last);
    last = v;
  }
  a.family = "mnx";
  a.mu = 1.1;
  a.nu = 0.3;
  a.chi = 0.3;
  const Report bad = cmd_selftest(a);
  CHECK(bad.exit_code == 2);
  CHECK(bad.doc["error"].get<std::string>().find("degenerate") != std::string::npos);
  a.family = "tarot";
  CHECK(cmd_selftest(a).exit_code == 2);
}

TEST_CASE("errors map to exit codes") {
  BoundArgs a;
  a.game = "/nonexistent.json";
  CHECK(cmd_bound(a).exit_code == 2);
  a.game = game("elegant");
  a.method = "sdp";
  a.tol = 1e-12;
  a.max_iterations = 3;
  CHECK(cmd_bound(a).exit_code == 4);
  CompileArgs c;
  c.game = game("chsh");
  c.scheme = "rot13";
  CHECK(cmd_compile(c).exit_code == 2);
}

TEST_CASE("numeric payloads are reproducible") {
  CompileArgs a;
  a.game = game("satwap3");
  a.rounds = 1000;
  a.seed = 77;
  const json first = numeric_payload(cmd_compile(a).doc);
  const json again = numeric_payload(cmd_compile(a).doc);
  CHECK(first.dump() == again.dump());
  a.seed = 78;
  CHECK(numeric_payload(cmd_compile(a).doc).dump() != first.dump());
}
