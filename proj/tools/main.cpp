// Copyright 2026 The nlgames Authors
// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace nlg::cli;

int main(int argc, char** argv) {
  CLI::App app{"Bounds, certificates and compiled-protocol simulation for nonlocal games"};
  app.require_subcommand(1);
  std::string out;
  app.add_option("--out", out, "write the JSON report here instead of stdout");

  BoundArgs bound;
  auto* b = app.add_subcommand("bound", "classical and quantum bounds of a game file");
  b->add_option("--game", bound.game)->required();
  b->add_option("--method", bound.method)->check(CLI::IsMember({"sdp", "brute", "oracle", "all"}));
  b->add_option("--tol", bound.tol);
  b->add_option("--max-iter", bound.max_iterations);
  b->add_option("--restarts", bound.restarts);
  b->add_option("--seed", bound.seed);

  SosArgs sos;
  auto* s = app.add_subcommand("sos", "build and verify the sum-of-squares certificate");
  s->add_option("--game", sos.game)->required();
  s->add_option("--verify-dim", sos.verify_dim);
  s->add_option("--realizations", sos.realizations);
  s->add_option("--seed", sos.seed);
  s->add_option("--tol", sos.tol);

  CompileArgs comp;
  auto* c = app.add_subcommand("compile", "simulate the compiled single-prover protocol");
  c->add_option("--game", comp.game)->required();
  c->add_option("--scheme", comp.scheme, "transparent, pad or leaky:P");
  c->add_option("--prover", comp.prover)->check(CLI::IsMember({"honest", "classical"}));
  c->add_option("--rounds", comp.rounds);
  c->add_option("--seed", comp.seed);
  c->add_flag("--exact", comp.exact);
  c->add_option("--delta", comp.delta);
  c->add_option("--kappa", comp.kappa);
  c->add_option("--transcript", comp.transcript, "line-delimited transcript output");

  SelftestArgs st;
  auto* t = app.add_subcommand("selftest", "self-testing residuals against their bounds");
  t->add_option("--family", st.family)->required()->check(CLI::IsMember({"elegant", "mnx", "satwap"}));
  t->add_option("--mu", st.mu);
  t->add_option("--nu", st.nu);
  t->add_option("--chi", st.chi);
  t->add_option("--d", st.d);
  t->add_flag("--eps-sweep", st.eps_sweep);
  t->add_option("--delta", st.delta);
  t->add_option("--seed", st.seed);

  SatwapArgs sw;
  auto* w = app.add_subcommand("satwap", "SATWAP bounds, certificate and self-test residuals");
  w->add_option("--d", sw.d)->required();
  w->add_option("--realizations", sw.realizations);
  w->add_option("--seed", sw.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  Report rep;
  if (b->parsed()) rep = cmd_bound(bound);
  else if (s->parsed()) rep = cmd_sos(sos);
  else if (c->parsed()) rep = cmd_compile(comp);
  else if (t->parsed()) rep = cmd_selftest(st);
  else rep = cmd_satwap(sw);

  const std::string text = rep.doc.dump(2);
  if (out.empty()) {
    std::cout << text << '\n';
  } else {
    std::ofstream f(out);
    if (!f) {
      std::cerr << "cannot write " << out << '\n';
      return 2;
    }
    f << text << '\n';
  }
  if (rep.doc.contains("error")) std::cerr << "error: " << rep.doc["error"].get<std::string>() << '\n';
  return rep.exit_code;
}
