// Copyright 2026 The nlgames Authors
// SPDX-License-Identifier: Apache-2.0

#include "nlg/game_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nlg/errors.hpp"

namespace nlg {

namespace {

using nlohmann::json;

Mat read_matrix(const json& j, const char* key) {
  if (!j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  const json& rows = j.at(key);
  if (!rows.is_array() || rows.empty() || !rows[0].is_array() || rows[0].empty())
    throw InputError(std::string("field '") + key + "' must be a nonempty 2-d array");
  const auto r = rows.size(), c = rows[0].size();
  Mat m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (!rows[i].is_array() || rows[i].size() != c)
      throw InputError(std::string("field '") + key + "' is ragged");
    for (std::size_t k = 0; k < c; ++k) {
      if (!rows[i][k].is_number()) throw InputError(std::string("field '") + key + "' has a non-number");
      m(i, k) = rows[i][k].get<double>();
    }
  }
  return m;
}

double read_number(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number())
    throw InputError(std::string("missing numeric field '") + key + "'");
  return j.at(key).get<double>();
}

}  // namespace

const BellFunctional& GameSpec::functional() const {
  if (!is_xor()) throw InputError("game '" + name + "' is not an XOR functional");
  return std::get<BellFunctional>(body);
}

int GameSpec::satwap_order() const {
  if (is_xor()) throw InputError("game '" + name + "' is not a SATWAP game");
  return std::get<SatwapSpec>(body).d;
}

GameSpec parse_game(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed game JSON: ") + e.what());
  }
  if (!j.is_object()) throw InputError("game JSON must be an object");
  GameSpec g;
  g.kind = j.value("kind", std::string(j.contains("phi") ? "functional" : "xor"));
  g.name = j.value("name", g.kind);
  if (g.kind == "xor") {
    const Mat f = read_matrix(j, "f");
    if (((f.array() != 0.0) && (f.array() != 1.0)).any()) throw InputError("'f' entries must be 0 or 1");
    g.body = functional_from_game(read_matrix(j, "q"), f.cast<int>(), g.name);
  } else if (g.kind == "functional") {
    g.body = make_functional(g.name, read_matrix(j, "phi"));
  } else if (g.kind == "satwap") {
    if (!j.contains("d") || !j.at("d").is_number_integer()) throw InputError("satwap game needs integer 'd'");
    g.body = SatwapSpec{j.at("d").get<int>()};
  } else if (g.kind == "mnx") {
    MnxParams p{read_number(j, "mu"), read_number(j, "nu"), read_number(j, "chi")};
    g.mnx = p;
    g.body = mnx_functional(p);
  } else {
    throw InputError("unknown game kind '" + g.kind + "'");
  }
  return g;
}

GameSpec load_game(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open game file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_game(ss.str());
}

}  // namespace nlg
