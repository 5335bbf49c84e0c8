// Copyright 2026 The nlgames Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <variant>

#include "nlg/game.hpp"

namespace nlg {

// A game file holds one of:
//   {"kind": "xor", "name": ..., "q": [[...]], "f": [[...]]}
//   {"kind": "functional", "name": ..., "phi": [[...]]}
//   {"kind": "satwap", "d": 3}
//   {"kind": "mnx", "mu": ..., "nu": ..., "chi": ...}
struct SatwapSpec {
  int d = 3;
};

struct GameSpec {
  std::string name;
  std::string kind;
  std::variant<BellFunctional, SatwapSpec> body;
  std::optional<MnxParams> mnx;

  bool is_xor() const { return std::holds_alternative<BellFunctional>(body); }
  const BellFunctional& functional() const;
  int satwap_order() const;
};

GameSpec parse_game(const std::string& json_text);
GameSpec load_game(const std::string& path);

}  // namespace nlg
