#pragma once

#include "csf/game.hpp"
#include "csf/rational.hpp"

#include <string>

namespace csf {

// Parses the JSON game document:
//   {
//     "players": ["1", "2"],
//     "max_coalition_size": 2,
//     "strategies": {"shared": ["L", "H"]}            // or {"per_player": {...}}
//     "payoffs": [{"structure": "1|2", "profile": ["L","L"], "values": ["0","0"]}, ...],
//     "mechanism": "unanimity",                       // or {"name": ..., "table": [...]}
//     "projection": [...]                             // optional
//   }
// Structure ids use canonical block notation ("1,2|3"); payoff values are
// exact decimal or rational strings. Validation errors carry field paths.
GameSpec parse_spec(const std::string& text);
GameSpec parse_spec_file(const std::string& path);

// Canonical JSON document for the spec; parse(serialize(s)) is semantically
// equal to s.
std::string serialize_spec(const GameSpec& spec);

// Two-player family generator with labels {L,H} on every structure and the
// same payoff pattern in each structure block:
//   (L,L) -> (reward, reward)      (L,H) -> (sucker, temptation)
//   (H,L) -> (temptation, sucker)  (H,H) -> (punishment, punishment)
GameSpec generate_pd(const Rational& reward, const Rational& sucker, const Rational& temptation,
                     const Rational& punishment, int k_max = 2);

}  // namespace csf
