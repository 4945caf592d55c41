#pragma once

// Game fixtures shared across test suites.

#include <csf/game.hpp>
#include <csf/spec_io.hpp>

#include "oracles.hpp"

#include <memory>
#include <string>

namespace csf::testing {

// The two-player dilemma used throughout: L/H labels, payoffs
// (0,0)/(-5,3)/(3,-5)/(-2,-2) in both structure blocks.
inline GameSpec pd_spec(int k = 2) {
  return generate_pd(Rational(0), Rational(-5), Rational(3), Rational(-2), k);
}

inline InducedGame pd_game(int k = 2) { return induced_normal_form(build_game(pd_spec(k))); }

// Index of the (structure id, label) choice in the player's choice set.
inline int choice_index(const InducedGame& game, int player, const std::string& structure_id,
                        const std::string& label) {
  const Game& g = game.game();
  const int s = g.structure_index(structure_id);
  const int l = g.label_index(player, s, label);
  const auto& choices = g.choice_set(player);
  for (std::size_t i = 0; i < choices.size(); ++i) {
    if (choices[i].structure == s && choices[i].label == l) return static_cast<int>(i);
  }
  return -1;
}

// Three-player family member with shared {L,H} labels and payoffs that
// depend only on (structure, labels), so the specs nest across k.
inline GameSpec three_player_spec(int k) {
  GameSpec spec;
  spec.player_names = {"1", "2", "3"};
  spec.k_max = k;
  spec.shared_labels = std::vector<std::string>{"L", "H"};
  spec.mechanism_name = "unanimity";
  for (const auto& structure : enumerate_structures(3, k)) {
    const int blocks = static_cast<int>(structure.blocks().size());
    for (int l1 = 0; l1 < 2; ++l1) {
      for (int l2 = 0; l2 < 2; ++l2) {
        for (int l3 = 0; l3 < 2; ++l3) {
          GameSpec::PayoffRow row;
          row.structure_id = structure.id();
          row.labels = {l1 ? "H" : "L", l2 ? "H" : "L", l3 ? "H" : "L"};
          const int base = l1 + l2 + l3;
          row.values = {Rational(base + blocks), Rational(2 * base - l2),
                        Rational(base * blocks - l3)};
          spec.payoffs.push_back(std::move(row));
        }
      }
    }
  }
  return spec;
}

inline InducedGame matching_pennies_game() {
  return make_matrix_game({2, 2}, [](const std::vector<int>& profile) {
    const Rational v = profile[0] == profile[1] ? Rational(1) : Rational(-1);
    return std::vector<Rational>{v, -v};
  });
}

inline InducedGame rock_paper_scissors_game() {
  return make_matrix_game({3, 3}, [](const std::vector<int>& profile) {
    const int a = profile[0], b = profile[1];
    Rational v = 0;
    if ((a - b + 3) % 3 == 1) v = 1;   // a beats b
    if ((b - a + 3) % 3 == 1) v = -1;  // b beats a
    return std::vector<Rational>{v, -v};
  });
}

}  // namespace csf::testing
