#pragma once

#include "csf/mechanism.hpp"
#include "csf/partitions.hpp"
#include "csf/rational.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace csf {

// Declarative game description. Structure references use canonical ids
// ("1,2|3"); labels are free-form strings. build_game validates everything
// and produces an indexed, immutable Game.
struct GameSpec {
  std::vector<std::string> player_names;  // ids 1..n assigned by position
  int k_max = 0;

  // Either one alphabet for every (player, structure) pair, or an explicit
  // per-player per-structure table covering all pairs.
  std::optional<std::vector<std::string>> shared_labels;
  std::map<int, std::map<std::string, std::vector<std::string>>> labels;

  struct PayoffRow {
    std::string structure_id;
    std::vector<std::string> labels;  // one per player
    std::vector<Rational> values;     // one per player
    friend bool operator==(const PayoffRow&, const PayoffRow&) = default;
  };
  std::vector<PayoffRow> payoffs;

  // "unanimity", "identity", or any other name accompanied by an extensional
  // mechanism_table.
  std::string mechanism_name = "unanimity";
  struct MechanismRow {
    struct ChoiceRef {
      std::string structure_id;
      std::string label;
      friend bool operator==(const ChoiceRef&, const ChoiceRef&) = default;
    };
    std::vector<ChoiceRef> choices;  // one per player
    std::string structure_id;       // final structure
    std::vector<std::string> labels;
    friend bool operator==(const MechanismRow&, const MechanismRow&) = default;
  };
  std::vector<MechanismRow> mechanism_table;

  struct ProjectionRow {
    int player = 0;
    std::string from_structure;
    std::string label;
    std::string to_structure;
    std::string to_label;
    friend bool operator==(const ProjectionRow&, const ProjectionRow&) = default;
  };
  std::vector<ProjectionRow> projection;

  int n_players() const { return static_cast<int>(player_names.size()); }

  friend bool operator==(const GameSpec&, const GameSpec&) = default;
};

struct BuildOptions {
  // Refusal threshold for exhaustive passes over the choice-profile product.
  std::uint64_t max_profiles = 1'000'000;
};

// Validated, indexed, immutable game. All lookups are pure; safe to share
// read-only across threads.
class Game {
 public:
  static std::shared_ptr<const Game> build(const GameSpec& spec, const BuildOptions& options = {});

  int n_players() const { return n_; }
  int k_max() const { return k_; }
  const std::vector<std::string>& player_names() const { return player_names_; }

  const std::vector<CoalitionStructure>& structures() const { return structures_; }
  const CoalitionStructure& structure(int index) const { return structures_.at(index); }
  // Index of a structure by canonical id; -1 when absent.
  int structure_index(const std::string& id) const;

  // Labels for (player, structure); player is 1-based.
  const std::vector<std::string>& labels(int player, int structure_index) const;
  int label_index(int player, int structure_index, const std::string& label) const;  // -1 absent

  // Union over structures of the player's per-structure labels, in structure
  // order then declared label order. Throws unknown-player.
  const std::vector<Choice>& choice_set(int player) const;
  std::string choice_to_string(int player, const Choice& choice) const;

  // Payoff vector for a structure and a complete label profile (one label
  // index per player). Throws missing-payoff when no row was declared.
  std::span<const Rational> payoff(int structure_index, std::span<const int> label_profile) const;
  bool has_payoff(int structure_index, std::span<const int> label_profile) const;

  // Mixed-radix rank of a label profile within a structure's payoff table.
  std::uint32_t label_row_rank(int structure_index, std::span<const int> label_profile) const;
  std::vector<int> label_row_unrank(int structure_index, std::uint32_t rank) const;
  std::span<const Rational> payoff_by_row(int structure_index, std::uint32_t row_rank) const;

  // Label a chosen (structure, label) maps to inside the final structure:
  // the same-name label when declared there, otherwise an explicit
  // projection row. Throws projection-undefined.
  int project_label(int player, int from_structure, int from_label, int to_structure) const;

  const Mechanism& mechanism() const { return *mechanism_; }
  std::shared_ptr<const Mechanism> mechanism_ptr() const { return mechanism_; }

  std::uint64_t profile_count() const { return profile_count_; }
  const BuildOptions& build_options() const { return options_; }

 private:
  Game() = default;

  int n_ = 0;
  int k_ = 0;
  std::vector<std::string> player_names_;
  std::vector<CoalitionStructure> structures_;
  std::map<std::string, int> structure_index_;
  // labels_[player-1][structure] -> label list
  std::vector<std::vector<std::vector<std::string>>> labels_;
  std::vector<std::vector<Choice>> choice_sets_;
  // payoff_rows_[structure]: mixed-radix table; empty inner vector = absent row
  std::vector<std::vector<std::vector<Rational>>> payoff_rows_;
  // projection_[(player, from_structure, from_label, to_structure)] -> label
  std::map<std::tuple<int, int, int, int>, int> projection_;
  std::shared_ptr<const Mechanism> mechanism_;
  std::uint64_t profile_count_ = 0;
  BuildOptions options_;
};

std::shared_ptr<const Game> build_game(const GameSpec& spec, const BuildOptions& options = {});

// Finite normal-form game over choice space: utility at a profile is the
// payoff at the mechanism's outcome. Built eagerly over the full profile
// product, so construction validates totality and payoff coverage.
class InducedGame {
 public:
  // Empty shell; assign from build() before use.
  InducedGame() = default;

  static InducedGame build(std::shared_ptr<const Game> game,
                           std::shared_ptr<const Mechanism> mechanism = nullptr);

  const Game& game() const { return *game_; }
  std::shared_ptr<const Game> game_ptr() const { return game_; }
  const Mechanism& mechanism() const { return *mechanism_; }

  int n_players() const { return game_->n_players(); }
  int choice_count(int player) const;  // player 1-based
  const Choice& choice(int player, int index) const;

  std::uint64_t profile_count() const { return profile_count_; }
  std::uint64_t rank(std::span<const int> profile) const;
  std::vector<int> unrank(std::uint64_t rank) const;

  // Exact payoff vector at a choice profile (one choice index per player).
  std::span<const Rational> utility(std::span<const int> profile) const;
  std::span<const Rational> utility_at(std::uint64_t rank) const;
  double utility_double(int player, std::uint64_t rank) const;

  int outcome_structure(std::uint64_t rank) const { return scan_.outcome_structure[rank]; }
  Outcome outcome(std::span<const int> profile) const;

  const std::vector<int>& implementable() const { return scan_.implementable; }
  const MechanismScan& scan() const { return scan_; }

  // True when the player's utility is the same at every profile.
  bool constant_for(int player) const;

 private:
  std::shared_ptr<const Game> game_;
  std::shared_ptr<const Mechanism> mechanism_;
  MechanismScan scan_;
  std::vector<std::uint64_t> strides_;
  std::uint64_t profile_count_ = 0;
  std::vector<double> utility_double_;  // player-major: [player][rank]
};

InducedGame induced_normal_form(std::shared_ptr<const Game> game,
                                std::shared_ptr<const Mechanism> mechanism = nullptr);

}  // namespace csf
