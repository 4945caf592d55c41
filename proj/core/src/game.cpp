#include "csf/game.hpp"

#include "csf/error.hpp"

#include <algorithm>
#include <set>

namespace csf {


std::shared_ptr<const Game> Game::build(const GameSpec& spec, const BuildOptions& options) {
  auto game = std::shared_ptr<Game>(new Game());
  Game& g = *game;
  g.options_ = options;

  g.n_ = spec.n_players();
  g.k_ = spec.k_max;
  if (g.n_ < 1) fail(errc::invalid_bounds, "a game needs at least one player", "players");
  if (g.k_ < 1 || g.k_ > g.n_) {
    fail(errc::invalid_bounds, "need 1 <= max_coalition_size <= n_players", "max_coalition_size");
  }
  g.player_names_ = spec.player_names;

  g.structures_ = enumerate_structures(g.n_, g.k_);
  for (std::size_t i = 0; i < g.structures_.size(); ++i) {
    g.structure_index_[g.structures_[i].id()] = static_cast<int>(i);
  }

  // Labels. The shared alphabet covers every (player, structure) pair;
  // otherwise the explicit table must.
  g.labels_.assign(g.n_, std::vector<std::vector<std::string>>(g.structures_.size()));
  if (spec.shared_labels) {
    if (spec.shared_labels->empty()) {
      fail(errc::missing_labels, "shared label alphabet is empty", "strategies.shared");
    }
    for (int p = 0; p < g.n_; ++p) {
      for (std::size_t s = 0; s < g.structures_.size(); ++s) {
        g.labels_[p][s] = *spec.shared_labels;
      }
    }
  } else {
    for (const auto& [player, per_structure] : spec.labels) {
      if (player < 1 || player > g.n_) {
        fail(errc::unknown_player, "player " + std::to_string(player) + " out of range",
             "strategies");
      }
      for (const auto& [structure_id, labels] : per_structure) {
        const int s = g.structure_index(structure_id);
        if (s < 0) {
          fail(errc::structure_out_of_bounds,
               "structure '" + structure_id + "' is not valid for n=" + std::to_string(g.n_) +
                   ", k=" + std::to_string(g.k_),
               "strategies");
        }
        g.labels_[player - 1][s] = labels;
      }
    }
    for (int p = 0; p < g.n_; ++p) {
      for (std::size_t s = 0; s < g.structures_.size(); ++s) {
        if (g.labels_[p][s].empty()) {
          fail(errc::missing_labels,
               "no labels for player " + std::to_string(p + 1) + " on structure " +
                   g.structures_[s].id(),
               "strategies");
        }
      }
    }
  }
  for (int p = 0; p < g.n_; ++p) {
    for (std::size_t s = 0; s < g.structures_.size(); ++s) {
      std::set<std::string> seen;
      for (const auto& label : g.labels_[p][s]) {
        if (!seen.insert(label).second) {
          fail(errc::duplicate_label, "label '" + label + "' repeated for player " +
                                          std::to_string(p + 1) + " on structure " +
                                          g.structures_[s].id());
        }
      }
    }
  }

  // Choice sets: structures in enumeration order, labels in declared order.
  g.choice_sets_.assign(g.n_, {});
  for (int p = 0; p < g.n_; ++p) {
    for (std::size_t s = 0; s < g.structures_.size(); ++s) {
      for (std::size_t l = 0; l < g.labels_[p][s].size(); ++l) {
        g.choice_sets_[p].push_back(Choice{static_cast<int>(s), static_cast<int>(l)});
      }
    }
  }

  g.profile_count_ = 1;
  for (int p = 0; p < g.n_; ++p) {
    const std::uint64_t size = g.choice_sets_[p].size();
    if (g.profile_count_ > options.max_profiles / size + 1) {
      fail(errc::scale_exceeded, "choice-profile product exceeds the configured limit of " +
                                     std::to_string(options.max_profiles));
    }
    g.profile_count_ *= size;
  }
  if (g.profile_count_ > options.max_profiles) {
    fail(errc::scale_exceeded, "choice-profile product " + std::to_string(g.profile_count_) +
                                   " exceeds the configured limit of " +
                                   std::to_string(options.max_profiles));
  }

  // Projection rows.
  for (std::size_t r = 0; r < spec.projection.size(); ++r) {
    const auto& row = spec.projection[r];
    const std::string path = "projection[" + std::to_string(r) + "]";
    if (row.player < 1 || row.player > g.n_) {
      fail(errc::unknown_player, "player " + std::to_string(row.player) + " out of range", path);
    }
    const int from = g.structure_index(row.from_structure);
    const int to = g.structure_index(row.to_structure);
    if (from < 0 || to < 0) {
      fail(errc::structure_out_of_bounds, "projection row references an invalid structure", path);
    }
    const int from_label = g.label_index(row.player, from, row.label);
    const int to_label = g.label_index(row.player, to, row.to_label);
    if (from_label < 0 || to_label < 0) {
      fail(errc::label_undeclared, "projection row references an undeclared label", path);
    }
    g.projection_[{row.player, from, from_label, to}] = to_label;
  }

  // Payoff rows, stored per structure in mixed-radix label order.
  auto rows_in_structure = [&g](int s) {
    std::uint64_t rows = 1;
    for (int p = 0; p < g.n_; ++p) rows *= g.labels_[p][s].size();
    return rows;
  };
  for (std::size_t s = 0; s < g.structures_.size(); ++s) {
    if (rows_in_structure(static_cast<int>(s)) > 0xffffffffull) {
      fail(errc::scale_exceeded, "label-profile table too large for structure " +
                                     g.structures_[s].id());
    }
  }
  g.payoff_rows_.resize(g.structures_.size());
  for (std::size_t r = 0; r < spec.payoffs.size(); ++r) {
    const auto& row = spec.payoffs[r];
    const std::string path = "payoffs[" + std::to_string(r) + "]";
    const int s = g.structure_index(row.structure_id);
    if (s < 0) {
      fail(errc::structure_out_of_bounds,
           "structure '" + row.structure_id + "' is not valid for this game", path);
    }
    if (static_cast<int>(row.labels.size()) != g.n_) {
      fail(errc::payoff_row_arity_mismatch,
           "expected " + std::to_string(g.n_) + " labels, got " + std::to_string(row.labels.size()),
           path);
    }
    if (static_cast<int>(row.values.size()) != g.n_) {
      fail(errc::payoff_row_arity_mismatch,
           "expected " + std::to_string(g.n_) + " payoff values, got " +
               std::to_string(row.values.size()),
           path);
    }
    std::vector<int> label_profile(g.n_);
    for (int p = 1; p <= g.n_; ++p) {
      const int l = g.label_index(p, s, row.labels[p - 1]);
      if (l < 0) {
        fail(errc::label_undeclared, "label '" + row.labels[p - 1] + "' undeclared for player " +
                                         std::to_string(p) + " on structure " + row.structure_id,
             path);
      }
      label_profile[p - 1] = l;
    }
    auto& table = g.payoff_rows_[s];
    if (table.empty()) table.resize(rows_in_structure(s));
    const std::uint32_t rank = g.label_row_rank(s, label_profile);
    if (!table[rank].empty()) {
      fail(errc::invalid_argument, "duplicate payoff row", path);
    }
    table[rank] = row.values;
  }

  // Mechanism resolution.
  if (!spec.mechanism_table.empty()) {
    std::vector<MechanismTableRow> rows;
    rows.reserve(spec.mechanism_table.size());
    for (std::size_t r = 0; r < spec.mechanism_table.size(); ++r) {
      const auto& row = spec.mechanism_table[r];
      const std::string path = "mechanism.table[" + std::to_string(r) + "]";
      if (static_cast<int>(row.choices.size()) != g.n_) {
        fail(errc::payoff_row_arity_mismatch, "mechanism row needs one choice per player", path);
      }
      MechanismTableRow resolved;
      for (int p = 1; p <= g.n_; ++p) {
        const int s = g.structure_index(row.choices[p - 1].structure_id);
        if (s < 0) fail(errc::structure_out_of_bounds, "invalid structure in mechanism row", path);
        const int l = g.label_index(p, s, row.choices[p - 1].label);
        if (l < 0) fail(errc::label_undeclared, "undeclared label in mechanism row", path);
        resolved.profile.push_back(Choice{s, l});
      }
      const int out_s = g.structure_index(row.structure_id);
      if (out_s < 0) {
        fail(errc::structure_out_of_bounds, "invalid final structure in mechanism row", path);
      }
      if (static_cast<int>(row.labels.size()) != g.n_) {
        fail(errc::payoff_row_arity_mismatch, "mechanism row needs one final label per player",
             path);
      }
      resolved.outcome.structure = out_s;
      for (int p = 1; p <= g.n_; ++p) {
        const int l = g.label_index(p, out_s, row.labels[p - 1]);
        if (l < 0) fail(errc::label_undeclared, "undeclared final label in mechanism row", path);
        resolved.outcome.labels.push_back(l);
      }
      rows.push_back(std::move(resolved));
    }
    g.mechanism_ = make_table_mechanism(
        spec.mechanism_name.empty() ? "table" : spec.mechanism_name, std::move(rows));
  } else if (spec.mechanism_name == "unanimity") {
    g.mechanism_ = make_unanimity_mechanism();
  } else if (spec.mechanism_name == "identity") {
    if (g.k_ != 1) {
      fail(errc::invalid_argument, "identity mechanism requires max_coalition_size == 1",
           "mechanism");
    }
    g.mechanism_ = make_identity_mechanism();
  } else {
    fail(errc::invalid_argument,
         "unknown mechanism '" + spec.mechanism_name + "' and no extensional table", "mechanism");
  }

  // Exhaustive pass: totality, outcome well-formedness, and payoff coverage
  // of the implementable image.
  MechanismScan scan = scan_mechanism(g, *g.mechanism_);
  for (int s : scan.implementable) {
    const auto& table = g.payoff_rows_[s];
    const std::uint64_t rows = rows_in_structure(s);
    for (std::uint64_t r = 0; r < rows; ++r) {
      if (table.empty() || table[r].empty()) {
        const auto profile = g.label_row_unrank(s, static_cast<std::uint32_t>(r));
        std::string labels;
        for (int p = 0; p < g.n_; ++p) {
          if (p) labels += ",";
          labels += g.labels_[p][s][profile[p]];
        }
        fail(errc::missing_payoff, "no payoff row for structure " + g.structures_[s].id() +
                                       " and label profile (" + labels + ")");
      }
    }
  }

  return game;
}

std::shared_ptr<const Game> build_game(const GameSpec& spec, const BuildOptions& options) {
  return Game::build(spec, options);
}

int Game::structure_index(const std::string& id) const {
  auto it = structure_index_.find(id);
  return it == structure_index_.end() ? -1 : it->second;
}

const std::vector<std::string>& Game::labels(int player, int structure_index) const {
  if (player < 1 || player > n_) {
    fail(errc::unknown_player, "player " + std::to_string(player) + " out of range");
  }
  return labels_.at(player - 1).at(structure_index);
}

int Game::label_index(int player, int structure_index, const std::string& label) const {
  const auto& list = labels(player, structure_index);
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (list[i] == label) return static_cast<int>(i);
  }
  return -1;
}

const std::vector<Choice>& Game::choice_set(int player) const {
  if (player < 1 || player > n_) {
    fail(errc::unknown_player, "player " + std::to_string(player) + " out of range");
  }
  return choice_sets_[player - 1];
}

std::string Game::choice_to_string(int player, const Choice& choice) const {
  return "(" + structures_.at(choice.structure).id() + ", " +
         labels(player, choice.structure).at(choice.label) + ")";
}

std::uint32_t Game::label_row_rank(int structure_index, std::span<const int> label_profile) const {
  std::uint64_t rank = 0;
  for (int p = 0; p < n_; ++p) {
    rank = rank * labels_[p][structure_index].size() + label_profile[p];
  }
  return static_cast<std::uint32_t>(rank);
}

std::vector<int> Game::label_row_unrank(int structure_index, std::uint32_t rank) const {
  std::vector<int> profile(n_);
  std::uint64_t r = rank;
  for (int p = n_ - 1; p >= 0; --p) {
    const std::uint64_t size = labels_[p][structure_index].size();
    profile[p] = static_cast<int>(r % size);
    r /= size;
  }
  return profile;
}

std::span<const Rational> Game::payoff(int structure_index,
                                       std::span<const int> label_profile) const {
  return payoff_by_row(structure_index, label_row_rank(structure_index, label_profile));
}

bool Game::has_payoff(int structure_index, std::span<const int> label_profile) const {
  const auto& table = payoff_rows_.at(structure_index);
  if (table.empty()) return false;
  return !table[label_row_rank(structure_index, label_profile)].empty();
}

std::span<const Rational> Game::payoff_by_row(int structure_index, std::uint32_t row_rank) const {
  const auto& table = payoff_rows_.at(structure_index);
  if (table.empty() || table.at(row_rank).empty()) {
    fail(errc::missing_payoff,
         "no payoff row for structure " + structures_.at(structure_index).id());
  }
  return table[row_rank];
}

int Game::project_label(int player, int from_structure, int from_label, int to_structure) const {
  if (from_structure == to_structure) return from_label;
  const std::string& name = labels_.at(player - 1).at(from_structure).at(from_label);
  const int same = label_index(player, to_structure, name);
  if (same >= 0) return same;
  auto it = projection_.find({player, from_structure, from_label, to_structure});
  if (it != projection_.end()) return it->second;
  fail(errc::projection_undefined,
       "label '" + name + "' of player " + std::to_string(player) + " has no image in structure " +
           structures_.at(to_structure).id());
}

InducedGame InducedGame::build(std::shared_ptr<const Game> game,
                               std::shared_ptr<const Mechanism> mechanism) {
  InducedGame ig;
  ig.game_ = std::move(game);
  ig.mechanism_ = mechanism ? std::move(mechanism) : ig.game_->mechanism_ptr();

  const Game& g = *ig.game_;
  const int n = g.n_players();
  ig.profile_count_ = g.profile_count();

  ig.strides_.assign(n, 1);
  for (int p = n - 2; p >= 0; --p) {
    ig.strides_[p] = ig.strides_[p + 1] * g.choice_set(p + 2).size();
  }

  ig.scan_ = scan_mechanism(g, *ig.mechanism_);

  // Payoff coverage over this mechanism's image; Game::build already checked
  // its own mechanism, but an explicitly supplied one may reach further.
  ig.utility_double_.resize(static_cast<std::size_t>(n) * ig.profile_count_);
  for (std::uint64_t r = 0; r < ig.profile_count_; ++r) {
    const int s = ig.scan_.outcome_structure[r];
    std::span<const Rational> values;
    try {
      values = g.payoff_by_row(s, ig.scan_.outcome_label_row[r]);
    } catch (const Error& e) {
      if (e.code() == errc::missing_payoff) {
        fail(errc::mechanism_image_uncovered,
             "payoffs do not cover the image of mechanism '" + ig.mechanism_->name() + "': " +
                 e.what());
      }
      throw;
    }
    for (int p = 0; p < n; ++p) {
      ig.utility_double_[static_cast<std::size_t>(p) * ig.profile_count_ + r] =
          rational_to_double(values[p]);
    }
  }
  return ig;
}

int InducedGame::choice_count(int player) const {
  return static_cast<int>(game_->choice_set(player).size());
}

const Choice& InducedGame::choice(int player, int index) const {
  return game_->choice_set(player).at(index);
}

std::uint64_t InducedGame::rank(std::span<const int> profile) const {
  std::uint64_t r = 0;
  for (std::size_t p = 0; p < profile.size(); ++p) {
    r += strides_[p] * static_cast<std::uint64_t>(profile[p]);
  }
  return r;
}

std::vector<int> InducedGame::unrank(std::uint64_t rank) const {
  const int n = n_players();
  std::vector<int> profile(n);
  for (int p = 0; p < n; ++p) {
    profile[p] = static_cast<int>(rank / strides_[p]);
    rank %= strides_[p];
  }
  return profile;
}

std::span<const Rational> InducedGame::utility(std::span<const int> profile) const {
  return utility_at(rank(profile));
}

std::span<const Rational> InducedGame::utility_at(std::uint64_t rank) const {
  return game_->payoff_by_row(scan_.outcome_structure[rank], scan_.outcome_label_row[rank]);
}

double InducedGame::utility_double(int player, std::uint64_t rank) const {
  return utility_double_[static_cast<std::size_t>(player - 1) * profile_count_ + rank];
}

Outcome InducedGame::outcome(std::span<const int> profile) const {
  const std::uint64_t r = rank(profile);
  Outcome out;
  out.structure = scan_.outcome_structure[r];
  out.labels = game_->label_row_unrank(out.structure, scan_.outcome_label_row[r]);
  return out;
}

bool InducedGame::constant_for(int player) const {
  if (profile_count_ == 0) return true;
  const Rational first = utility_at(0)[player - 1];
  for (std::uint64_t r = 1; r < profile_count_; ++r) {
    if (utility_at(r)[player - 1] != first) return false;
  }
  return true;
}

InducedGame induced_normal_form(std::shared_ptr<const Game> game,
                                std::shared_ptr<const Mechanism> mechanism) {
  return InducedGame::build(std::move(game), std::move(mechanism));
}

}  // namespace csf
