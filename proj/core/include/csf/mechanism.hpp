#pragma once

#include "csf/partitions.hpp"

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace csf {

class Game;

// A player's move: a coalition structure plus a strategy label valid for it.
// Indices refer to the owning Game's structure list and per-structure label
// lists.
struct Choice {
  int structure = -1;
  int label = -1;

  friend bool operator==(const Choice&, const Choice&) = default;
  friend auto operator<=>(const Choice&, const Choice&) = default;
};

// Final structure and per-player final labels after conflict resolution.
struct Outcome {
  int structure = -1;
  std::vector<int> labels;  // one label index per player, valid in `structure`

  friend bool operator==(const Outcome&, const Outcome&) = default;
};

// Total deterministic mapping from complete choice profiles to outcomes.
// Implementations must be pure: same profile, same outcome.
class Mechanism {
 public:
  virtual ~Mechanism() = default;
  virtual const std::string& name() const = 0;
  virtual Outcome apply(const Game& game, std::span<const Choice> profile) const = 0;
};

// A coalition of size >= 2 forms iff every member chose a structure whose own
// block is exactly that coalition; everyone else ends up a singleton. Labels
// carry over by name unless the game supplies an explicit projection row.
std::shared_ptr<const Mechanism> make_unanimity_mechanism();

// Pass-through for games with k_max == 1, where the all-singleton structure
// is the only option.
std::shared_ptr<const Mechanism> make_identity_mechanism();

// Extensional mechanism: one row per choice profile. Totality over the
// game's full choice space is validated when a Game is built with it.
struct MechanismTableRow {
  std::vector<Choice> profile;
  Outcome outcome;
};
std::shared_ptr<const Mechanism> make_table_mechanism(std::string name,
                                                      std::vector<MechanismTableRow> rows);

// Exhaustive application of a mechanism over a game's full choice space.
struct MechanismScan {
  std::vector<int> implementable;               // structure indices, ascending
  std::vector<std::uint64_t> preimage_counts;   // aligned with `implementable`
  std::vector<int> outcome_structure;           // per profile rank
  std::vector<std::uint32_t> outcome_label_row; // per profile rank
};
MechanismScan scan_mechanism(const Game& game, const Mechanism& mechanism);

// Image of the mechanism over the game's choice space.
std::vector<CoalitionStructure> implementable_structures(const Game& game,
                                                         const Mechanism& mechanism);

// Number of choice profiles mapping to the given final structure; throws
// structure-not-implementable when it is not in the image.
std::uint64_t preimage_count(const Game& game, const Mechanism& mechanism,
                             const CoalitionStructure& structure);

}  // namespace csf
