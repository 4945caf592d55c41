#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace csf {

using PlayerId = int;  // 1-based

// Integer partition of the player count: coalition sizes only, no identities.
// Canonical form is a non-increasing part list; two diagrams are equal iff
// their part sequences are equal.
class YoungDiagram {
 public:
  explicit YoungDiagram(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  int total() const;
  int max_part() const { return parts_.empty() ? 0 : parts_.front(); }

  std::string to_string() const;  // "[2,1]"

  friend bool operator==(const YoungDiagram&, const YoungDiagram&) = default;
  friend std::strong_ordering operator<=>(const YoungDiagram& a, const YoungDiagram& b) {
    return a.parts_ <=> b.parts_;
  }

 private:
  std::vector<int> parts_;
};

// Labeled set partition of a player set. Canonical form: blocks sorted by
// smallest member, members ascending, so equality and ids are well-defined.
class CoalitionStructure {
 public:
  explicit CoalitionStructure(std::vector<std::vector<PlayerId>> blocks);

  const std::vector<std::vector<PlayerId>>& blocks() const { return blocks_; }
  const std::vector<PlayerId>& players() const { return players_; }
  int n_players() const { return static_cast<int>(players_.size()); }
  int max_block_size() const;

  // The block containing the player; throws unknown-player.
  const std::vector<PlayerId>& block_of(PlayerId player) const;
  bool contains(PlayerId player) const;

  YoungDiagram diagram() const;

  // Canonical id, e.g. "1,2|3".
  std::string id() const;

  friend bool operator==(const CoalitionStructure&, const CoalitionStructure&) = default;

 private:
  std::vector<std::vector<PlayerId>> blocks_;
  std::vector<PlayerId> players_;
};

// Parses a canonical id like "1,2|3" back into a structure.
// Throws syntax-error on malformed text.
CoalitionStructure structure_from_id(const std::string& id);

// All integer partitions of n with parts <= k, lexicographically descending.
// Throws invalid-bounds unless 1 <= k <= n.
std::vector<YoungDiagram> enumerate_diagrams(int n, int k);

// All set partitions of {1..n} with block sizes <= k. Order: by max block
// size ascending, then by restricted-growth string; this makes the sequence
// for k a prefix of the sequence for k+1.
std::vector<CoalitionStructure> enumerate_structures(int n, int k);

// All structures over `players` whose multiset of block sizes equals the
// diagram's parts. Throws size-mismatch when the totals differ.
std::vector<CoalitionStructure> allocations_of_diagram(const YoungDiagram& diagram,
                                                       const std::vector<PlayerId>& players);

// True iff diagrams and structures are nested across k = 1..n.
bool check_nesting(int n);

// Number of set partitions of {1..n} with block sizes <= k (restricted Bell
// number); equals enumerate_structures(n, k).size().
std::uint64_t count_structures(int n, int k);

}  // namespace csf
