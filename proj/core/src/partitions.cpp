#include "csf/partitions.hpp"

#include "csf/error.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace csf {

YoungDiagram::YoungDiagram(std::vector<int> parts) : parts_(std::move(parts)) {
  for (int p : parts_) {
    if (p < 1) fail(errc::invalid_bounds, "diagram parts must be positive");
  }
  std::sort(parts_.begin(), parts_.end(), std::greater<>());
}

int YoungDiagram::total() const {
  return std::accumulate(parts_.begin(), parts_.end(), 0);
}

std::string YoungDiagram::to_string() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out << ',';
    out << parts_[i];
  }
  out << ']';
  return out.str();
}

CoalitionStructure::CoalitionStructure(std::vector<std::vector<PlayerId>> blocks)
    : blocks_(std::move(blocks)) {
  for (auto& block : blocks_) {
    if (block.empty()) fail(errc::invalid_bounds, "empty coalition block");
    std::sort(block.begin(), block.end());
    if (std::adjacent_find(block.begin(), block.end()) != block.end()) {
      fail(errc::invalid_bounds, "repeated player inside a block");
    }
  }
  std::sort(blocks_.begin(), blocks_.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  for (const auto& block : blocks_) {
    players_.insert(players_.end(), block.begin(), block.end());
  }
  std::sort(players_.begin(), players_.end());
  if (std::adjacent_find(players_.begin(), players_.end()) != players_.end()) {
    fail(errc::invalid_bounds, "blocks are not disjoint");
  }
}

int CoalitionStructure::max_block_size() const {
  int m = 0;
  for (const auto& block : blocks_) m = std::max(m, static_cast<int>(block.size()));
  return m;
}

const std::vector<PlayerId>& CoalitionStructure::block_of(PlayerId player) const {
  for (const auto& block : blocks_) {
    if (std::binary_search(block.begin(), block.end(), player)) return block;
  }
  fail(errc::unknown_player, "player " + std::to_string(player) + " not in structure " + id());
}

bool CoalitionStructure::contains(PlayerId player) const {
  return std::binary_search(players_.begin(), players_.end(), player);
}

YoungDiagram CoalitionStructure::diagram() const {
  std::vector<int> parts;
  parts.reserve(blocks_.size());
  for (const auto& block : blocks_) parts.push_back(static_cast<int>(block.size()));
  return YoungDiagram(std::move(parts));
}

std::string CoalitionStructure::id() const {
  std::ostringstream out;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (b) out << '|';
    for (std::size_t i = 0; i < blocks_[b].size(); ++i) {
      if (i) out << ',';
      out << blocks_[b][i];
    }
  }
  return out.str();
}

CoalitionStructure structure_from_id(const std::string& id) {
  if (id.empty()) fail(errc::syntax_error, "empty structure id");
  std::vector<std::vector<PlayerId>> blocks(1);
  std::string current;
  auto flush_member = [&](bool required) {
    if (current.empty()) {
      if (required) fail(errc::syntax_error, "malformed structure id '" + id + "'");
      return;
    }
    for (char c : current) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        fail(errc::syntax_error, "non-numeric player id in '" + id + "'");
      }
    }
    blocks.back().push_back(std::stoi(current));
    current.clear();
  };
  for (char c : id) {
    if (c == ',') {
      flush_member(true);
    } else if (c == '|') {
      flush_member(true);
      blocks.emplace_back();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      current.push_back(c);
    }
  }
  flush_member(true);
  return CoalitionStructure(std::move(blocks));
}

namespace {

void emit_diagrams(int remaining, int bound, std::vector<int>& prefix,
                   std::vector<YoungDiagram>& out) {
  if (remaining == 0) {
    out.emplace_back(prefix);
    return;
  }
  for (int part = std::min(remaining, bound); part >= 1; --part) {
    prefix.push_back(part);
    emit_diagrams(remaining - part, part, prefix, out);
    prefix.pop_back();
  }
}

// Restricted-growth enumeration over an explicit player list: player i goes
// into an existing block (capped at max_block) or opens a new one. Trying
// existing blocks in index order yields RGS-lexicographic output.
void emit_structures(const std::vector<PlayerId>& players, std::size_t index, int max_block,
                     std::vector<std::vector<PlayerId>>& blocks,
                     const std::function<void(const std::vector<std::vector<PlayerId>>&)>& sink) {
  if (index == players.size()) {
    sink(blocks);
    return;
  }
  // Index-based: recursion grows and shrinks the block vector, which would
  // invalidate range-for iterators.
  const std::size_t existing = blocks.size();
  for (std::size_t b = 0; b < existing; ++b) {
    if (static_cast<int>(blocks[b].size()) < max_block) {
      blocks[b].push_back(players[index]);
      emit_structures(players, index + 1, max_block, blocks, sink);
      blocks[b].pop_back();
    }
  }
  blocks.push_back({players[index]});
  emit_structures(players, index + 1, max_block, blocks, sink);
  blocks.pop_back();
}

void check_bounds(int n, int k) {
  if (n < 1 || k < 1 || k > n) {
    fail(errc::invalid_bounds,
         "need 1 <= k <= n, got n=" + std::to_string(n) + " k=" + std::to_string(k));
  }
}

}  // namespace

std::vector<YoungDiagram> enumerate_diagrams(int n, int k) {
  check_bounds(n, k);
  std::vector<YoungDiagram> out;
  std::vector<int> prefix;
  emit_diagrams(n, k, prefix, out);
  return out;
}

std::vector<CoalitionStructure> enumerate_structures(int n, int k) {
  check_bounds(n, k);
  std::vector<PlayerId> players(n);
  std::iota(players.begin(), players.end(), 1);

  std::vector<CoalitionStructure> out;
  std::vector<std::vector<PlayerId>> blocks;
  emit_structures(players, 0, k, blocks,
                  [&](const auto& partition) { out.emplace_back(partition); });
  // Group by the first K at which a structure becomes feasible, so that the
  // sequence for k is a prefix of the sequence for k+1. The stable sort keeps
  // RGS order within each group.
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.max_block_size() < b.max_block_size();
  });
  return out;
}

std::vector<CoalitionStructure> allocations_of_diagram(const YoungDiagram& diagram,
                                                       const std::vector<PlayerId>& players) {
  std::vector<PlayerId> sorted = players;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    fail(errc::invalid_argument, "duplicate player id in allocation request");
  }
  if (diagram.total() != static_cast<int>(sorted.size())) {
    fail(errc::size_mismatch, "diagram covers " + std::to_string(diagram.total()) +
                                  " players, got " + std::to_string(sorted.size()));
  }

  std::vector<int> wanted = diagram.parts();
  std::vector<CoalitionStructure> out;
  std::vector<std::vector<PlayerId>> blocks;
  emit_structures(sorted, 0, diagram.max_part(), blocks, [&](const auto& partition) {
    std::vector<int> sizes;
    sizes.reserve(partition.size());
    for (const auto& block : partition) sizes.push_back(static_cast<int>(block.size()));
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
    if (sizes == wanted) out.emplace_back(partition);
  });
  return out;
}

bool check_nesting(int n) {
  if (n < 1) fail(errc::invalid_bounds, "need n >= 1");
  for (int k = 1; k < n; ++k) {
    {
      auto smaller = enumerate_diagrams(n, k);
      auto larger = enumerate_diagrams(n, k + 1);
      std::set<YoungDiagram> bigger(larger.begin(), larger.end());
      for (const auto& d : smaller) {
        if (!bigger.count(d)) return false;
      }
    }
    {
      auto smaller = enumerate_structures(n, k);
      auto larger = enumerate_structures(n, k + 1);
      std::set<std::string> bigger;
      for (const auto& s : larger) bigger.insert(s.id());
      for (const auto& s : smaller) {
        if (!bigger.count(s.id())) return false;
      }
    }
  }
  return true;
}

std::uint64_t count_structures(int n, int k) {
  check_bounds(n, k);
  std::vector<PlayerId> players(n);
  std::iota(players.begin(), players.end(), 1);
  std::uint64_t count = 0;
  std::vector<std::vector<PlayerId>> blocks;
  emit_structures(players, 0, k, blocks, [&](const auto&) { ++count; });
  return count;
}

}  // namespace csf
