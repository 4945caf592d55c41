#include "csf/mechanism.hpp"

#include "csf/error.hpp"
#include "csf/game.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace csf {

namespace {

class UnanimityMechanism final : public Mechanism {
 public:
  const std::string& name() const override {
    static const std::string n = "unanimity";
    return n;
  }

  Outcome apply(const Game& game, std::span<const Choice> profile) const override {
    const int n = game.n_players();
    // A block forms iff every member named exactly it as their own block.
    std::vector<std::vector<PlayerId>> final_blocks;
    std::vector<char> placed(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 1; i <= n; ++i) {
      if (placed[i]) continue;
      const auto& own = game.structure(profile[i - 1].structure).block_of(i);
      if (own.size() < 2) continue;
      bool agreed = true;
      for (PlayerId member : own) {
        const auto& member_block =
            game.structure(profile[member - 1].structure).block_of(member);
        if (member_block != own) {
          agreed = false;
          break;
        }
      }
      if (agreed) {
        for (PlayerId member : own) {
          if (placed[member]) {
            // Each player endorses at most one own-block, so agreed blocks
            // cannot overlap; reaching this is a logic error.
            fail(errc::invalid_argument, "overlapping agreed coalitions");
          }
          placed[member] = 1;
        }
        final_blocks.push_back(own);
      }
    }
    for (int i = 1; i <= n; ++i) {
      if (!placed[i]) final_blocks.push_back({i});
    }

    CoalitionStructure final_structure(std::move(final_blocks));
    const int structure_idx = game.structure_index(final_structure.id());
    if (structure_idx < 0) {
      fail(errc::structure_out_of_bounds,
           "mechanism produced structure " + final_structure.id() + " outside the game");
    }

    Outcome out;
    out.structure = structure_idx;
    out.labels.resize(n);
    for (int i = 1; i <= n; ++i) {
      out.labels[i - 1] =
          game.project_label(i, profile[i - 1].structure, profile[i - 1].label, structure_idx);
    }
    return out;
  }
};

class IdentityMechanism final : public Mechanism {
 public:
  const std::string& name() const override {
    static const std::string n = "identity";
    return n;
  }

  Outcome apply(const Game& game, std::span<const Choice> profile) const override {
    if (game.k_max() != 1) {
      fail(errc::invalid_argument, "identity mechanism requires k_max == 1");
    }
    Outcome out;
    out.structure = profile[0].structure;  // the all-singleton structure
    out.labels.reserve(profile.size());
    for (const Choice& c : profile) out.labels.push_back(c.label);
    return out;
  }
};

class TableMechanism final : public Mechanism {
 public:
  TableMechanism(std::string name, std::vector<MechanismTableRow> rows)
      : name_(std::move(name)), rows_(std::move(rows)) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      auto [it, inserted] = index_.emplace(rows_[r].profile, r);
      if (!inserted) {
        fail(errc::invalid_argument, "duplicate mechanism table row " + std::to_string(r));
      }
    }
  }

  const std::string& name() const override { return name_; }

  Outcome apply(const Game&, std::span<const Choice> profile) const override {
    const std::vector<Choice> key(profile.begin(), profile.end());
    auto it = index_.find(key);
    if (it == index_.end()) {
      fail(errc::invalid_argument, "mechanism table has no row for a choice profile");
    }
    return rows_[it->second].outcome;
  }

 private:
  std::string name_;
  std::vector<MechanismTableRow> rows_;
  std::map<std::vector<Choice>, std::size_t> index_;
};

}  // namespace

std::shared_ptr<const Mechanism> make_unanimity_mechanism() {
  return std::make_shared<UnanimityMechanism>();
}

std::shared_ptr<const Mechanism> make_identity_mechanism() {
  return std::make_shared<IdentityMechanism>();
}

std::shared_ptr<const Mechanism> make_table_mechanism(std::string name,
                                                      std::vector<MechanismTableRow> rows) {
  return std::make_shared<TableMechanism>(std::move(name), std::move(rows));
}

MechanismScan scan_mechanism(const Game& game, const Mechanism& mechanism) {
  const int n = game.n_players();
  const std::uint64_t total = game.profile_count();

  MechanismScan scan;
  scan.outcome_structure.resize(total, -1);
  scan.outcome_label_row.resize(total, 0);
  std::map<int, std::uint64_t> counts;

  std::vector<int> indices(n, 0);
  std::vector<Choice> profile(n);
  for (std::uint64_t rank = 0; rank < total; ++rank) {
    for (int i = 0; i < n; ++i) profile[i] = game.choice_set(i + 1)[indices[i]];
    Outcome out = mechanism.apply(game, profile);

    // Outcome well-formedness is part of the mechanism contract; check it on
    // every application.
    const CoalitionStructure& s = game.structure(out.structure);
    if (s.max_block_size() > game.k_max()) {
      fail(errc::structure_out_of_bounds, "mechanism outcome exceeds the size bound");
    }
    if (static_cast<int>(out.labels.size()) != n) {
      fail(errc::invalid_argument, "mechanism outcome has wrong label arity");
    }
    for (int i = 1; i <= n; ++i) {
      const auto& valid = game.labels(i, out.structure);
      if (out.labels[i - 1] < 0 || out.labels[i - 1] >= static_cast<int>(valid.size())) {
        fail(errc::label_undeclared, "mechanism outcome label out of range");
      }
    }

    scan.outcome_structure[rank] = out.structure;
    scan.outcome_label_row[rank] = game.label_row_rank(out.structure, out.labels);
    ++counts[out.structure];

    // Odometer over the choice-profile product, last player fastest.
    for (int i = n - 1; i >= 0; --i) {
      if (++indices[i] < static_cast<int>(game.choice_set(i + 1).size())) break;
      indices[i] = 0;
    }
  }

  for (const auto& [structure, count] : counts) {
    scan.implementable.push_back(structure);
    scan.preimage_counts.push_back(count);
  }
  return scan;
}

std::vector<CoalitionStructure> implementable_structures(const Game& game,
                                                         const Mechanism& mechanism) {
  MechanismScan scan = scan_mechanism(game, mechanism);
  std::vector<CoalitionStructure> out;
  out.reserve(scan.implementable.size());
  for (int idx : scan.implementable) out.push_back(game.structure(idx));
  return out;
}

std::uint64_t preimage_count(const Game& game, const Mechanism& mechanism,
                             const CoalitionStructure& structure) {
  MechanismScan scan = scan_mechanism(game, mechanism);
  const int idx = game.structure_index(structure.id());
  for (std::size_t i = 0; i < scan.implementable.size(); ++i) {
    if (scan.implementable[i] == idx) return scan.preimage_counts[i];
  }
  fail(errc::structure_not_implementable,
       "structure " + structure.id() + " is not in the mechanism image");
}

}  // namespace csf
