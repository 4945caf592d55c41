#include "csf/stability.hpp"

#include "csf/error.hpp"

#include <algorithm>

namespace csf {

FamilyAnalysis::FamilyAnalysis(std::vector<FamilyMember> members, const Rational& eps)
    : members_(std::move(members)) {
  if (members_.empty()) fail(errc::invalid_argument, "empty game family");
  std::sort(members_.begin(), members_.end(),
            [](const FamilyMember& a, const FamilyMember& b) { return a.k < b.k; });
  const int n = members_.front().game->n_players();
  if (static_cast<int>(members_.size()) != n) {
    fail(errc::invalid_bounds, "family must cover K = 1.." + std::to_string(n) + ", got " +
                                   std::to_string(members_.size()) + " games");
  }
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (members_[i].k != static_cast<int>(i) + 1) {
      fail(errc::invalid_bounds, "family K values must be contiguous from 1");
    }
    if (members_[i].game->n_players() != n) {
      fail(errc::invalid_argument, "family members disagree on the player count");
    }
    if (members_[i].game->k_max() != members_[i].k) {
      fail(errc::invalid_argument, "family member game has k_max different from its K slot");
    }
    for (const auto& eq : members_[i].equilibria) {
      auto [ok, regrets] = verify_equilibrium(members_[i].induced, eq.profile, eps);
      if (!ok) {
        fail(errc::invalid_argument,
             "stored equilibrium at K=" + std::to_string(members_[i].k) + " fails verification");
      }
    }
  }
}

int FamilyAnalysis::n_players() const { return members_.front().game->n_players(); }

const FamilyMember& FamilyAnalysis::at_k(int k) const {
  if (k < 1 || k > static_cast<int>(members_.size())) {
    fail(errc::invalid_bounds, "K=" + std::to_string(k) + " outside the family");
  }
  return members_[k - 1];
}

const EquilibriumResult& FamilyAnalysis::selected(int k) const {
  const FamilyMember& member = at_k(k);
  if (member.equilibria.empty()) {
    fail(errc::missing_equilibrium, "no stored equilibrium for K=" + std::to_string(k));
  }
  return member.equilibria.front();
}

StabilityMode stability_mode_from_string(const std::string& text) {
  if (text == "forall" || text == "for-all") return StabilityMode::for_all;
  if (text == "exists") return StabilityMode::exists;
  fail(errc::invalid_argument, "unknown stability mode '" + text + "'");
}

std::string to_string(StabilityMode mode) {
  return mode == StabilityMode::for_all ? "forall" : "exists";
}

namespace {

// Best deviation of `player` in the K1 game against its stored equilibria,
// aggregated per mode: for-all takes the harshest opponent equilibrium,
// exists the friendliest.
StabilityComparison compare_against(const FamilyAnalysis& family, int player, int k, int k1,
                                    const Rational& eq_payoff, StabilityMode mode) {
  const FamilyMember& target = family.at_k(k1);
  if (target.equilibria.empty()) {
    fail(errc::missing_equilibrium, "no stored equilibrium for K=" + std::to_string(k1));
  }
  StabilityComparison cmp;
  cmp.player = player;
  cmp.k = k;
  cmp.k1 = k1;
  cmp.equilibrium_payoff = eq_payoff;
  bool first = true;
  for (std::size_t e = 0; e < target.equilibria.size(); ++e) {
    auto [value, choice] = best_response(target.induced, player, target.equilibria[e].profile);
    const bool take = first || (mode == StabilityMode::for_all ? value > cmp.best_deviation
                                                               : value < cmp.best_deviation);
    if (take) {
      cmp.best_deviation = value;
      cmp.deviation_choice = choice;
      cmp.k1_equilibrium = static_cast<int>(e);
    }
    first = false;
  }
  cmp.holds = eq_payoff >= cmp.best_deviation;
  return cmp;
}

StabilityVerdict run_criterion(const FamilyAnalysis& family, int k,
                               const std::vector<int>& targets, StabilityMode mode,
                               std::string criterion) {
  const EquilibriumResult& selected = family.selected(k);
  StabilityVerdict verdict;
  verdict.criterion = std::move(criterion);
  verdict.k = k;
  verdict.mode = mode;
  verdict.stable = true;
  for (int player = 1; player <= family.n_players(); ++player) {
    const Rational& eq_payoff = selected.payoffs[player - 1];
    for (int k1 : targets) {
      StabilityComparison cmp = compare_against(family, player, k, k1, eq_payoff, mode);
      if (!cmp.holds) {
        verdict.stable = false;
        verdict.witnesses.push_back(cmp);
      }
      verdict.comparisons.push_back(std::move(cmp));
    }
  }
  return verdict;
}

}  // namespace

StabilityVerdict local_stability(const FamilyAnalysis& family, int k, StabilityMode mode) {
  family.at_k(k);
  std::vector<int> targets;
  if (k - 1 >= 1) targets.push_back(k - 1);  // K-1 = 0 means no lower neighbor
  if (k + 1 <= family.n_players()) targets.push_back(k + 1);
  return run_criterion(family, k, targets, mode, "local");
}

StabilityVerdict global_stability(const FamilyAnalysis& family, int k, StabilityMode mode) {
  family.at_k(k);
  std::vector<int> targets;
  for (int k1 = 1; k1 <= family.n_players(); ++k1) {
    if (k1 != k) targets.push_back(k1);
  }
  return run_criterion(family, k, targets, mode, "global");
}

StabilityVerdict strong_nash_criterion(const FamilyAnalysis& family, StabilityMode mode) {
  const int n = family.n_players();
  StabilityVerdict verdict = global_stability(family, n, mode);
  verdict.criterion = "strong";

  // The selected equilibrium at K = N must put all mass on the grand
  // coalition.
  const EquilibriumResult& selected = family.selected(n);
  const Game& game = *family.at_k(n).game;
  for (const auto& [structure, mass] : selected.structure_distribution) {
    const bool grand = game.structure(structure).blocks().size() == 1;
    if (!grand && mass > 0) {
      verdict.stable = false;
      verdict.distribution_witness.emplace_back(game.structure(structure).id(), mass);
    }
  }
  return verdict;
}

}  // namespace csf
