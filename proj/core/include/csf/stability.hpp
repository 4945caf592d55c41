#pragma once

#include "csf/equilibrium.hpp"
#include "csf/game.hpp"

#include <string>
#include <vector>

namespace csf {

// One game per maximum coalition size, K contiguous from 1 to N, each with
// its regret-verified equilibria. The first stored equilibrium of each K is
// the selected one; the rest participate in for-all / exists aggregation.
struct FamilyMember {
  int k = 0;
  std::shared_ptr<const Game> game;
  InducedGame induced;
  std::vector<EquilibriumResult> equilibria;
};

class FamilyAnalysis {
 public:
  // Validates contiguity (k = 1..N), that every game has the same player
  // count, and that every stored equilibrium passes verification at eps.
  FamilyAnalysis(std::vector<FamilyMember> members, const Rational& eps = Rational(1, 1000000));

  int n_players() const;
  const std::vector<FamilyMember>& members() const { return members_; }
  const FamilyMember& at_k(int k) const;
  const EquilibriumResult& selected(int k) const;  // throws missing-equilibrium

 private:
  std::vector<FamilyMember> members_;
};

enum class StabilityMode { for_all, exists };

StabilityMode stability_mode_from_string(const std::string& text);
std::string to_string(StabilityMode mode);

// Entry of the cross-K comparison table: how the selected equilibrium payoff
// at K fares against the best deviation available in the game at K1.
struct StabilityComparison {
  int player = 0;  // 1-based
  int k = 0;
  int k1 = 0;
  Rational equilibrium_payoff;
  Rational best_deviation;   // aggregated over stored equilibria of K1 per mode
  int deviation_choice = -1; // choice index in the K1 game
  int k1_equilibrium = -1;   // index of the K1 equilibrium realizing the aggregate
  bool holds = false;        // equilibrium_payoff >= best_deviation
};

struct StabilityVerdict {
  bool stable = false;
  std::string criterion;  // "local" | "global" | "strong"
  int k = 0;
  StabilityMode mode = StabilityMode::for_all;
  std::vector<StabilityComparison> comparisons;  // every comparison made
  std::vector<StabilityComparison> witnesses;    // failing entries
  // Strong criterion only: structure distribution evidence when the selected
  // equilibrium at K=N is not a point mass on the grand coalition.
  std::vector<std::pair<std::string, Rational>> distribution_witness;
};

// One-unit deviations in coalition size (K-1 and K+1, clamped at the ends)
// cannot improve on the selected equilibrium of the game at K.
StabilityVerdict local_stability(const FamilyAnalysis& family, int k,
                                 StabilityMode mode = StabilityMode::for_all);

// Same inequality against every other K1.
StabilityVerdict global_stability(const FamilyAnalysis& family, int k,
                                  StabilityMode mode = StabilityMode::for_all);

// Global inequality at K = N plus: the selected equilibrium's structure
// distribution is a point mass on the grand coalition.
StabilityVerdict strong_nash_criterion(const FamilyAnalysis& family,
                                       StabilityMode mode = StabilityMode::for_all);

}  // namespace csf
