#pragma once

#include "csf/game.hpp"
#include "csf/rational.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace csf {

// Per-player probability vectors over choice sets. Exact: every stored
// vector sums to exactly 1.
struct MixedProfile {
  std::vector<std::vector<Rational>> probs;  // [player][choice index]
};

// Throws dimension-mismatch / invalid-argument when the profile does not fit
// the game (sizes, negativity, sums).
void validate_profile(const InducedGame& game, const MixedProfile& profile);

// Builds an exact profile from doubles: each vector must sum to 1 within
// 1e-12 and is then renormalized exactly.
MixedProfile profile_from_doubles(const InducedGame& game,
                                  const std::vector<std::vector<double>>& probs);

MixedProfile uniform_profile(const InducedGame& game);
MixedProfile pure_profile(const InducedGame& game, const std::vector<int>& choices);

struct EquilibriumResult {
  MixedProfile profile;
  std::vector<Rational> payoffs;                          // expected, per player
  std::vector<Rational> regret;                           // per player, >= 0
  std::vector<std::pair<int, Rational>> structure_distribution;  // structure index -> prob
  std::string method;
  std::vector<std::vector<int>> support;                  // per player, ascending choice indices
  bool converged = true;
  // One representative of a continuum: the indifference system on this
  // support was underdetermined yet satisfied.
  bool component = false;
  bool degenerate = false;
};

// EU_i = sum over choice profiles of (product of choice probabilities) x
// utility_i; exact.
std::vector<Rational> expected_utility(const InducedGame& game, const MixedProfile& profile);

// Max over the player's pure choices of expected utility against the
// opponents' mixed vectors (the player's own vector in `profile` is
// ignored). Linearity makes pure maxima sufficient.
Rational best_response_value(const InducedGame& game, int player, const MixedProfile& profile);
std::pair<Rational, int> best_response(const InducedGame& game, int player,
                                       const MixedProfile& profile);

// regret_i = best_response_value_i - EU_i; true iff all regrets <= eps.
std::pair<bool, std::vector<Rational>> verify_equilibrium(const InducedGame& game,
                                                          const MixedProfile& profile,
                                                          const Rational& eps);

// Pushforward of the product distribution through the mechanism:
// prob(P) = sum over profiles with outcome structure P of prod p_i(c_i).
std::vector<std::pair<int, Rational>> structure_distribution(const InducedGame& game,
                                                             const MixedProfile& profile);

// All pure profiles where no player gains by unilateral deviation.
std::vector<EquilibriumResult> solve_pure(const InducedGame& game);

struct SupportSolveOptions {
  // 0 = automatic: full support range for 2 players, min(3, max choice
  // count) for 3 or more.
  int max_support = 0;
  Rational eps = Rational(1, 1000000000);  // 1e-9
  bool stop_after_first = false;
  std::uint64_t max_support_combinations = 250000;
  int newton_starts = 3;
  int newton_max_iterations = 100;
  unsigned seed = 1;
  // Route 2-player games through the numeric path (testing hook; the exact
  // path is the default).
  bool force_numeric = false;
};

struct SupportFailure {
  std::vector<std::vector<int>> support;
  std::string reason;
};

struct SolveReport {
  std::vector<EquilibriumResult> equilibria;
  std::vector<SupportFailure> failures;  // never silently dropped
};

// Two players: exact rational support enumeration. Three or more: numeric
// search over support combinations (Newton on the indifference system), each
// candidate verified exactly at `eps`. Throws scale-exceeded when the
// support space is beyond the configured limit.
SolveReport solve_support_enumeration(const InducedGame& game,
                                      const SupportSolveOptions& options = {});

struct ReplicatorOptions {
  std::size_t steps = 100000;
  double step_size = 0.1;
  Rational eps = Rational(1, 1000000);  // 1e-6
  // Optimistic update (extrapolates one step of payoff history); the plain
  // multiplicative update cycles around interior equilibria.
  bool optimistic = true;
};

// Discrete replicator iteration from an interior profile; the returned
// candidate is always exactly regret-verified and tagged converged or not.
EquilibriumResult replicator_dynamics(const InducedGame& game, const MixedProfile& init,
                                      const ReplicatorOptions& options = {});

// Pure scan, then support enumeration, then replicator from uniform as a
// fallback; merged and deduplicated by support.
SolveReport solve_auto(const InducedGame& game, const SupportSolveOptions& options = {});

}  // namespace csf
