#include "csf/equilibrium.hpp"

#include "csf/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <random>

namespace csf {

namespace {

constexpr double kNewtonResidualTol = 1e-12;
constexpr double kPositivityTol = 1e-9;

std::vector<std::vector<int>> support_of(const MixedProfile& profile) {
  std::vector<std::vector<int>> support(profile.probs.size());
  for (std::size_t p = 0; p < profile.probs.size(); ++p) {
    for (std::size_t c = 0; c < profile.probs[p].size(); ++c) {
      if (profile.probs[p][c] > 0) support[p].push_back(static_cast<int>(c));
    }
  }
  return support;
}

// Iterates the product of the given per-player index lists; `body` receives
// the current profile (choice index per player).
template <typename Body>
void for_each_combination(const std::vector<std::vector<int>>& lists, Body&& body) {
  const std::size_t n = lists.size();
  for (const auto& list : lists) {
    if (list.empty()) return;
  }
  std::vector<std::size_t> pos(n, 0);
  std::vector<int> profile(n);
  while (true) {
    for (std::size_t i = 0; i < n; ++i) profile[i] = lists[i][pos[i]];
    body(profile);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++pos[i] < lists[i].size()) break;
      pos[i] = 0;
      if (i == 0) return;
    }
  }
}

// --- exact linear systems ---------------------------------------------------

struct LinearSystem {
  // rows of (coefficients..., rhs)
  std::vector<std::vector<Rational>> rows;
  int unknowns = 0;
};

struct LinearSolution {
  enum class Kind { inconsistent, unique, underdetermined } kind;
  std::vector<Rational> values;
};

// Gauss-Jordan over the rationals. Underdetermined systems get a particular
// solution with every free unknown set to `free_value`.
LinearSolution solve_linear(LinearSystem system, const Rational& free_value) {
  auto& rows = system.rows;
  const int cols = system.unknowns;
  std::vector<int> pivot_row_of_col(cols, -1);
  int pivot_row = 0;
  for (int col = 0; col < cols && pivot_row < static_cast<int>(rows.size()); ++col) {
    int found = -1;
    for (int r = pivot_row; r < static_cast<int>(rows.size()); ++r) {
      if (rows[r][col] != 0) {
        found = r;
        break;
      }
    }
    if (found < 0) continue;
    std::swap(rows[pivot_row], rows[found]);
    const Rational inv = rows[pivot_row][col];
    for (int c = col; c <= cols; ++c) rows[pivot_row][c] /= inv;
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r == pivot_row || rows[r][col] == 0) continue;
      const Rational factor = rows[r][col];
      for (int c = col; c <= cols; ++c) rows[r][c] -= factor * rows[pivot_row][c];
    }
    pivot_row_of_col[col] = pivot_row;
    ++pivot_row;
  }

  for (int r = pivot_row; r < static_cast<int>(rows.size()); ++r) {
    if (rows[r][cols] != 0) return {LinearSolution::Kind::inconsistent, {}};
  }

  LinearSolution solution;
  solution.values.assign(cols, free_value);
  bool underdetermined = false;
  for (int col = 0; col < cols; ++col) {
    if (pivot_row_of_col[col] < 0) underdetermined = true;
  }
  for (int col = 0; col < cols; ++col) {
    const int r = pivot_row_of_col[col];
    if (r < 0) continue;
    Rational value = rows[r][cols];
    for (int c = 0; c < cols; ++c) {
      if (c != col && pivot_row_of_col[c] < 0) value -= rows[r][c] * free_value;
    }
    solution.values[col] = value;
  }
  solution.kind =
      underdetermined ? LinearSolution::Kind::underdetermined : LinearSolution::Kind::unique;
  return solution;
}

// --- dense double solve for the Newton step ---------------------------------

bool solve_dense_double(std::vector<std::vector<double>>& a, std::vector<double>& b,
                        std::vector<double>& x) {
  const int n = static_cast<int>(b.size());
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (std::abs(a[pivot][col]) < 1e-12) return false;
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (int r = col + 1; r < n; ++r) {
      const double factor = a[r][col] / a[col][col];
      if (factor == 0.0) continue;
      for (int c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
      b[r] -= factor * b[col];
    }
  }
  x.assign(n, 0.0);
  for (int r = n - 1; r >= 0; --r) {
    double sum = b[r];
    for (int c = r + 1; c < n; ++c) sum -= a[r][c] * x[c];
    x[r] = sum / a[r][r];
  }
  return true;
}

// --- shared result assembly --------------------------------------------------

EquilibriumResult make_result(const InducedGame& game, MixedProfile profile, std::string method) {
  EquilibriumResult result;
  result.profile = std::move(profile);
  result.method = std::move(method);
  result.payoffs = expected_utility(game, result.profile);
  auto [ok, regrets] = verify_equilibrium(game, result.profile, Rational(0));
  (void)ok;
  result.regret = std::move(regrets);
  result.structure_distribution = structure_distribution(game, result.profile);
  result.support = support_of(result.profile);
  return result;
}

}  // namespace

void validate_profile(const InducedGame& game, const MixedProfile& profile) {
  const int n = game.n_players();
  if (static_cast<int>(profile.probs.size()) != n) {
    fail(errc::dimension_mismatch, "profile has " + std::to_string(profile.probs.size()) +
                                       " players, game has " + std::to_string(n));
  }
  for (int p = 1; p <= n; ++p) {
    const auto& probs = profile.probs[p - 1];
    if (static_cast<int>(probs.size()) != game.choice_count(p)) {
      fail(errc::dimension_mismatch,
           "probability vector of player " + std::to_string(p) + " has wrong length");
    }
    Rational sum = 0;
    for (const Rational& q : probs) {
      if (q < 0) fail(errc::invalid_argument, "negative probability");
      sum += q;
    }
    if (sum != 1) fail(errc::invalid_argument, "probabilities of player " + std::to_string(p) +
                                                   " sum to " + rational_to_string(sum));
  }
}

MixedProfile profile_from_doubles(const InducedGame& game,
                                  const std::vector<std::vector<double>>& probs) {
  const int n = game.n_players();
  if (static_cast<int>(probs.size()) != n) {
    fail(errc::dimension_mismatch, "expected one probability vector per player");
  }
  MixedProfile profile;
  profile.probs.resize(n);
  for (int p = 0; p < n; ++p) {
    if (static_cast<int>(probs[p].size()) != game.choice_count(p + 1)) {
      fail(errc::dimension_mismatch,
           "probability vector of player " + std::to_string(p + 1) + " has wrong length");
    }
    double sum = 0;
    for (double v : probs[p]) {
      if (v < 0 || !std::isfinite(v)) fail(errc::invalid_argument, "invalid probability");
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
      fail(errc::invalid_argument, "probabilities must sum to 1 within 1e-12");
    }
    Rational exact_sum = 0;
    std::vector<Rational> row;
    row.reserve(probs[p].size());
    for (double v : probs[p]) {
      row.push_back(rational_from_double(v));
      exact_sum += row.back();
    }
    for (Rational& v : row) v /= exact_sum;  // exact renormalization
    profile.probs[p] = std::move(row);
  }
  return profile;
}

MixedProfile uniform_profile(const InducedGame& game) {
  MixedProfile profile;
  profile.probs.resize(game.n_players());
  for (int p = 1; p <= game.n_players(); ++p) {
    const int m = game.choice_count(p);
    profile.probs[p - 1].assign(m, Rational(1, m));
  }
  return profile;
}

MixedProfile pure_profile(const InducedGame& game, const std::vector<int>& choices) {
  if (static_cast<int>(choices.size()) != game.n_players()) {
    fail(errc::dimension_mismatch, "expected one choice per player");
  }
  MixedProfile profile;
  profile.probs.resize(game.n_players());
  for (int p = 1; p <= game.n_players(); ++p) {
    const int m = game.choice_count(p);
    if (choices[p - 1] < 0 || choices[p - 1] >= m) {
      fail(errc::invalid_argument, "choice index out of range for player " + std::to_string(p));
    }
    profile.probs[p - 1].assign(m, Rational(0));
    profile.probs[p - 1][choices[p - 1]] = 1;
  }
  return profile;
}

std::vector<Rational> expected_utility(const InducedGame& game, const MixedProfile& profile) {
  validate_profile(game, profile);
  const int n = game.n_players();
  const auto support = support_of(profile);
  std::vector<Rational> eu(n, Rational(0));
  std::vector<int> buf(n);
  for_each_combination(support, [&](const std::vector<int>& choices) {
    Rational weight = 1;
    for (int p = 0; p < n; ++p) weight *= profile.probs[p][choices[p]];
    const auto u = game.utility(choices);
    for (int p = 0; p < n; ++p) eu[p] += weight * u[p];
  });
  return eu;
}

std::pair<Rational, int> best_response(const InducedGame& game, int player,
                                       const MixedProfile& profile) {
  validate_profile(game, profile);
  const int n = game.n_players();
  if (player < 1 || player > n) {
    fail(errc::unknown_player, "player " + std::to_string(player) + " out of range");
  }
  auto support = support_of(profile);
  Rational best;
  int best_choice = -1;
  for (int c = 0; c < game.choice_count(player); ++c) {
    support[player - 1] = {c};
    Rational eu = 0;
    for_each_combination(support, [&](const std::vector<int>& choices) {
      Rational weight = 1;
      for (int p = 0; p < n; ++p) {
        if (p != player - 1) weight *= profile.probs[p][choices[p]];
      }
      eu += weight * game.utility(choices)[player - 1];
    });
    if (best_choice < 0 || eu > best) {
      best = eu;
      best_choice = c;  // ties keep the lowest choice index
    }
  }
  return {best, best_choice};
}

Rational best_response_value(const InducedGame& game, int player, const MixedProfile& profile) {
  return best_response(game, player, profile).first;
}

std::pair<bool, std::vector<Rational>> verify_equilibrium(const InducedGame& game,
                                                          const MixedProfile& profile,
                                                          const Rational& eps) {
  const auto eu = expected_utility(game, profile);
  std::vector<Rational> regrets(game.n_players());
  bool ok = true;
  for (int p = 1; p <= game.n_players(); ++p) {
    regrets[p - 1] = best_response_value(game, p, profile) - eu[p - 1];
    if (regrets[p - 1] > eps) ok = false;
  }
  return {ok, regrets};
}

std::vector<std::pair<int, Rational>> structure_distribution(const InducedGame& game,
                                                             const MixedProfile& profile) {
  validate_profile(game, profile);
  const int n = game.n_players();
  const auto support = support_of(profile);
  std::map<int, Rational> mass;
  for_each_combination(support, [&](const std::vector<int>& choices) {
    Rational weight = 1;
    for (int p = 0; p < n; ++p) weight *= profile.probs[p][choices[p]];
    mass[game.outcome_structure(game.rank(choices))] += weight;
  });
  std::vector<std::pair<int, Rational>> out;
  for (auto& [structure, prob] : mass) {
    if (prob > 0) out.emplace_back(structure, prob);
  }
  return out;
}

std::vector<EquilibriumResult> solve_pure(const InducedGame& game) {
  const int n = game.n_players();
  std::vector<EquilibriumResult> out;
  const std::uint64_t total = game.profile_count();
  for (std::uint64_t r = 0; r < total; ++r) {
    const auto profile = game.unrank(r);
    const auto u = game.utility_at(r);
    bool equilibrium = true;
    for (int p = 0; p < n && equilibrium; ++p) {
      auto deviated = profile;
      for (int c = 0; c < game.choice_count(p + 1); ++c) {
        if (c == profile[p]) continue;
        deviated[p] = c;
        if (game.utility(deviated)[p] > u[p]) {
          equilibrium = false;
          break;
        }
      }
      deviated[p] = profile[p];
    }
    if (equilibrium) {
      out.push_back(make_result(game, pure_profile(game, profile), "pure"));
    }
  }
  return out;
}

namespace {

// --- exact support enumeration, two players ----------------------------------

// Solve the indifference system of `chooser` over opponent support columns:
// find opponent probabilities q (and value v) making every support row of
// `payoff` equal. Returns candidates to try in order.
struct SideSolution {
  std::vector<Rational> q;  // over opponent support, strictly positive
  Rational value;
  bool underdetermined = false;
};

std::optional<SideSolution> solve_side(const std::vector<std::vector<Rational>>& payoff,
                                       const std::vector<int>& own_support,
                                       const std::vector<int>& opp_support) {
  const int vars = static_cast<int>(opp_support.size()) + 1;  // q..., v
  LinearSystem system;
  system.unknowns = vars;
  for (int s : own_support) {
    std::vector<Rational> row(vars + 1, Rational(0));
    for (std::size_t t = 0; t < opp_support.size(); ++t) row[t] = payoff[s][opp_support[t]];
    row[vars - 1] = -1;  // -v
    system.rows.push_back(std::move(row));
  }
  {
    std::vector<Rational> row(vars + 1, Rational(0));
    for (std::size_t t = 0; t < opp_support.size(); ++t) row[t] = 1;
    row[vars] = 1;
    system.rows.push_back(std::move(row));
  }

  const Rational free_value(1, static_cast<long>(opp_support.size()));
  LinearSolution solution = solve_linear(std::move(system), free_value);
  if (solution.kind == LinearSolution::Kind::inconsistent) return std::nullopt;

  SideSolution side;
  side.underdetermined = solution.kind == LinearSolution::Kind::underdetermined;
  side.q.assign(solution.values.begin(), solution.values.end() - 1);
  side.value = solution.values.back();

  // For an underdetermined system the free-value particular solution must be
  // re-checked against the equations (value consistency).
  if (side.underdetermined) {
    Rational v;
    bool first = true;
    for (int s : own_support) {
      Rational eu = 0;
      for (std::size_t t = 0; t < opp_support.size(); ++t) {
        eu += payoff[s][opp_support[t]] * side.q[t];
      }
      if (first) {
        v = eu;
        first = false;
      } else if (eu != v) {
        return std::nullopt;
      }
    }
    side.value = v;
    Rational total = 0;
    for (const Rational& q : side.q) total += q;
    if (total != 1) return std::nullopt;
  }

  for (const Rational& q : side.q) {
    if (q <= 0) return std::nullopt;  // support must be exact
  }
  // No profitable deviation outside the support.
  for (int s = 0; s < static_cast<int>(payoff.size()); ++s) {
    if (std::find(own_support.begin(), own_support.end(), s) != own_support.end()) continue;
    Rational eu = 0;
    for (std::size_t t = 0; t < opp_support.size(); ++t) {
      eu += payoff[s][opp_support[t]] * side.q[t];
    }
    if (eu > side.value) return std::nullopt;
  }
  return side;
}

template <typename Body>
void for_each_subset(int m, int size, Body&& body) {
  std::vector<int> subset(size);
  for (int i = 0; i < size; ++i) subset[i] = i;
  while (true) {
    body(subset);
    int i = size - 1;
    while (i >= 0 && subset[i] == m - size + i) --i;
    if (i < 0) return;
    ++subset[i];
    for (int j = i + 1; j < size; ++j) subset[j] = subset[j - 1] + 1;
  }
}

std::uint64_t subsets_up_to(int m, int max_size) {
  std::uint64_t total = 0;
  std::uint64_t binom = 1;
  for (int s = 1; s <= max_size; ++s) {
    binom = binom * static_cast<std::uint64_t>(m - s + 1) / static_cast<std::uint64_t>(s);
    total += binom;
  }
  return total;
}

SolveReport solve_two_player_exact(const InducedGame& game, const SupportSolveOptions& options) {
  SolveReport report;
  const int m1 = game.choice_count(1);
  const int m2 = game.choice_count(2);
  std::vector<std::vector<Rational>> a(m1, std::vector<Rational>(m2));
  std::vector<std::vector<Rational>> b_t(m2, std::vector<Rational>(m1));  // player 2, transposed
  std::vector<int> profile(2);
  for (int i = 0; i < m1; ++i) {
    for (int j = 0; j < m2; ++j) {
      profile[0] = i;
      profile[1] = j;
      const auto u = game.utility(profile);
      a[i][j] = u[0];
      b_t[j][i] = u[1];
    }
  }

  const int cap1 = options.max_support > 0 ? std::min(options.max_support, m1) : m1;
  const int cap2 = options.max_support > 0 ? std::min(options.max_support, m2) : m2;
  if (subsets_up_to(m1, cap1) * subsets_up_to(m2, cap2) > options.max_support_combinations) {
    fail(errc::scale_exceeded, "support enumeration space too large; lower max_support");
  }

  for (int total = 2; total <= cap1 + cap2; ++total) {
    for (int s1 = std::max(1, total - cap2); s1 <= std::min(cap1, total - 1); ++s1) {
      const int s2 = total - s1;
      bool done = false;
      for_each_subset(m1, s1, [&](const std::vector<int>& support1) {
        if (done) return;
        for_each_subset(m2, s2, [&](const std::vector<int>& support2) {
          if (done) return;
          auto q_side = solve_side(a, support1, support2);
          if (!q_side) return;
          auto p_side = solve_side(b_t, support2, support1);
          if (!p_side) return;

          std::vector<std::vector<Rational>> probs(2);
          probs[0].assign(m1, Rational(0));
          probs[1].assign(m2, Rational(0));
          for (std::size_t t = 0; t < support1.size(); ++t) {
            probs[0][support1[t]] = p_side->q[t];
          }
          for (std::size_t t = 0; t < support2.size(); ++t) {
            probs[1][support2[t]] = q_side->q[t];
          }
          EquilibriumResult result =
              make_result(game, MixedProfile{std::move(probs)}, "support-enumeration");
          result.component = q_side->underdetermined || p_side->underdetermined;
          report.equilibria.push_back(std::move(result));
          if (options.stop_after_first) done = true;
        });
      });
      if (done) return report;
    }
  }
  return report;
}

// --- numeric support search, any player count --------------------------------

struct NumericContext {
  const InducedGame& game;
  const std::vector<std::vector<int>>& supports;
  // x[p] has one entry per support member of player p.
  std::vector<std::vector<double>> x;
};

double eu_restricted(const NumericContext& ctx, int player, int choice, int pinned_player,
                     int pinned_index) {
  // Expected utility of `player` using `choice`, over opponents' supports;
  // optionally pins one opponent to a specific support member.
  const int n = ctx.game.n_players();
  std::vector<std::vector<int>> lists(n);
  for (int p = 0; p < n; ++p) {
    if (p == player) {
      lists[p] = {choice};
    } else if (p == pinned_player) {
      lists[p] = {ctx.supports[p][pinned_index]};
    } else {
      lists[p] = ctx.supports[p];
    }
  }
  double total = 0;
  for_each_combination(lists, [&](const std::vector<int>& profile) {
    double weight = 1;
    for (int p = 0; p < n; ++p) {
      if (p == player || p == pinned_player) continue;
      const auto& support = ctx.supports[p];
      const auto it = std::find(support.begin(), support.end(), profile[p]);
      weight *= ctx.x[p][static_cast<std::size_t>(it - support.begin())];
    }
    total += weight * ctx.game.utility_double(player + 1, ctx.game.rank(profile));
  });
  return total;
}

enum class NewtonStatus { converged, singular_at_start, failed };

NewtonStatus newton_solve(NumericContext& ctx, int max_iterations) {
  const int n = ctx.game.n_players();
  int vars = 0;
  std::vector<int> offset(n, 0);
  for (int p = 0; p < n; ++p) {
    offset[p] = vars;
    vars += static_cast<int>(ctx.supports[p].size());
  }

  for (int iter = 0; iter < max_iterations; ++iter) {
    std::vector<double> residual(vars, 0.0);
    std::vector<std::vector<double>> jacobian(vars, std::vector<double>(vars, 0.0));
    int eq = 0;
    for (int p = 0; p < n; ++p) {
      // sum of probabilities = 1
      double sum = 0;
      for (double v : ctx.x[p]) sum += v;
      residual[eq] = sum - 1.0;
      for (std::size_t t = 0; t < ctx.supports[p].size(); ++t) jacobian[eq][offset[p] + t] = 1.0;
      ++eq;
      // indifference across the support
      const double base = eu_restricted(ctx, p, ctx.supports[p][0], -1, -1);
      for (std::size_t s = 1; s < ctx.supports[p].size(); ++s) {
        residual[eq] = eu_restricted(ctx, p, ctx.supports[p][s], -1, -1) - base;
        for (int j = 0; j < n; ++j) {
          if (j == p) continue;
          for (std::size_t t = 0; t < ctx.supports[j].size(); ++t) {
            jacobian[eq][offset[j] + t] =
                eu_restricted(ctx, p, ctx.supports[p][s], j, static_cast<int>(t)) -
                eu_restricted(ctx, p, ctx.supports[p][0], j, static_cast<int>(t));
          }
        }
        ++eq;
      }
    }

    double norm = 0;
    for (double r : residual) norm = std::max(norm, std::abs(r));
    if (norm <= kNewtonResidualTol) return NewtonStatus::converged;

    std::vector<double> rhs(vars);
    for (int i = 0; i < vars; ++i) rhs[i] = -residual[i];
    std::vector<double> delta;
    if (!solve_dense_double(jacobian, rhs, delta)) {
      // A singular system on the very first step is structural (the
      // indifference equations are inconsistent or degenerate on this
      // support), not a failure to converge.
      return iter == 0 ? NewtonStatus::singular_at_start : NewtonStatus::failed;
    }
    double step_norm = 0;
    for (int p = 0, i = 0; p < n; ++p) {
      for (std::size_t t = 0; t < ctx.supports[p].size(); ++t, ++i) {
        ctx.x[p][t] += delta[i];
        step_norm = std::max(step_norm, std::abs(delta[i]));
      }
    }
    if (!std::isfinite(step_norm) || step_norm > 1e6) return NewtonStatus::failed;
  }
  return NewtonStatus::failed;
}

// Exact check of a profile supported on single choices (no Newton needed).
bool pure_combo_is_equilibrium(const InducedGame& game, const std::vector<int>& profile) {
  const int n = game.n_players();
  const auto u = game.utility(profile);
  auto deviated = profile;
  for (int p = 0; p < n; ++p) {
    for (int c = 0; c < game.choice_count(p + 1); ++c) {
      if (c == profile[p]) continue;
      deviated[p] = c;
      if (game.utility(deviated)[p] > u[p]) return false;
    }
    deviated[p] = profile[p];
  }
  return true;
}

SolveReport solve_numeric_supports(const InducedGame& game, const SupportSolveOptions& options) {
  SolveReport report;
  const int n = game.n_players();
  std::vector<int> counts(n);
  int max_count = 0;
  for (int p = 0; p < n; ++p) {
    counts[p] = game.choice_count(p + 1);
    max_count = std::max(max_count, counts[p]);
  }
  auto combos_for = [&](int cap_limit) {
    std::uint64_t combos = 1;
    for (int p = 0; p < n; ++p) {
      combos *= subsets_up_to(counts[p], std::min(cap_limit, counts[p]));
      if (combos > options.max_support_combinations) return combos;
    }
    return combos;
  };

  int cap = options.max_support > 0 ? options.max_support : std::min(3, max_count);
  if (options.max_support == 0) {
    // Auto mode shrinks the support cap until the search space fits.
    while (cap > 1 && combos_for(cap) > options.max_support_combinations) --cap;
  }
  if (combos_for(cap) > options.max_support_combinations) {
    fail(errc::scale_exceeded, "support search space too large; lower max_support");
  }

  // Collect per-player subsets once, ordered by size then lexicographically.
  std::vector<std::vector<std::vector<int>>> subsets(n);
  for (int p = 0; p < n; ++p) {
    for (int size = 1; size <= std::min(cap, counts[p]); ++size) {
      for_each_subset(counts[p], size, [&](const std::vector<int>& s) { subsets[p].push_back(s); });
    }
  }

  // Enumerate support combinations ordered by total size.
  std::vector<std::size_t> pick(n, 0);
  std::vector<std::vector<std::size_t>> by_total;
  {
    std::vector<std::vector<std::size_t>> stack;
    std::vector<std::size_t> current(n, 0);
    std::function<void(int)> rec = [&](int p) {
      if (p == n) {
        by_total.push_back(current);
        return;
      }
      for (std::size_t i = 0; i < subsets[p].size(); ++i) {
        current[p] = i;
        rec(p + 1);
      }
    };
    rec(0);
  }
  std::stable_sort(by_total.begin(), by_total.end(),
                   [&](const std::vector<std::size_t>& lhs, const std::vector<std::size_t>& rhs) {
                     std::size_t lt = 0, rt = 0;
                     for (int p = 0; p < n; ++p) {
                       lt += subsets[p][lhs[p]].size();
                       rt += subsets[p][rhs[p]].size();
                     }
                     return lt < rt;
                   });

  std::mt19937 rng(options.seed);
  for (const auto& combo : by_total) {
    std::vector<std::vector<int>> supports(n);
    std::size_t total_size = 0;
    for (int p = 0; p < n; ++p) {
      supports[p] = subsets[p][combo[p]];
      total_size += supports[p].size();
    }

    if (total_size == static_cast<std::size_t>(n)) {
      std::vector<int> profile(n);
      for (int p = 0; p < n; ++p) profile[p] = supports[p][0];
      if (pure_combo_is_equilibrium(game, profile)) {
        report.equilibria.push_back(make_result(game, pure_profile(game, profile), "pure"));
        if (options.stop_after_first) return report;
      }
      continue;
    }

    bool solved = false;
    bool any_start_converged = false;
    bool all_singular = true;
    for (int start = 0; start < options.newton_starts && !solved; ++start) {
      NumericContext ctx{game, supports, {}};
      ctx.x.resize(n);
      for (int p = 0; p < n; ++p) {
        ctx.x[p].assign(supports[p].size(), 1.0 / static_cast<double>(supports[p].size()));
        if (start > 0) {
          std::uniform_real_distribution<double> jitter(0.25, 1.75);
          double sum = 0;
          for (double& v : ctx.x[p]) {
            v *= jitter(rng);
            sum += v;
          }
          for (double& v : ctx.x[p]) v /= sum;
        }
      }
      const NewtonStatus status = newton_solve(ctx, options.newton_max_iterations);
      if (status != NewtonStatus::singular_at_start) all_singular = false;
      if (status != NewtonStatus::converged) continue;
      any_start_converged = true;

      bool feasible = true;
      for (int p = 0; p < n && feasible; ++p) {
        for (double v : ctx.x[p]) {
          if (!(v >= kPositivityTol) || v > 1.0 + kPositivityTol) {
            feasible = false;
            break;
          }
        }
      }
      if (feasible) {
        for (int p = 0; p < n && feasible; ++p) {
          const double value = eu_restricted(ctx, p, supports[p][0], -1, -1);
          for (int c = 0; c < counts[p]; ++c) {
            if (std::find(supports[p].begin(), supports[p].end(), c) != supports[p].end()) {
              continue;
            }
            if (eu_restricted(ctx, p, c, -1, -1) > value + kPositivityTol) {
              feasible = false;
              break;
            }
          }
        }
      }
      if (!feasible) break;  // converged to an infeasible root: no equilibrium here

      std::vector<std::vector<double>> full(n);
      for (int p = 0; p < n; ++p) {
        full[p].assign(counts[p], 0.0);
        for (std::size_t t = 0; t < supports[p].size(); ++t) {
          full[p][supports[p][t]] = ctx.x[p][t];
        }
      }
      MixedProfile candidate = profile_from_doubles(game, full);
      auto [ok, regrets] = verify_equilibrium(game, candidate, options.eps);
      if (ok) {
        EquilibriumResult result = make_result(game, std::move(candidate), "support-numeric");
        report.equilibria.push_back(std::move(result));
        solved = true;
      } else {
        report.failures.push_back(
            SupportFailure{supports, "candidate converged but failed exact verification"});
        break;
      }
    }
    if (!solved && !any_start_converged && !all_singular &&
        total_size > static_cast<std::size_t>(n)) {
      report.failures.push_back(
          SupportFailure{supports, "newton iteration did not converge on this support"});
    }
    if (solved && options.stop_after_first) return report;
  }
  return report;
}

EquilibriumResult degenerate_result(const InducedGame& game) {
  EquilibriumResult result = make_result(game, uniform_profile(game), "support-enumeration");
  result.degenerate = true;
  result.component = true;
  return result;
}

bool game_is_degenerate(const InducedGame& game) {
  for (int p = 1; p <= game.n_players(); ++p) {
    if (!game.constant_for(p)) return false;
  }
  return true;
}

SolveReport solve_single_player(const InducedGame& game, const SupportSolveOptions& options) {
  SolveReport report;
  Rational best;
  std::vector<int> argmax;
  for (int c = 0; c < game.choice_count(1); ++c) {
    const std::vector<int> only{c};
    const Rational u = game.utility(only)[0];
    if (argmax.empty() || u > best) {
      best = u;
      argmax = {c};
    } else if (u == best) {
      argmax.push_back(c);
    }
  }
  for (int c : argmax) {
    report.equilibria.push_back(
        make_result(game, pure_profile(game, {c}), "support-enumeration"));
    if (options.stop_after_first) return report;
  }
  if (argmax.size() > 1) {
    std::vector<std::vector<Rational>> probs(1);
    probs[0].assign(game.choice_count(1), Rational(0));
    for (int c : argmax) probs[0][c] = Rational(1, static_cast<long>(argmax.size()));
    EquilibriumResult result =
        make_result(game, MixedProfile{std::move(probs)}, "support-enumeration");
    result.component = true;
    report.equilibria.push_back(std::move(result));
  }
  return report;
}

}  // namespace

SolveReport solve_support_enumeration(const InducedGame& game,
                                      const SupportSolveOptions& options) {
  if (game_is_degenerate(game)) {
    SolveReport report;
    report.equilibria.push_back(degenerate_result(game));
    return report;
  }
  if (game.n_players() == 1) return solve_single_player(game, options);
  if (game.n_players() == 2 && !options.force_numeric) {
    return solve_two_player_exact(game, options);
  }
  return solve_numeric_supports(game, options);
}

EquilibriumResult replicator_dynamics(const InducedGame& game, const MixedProfile& init,
                                      const ReplicatorOptions& options) {
  validate_profile(game, init);
  const int n = game.n_players();
  for (int p = 0; p < n; ++p) {
    for (const Rational& v : init.probs[p]) {
      if (v <= 0) fail(errc::invalid_init, "replicator needs an interior starting profile");
    }
  }

  std::vector<std::vector<double>> x(n);
  for (int p = 0; p < n; ++p) {
    x[p].reserve(init.probs[p].size());
    for (const Rational& v : init.probs[p]) x[p].push_back(rational_to_double(v));
  }

  const double eps_d = rational_to_double(options.eps);
  std::vector<std::vector<double>> gains(n), prev_gains(n), best(n);
  for (int p = 0; p < n; ++p) {
    gains[p].assign(x[p].size(), 0.0);
    prev_gains[p].assign(x[p].size(), 0.0);
  }
  double best_regret = std::numeric_limits<double>::infinity();

  auto compute_gains = [&]() {
    // gains[p][c] = EU of player p+1 playing c against the current mix.
    std::vector<std::vector<int>> lists(n);
    for (int p = 0; p < n; ++p) {
      lists[p].resize(x[p].size());
      for (std::size_t c = 0; c < x[p].size(); ++c) lists[p][c] = static_cast<int>(c);
    }
    for (int p = 0; p < n; ++p) {
      auto saved = lists[p];
      for (std::size_t c = 0; c < x[p].size(); ++c) {
        lists[p] = {static_cast<int>(c)};
        double eu = 0;
        for_each_combination(lists, [&](const std::vector<int>& profile) {
          double weight = 1;
          for (int j = 0; j < n; ++j) {
            if (j != p) weight *= x[j][profile[j]];
          }
          eu += weight * game.utility_double(p + 1, game.rank(profile));
        });
        gains[p][c] = eu;
      }
      lists[p] = saved;
    }
  };

  bool reached_eps = false;
  for (std::size_t step = 0; step <= options.steps; ++step) {
    compute_gains();
    double regret = 0;
    for (int p = 0; p < n; ++p) {
      double avg = 0, top = -std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < x[p].size(); ++c) {
        avg += x[p][c] * gains[p][c];
        top = std::max(top, gains[p][c]);
      }
      regret = std::max(regret, top - avg);
    }
    if (regret < best_regret) {
      best_regret = regret;
      best = x;
    }
    if (regret <= 0.5 * eps_d) {
      reached_eps = true;
      break;
    }
    if (step == options.steps) break;

    for (int p = 0; p < n; ++p) {
      double top = -std::numeric_limits<double>::infinity();
      std::vector<double> effective(x[p].size());
      for (std::size_t c = 0; c < x[p].size(); ++c) {
        effective[c] = options.optimistic && step > 0 ? 2.0 * gains[p][c] - prev_gains[p][c]
                                                      : gains[p][c];
        top = std::max(top, effective[c]);
      }
      double sum = 0;
      for (std::size_t c = 0; c < x[p].size(); ++c) {
        x[p][c] *= std::exp(options.step_size * (effective[c] - top));
        sum += x[p][c];
      }
      for (double& v : x[p]) v /= sum;
    }
    prev_gains = gains;
  }
  (void)reached_eps;

  MixedProfile candidate = profile_from_doubles(game, best);
  EquilibriumResult result = make_result(game, std::move(candidate), "replicator");
  bool converged = true;
  for (const Rational& r : result.regret) {
    if (r > options.eps) converged = false;
  }
  result.converged = converged;
  return result;
}

SolveReport solve_auto(const InducedGame& game, const SupportSolveOptions& options) {
  SolveReport report = solve_support_enumeration(game, options);
  if (!report.equilibria.empty()) return report;

  ReplicatorOptions fallback;  // replicator's own default tolerance
  EquilibriumResult candidate = replicator_dynamics(game, uniform_profile(game), fallback);
  if (candidate.converged) {
    report.equilibria.push_back(std::move(candidate));
  } else {
    report.failures.push_back(SupportFailure{{}, "replicator fallback did not converge"});
  }
  return report;
}

}  // namespace csf
