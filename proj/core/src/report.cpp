#include "csf/report.hpp"

#include "csf/partitions.hpp"

#include <json.hpp>

#include <iomanip>
#include <sstream>

namespace csf {

namespace {

using json = nlohmann::ordered_json;

json json_rational(const Rational& value) { return rational_to_string(value); }

// Exact-path results print as p/q; numeric-path results (replicator, Newton
// search) carry dyadic rationals converted from doubles, which read better
// as decimals.
bool numeric_method(const std::string& method) {
  return method == "replicator" || method == "support-numeric";
}

std::string value_string(const Rational& value, bool approximate) {
  if (!approximate) return rational_to_string(value);
  std::ostringstream out;
  out << std::setprecision(12) << rational_to_double(value);
  return out.str();
}

json json_equilibrium(const InducedGame& game, const EquilibriumResult& result,
                      std::size_t index) {
  const Game& g = game.game();
  const bool approx = numeric_method(result.method);
  json out;
  out["index"] = index + 1;
  out["method"] = result.method;
  out["converged"] = result.converged;
  out["component"] = result.component;
  out["degenerate"] = result.degenerate;
  json profile = json::array();
  for (int p = 1; p <= game.n_players(); ++p) {
    json strategy = json::array();
    for (int c : result.support[p - 1]) {
      const Choice& choice = game.choice(p, c);
      strategy.push_back(json{{"structure", g.structure(choice.structure).id()},
                              {"label", g.labels(p, choice.structure)[choice.label]},
                              {"p", value_string(result.profile.probs[p - 1][c], approx)}});
    }
    profile.push_back(json{{"player", g.player_names()[p - 1]}, {"strategy", std::move(strategy)}});
  }
  out["profile"] = std::move(profile);
  json payoffs = json::array();
  for (const auto& v : result.payoffs) payoffs.push_back(value_string(v, approx));
  out["payoffs"] = std::move(payoffs);
  json regret = json::array();
  for (const auto& v : result.regret) regret.push_back(value_string(v, approx));
  out["regret"] = std::move(regret);
  json distribution = json::array();
  for (const auto& [structure, mass] : result.structure_distribution) {
    distribution.push_back(
        json{{"structure", g.structure(structure).id()}, {"p", value_string(mass, approx)}});
  }
  out["structure_distribution"] = std::move(distribution);
  return out;
}

void render_equilibrium(std::ostream& out, const InducedGame& game,
                        const EquilibriumResult& result, std::size_t index) {
  const Game& g = game.game();
  const bool approx = numeric_method(result.method);
  out << "[" << index + 1 << "] method=" << result.method
      << (result.converged ? "" : " unconverged") << (result.component ? " component" : "")
      << (result.degenerate ? " degenerate" : "") << "\n";
  for (int p = 1; p <= game.n_players(); ++p) {
    out << "    player " << g.player_names()[p - 1] << ":";
    for (int c : result.support[p - 1]) {
      const Choice& choice = game.choice(p, c);
      out << " " << g.choice_to_string(p, choice) << "="
          << value_string(result.profile.probs[p - 1][c], approx);
    }
    out << "\n";
  }
  out << "    payoffs:";
  for (const auto& v : result.payoffs) out << " " << value_string(v, approx);
  out << "\n    regret:";
  for (const auto& v : result.regret) out << " " << value_string(v, approx);
  out << "\n    structures:";
  for (const auto& [structure, mass] : result.structure_distribution) {
    out << " " << g.structure(structure).id() << "=" << value_string(mass, approx);
  }
  out << "\n";
}

json game_header(const InducedGame& game) {
  const Game& g = game.game();
  json out;
  out["players"] = g.player_names();
  out["max_coalition_size"] = g.k_max();
  out["mechanism"] = game.mechanism().name();
  json counts = json::array();
  for (int p = 1; p <= g.n_players(); ++p) counts.push_back(game.choice_count(p));
  out["choice_counts"] = std::move(counts);
  out["profile_count"] = game.profile_count();
  return out;
}

std::string finish(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace

RenderedReport report_enumeration(int n, int k, bool show_diagrams, bool show_structures) {
  if (!show_diagrams && !show_structures) {
    show_diagrams = true;
    show_structures = true;
  }
  json doc;
  doc["schema_version"] = kReportSchemaVersion;
  doc["command"] = "enumerate";
  json section;
  section["players"] = n;
  section["max_size"] = k;

  std::ostringstream table;
  const auto diagrams = enumerate_diagrams(n, k);
  const auto structures = enumerate_structures(n, k);
  json counts;
  counts["diagrams"] = diagrams.size();
  counts["structures"] = structures.size();
  section["counts"] = std::move(counts);

  if (show_diagrams) {
    json list = json::array();
    table << "diagrams (n=" << n << ", k=" << k << "): " << diagrams.size() << "\n";
    for (const auto& d : diagrams) {
      list.push_back(json{{"parts", d.parts()}});
      table << "  " << d.to_string() << "\n";
    }
    section["diagrams"] = std::move(list);
  }
  if (show_structures) {
    json list = json::array();
    table << "structures (n=" << n << ", k=" << k << "): " << structures.size() << "\n";
    for (const auto& s : structures) {
      list.push_back(json{{"id", s.id()}, {"blocks", s.blocks()}});
      table << "  " << s.id() << "\n";
    }
    section["structures"] = std::move(list);
  }
  doc["enumeration"] = std::move(section);
  return {finish(doc), table.str()};
}

RenderedReport report_solve(const InducedGame& game, const SolveReport& solve,
                            const std::string& method, bool include_induced_table) {
  const Game& g = game.game();
  json doc;
  doc["schema_version"] = kReportSchemaVersion;
  doc["command"] = "solve";
  doc["method"] = method;
  doc["game"] = game_header(game);

  std::ostringstream table;
  table << "game: players=" << g.n_players() << " k=" << g.k_max()
        << " mechanism=" << game.mechanism().name() << "\n";

  constexpr std::uint64_t kTableLimit = 4096;
  if (game.profile_count() <= kTableLimit) {
    json rows = json::array();
    std::vector<int> profile(g.n_players());
    for (std::uint64_t r = 0; r < game.profile_count(); ++r) {
      profile = game.unrank(r);
      json row;
      json choices = json::array();
      for (int p = 1; p <= g.n_players(); ++p) {
        const Choice& c = game.choice(p, profile[p - 1]);
        choices.push_back(json{{"structure", g.structure(c.structure).id()},
                               {"label", g.labels(p, c.structure)[c.label]}});
      }
      row["choices"] = std::move(choices);
      const Outcome outcome = game.outcome(profile);
      row["final_structure"] = g.structure(outcome.structure).id();
      json labels = json::array();
      for (int p = 1; p <= g.n_players(); ++p) {
        labels.push_back(g.labels(p, outcome.structure)[outcome.labels[p - 1]]);
      }
      row["final_labels"] = std::move(labels);
      json payoffs = json::array();
      for (const auto& v : game.utility_at(r)) payoffs.push_back(json_rational(v));
      row["payoffs"] = std::move(payoffs);
      rows.push_back(std::move(row));
    }
    doc["induced_table"] = std::move(rows);
    if (include_induced_table) {
      table << "induced table (" << game.profile_count() << " profiles):\n";
      for (std::uint64_t r = 0; r < game.profile_count(); ++r) {
        const auto profile2 = game.unrank(r);
        table << " ";
        for (int p = 1; p <= g.n_players(); ++p) {
          table << " " << g.choice_to_string(p, game.choice(p, profile2[p - 1]));
        }
        const Outcome outcome = game.outcome(profile2);
        table << " -> " << g.structure(outcome.structure).id() << " :";
        for (const auto& v : game.utility_at(r)) table << " " << rational_to_string(v);
        table << "\n";
      }
    }
  } else {
    doc["induced_table_omitted"] = true;
  }

  json equilibria = json::array();
  doc["equilibrium_count"] = solve.equilibria.size();
  table << "equilibria: " << solve.equilibria.size() << "\n";
  for (std::size_t i = 0; i < solve.equilibria.size(); ++i) {
    equilibria.push_back(json_equilibrium(game, solve.equilibria[i], i));
    render_equilibrium(table, game, solve.equilibria[i], i);
  }
  doc["equilibria"] = std::move(equilibria);

  json failures = json::array();
  for (const auto& failure : solve.failures) {
    json supports = json::array();
    for (int p = 1; p <= g.n_players() && !failure.support.empty(); ++p) {
      json list = json::array();
      for (int c : failure.support[p - 1]) {
        list.push_back(g.choice_to_string(p, game.choice(p, c)));
      }
      supports.push_back(std::move(list));
    }
    failures.push_back(json{{"support", std::move(supports)}, {"reason", failure.reason}});
  }
  doc["failures"] = std::move(failures);
  if (!solve.failures.empty()) {
    table << "failures: " << solve.failures.size() << "\n";
    for (const auto& failure : solve.failures) table << "  " << failure.reason << "\n";
  }
  return {finish(doc), table.str()};
}

RenderedReport report_stability(const FamilyAnalysis& family,
                                const std::vector<StabilityVerdict>& verdicts) {
  json doc;
  doc["schema_version"] = kReportSchemaVersion;
  doc["command"] = "stability";

  std::ostringstream table;

  json members = json::array();
  for (const auto& member : family.members()) {
    json entry;
    entry["k"] = member.k;
    json equilibria = json::array();
    for (std::size_t i = 0; i < member.equilibria.size(); ++i) {
      equilibria.push_back(json_equilibrium(member.induced, member.equilibria[i], i));
    }
    entry["equilibria"] = std::move(equilibria);
    members.push_back(std::move(entry));
  }
  doc["family"] = std::move(members);

  json list = json::array();
  for (const auto& verdict : verdicts) {
    json entry;
    entry["criterion"] = verdict.criterion;
    entry["mode"] = to_string(verdict.mode);
    entry["k"] = verdict.k;
    entry["stable"] = verdict.stable;
    table << "criterion=" << verdict.criterion << " mode=" << to_string(verdict.mode)
          << " K=" << verdict.k << ": " << (verdict.stable ? "stable" : "unstable") << "\n";

    auto comparison_json = [&](const StabilityComparison& cmp) {
      const FamilyMember& target = family.at_k(cmp.k1);
      return json{{"player", family.members().front().game->player_names()[cmp.player - 1]},
                  {"k", cmp.k},
                  {"k1", cmp.k1},
                  {"equilibrium_payoff", json_rational(cmp.equilibrium_payoff)},
                  {"best_deviation", json_rational(cmp.best_deviation)},
                  {"deviation_choice",
                   target.game->choice_to_string(
                       cmp.player, target.induced.choice(cmp.player, cmp.deviation_choice))},
                  {"k1_equilibrium", cmp.k1_equilibrium},
                  {"holds", cmp.holds}};
    };

    json comparisons = json::array();
    const auto& names = family.members().front().game->player_names();
    for (const auto& cmp : verdict.comparisons) {
      comparisons.push_back(comparison_json(cmp));
      table << "  player " << names[cmp.player - 1] << ": EU(K=" << cmp.k
            << ")=" << rational_to_string(cmp.equilibrium_payoff) << " vs best deviation(K1="
            << cmp.k1 << ")=" << rational_to_string(cmp.best_deviation)
            << (cmp.holds ? " [holds]" : " [violated]") << "\n";
    }
    entry["comparisons"] = std::move(comparisons);
    json witnesses = json::array();
    for (const auto& cmp : verdict.witnesses) witnesses.push_back(comparison_json(cmp));
    entry["witnesses"] = std::move(witnesses);

    json distribution = json::array();
    for (const auto& [structure_id, mass] : verdict.distribution_witness) {
      distribution.push_back(json{{"structure", structure_id}, {"p", json_rational(mass)}});
      table << "  witness: structure distribution mass " << rational_to_string(mass) << " on "
            << structure_id << "\n";
    }
    entry["distribution_witness"] = std::move(distribution);
    list.push_back(std::move(entry));
  }
  doc["stability"] = std::move(list);
  return {finish(doc), table.str()};
}

}  // namespace csf
