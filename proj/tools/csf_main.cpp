// csf: coalition structure formation games.
//
// Subcommands:
//   enumerate  diagrams and structures for (players, max-size)
//   solve      equilibria of the induced game of a spec file
//   stability  local/global/strong verdicts across a K-family of games
//   example    write a bundled example spec
//
// Exit codes: 0 success, 1 validation error, 2 solver nonconvergence.

#include <csf/equilibrium.hpp>
#include <csf/error.hpp>
#include <csf/game.hpp>
#include <csf/partitions.hpp>
#include <csf/report.hpp>
#include <csf/spec_io.hpp>
#include <csf/stability.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace {

using namespace csf;

int exit_code_for(const Error& error) {
  switch (error.code()) {
    case errc::numeric_nonconvergence:
    case errc::missing_equilibrium:
      return 2;
    default:
      return 1;
  }
}

BuildOptions build_options(bool force) {
  BuildOptions options;
  if (force) options.max_profiles = std::uint64_t{1} << 62;
  return options;
}

struct EnumerateArgs {
  int players = 0;
  int max_size = 0;
  bool diagrams = false;
  bool structures = false;
  bool json = false;
};

int run_enumerate(const EnumerateArgs& args) {
  const RenderedReport report =
      report_enumeration(args.players, args.max_size, args.diagrams, args.structures);
  std::cout << (args.json ? report.json : report.table);
  return 0;
}

struct SolveArgs {
  std::string spec_file;
  std::string method = "support";
  std::string eps;
  bool json = false;
  bool table = false;
  bool force = false;
  int max_support = 0;
  std::size_t steps = 100000;
  double step_size = 0.1;
  unsigned seed = 1;
};

int run_solve(const SolveArgs& args) {
  const GameSpec spec = parse_spec_file(args.spec_file);
  const auto game = build_game(spec, build_options(args.force));
  const InducedGame induced = induced_normal_form(game);

  SolveReport result;
  int code = 0;
  if (args.method == "pure") {
    result.equilibria = solve_pure(induced);
  } else if (args.method == "support") {
    SupportSolveOptions options;
    options.max_support = args.max_support;
    options.seed = args.seed;
    if (!args.eps.empty()) options.eps = rational_from_string(args.eps);
    result = solve_support_enumeration(induced, options);
    if (result.equilibria.empty()) {
      std::cerr << "no equilibrium found by support enumeration\n";
      code = 2;
    }
  } else if (args.method == "replicator") {
    ReplicatorOptions options;
    options.steps = args.steps;
    options.step_size = args.step_size;
    if (!args.eps.empty()) options.eps = rational_from_string(args.eps);
    const EquilibriumResult candidate =
        replicator_dynamics(induced, uniform_profile(induced), options);
    if (!candidate.converged) {
      std::cerr << "replicator did not reach the target regret within the step budget\n";
      code = 2;
    }
    result.equilibria.push_back(candidate);
  } else {
    fail(errc::invalid_argument, "unknown method '" + args.method + "'");
  }

  const RenderedReport report = report_solve(induced, result, args.method, args.table);
  std::cout << (args.json ? report.json : report.table);
  return code;
}

struct StabilityArgs {
  std::vector<std::string> spec_files;
  std::string criterion;
  std::string mode = "forall";
  std::string eps;
  bool json = false;
  bool force = false;
  int max_support = 0;
};

// K-restriction of a spec: drop everything that references a structure with
// a block larger than K.
GameSpec restrict_spec(const GameSpec& base, int k) {
  GameSpec out = base;
  out.k_max = k;
  std::set<std::string> valid;
  for (const auto& s : enumerate_structures(base.n_players(), k)) valid.insert(s.id());

  out.payoffs.clear();
  for (const auto& row : base.payoffs) {
    if (valid.count(row.structure_id)) out.payoffs.push_back(row);
  }
  if (!base.labels.empty()) {
    out.labels.clear();
    for (const auto& [player, table] : base.labels) {
      for (const auto& [structure_id, labels] : table) {
        if (valid.count(structure_id)) out.labels[player][structure_id] = labels;
      }
    }
  }
  out.projection.clear();
  for (const auto& row : base.projection) {
    if (valid.count(row.from_structure) && valid.count(row.to_structure)) {
      out.projection.push_back(row);
    }
  }
  out.mechanism_table.clear();
  for (const auto& row : base.mechanism_table) {
    bool ok = valid.count(row.structure_id) > 0;
    for (const auto& choice : row.choices) {
      ok = ok && valid.count(choice.structure_id) > 0;
    }
    if (ok) out.mechanism_table.push_back(row);
  }
  return out;
}

int run_stability(const StabilityArgs& args) {
  std::vector<GameSpec> specs;
  if (args.spec_files.size() == 1) {
    const GameSpec base = parse_spec_file(args.spec_files.front());
    for (int k = 1; k <= base.k_max; ++k) specs.push_back(restrict_spec(base, k));
  } else {
    for (const auto& file : args.spec_files) specs.push_back(parse_spec_file(file));
    std::sort(specs.begin(), specs.end(),
              [](const GameSpec& a, const GameSpec& b) { return a.k_max < b.k_max; });
    for (const auto& spec : specs) {
      if (spec.player_names != specs.front().player_names) {
        fail(errc::invalid_argument, "family spec files disagree on the player list");
      }
    }
  }

  std::vector<FamilyMember> members;
  for (const GameSpec& spec : specs) {
    FamilyMember member;
    member.k = spec.k_max;
    member.game = build_game(spec, build_options(args.force));
    member.induced = induced_normal_form(member.game);
    SupportSolveOptions options;
    options.max_support = args.max_support;
    if (!args.eps.empty()) options.eps = rational_from_string(args.eps);
    const SolveReport solved = solve_auto(member.induced, options);
    if (solved.equilibria.empty()) {
      fail(errc::missing_equilibrium,
           "no verified equilibrium for K=" + std::to_string(member.k));
    }
    member.equilibria = solved.equilibria;
    members.push_back(std::move(member));
  }
  const FamilyAnalysis family(std::move(members));
  const StabilityMode mode = stability_mode_from_string(args.mode);

  std::vector<StabilityVerdict> verdicts;
  if (args.criterion == "local") {
    for (int k = 1; k <= family.n_players(); ++k) {
      verdicts.push_back(local_stability(family, k, mode));
    }
  } else if (args.criterion == "global") {
    for (int k = 1; k <= family.n_players(); ++k) {
      verdicts.push_back(global_stability(family, k, mode));
    }
  } else if (args.criterion == "strong") {
    verdicts.push_back(strong_nash_criterion(family, mode));
  } else {
    fail(errc::invalid_argument, "unknown criterion '" + args.criterion + "'");
  }

  const RenderedReport report = report_stability(family, verdicts);
  std::cout << (args.json ? report.json : report.table);
  return 0;
}

struct ExampleArgs {
  std::string name;
  std::string payoffs = "0,-5,3,-2";
  int max_size = 2;
  std::string out_file;
};

int run_example(const ExampleArgs& args) {
  if (args.name != "pd") {
    fail(errc::invalid_argument, "unknown example '" + args.name + "' (available: pd)");
  }
  std::vector<Rational> values;
  std::string token;
  std::istringstream stream(args.payoffs);
  while (std::getline(stream, token, ',')) values.push_back(rational_from_string(token));
  if (values.size() != 4) {
    fail(errc::invalid_argument, "--payoffs needs four comma-separated values r,s,t,p");
  }
  const GameSpec spec = generate_pd(values[0], values[1], values[2], values[3], args.max_size);
  std::ofstream out(args.out_file);
  if (!out) fail(errc::invalid_argument, "cannot write '" + args.out_file + "'");
  out << serialize_spec(spec);
  std::cerr << "wrote " << args.out_file << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coalition structure formation games"};
  app.require_subcommand(1);

  EnumerateArgs enumerate_args;
  CLI::App* cmd_enumerate = app.add_subcommand("enumerate", "list diagrams and structures");
  cmd_enumerate->add_option("--players", enumerate_args.players, "number of players")->required();
  cmd_enumerate->add_option("--max-size", enumerate_args.max_size, "maximum coalition size")
      ->required();
  cmd_enumerate->add_flag("--diagrams", enumerate_args.diagrams, "only diagrams");
  cmd_enumerate->add_flag("--structures", enumerate_args.structures, "only structures");
  cmd_enumerate->add_flag("--json", enumerate_args.json, "machine-readable output");

  SolveArgs solve_args;
  CLI::App* cmd_solve = app.add_subcommand("solve", "equilibria of the induced game");
  cmd_solve->add_option("--spec", solve_args.spec_file, "game spec file")->required();
  cmd_solve->add_option("--method", solve_args.method, "pure|support|replicator");
  cmd_solve->add_option("--eps", solve_args.eps, "verification tolerance (exact decimal)");
  cmd_solve->add_flag("--json", solve_args.json, "machine-readable output");
  cmd_solve->add_flag("--table", solve_args.table, "print the induced payoff table");
  cmd_solve->add_flag("--force", solve_args.force, "lift the profile-count guardrail");
  cmd_solve->add_option("--max-support", solve_args.max_support, "support size cap (0 = auto)");
  cmd_solve->add_option("--steps", solve_args.steps, "replicator step budget");
  cmd_solve->add_option("--step-size", solve_args.step_size, "replicator step size");
  cmd_solve->add_option("--seed", solve_args.seed, "seed for numeric search restarts");

  StabilityArgs stability_args;
  CLI::App* cmd_stability = app.add_subcommand("stability", "family stability criteria");
  cmd_stability->add_option("--spec", stability_args.spec_files,
                            "spec file(s); one per K, or a single file to restrict")
      ->required();
  cmd_stability->add_option("--criterion", stability_args.criterion, "local|global|strong")
      ->required();
  cmd_stability->add_option("--mode", stability_args.mode, "forall|exists");
  cmd_stability->add_option("--eps", stability_args.eps, "verification tolerance");
  cmd_stability->add_flag("--json", stability_args.json, "machine-readable output");
  cmd_stability->add_flag("--force", stability_args.force, "lift the profile-count guardrail");
  cmd_stability->add_option("--max-support", stability_args.max_support,
                            "support size cap (0 = auto)");

  ExampleArgs example_args;
  CLI::App* cmd_example = app.add_subcommand("example", "write a bundled example spec");
  cmd_example->add_option("name", example_args.name, "example name (pd)")->required();
  cmd_example->add_option("--payoffs", example_args.payoffs, "r,s,t,p payoff parameters");
  cmd_example->add_option("--max-size", example_args.max_size, "1 or 2");
  cmd_example->add_option("--out", example_args.out_file, "output file")->required();

  try {
    app.parse(argc, argv);
    if (cmd_enumerate->parsed()) return run_enumerate(enumerate_args);
    if (cmd_solve->parsed()) return run_solve(solve_args);
    if (cmd_stability->parsed()) return run_stability(stability_args);
    if (cmd_example->parsed()) return run_example(example_args);
    return 0;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
